#pragma once

#include <cstdint>

#include "grs/dataset.hpp"
#include "grs/predictor.hpp"

namespace grs {

enum class RootSign { plus, minus, both };

// Closed-form roots of a x^2 + b x + c = 0. Inputs are rows (a, b, c) with
// a != 0; each root is emitted as a (real, imaginary) pair, '+' branch first,
// so `both` yields 4 outputs. Error-free on the generated data by definition.
class QuadraticOracle final : public Predictor {
 public:
  explicit QuadraticOracle(RootSign sign = RootSign::both) : sign_(sign) {}

  Matrix predict(const Matrix& x) const override;
  std::size_t input_dim() const override { return 3; }
  std::size_t output_dim() const override { return sign_ == RootSign::both ? 4 : 2; }
  std::string kind() const override { return "quadratic-oracle"; }

  RootSign root_sign() const { return sign_; }

 private:
  RootSign sign_;
};

// n rows, a ~ U(0.01, 1), b,c ~ U(-1, 1); targets are the oracle's 4 outputs
// (x1_re, x1_im, x2_re, x2_im).
Dataset gen_quadratic(std::size_t n, std::uint64_t seed);

}  // namespace grs
