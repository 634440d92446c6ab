#pragma once

#include <vector>

#include "grs/dataset.hpp"
#include "grs/predictor.hpp"

namespace grs {

// y = x W + b, W is p x m.
class LinearModel final : public Predictor {
 public:
  LinearModel(Matrix weights, std::vector<double> bias);

  Matrix predict(const Matrix& x) const override;
  std::size_t input_dim() const override { return weights_.rows(); }
  std::size_t output_dim() const override { return weights_.cols(); }
  std::string kind() const override { return "linear"; }

  const Matrix& weights() const { return weights_; }
  const std::vector<double>& bias() const { return bias_; }

 private:
  Matrix weights_;
  std::vector<double> bias_;
};

// Ridge least squares on centered data via Cholesky of (X'X + l2 I).
// l2 = 0 requires a non-singular normal matrix.
LinearModel train_linear(const Dataset& d, double l2 = 0.0);

}  // namespace grs
