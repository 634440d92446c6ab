#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "grs/matrix.hpp"
#include "grs/perturbation.hpp"

namespace grs {

// Uniform prediction interface. Implementations are pure functions of
// (parameters, input) and safe to call concurrently.
class Predictor {
 public:
  virtual ~Predictor() = default;

  virtual Matrix predict(const Matrix& x) const = 0;
  virtual std::size_t input_dim() const = 0;
  virtual std::size_t output_dim() const = 0;
  virtual std::string kind() const = 0;

 protected:
  void check_input(const Matrix& x) const {
    if (x.cols() != input_dim()) {
      throw std::invalid_argument("predictor expects " + std::to_string(input_dim()) +
                                  " features, got " + std::to_string(x.cols()));
    }
  }
};

// A Rashomon-set member in input-activated form: the reference model applied
// to a column-reparameterised input.
class PerturbedPredictor final : public Predictor {
 public:
  PerturbedPredictor(std::shared_ptr<const Predictor> inner, Perturbation pert)
      : inner_(std::move(inner)), pert_(std::move(pert)) {
    pert_.validate(inner_->input_dim());
  }

  Matrix predict(const Matrix& x) const override {
    return inner_->predict(perturb_columns(x, pert_));
  }
  std::size_t input_dim() const override { return inner_->input_dim(); }
  std::size_t output_dim() const override { return inner_->output_dim(); }
  std::string kind() const override { return "perturbed:" + inner_->kind(); }

  const Perturbation& perturbation() const { return pert_; }
  const std::shared_ptr<const Predictor>& inner() const { return inner_; }

 private:
  std::shared_ptr<const Predictor> inner_;
  Perturbation pert_;
};

}  // namespace grs
