#pragma once

#include <cstdint>
#include <vector>

#include "grs/dataset.hpp"
#include "grs/loss.hpp"
#include "grs/predictor.hpp"

namespace grs {

struct MlpHyper {
  std::vector<std::size_t> hidden{64, 64};
  int epochs = 600;
  double learning_rate = 1e-3;
  int batch = 128;
  std::uint64_t seed = 1;
  LossKind loss = LossKind::mse;  // mse or logistic

  // Training internals (not part of the spec surface, see README):
  // adam converges within the desk budget; sgd is plain mini-batch gradient
  // descent and is what the full-batch monotone-loss property checks.
  enum class Optimizer { adam, sgd };
  Optimizer optimizer = Optimizer::adam;
  bool lr_step_decay = true;    // x0.1 at 70% and 90% of the epochs
  bool squash_targets = true;   // asinh on regression targets, inverted in predict
};

// Fully-connected rectifier network. Inputs are standardised and regression
// targets optionally asinh-squashed inside the model; predict() always
// returns original units (probabilities for logistic training).
class MlpModel final : public Predictor {
 public:
  struct Layer {
    Matrix w;                // out x in, rows contiguous per output unit
    std::vector<double> b;   // out
  };

  MlpModel(std::vector<Layer> layers, std::vector<double> x_mean,
           std::vector<double> x_std, std::vector<double> y_mean,
           std::vector<double> y_std, bool squash, LossKind trained_loss);

  Matrix predict(const Matrix& x) const override;
  std::size_t input_dim() const override { return layers_.front().w.cols(); }
  std::size_t output_dim() const override { return layers_.back().w.rows(); }
  std::string kind() const override { return "mlp"; }

  const std::vector<Layer>& layers() const { return layers_; }
  LossKind trained_loss() const { return trained_loss_; }
  bool squash_targets() const { return squash_; }
  const std::vector<double>& x_mean() const { return x_mean_; }
  const std::vector<double>& x_std() const { return x_std_; }
  const std::vector<double>& y_mean() const { return y_mean_; }
  const std::vector<double>& y_std() const { return y_std_; }
  const std::vector<double>& epoch_losses() const { return epoch_losses_; }
  void set_epoch_losses(std::vector<double> losses) { epoch_losses_ = std::move(losses); }

  // Internal-scale plumbing, exposed for the trainer and the
  // finite-difference gradient oracle in the tests.
  Matrix standardize_input(const Matrix& x) const;
  Matrix internal_targets(const Matrix& y) const;
  std::vector<double> flatten_params() const;
  void set_params(std::span<const double> flat);
  double internal_loss_and_gradient(const Matrix& x_std, const Matrix& y_int,
                                    std::vector<double>* grad) const;

 private:
  std::vector<Layer> layers_;
  std::vector<double> x_mean_, x_std_, y_mean_, y_std_;
  bool squash_;
  LossKind trained_loss_;
  std::vector<double> epoch_losses_;
};

// Seeded, single-threaded mini-batch training. Throws on a non-finite
// training loss (message names the epoch).
MlpModel train_mlp(const Dataset& d, const MlpHyper& hyper);

}  // namespace grs
