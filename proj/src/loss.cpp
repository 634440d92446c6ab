#include "grs/loss.hpp"

#include <stdexcept>

#include "grs/kernels.hpp"

namespace grs {

LossKind parse_loss_kind(const std::string& name) {
  if (name == "mse") return LossKind::mse;
  if (name == "mae") return LossKind::mae;
  if (name == "logloss" || name == "logistic") return LossKind::logistic;
  if (name == "zero-one") return LossKind::zero_one;
  throw std::invalid_argument("unknown loss kind '" + name + "'");
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::mse: return "mse";
    case LossKind::mae: return "mae";
    case LossKind::logistic: return "logloss";
    case LossKind::zero_one: return "zero-one";
  }
  return "?";
}

double row_loss(std::span<const double> prediction, std::span<const double> target,
                LossKind kind) {
  const auto& k = kernels::ops();
  const std::size_t m = prediction.size();
  if (m != target.size()) throw std::invalid_argument("row length mismatch");
  double sum = 0.0;
  switch (kind) {
    case LossKind::mse: sum = k.sq_diff_sum(prediction.data(), target.data(), m); break;
    case LossKind::mae: sum = k.abs_diff_sum(prediction.data(), target.data(), m); break;
    case LossKind::logistic: sum = k.logloss_sum(prediction.data(), target.data(), m); break;
    case LossKind::zero_one: sum = k.zero_one_sum(prediction.data(), target.data(), m); break;
  }
  return sum / static_cast<double>(m);
}

void check_classification_targets(const Matrix& targets, LossKind kind) {
  if (kind != LossKind::logistic && kind != LossKind::zero_one) return;
  for (std::size_t i = 0; i < targets.rows(); ++i) {
    for (std::size_t j = 0; j < targets.cols(); ++j) {
      const double v = targets(i, j);
      if (v != 0.0 && v != 1.0) {
        throw std::invalid_argument(to_string(kind) + " requires targets in {0,1}");
      }
    }
  }
}

double empirical_loss(const Matrix& predictions, const Matrix& targets, LossKind kind) {
  if (predictions.rows() != targets.rows() || predictions.cols() != targets.cols()) {
    throw std::invalid_argument("prediction/target shape mismatch");
  }
  if (predictions.rows() == 0) throw std::invalid_argument("empty matrices");
  check_classification_targets(targets, kind);

  // Rows are contiguous, so the whole matrix is one flat reduction; the /m
  // and /n normalisations commute with the sum for every kind.
  const auto& k = kernels::ops();
  const std::size_t total = predictions.size();
  double sum = 0.0;
  switch (kind) {
    case LossKind::mse: sum = k.sq_diff_sum(predictions.data(), targets.data(), total); break;
    case LossKind::mae: sum = k.abs_diff_sum(predictions.data(), targets.data(), total); break;
    case LossKind::logistic: sum = k.logloss_sum(predictions.data(), targets.data(), total); break;
    case LossKind::zero_one: sum = k.zero_one_sum(predictions.data(), targets.data(), total); break;
  }
  return sum / static_cast<double>(total);
}

}  // namespace grs
