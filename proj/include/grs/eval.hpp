#pragma once

// Model-quality summaries used by the trainer reports and the tests.

#include "grs/matrix.hpp"

#include <stdexcept>

namespace grs {

// Pooled coefficient of determination: 1 - SS_res / SS_tot with the total sum
// of squares taken around per-component means, summed over all components.
inline double r2_score(const Matrix& predictions, const Matrix& targets) {
  if (predictions.rows() != targets.rows() || predictions.cols() != targets.cols()) {
    throw std::invalid_argument("shape mismatch");
  }
  const std::size_t n = targets.rows(), m = targets.cols();
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += targets(i, j);
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = predictions(i, j) - targets(i, j);
      const double c = targets(i, j) - mean;
      ss_res += r * r;
      ss_tot += c * c;
    }
  }
  if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
  return 1.0 - ss_res / ss_tot;
}

// Mean absolute error over all n x m entries.
inline double mean_absolute_error(const Matrix& predictions, const Matrix& targets) {
  if (predictions.rows() != targets.rows() || predictions.cols() != targets.cols()) {
    throw std::invalid_argument("shape mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double d = predictions.data()[i] - targets.data()[i];
    acc += d < 0 ? -d : d;
  }
  return acc / static_cast<double>(predictions.size());
}

}  // namespace grs
