#include "grs/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace grs::kernels {
namespace {

constexpr double kProbEps = 1e-12;

double dot_s(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_s(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_shift_s(const double* x, double tau, double zeta, double* out,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = tau * x[i] + zeta;
}

double sq_diff_sum_s(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double abs_diff_sum_s(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i] - b[i]);
  return acc;
}

double logloss_sum_s(const double* p, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double q = std::clamp(p[i], kProbEps, 1.0 - kProbEps);
    acc -= y[i] * std::log(q) + (1.0 - y[i]) * std::log1p(-q);
  }
  return acc;
}

double zero_one_sum_s(const double* p, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += ((p[i] >= 0.5) != (y[i] >= 0.5)) ? 1.0 : 0.0;
  }
  return acc;
}

void relu_s(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_mask_s(const double* z, double* g, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i] <= 0.0) g[i] = 0.0;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{
      "scalar",       dot_s,          axpy_s,        scale_shift_s,
      sq_diff_sum_s,  abs_diff_sum_s, logloss_sum_s, zero_one_sum_s,
      relu_s,         relu_mask_s,
  };
  return table;
}

}  // namespace grs::kernels
