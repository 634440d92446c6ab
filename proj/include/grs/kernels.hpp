#pragma once

// Data-parallel inner-loop kernels. Scalar reference implementations always
// exist; an AVX2/FMA variant is selected at runtime when the CPU supports it.
// Override with GRS_KERNELS=scalar|avx2. Reductions are tree/lane ordered, so
// SIMD results may differ from scalar in the last ulps; equivalence is tested
// to tight relative tolerance, and a given binary on a given machine always
// resolves to the same table (runs stay reproducible).

#include <cstddef>

namespace grs::kernels {

struct Ops {
  const char* name;
  // sum_i a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[i] = tau * x[i] + zeta
  void (*scale_shift)(const double* x, double tau, double zeta, double* out,
                      std::size_t n);
  // sum_i (a[i]-b[i])^2
  double (*sq_diff_sum)(const double* a, const double* b, std::size_t n);
  // sum_i |a[i]-b[i]|
  double (*abs_diff_sum)(const double* a, const double* b, std::size_t n);
  // sum_i -[y ln p~ + (1-y) ln(1-p~)], p~ clamped to [eps, 1-eps]
  double (*logloss_sum)(const double* p, const double* y, std::size_t n);
  // count of i where (p[i] >= 0.5) != (y[i] >= 0.5)
  double (*zero_one_sum)(const double* p, const double* y, std::size_t n);
  // out[i] = max(x[i], 0)
  void (*relu)(const double* x, double* out, std::size_t n);
  // g[i] = z[i] > 0 ? g[i] : 0  (backprop through relu)
  void (*relu_mask)(const double* z, double* g, std::size_t n);
};

const Ops& scalar_ops();

// nullptr when the build or the CPU lacks AVX2+FMA.
const Ops* avx2_ops();

// Runtime-dispatched table (resolved once, then cached).
const Ops& ops();

}  // namespace grs::kernels
