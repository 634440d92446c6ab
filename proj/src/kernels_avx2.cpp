// AVX2/FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and must only be entered after the dispatcher has checked
// CPU support. Loops process 4 doubles per lane with a scalar tail.

#ifdef GRS_BUILD_AVX2

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "grs/kernels.hpp"

namespace grs::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_v(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    i += 4;
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_v(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_shift_v(const double* x, double tau, double zeta, double* out,
                   std::size_t n) {
  const __m256d vt = _mm256_set1_pd(tau);
  const __m256d vz = _mm256_set1_pd(zeta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vt, _mm256_loadu_pd(x + i), vz));
  }
  for (; i < n; ++i) out[i] = std::fma(tau, x[i], zeta);
}

double sq_diff_sum_v(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double abs_diff_sum_v(const double* a, const double* b, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(signmask, d));
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

double zero_one_sum_v(const double* p, const double* y, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  long mismatches = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d cp = _mm256_cmp_pd(_mm256_loadu_pd(p + i), half, _CMP_GE_OQ);
    const __m256d cy = _mm256_cmp_pd(_mm256_loadu_pd(y + i), half, _CMP_GE_OQ);
    mismatches += __builtin_popcount(
        static_cast<unsigned>(_mm256_movemask_pd(_mm256_xor_pd(cp, cy))));
  }
  for (; i < n; ++i) {
    mismatches += ((p[i] >= 0.5) != (y[i] >= 0.5)) ? 1 : 0;
  }
  return static_cast<double>(mismatches);
}

void relu_v(const double* x, double* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
  }
  for (; i < n; ++i) out[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_mask_v(const double* z, double* g, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d keep = _mm256_cmp_pd(_mm256_loadu_pd(z + i), zero, _CMP_GT_OQ);
    _mm256_storeu_pd(g + i, _mm256_and_pd(_mm256_loadu_pd(g + i), keep));
  }
  for (; i < n; ++i) {
    if (z[i] <= 0.0) g[i] = 0.0;
  }
}

}  // namespace

const Ops* avx2_ops_table() {
  static const Ops table{
      "avx2",
      dot_v,
      axpy_v,
      scale_shift_v,
      sq_diff_sum_v,
      abs_diff_sum_v,
      scalar_ops().logloss_sum,  // log stays scalar; no fast-log needed here
      zero_one_sum_v,
      relu_v,
      relu_mask_v,
  };
  return &table;
}

}  // namespace grs::kernels

#endif  // GRS_BUILD_AVX2
