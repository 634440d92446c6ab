#include "grs/linear.hpp"

#include <cmath>
#include <stdexcept>

#include "grs/kernels.hpp"
#include "grs/parallel.hpp"

namespace grs {

LinearModel::LinearModel(Matrix weights, std::vector<double> bias)
    : weights_(std::move(weights)), bias_(std::move(bias)) {
  if (bias_.size() != weights_.cols()) throw std::invalid_argument("bias size mismatch");
  if (!weights_.all_finite()) throw std::invalid_argument("non-finite weights");
  for (double b : bias_) {
    if (!std::isfinite(b)) throw std::invalid_argument("non-finite bias");
  }
}

Matrix LinearModel::predict(const Matrix& x) const {
  check_input(x);
  const auto& k = kernels::ops();
  const std::size_t n = x.rows(), p = input_dim(), m = output_dim();
  Matrix out(n, m);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto xi = x.row(i);
      auto oi = out.row(i);
      for (std::size_t j = 0; j < m; ++j) oi[j] = bias_[j];
      for (std::size_t f = 0; f < p; ++f) {
        k.axpy(xi[f], weights_.row(f).data(), oi.data(), m);
      }
    }
  });
  return out;
}

namespace {

// In-place Cholesky solve for SPD A (p x p), B (p x m). Throws if A is not
// positive definite.
void cholesky_solve(Matrix& a, Matrix& b) {
  const std::size_t p = a.rows();
  for (std::size_t j = 0; j < p; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= a(j, k) * a(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag)) {
      throw std::runtime_error("normal matrix is singular; use l2 > 0");
    }
    a(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < p; ++i) {
      double v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= a(i, k) * a(j, k);
      a(i, j) = v / a(j, j);
    }
  }
  const std::size_t m = b.cols();
  // forward then backward substitution, column by column of B
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t i = 0; i < p; ++i) {
      double v = b(i, c);
      for (std::size_t k = 0; k < i; ++k) v -= a(i, k) * b(k, c);
      b(i, c) = v / a(i, i);
    }
    for (std::size_t ii = p; ii-- > 0;) {
      double v = b(ii, c);
      for (std::size_t k = ii + 1; k < p; ++k) v -= a(k, ii) * b(k, c);
      b(ii, c) = v / a(ii, ii);
    }
  }
}

}  // namespace

LinearModel train_linear(const Dataset& d, double l2) {
  d.validate();
  if (l2 < 0.0) throw std::invalid_argument("l2 must be >= 0");
  const std::size_t n = d.n(), p = d.p(), m = d.m();

  // Center so the intercept is untouched by the ridge penalty.
  std::vector<double> x_mean(p, 0.0), y_mean(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) x_mean[j] += d.x(i, j);
    for (std::size_t j = 0; j < m; ++j) y_mean[j] += d.y(i, j);
  }
  for (auto& v : x_mean) v /= static_cast<double>(n);
  for (auto& v : y_mean) v /= static_cast<double>(n);

  Matrix xtx(p, p), xty(p, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < p; ++a) {
      const double xa = d.x(i, a) - x_mean[a];
      for (std::size_t b = a; b < p; ++b) xtx(a, b) += xa * (d.x(i, b) - x_mean[b]);
      for (std::size_t c = 0; c < m; ++c) xty(a, c) += xa * (d.y(i, c) - y_mean[c]);
    }
  }
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < a; ++b) xtx(a, b) = xtx(b, a);
    xtx(a, a) += l2;
  }

  cholesky_solve(xtx, xty);

  std::vector<double> bias(m, 0.0);
  for (std::size_t c = 0; c < m; ++c) {
    double b = y_mean[c];
    for (std::size_t a = 0; a < p; ++a) b -= xty(a, c) * x_mean[a];
    bias[c] = b;
  }
  return LinearModel(std::move(xty), std::move(bias));
}

}  // namespace grs
