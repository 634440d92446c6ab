#include "grs/perturbation.hpp"

#include <cmath>
#include <stdexcept>

#include "grs/kernels.hpp"

namespace grs {

bool Perturbation::is_identity() const {
  for (double t : tau) {
    if (t != 1.0) return false;
  }
  for (double z : zeta) {
    if (z != 0.0) return false;
  }
  return true;
}

void Perturbation::validate(std::size_t p) const {
  if (tau.size() != p) throw std::invalid_argument("perturbation tau dimension mismatch");
  if (!zeta.empty() && zeta.size() != p) {
    throw std::invalid_argument("perturbation zeta dimension mismatch");
  }
  for (double t : tau) {
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite tau");
  }
  for (double z : zeta) {
    if (!std::isfinite(z)) throw std::invalid_argument("non-finite zeta");
  }
}

Matrix perturb_columns(const Matrix& x, const Perturbation& pert) {
  pert.validate(x.cols());
  Matrix z = x;
  const std::size_t p = x.cols();
  // Row-major storage: walk rows and transform in place. Identity columns are
  // skipped so the common sparse-tau case stays cheap.
  for (std::size_t j = 0; j < p; ++j) {
    const double t = pert.tau[j];
    const double s = pert.zeta.empty() ? 0.0 : pert.zeta[j];
    if (t == 1.0 && s == 0.0) continue;
    for (std::size_t i = 0; i < z.rows(); ++i) {
      z(i, j) = t * x(i, j) + s;
    }
  }
  return z;
}

Perturbation compose(const Perturbation& first, const Perturbation& second) {
  if (first.dims() != second.dims()) {
    throw std::invalid_argument("perturbation dimension mismatch");
  }
  const std::size_t p = first.dims();
  Perturbation out;
  out.tau.resize(p);
  const bool need_zeta = !first.zeta.empty() || !second.zeta.empty();
  if (need_zeta) out.zeta.assign(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    out.tau[j] = second.tau[j] * first.tau[j];
    if (need_zeta) {
      const double z1 = first.zeta.empty() ? 0.0 : first.zeta[j];
      const double z2 = second.zeta.empty() ? 0.0 : second.zeta[j];
      out.zeta[j] = second.tau[j] * z1 + z2;
    }
  }
  return out;
}

}  // namespace grs
