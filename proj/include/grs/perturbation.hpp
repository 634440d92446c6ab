#pragma once

#include <vector>

#include "grs/matrix.hpp"

namespace grs {

// Column-wise affine reparameterisation of the input: column i of the output
// is tau[i] * x[:,i] + zeta[i]. An empty zeta means all zeros.
struct Perturbation {
  std::vector<double> tau;
  std::vector<double> zeta;

  static Perturbation identity(std::size_t p) {
    return Perturbation{std::vector<double>(p, 1.0), {}};
  }

  std::size_t dims() const { return tau.size(); }
  bool is_identity() const;
  void validate(std::size_t p) const;
};

Matrix perturb_columns(const Matrix& x, const Perturbation& pert);

// apply `first`, then `second`: tau = t2*t1, zeta = t2*z1 + z2.
Perturbation compose(const Perturbation& first, const Perturbation& second);

}  // namespace grs
