#include "grs/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "grs/rng.hpp"

namespace grs {

Matrix QuadraticOracle::predict(const Matrix& x) const {
  check_input(x);
  const std::size_t n = x.rows();
  Matrix out(n, output_dim());
  for (std::size_t i = 0; i < n; ++i) {
    const double a = x(i, 0), b = x(i, 1), c = x(i, 2);
    if (a == 0.0) {
      throw std::invalid_argument("quadratic oracle requires a != 0 (row " +
                                  std::to_string(i) + ")");
    }
    const double disc = b * b - 4.0 * a * c;
    const double root = std::sqrt(std::fabs(disc));
    double re_plus, im_plus, re_minus, im_minus;
    if (disc >= 0.0) {
      re_plus = (-b + root) / (2.0 * a);
      re_minus = (-b - root) / (2.0 * a);
      im_plus = im_minus = 0.0;
    } else {
      re_plus = re_minus = -b / (2.0 * a);
      im_plus = root / (2.0 * a);
      im_minus = -im_plus;
    }
    switch (sign_) {
      case RootSign::plus:
        out(i, 0) = re_plus;
        out(i, 1) = im_plus;
        break;
      case RootSign::minus:
        out(i, 0) = re_minus;
        out(i, 1) = im_minus;
        break;
      case RootSign::both:
        out(i, 0) = re_plus;
        out(i, 1) = im_plus;
        out(i, 2) = re_minus;
        out(i, 3) = im_minus;
        break;
    }
  }
  return out;
}

Dataset gen_quadratic(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_quadratic needs n >= 1");
  Rng rng(seed);
  Dataset d;
  d.x = Matrix(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    d.x(i, 0) = rng.uniform(0.01, 1.0);
    d.x(i, 1) = rng.uniform(-1.0, 1.0);
    d.x(i, 2) = rng.uniform(-1.0, 1.0);
  }
  d.y = QuadraticOracle(RootSign::both).predict(d.x);
  d.feature_names = {"a", "b", "c"};
  d.target_names = {"x1_re", "x1_im", "x2_re", "x2_im"};
  return d;
}

}  // namespace grs
