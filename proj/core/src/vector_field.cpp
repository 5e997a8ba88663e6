#include "feq/vector_field.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace feq {

double default_fd_eps() {
  static const double eps = std::sqrt(std::numeric_limits<double>::epsilon());
  return eps;
}

Vec VectorFieldSpec::operator()(const Vec& y) const {
  if (y.size() != n)
    throw std::invalid_argument("vector field '" + name + "': state has dimension " +
                                std::to_string(y.size()) + ", expected " + std::to_string(n));
  Vec out = eval(y);
  if (out.size() != n)
    throw std::invalid_argument("vector field '" + name + "': eval returned wrong dimension");
  return out;
}

Vec VectorFieldSpec::jac_apply(const Vec& y, const Vec& w, double eps) const {
  if (jac_action) return jac_action(y, w);
  const double wn = linf(w);
  if (wn == 0.0) return Vec::Zero(n);
  if (eps <= 0.0) eps = default_fd_eps();
  // Perturbation scales with the state and normalizes by the direction so
  // large-norm states do not lose digits to cancellation.
  const double h = eps * (1.0 + linf(y)) / (1.0 + wn);
  return (eval(y + h * w) - eval(y - h * w)) / (2.0 * h);
}

Mat VectorFieldSpec::jacobian(const Vec& y, double eps) const {
  Mat J(n, n);
  Vec e = Vec::Zero(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    J.col(j) = jac_apply(y, e, eps);
    e[j] = 0.0;
  }
  return J;
}

double VectorFieldSpec::divergence(const Vec& y, double eps) const {
  double tr = 0.0;
  Vec e = Vec::Zero(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    tr += jac_apply(y, e, eps)[j];
    e[j] = 0.0;
  }
  return tr;
}

}  // namespace feq
