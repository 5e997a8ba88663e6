#pragma once

#include <functional>
#include <string>

#include "feq/types.hpp"

namespace feq {

// Finite-dimensional vector field y' = f(y). eval must be a pure function.
// jac_action, when present, returns the exact directional derivative
// f'(y)[w]; otherwise callers fall back to central differences.
struct VectorFieldSpec {
  int n = 0;
  std::function<Vec(const Vec&)> eval;
  std::function<Vec(const Vec&, const Vec&)> jac_action;  // may be empty
  std::string name;

  Vec operator()(const Vec& y) const;

  // f'(y)[w] via jac_action or central differences with perturbation
  // eps * (1 + |y|_inf) / (1 + |w|_inf) along w. eps <= 0 selects
  // sqrt(machine epsilon).
  Vec jac_apply(const Vec& y, const Vec& w, double eps = 0.0) const;

  // Dense Jacobian, assembled column-by-column from jac_apply.
  Mat jacobian(const Vec& y, double eps = 0.0) const;

  // trace of f'(y); uses the same evaluation route as jacobian().
  double divergence(const Vec& y, double eps = 0.0) const;
};

// Exact time-t flow of one splitting component. flow(0, y) = y.
struct ExactFlow {
  int n = 0;
  std::function<Vec(double, const Vec&)> flow;
  std::string name;
};

double default_fd_eps();

}  // namespace feq
