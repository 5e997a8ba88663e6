#pragma once

#include <string>
#include <vector>

#include "feq/observable.hpp"
#include "feq/rng.hpp"
#include "feq/vector_field.hpp"

namespace feq {

struct OdeProblem {
  VectorFieldSpec field;
  Vec default_y0;
  std::string description;
};

// Named ODE problems: linear-decay, harmonic, pendulum, damped-oscillator,
// damped-pendulum, rigid-body, cubic-decay, gradient-flow. Parameters:
// dim (linear-decay, cubic-decay, gradient-flow), c (damped-*).
OdeProblem builtin_problem(const std::string& name, double param = 0.0, int dim = 0);
const std::vector<std::pair<std::string, std::string>>& builtin_problem_catalog();

// Splitting problems: component fields with exact flows and the combined
// field. drift-decay: f = (p, -p) split as (p, 0) + (0, -p).
// harmonic-split: kinetic drift + potential kick for q'' = -q.
struct SplittingProblem {
  std::vector<VectorFieldSpec> components;
  std::vector<ExactFlow> flows;
  VectorFieldSpec total;
  Vec default_y0;
  std::string description;
};

SplittingProblem builtin_splitting_problem(const std::string& name);
const std::vector<std::pair<std::string, std::string>>& builtin_splitting_catalog();

// Random smooth fields with analytic Jacobian actions: affine part plus
// rank-one quadratic and cubic terms with O(scale) coefficients.
VectorFieldSpec random_polynomial_field(Rng& rng, int n, int degree,
                                        double scale = 0.5);

Observable random_affine_observable(Rng& rng, int n);
Observable random_quadratic_observable(Rng& rng, int n, double scale = 0.5);

// Linear field f(y) = S grad F(y) with S antisymmetric, so F' f == 0
// analytically; F must carry a closed quadratic form.
VectorFieldSpec invariant_preserving_field(Rng& rng, const Observable& F);

}  // namespace feq
