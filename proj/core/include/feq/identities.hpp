#pragma once

#include <functional>
#include <vector>

#include "feq/observable.hpp"
#include "feq/stepper.hpp"
#include "feq/tableau.hpp"

namespace feq {

// Outcome of a functional-equivariance check: the method is applied to the
// augmented system from (y0, F(y0)) and residual = z1 - F(y1) measures how
// far the computed z strays from the observable of the computed state.
// y_mismatch compares the y block of the augmented step against a plain
// step of the original system.
struct FeResult {
  Vec residual;
  double y_mismatch = 0.0;
  Vec y1;  // y block of the augmented step
  Vec z1;

  double max_residual() const { return linf(residual); }
};

FeResult fe_residual(const ButcherTableau& tab, const VectorFieldSpec& f,
                     const Observable& F, const Vec& y0, double dt,
                     const SolverConfig& cfg = {});

// Additive version: the augmented field decomposes component-wise as
// g^[nu] = (f^[nu], F'(y) f^[nu](y)).
FeResult fe_residual(const AdditiveTableau& atab,
                     const std::vector<VectorFieldSpec>& fs,
                     const Observable& F, const Vec& y0, double dt,
                     const SolverConfig& cfg = {});

// Partitioned version: the augmented state (y, z) is partitioned by keeping
// the partition on y and assigning every z index to part z_part.
FeResult fe_residual(const PartitionedTableau& ptab, const VectorFieldSpec& f,
                     const Observable& F, const Vec& y0, double dt,
                     const SolverConfig& cfg = {}, int z_part = 0);

// Splitting version with chain-rule-augmented flows; see augment_flow.
FeResult fe_residual(const SplittingScheme& scheme,
                     const std::vector<ExactFlow>& flows, const Observable& F,
                     const Vec& y0, double dt);

FeResult fe_residual_aromatic(const VectorFieldSpec& f, const Observable& F,
                              const Vec& y0, double dt, double eps_div = 0.0);

// Exact flow of one augmented splitting component:
//   (y, z) -> (phi(t, y), z + F(phi(t, y)) - F(y)),
// which is the exact flow of (f^[nu], F' f^[nu]) by the chain rule.
ExactFlow augment_flow(const ExactFlow& phi, const Observable& F);

// Implicit midpoint, dt = 1, on f(y) = -y versus the related field
// g(u) = -2u under F(y) = y^2: the strong-equivariance path lands on u1 = 0
// while the augmented path reproduces z1 = y1^2 exactly.
struct CounterexampleReport {
  double y1 = 0.0;          // 1/3
  double u1 = 0.0;          // 0
  double y1_squared = 0.0;  // 1/9
  double z1 = 0.0;          // 1/9
  double fe_residual = 0.0;
  double strong_mismatch = 0.0;  // |u1 - y1^2|
};

CounterexampleReport strong_equivariance_counterexample(const SolverConfig& cfg = {});

// Residual of F(y1) = F(y0) + dt * sum_i b_i {F,H}(Y_i), with the bracket
// values supplied per state. The caller provides the Hamiltonian field f
// matching the bracket.
double bracket_identity_residual(const ButcherTableau& tab, const VectorFieldSpec& f,
                                 const Observable& F,
                                 const std::function<double(const Vec&)>& bracket,
                                 const Vec& y0, double dt,
                                 const SolverConfig& cfg = {});

struct Potential {
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&)> grad;
  bool quadratic = false;
};

// Residuals of the discrete work identities for the forced Hamiltonian
// system q' = M^-1 p, p' = -grad V(q) + phi(q, p):
//   full_energy:  H(y1) - H(y0) - dt sum_i b_i P_i^T M^-1 phi(Q_i, P_i)
//   kinetic_only: same with H replaced by p^T M^-1 p / 2 and the stage sum
//                 crediting both -grad V and phi.
// The full-energy identity requires quadratic V; the kinetic variant holds
// for any V. State layout: (q, p) stacked.
struct DissipationResidual {
  double full_energy = 0.0;
  double kinetic_only = 0.0;
};

DissipationResidual dissipation_identity_residual(
    const ButcherTableau& tab, const Mat& M, const Potential& V,
    const std::function<Vec(const Vec&, const Vec&)>& forcing, const Vec& y0,
    double dt, const SolverConfig& cfg = {});

// Steps x0 and y0 with the same method and reports both distances; for
// monotone f and quadratic-preserving tableaux with b >= 0 the map is
// contractive.
struct ContractivityResult {
  double dist_after = 0.0;
  double dist_before = 0.0;

  bool contracted(double tol = 1e-12) const { return dist_after <= dist_before + tol; }
};

ContractivityResult contractivity_check(const ButcherTableau& tab,
                                        const VectorFieldSpec& f, const Vec& x0,
                                        const Vec& y0, double dt,
                                        const SolverConfig& cfg = {});

// True iff F is nonincreasing along the numerical trajectory, within
// tol * (1 + |F|) per step.
bool monotone_decrease_check(const ButcherTableau& tab, const VectorFieldSpec& f,
                             const Observable& F, const Vec& y0, int steps,
                             double dt, const SolverConfig& cfg = {},
                             double tol = 1e-12);

}  // namespace feq
