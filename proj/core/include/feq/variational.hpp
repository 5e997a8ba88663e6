#pragma once

#include <vector>

#include "feq/stepper.hpp"
#include "feq/tableau.hpp"
#include "feq/vector_field.hpp"

namespace feq {

// First-variation system: state (y, eta_1, ..., eta_k) with
//   y' = f(y), eta_j' = f'(y) eta_j.
// Directional derivatives use f.jac_action when present, otherwise central
// differences with perturbation sqrt(eps) (1 + |y|) / (1 + |eta|).
struct VariationalSystem {
  VectorFieldSpec base;
  int k = 1;
  VectorFieldSpec combined;  // dimension n * (1 + k)
};

VariationalSystem make_variational(const VectorFieldSpec& f, int k);

// Outcome of one step of the combined system, with block accessors.
struct TangentResult {
  int n = 0;
  int k = 0;
  Vec y1;
  std::vector<Vec> eta1;
  StepResult step;  // full combined-system stage data

  Vec stage_y(int i) const;
  Vec stage_eta(int i, int j) const;        // block of Eta_j at stage i
  Vec stage_eta_deriv(int i, int j) const;  // stage derivative of that block
};

TangentResult tangent_step(const ButcherTableau& tab, const VectorFieldSpec& f,
                           const Vec& y0, const std::vector<Vec>& etas,
                           double dt, const SolverConfig& cfg = {});

// Partitioned variant: the partition of y extends blockwise to each
// variation. Additive variant: each component field is lifted to its own
// variational system.
TangentResult tangent_step(const PartitionedTableau& ptab, const VectorFieldSpec& f,
                           const Vec& y0, const std::vector<Vec>& etas,
                           double dt, const SolverConfig& cfg = {});
TangentResult tangent_step(const AdditiveTableau& atab,
                           const std::vector<VectorFieldSpec>& fs, const Vec& y0,
                           const std::vector<Vec>& etas, double dt,
                           const SolverConfig& cfg = {});

// Constant-coefficient bilinear form omega(xi, eta) = xi^T Omega eta.
struct BilinearFormSpec {
  int n = 0;
  Mat Omega;
  bool antisymmetric = false;

  void validate() const;  // antisymmetric requires Omega = -Omega^T exactly
  double operator()(const Vec& xi, const Vec& eta) const { return xi.dot(Omega * eta); }

  // [[0, I], [-I, 0]] on R^{2*dof}.
  static BilinearFormSpec canonical(int dof);
};

// Residual of the discrete Lie-derivative identity
//   omega(xi1, eta1) = omega(xi0, eta0)
//                      + dt sum_i b_i [omega(dXi_i, Eta_i) + omega(Xi_i, dEta_i)],
// evaluated with the stage derivatives the solver actually used. For
// quadratic-preserving tableaux the residual sits at solver tolerance; the
// drift omega(xi1,eta1) - omega(xi0,eta0) is whatever the dynamics dictate.
struct SymplecticResidual {
  double residual = 0.0;
  double omega_before = 0.0;
  double omega_after = 0.0;
  Vec y1;
  Vec xi1;
  Vec eta1;

  double drift() const;
};

SymplecticResidual symplectic_residual(const ButcherTableau& tab,
                                       const VectorFieldSpec& f,
                                       const BilinearFormSpec& omega,
                                       const Vec& y0, const Vec& xi0,
                                       const Vec& eta0, double dt,
                                       const SolverConfig& cfg = {});

}  // namespace feq
