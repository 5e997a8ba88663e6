#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "feq/tableau.hpp"
#include "feq/types.hpp"
#include "feq/vector_field.hpp"

namespace feq {

struct SolverConfig {
  enum class Strategy { newton, fixed_point };

  double tol = 1e-13;  // stage residual tolerance, relative to state/field scale
  int max_iters = 100;
  Strategy strategy = Strategy::newton;
  double eps_jac = 0.0;  // finite-difference perturbation; <= 0 selects default
};

// Stage solve failed to reach tolerance within max_iters.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual, int iters)
      : std::runtime_error(what), residual(residual), iters(iters) {}

  double residual;
  int iters;
};

// One step of a (possibly additive) Runge-Kutta method. The stage solve runs
// in stage-derivative space: unknowns k_i^[nu], stages reconstructed as
//   Y_i = y0 + dt * sum_nu sum_j A^[nu](i,j) k_j^[nu],
//   y1  = y0 + dt * sum_nu sum_i b_i^[nu]  k_i^[nu],
// so the update relations hold to roundoff by construction and downstream
// residual identities are limited only by |k_i - f(Y_i)| <= tol.
struct StepResult {
  Vec y1;
  std::vector<Vec> stages;                     // Y_i
  std::vector<std::vector<Vec>> stage_derivs;  // [component][stage]
  int solver_iters = 0;
  double solver_residual = 0.0;

  // Stage derivative of a plain (single-component) method.
  const Vec& deriv(int i) const;
  // Sum of per-component stage derivatives.
  Vec total_deriv(int i) const;
};

StepResult rk_step(const ButcherTableau& tab, const VectorFieldSpec& f,
                   const Vec& y0, double dt, const SolverConfig& cfg = {});

StepResult ark_step(const AdditiveTableau& atab,
                    const std::vector<VectorFieldSpec>& fs, const Vec& y0,
                    double dt, const SolverConfig& cfg = {});

// Partitioned step: equivalent to the additive method with the component
// fields obtained by masking f onto each part of the index partition.
StepResult prk_step(const PartitionedTableau& ptab, const VectorFieldSpec& f,
                    const Vec& y0, double dt, const SolverConfig& cfg = {});

// Masked component fields induced by an index partition (parts 0 and 1).
std::vector<VectorFieldSpec> partition_fields(const VectorFieldSpec& f,
                                              const std::vector<int>& partition);

Vec splitting_step(const SplittingScheme& scheme,
                   const std::vector<ExactFlow>& flows, const Vec& y0,
                   double dt);

// y1 = y0 + dt^2 (f div f)(y0); the dt^2 scaling comes from applying the
// unit-step map to the scaled field dt*f. Divergence uses jac_action when
// available, otherwise central differences with perturbation eps_div.
Vec aromatic_euler_step(const VectorFieldSpec& f, const Vec& y0, double dt,
                        double eps_div = 0.0);

}  // namespace feq
