#pragma once

#include "feq/conservation.hpp"
#include "feq/tableau.hpp"
#include "feq/variational.hpp"

namespace feq {

// First-order wave equation u' = p, p' = div grad u as a canonical field
// system with H = (p^2 - |sigma|^2)/2 and sigma = -grad u eliminated; the
// reduced state is the wave_system state (u, p) blocked per grid node.
struct DDWWaveSystem {
  Grid1D grid;
  SemidiscreteSystem base;  // wave_system(grid)
};

DDWWaveSystem ddw_wave_system(const Grid1D& grid);

// Wave state with two variations xi = (v, r), eta = (v', r'), each blocked
// like the base state (dimension 2K).
struct MsPairState {
  Vec y;
  Vec xi;
  Vec eta;
};

// Nodal multisymplectic density w0_k = v_k r'_k - v'_k r_k.
double ms_density(const MsPairState& state, int k);

// Interface flux W_{k+1/2} = (v_k v'_{k+1} - v'_k v_{k+1}) / h, obtained by
// telescoping d/dt w0_k under the linearized semidiscrete wave equations;
// with this sign, d/dt w0_k = (W_{k+1/2} - W_{k-1/2}) / h.
double ms_flux(const DDWWaveSystem& sys, const MsPairState& state, int k);

// Oracle for the flux: evaluates d/dt w0_k through the variational
// equations and returns max_k |d/dt w0_k - div_h W|.
double semidiscrete_mscl_residual(const DDWWaveSystem& sys, const MsPairState& state);

struct MsclStepResult {
  Vec per_node;  // r_k of the fully discrete multisymplectic law
  Vec y1;
  Vec xi1;
  Vec eta1;
  double omega_total_before = 0.0;  // sum_k w0_k h
  double omega_total_after = 0.0;

  double max_residual() const { return linf(per_node); }
  double global_drift() const;
};

// Propagates (y, xi, eta) one step through the variational system and
// returns r_k = w0_k(1) - w0_k(0) - dt sum_i b_i (W_{k+1/2} - W_{k-1/2})/h
// evaluated on the stage variations.
MsclStepResult discrete_mscl_residual(const ButcherTableau& tab,
                                      const DDWWaveSystem& sys, const Vec& y0,
                                      const Vec& xi0, const Vec& eta0, double dt,
                                      const SolverConfig& cfg = {});

// |sum_k w0_k(1) h - sum_k w0_k(0) h|; the periodic fluxes telescope, so
// quadratic-preserving methods keep this at solver tolerance.
double global_symplectic_residual(const ButcherTableau& tab,
                                  const DDWWaveSystem& sys, const Vec& y0,
                                  const Vec& xi0, const Vec& eta0, double dt,
                                  const SolverConfig& cfg = {});

}  // namespace feq
