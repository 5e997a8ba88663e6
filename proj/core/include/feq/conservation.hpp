#pragma once

#include <functional>
#include <string>
#include <vector>

#include "feq/stepper.hpp"
#include "feq/tableau.hpp"
#include "feq/vector_field.hpp"

namespace feq {

// Periodic 1D grid; node k lives at x = k*h, indices wrap mod K.
struct Grid1D {
  int K = 0;
  double h = 0.0;

  static Grid1D periodic(int K, double length);

  int wrap(int k) const {
    k %= K;
    return k < 0 ? k + K : k;
  }
  double x(int k) const { return h * k; }
  double length() const { return h * K; }
};

// Nodal density rho_k with interface flux J_{k+1/2} (stored at index k).
// Defining contract, for every state y and node k:
//   rho'_k(y)[f(y)] + (J_{k+1/2}(y) - J_{k-1/2}(y)) / h = 0.
struct LocalConservationLaw {
  enum class Tag { affine, quadratic };

  Tag tag = Tag::quadratic;
  std::string name;
  std::string note;  // sign convention / derivation remark
  std::function<double(const Vec&, int)> density;
  std::function<double(const Vec&, int)> flux;
  std::function<double(const Vec&, int, const Vec&)> density_deriv;
};

struct SemidiscreteSystem {
  Grid1D grid;
  std::string name;
  std::string layout;  // how state indices map to fields
  VectorFieldSpec field;
  std::vector<LocalConservationLaw> laws;
};

// i u_k' + (u_{k+1} - 2 u_k + u_{k-1}) / h^2 = phi(|u_k|^2) u_k, complex
// nodes stored as interleaved (Re, Im) pairs; state dimension 2K. Law:
// rho_k = |u_k|^2 / 2 with the midpoint-average mass flux.
SemidiscreteSystem nls_system(const Grid1D& grid,
                              std::function<double(double)> phi,
                              std::function<double(double)> dphi,
                              const std::string& name = "nls-fd");

// u_k' = p_k, p_k' = (u_{k+1} - 2 u_k + u_{k-1}) / h^2, state blocked as
// (u_0..u_{K-1}, p_0..p_{K-1}). Law: averaged energy density with flux
// J_{k+1/2} = -((p_k + p_{k+1}) / 2) ((u_{k+1} - u_k) / h), the sign chosen
// so the uniform contract rho' + div_h J = 0 holds.
SemidiscreteSystem wave_system(const Grid1D& grid);

// u_k' = (alpha / 2h) [theta (u_{k+1}^2 - u_{k-1}^2)
//                      + 2 (1 - theta) u_k (u_{k+1} - u_{k-1})]
//        + (nu / 2h^3) (u_{k+2} - 2 u_{k+1} + 2 u_{k-1} - u_{k-2}).
// The density u_k^2 admits a flux only at theta = 2/3; the system carries
// that law exactly when theta == 2/3.
SemidiscreteSystem kdv_system(const Grid1D& grid, double alpha, double nu,
                              double theta);

// The theta = 2/3 law (density u_k^2 and its summation-by-parts flux),
// usable as a diagnostic against any theta.
LocalConservationLaw kdv_density_law(const Grid1D& grid, double alpha, double nu);

// max_k |rho'_k(y)[f(y)] + div_h J(y)_k| for an arbitrary law/field pairing.
double contract_residual(const LocalConservationLaw& law,
                         const VectorFieldSpec& field, const Grid1D& grid,
                         const Vec& y);
double semidiscrete_contract_residual(const SemidiscreteSystem& sys, int law,
                                      const Vec& y);

// Per-node residual of the fully discrete conservation law
//   r_k = rho_k(y1) - rho_k(y0)
//         + dt sum_i b_i (J_{k+1/2}(Y_i) - J_{k-1/2}(Y_i)) / h.
Vec discrete_cl_residual(const ButcherTableau& tab, const SemidiscreteSystem& sys,
                         int law, const Vec& y0, double dt,
                         const SolverConfig& cfg = {});

// Integral form over nodes a..b (inclusive, forward, wrapping):
//   sum_k (rho_k(y1) - rho_k(y0)) h
//   + dt sum_i b_i (J_{b+1/2}(Y_i) - J_{a-1/2}(Y_i)).
double integral_cl_residual(const ButcherTableau& tab,
                            const SemidiscreteSystem& sys, int law, int a, int b,
                            const Vec& y0, double dt,
                            const SolverConfig& cfg = {});

// sum_k rho_k(y) h.
double total_density(const SemidiscreteSystem& sys, int law, const Vec& y);

}  // namespace feq
