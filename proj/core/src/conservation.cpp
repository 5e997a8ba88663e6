#include "feq/conservation.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace feq {

Grid1D Grid1D::periodic(int K, double length) {
  if (K < 3) throw std::invalid_argument("Grid1D: need at least 3 nodes");
  if (length <= 0.0) throw std::invalid_argument("Grid1D: length must be positive");
  return Grid1D{K, length / K};
}

SemidiscreteSystem nls_system(const Grid1D& grid, std::function<double(double)> phi,
                              std::function<double(double)> dphi,
                              const std::string& name) {
  const int K = grid.K;
  const double h = grid.h;

  VectorFieldSpec field;
  field.n = 2 * K;
  field.name = name;
  field.eval = [grid, phi, K, h](const Vec& y) -> Vec {
    Vec out(2 * K);
    for (int k = 0; k < K; ++k) {
      const int kp = grid.wrap(k + 1);
      const int km = grid.wrap(k - 1);
      const double a = y[2 * k], b = y[2 * k + 1];
      const double lap_a = (y[2 * kp] - 2.0 * a + y[2 * km]) / (h * h);
      const double lap_b = (y[2 * kp + 1] - 2.0 * b + y[2 * km + 1]) / (h * h);
      const double ph = phi(a * a + b * b);
      out[2 * k] = -lap_b + ph * b;
      out[2 * k + 1] = lap_a - ph * a;
    }
    return out;
  };
  field.jac_action = [grid, phi, dphi, K, h](const Vec& y, const Vec& w) -> Vec {
    Vec out(2 * K);
    for (int k = 0; k < K; ++k) {
      const int kp = grid.wrap(k + 1);
      const int km = grid.wrap(k - 1);
      const double a = y[2 * k], b = y[2 * k + 1];
      const double da = w[2 * k], db = w[2 * k + 1];
      const double lap_da = (w[2 * kp] - 2.0 * da + w[2 * km]) / (h * h);
      const double lap_db = (w[2 * kp + 1] - 2.0 * db + w[2 * km + 1]) / (h * h);
      const double s = a * a + b * b;
      const double ph = phi(s);
      const double dph = dphi(s) * 2.0 * (a * da + b * db);
      out[2 * k] = -lap_db + ph * db + b * dph;
      out[2 * k + 1] = lap_da - ph * da - a * dph;
    }
    return out;
  };

  LocalConservationLaw law;
  law.tag = LocalConservationLaw::Tag::quadratic;
  law.name = "mass";
  law.note = "rho_k = |u_k|^2/2; J_{k+1/2} = Im(avg(u)~ * diff(u)/h); rho' + div_h J = 0";
  law.density = [](const Vec& y, int k) {
    const double a = y[2 * k], b = y[2 * k + 1];
    return 0.5 * (a * a + b * b);
  };
  law.density_deriv = [](const Vec& y, int k, const Vec& w) {
    return y[2 * k] * w[2 * k] + y[2 * k + 1] * w[2 * k + 1];
  };
  law.flux = [grid, h](const Vec& y, int k) {
    const int k0 = grid.wrap(k);
    const int k1 = grid.wrap(k + 1);
    const double mid_a = 0.5 * (y[2 * k0] + y[2 * k1]);
    const double mid_b = 0.5 * (y[2 * k0 + 1] + y[2 * k1 + 1]);
    const double diff_a = (y[2 * k1] - y[2 * k0]) / h;
    const double diff_b = (y[2 * k1 + 1] - y[2 * k0 + 1]) / h;
    // Im(conj(mid) * diff)
    return mid_a * diff_b - mid_b * diff_a;
  };

  SemidiscreteSystem sys;
  sys.grid = grid;
  sys.name = name;
  sys.layout = "interleaved (Re u_k, Im u_k), dimension 2K";
  sys.field = std::move(field);
  sys.laws.push_back(std::move(law));
  return sys;
}

SemidiscreteSystem wave_system(const Grid1D& grid) {
  const int K = grid.K;
  const double h = grid.h;

  VectorFieldSpec field;
  field.n = 2 * K;
  field.name = "wave-fd";
  const auto apply = [grid, K, h](const Vec& y) -> Vec {
    Vec out(2 * K);
    for (int k = 0; k < K; ++k) {
      out[k] = y[K + k];
      out[K + k] = (y[grid.wrap(k + 1)] - 2.0 * y[k] + y[grid.wrap(k - 1)]) / (h * h);
    }
    return out;
  };
  field.eval = apply;
  field.jac_action = [apply](const Vec&, const Vec& w) { return apply(w); };

  LocalConservationLaw law;
  law.tag = LocalConservationLaw::Tag::quadratic;
  law.name = "energy";
  law.note = "rho_k averages the one-sided gradient energies; "
             "J_{k+1/2} = -avg(p) * diff(u)/h so that rho' + div_h J = 0";
  law.density = [grid, K, h](const Vec& y, int k) {
    const double p = y[K + k];
    const double dr = (y[grid.wrap(k + 1)] - y[k]) / h;
    const double dl = (y[k] - y[grid.wrap(k - 1)]) / h;
    return 0.5 * p * p + 0.25 * dr * dr + 0.25 * dl * dl;
  };
  law.density_deriv = [grid, K, h](const Vec& y, int k, const Vec& w) {
    const int kp = grid.wrap(k + 1);
    const int km = grid.wrap(k - 1);
    const double dr = (y[kp] - y[k]) / h;
    const double dl = (y[k] - y[km]) / h;
    return y[K + k] * w[K + k] + 0.5 * dr * (w[kp] - w[k]) / h +
           0.5 * dl * (w[k] - w[km]) / h;
  };
  law.flux = [grid, K, h](const Vec& y, int k) {
    const int k0 = grid.wrap(k);
    const int k1 = grid.wrap(k + 1);
    return -0.5 * (y[K + k0] + y[K + k1]) * (y[k1] - y[k0]) / h;
  };

  SemidiscreteSystem sys;
  sys.grid = grid;
  sys.name = "wave-fd";
  sys.layout = "blocked (u_0..u_{K-1}, p_0..p_{K-1}), dimension 2K";
  sys.field = std::move(field);
  sys.laws.push_back(std::move(law));
  return sys;
}

LocalConservationLaw kdv_density_law(const Grid1D& grid, double alpha, double nu) {
  const double h = grid.h;
  LocalConservationLaw law;
  law.tag = LocalConservationLaw::Tag::quadratic;
  law.name = "u-squared";
  law.note = "flux obtained by multiplying u_k' by 2 u_k and telescoping; "
             "valid against the theta = 2/3 field";
  law.density = [](const Vec& u, int k) { return u[k] * u[k]; };
  law.density_deriv = [](const Vec& u, int k, const Vec& w) { return 2.0 * u[k] * w[k]; };
  law.flux = [grid, alpha, nu, h](const Vec& u, int k) {
    const double u0 = u[grid.wrap(k)];
    const double u1 = u[grid.wrap(k + 1)];
    const double um = u[grid.wrap(k - 1)];
    const double u2 = u[grid.wrap(k + 2)];
    const double advective = -(2.0 * alpha / 3.0) * u0 * u1 * (u0 + u1);
    const double dispersive = -(nu / (h * h)) * (u0 * (u2 - u1) - u1 * (u0 - um));
    return advective + dispersive;
  };
  return law;
}

SemidiscreteSystem kdv_system(const Grid1D& grid, double alpha, double nu,
                              double theta) {
  const int K = grid.K;
  if (K < 5) throw std::invalid_argument("kdv_system: need at least 5 nodes");
  const double h = grid.h;

  VectorFieldSpec field;
  field.n = K;
  field.name = "kdv-theta";
  field.eval = [grid, alpha, nu, theta, K, h](const Vec& u) -> Vec {
    Vec out(K);
    for (int k = 0; k < K; ++k) {
      const double up = u[grid.wrap(k + 1)];
      const double um = u[grid.wrap(k - 1)];
      const double upp = u[grid.wrap(k + 2)];
      const double umm = u[grid.wrap(k - 2)];
      out[k] = (alpha / (2.0 * h)) *
                   (theta * (up * up - um * um) +
                    2.0 * (1.0 - theta) * u[k] * (up - um)) +
               (nu / (2.0 * h * h * h)) * (upp - 2.0 * up + 2.0 * um - umm);
    }
    return out;
  };
  field.jac_action = [grid, alpha, nu, theta, K, h](const Vec& u, const Vec& w) -> Vec {
    Vec out(K);
    for (int k = 0; k < K; ++k) {
      const int kp = grid.wrap(k + 1);
      const int km = grid.wrap(k - 1);
      const double dw = (alpha / (2.0 * h)) *
                            (theta * 2.0 * (u[kp] * w[kp] - u[km] * w[km]) +
                             2.0 * (1.0 - theta) *
                                 (w[k] * (u[kp] - u[km]) + u[k] * (w[kp] - w[km]))) +
                        (nu / (2.0 * h * h * h)) *
                            (w[grid.wrap(k + 2)] - 2.0 * w[kp] + 2.0 * w[km] -
                             w[grid.wrap(k - 2)]);
      out[k] = dw;
    }
    return out;
  };

  SemidiscreteSystem sys;
  sys.grid = grid;
  sys.name = "kdv-theta";
  sys.layout = "nodal u_k, dimension K";
  sys.field = std::move(field);
  if (std::abs(theta - 2.0 / 3.0) < 1e-14)
    sys.laws.push_back(kdv_density_law(grid, alpha, nu));
  return sys;
}

double contract_residual(const LocalConservationLaw& law,
                         const VectorFieldSpec& field, const Grid1D& grid,
                         const Vec& y) {
  const Vec fy = field(y);
  double worst = 0.0;
  for (int k = 0; k < grid.K; ++k) {
    const double div =
        (law.flux(y, k) - law.flux(y, grid.wrap(k - 1))) / grid.h;
    worst = std::max(worst, std::abs(law.density_deriv(y, k, fy) + div));
  }
  return worst;
}

double semidiscrete_contract_residual(const SemidiscreteSystem& sys, int law,
                                      const Vec& y) {
  return contract_residual(sys.laws.at(static_cast<std::size_t>(law)), sys.field,
                           sys.grid, y);
}

Vec discrete_cl_residual(const ButcherTableau& tab, const SemidiscreteSystem& sys,
                         int law_index, const Vec& y0, double dt,
                         const SolverConfig& cfg) {
  const LocalConservationLaw& law = sys.laws.at(static_cast<std::size_t>(law_index));
  const Grid1D& grid = sys.grid;
  const StepResult step = rk_step(tab, sys.field, y0, dt, cfg);

  Vec r(grid.K);
  for (int k = 0; k < grid.K; ++k) {
    double flux_sum = 0.0;
    for (int i = 0; i < tab.s; ++i) {
      const Vec& Y = step.stages[static_cast<std::size_t>(i)];
      flux_sum += tab.b[i] * (law.flux(Y, k) - law.flux(Y, grid.wrap(k - 1)));
    }
    r[k] = law.density(step.y1, k) - law.density(y0, k) + dt * flux_sum / grid.h;
  }
  return r;
}

double integral_cl_residual(const ButcherTableau& tab,
                            const SemidiscreteSystem& sys, int law_index, int a,
                            int b, const Vec& y0, double dt,
                            const SolverConfig& cfg) {
  const LocalConservationLaw& law = sys.laws.at(static_cast<std::size_t>(law_index));
  const Grid1D& grid = sys.grid;
  if (b < a) throw std::invalid_argument("integral_cl_residual: need a <= b");
  const StepResult step = rk_step(tab, sys.field, y0, dt, cfg);

  double dmass = 0.0;
  for (int k = a; k <= b; ++k) {
    const int kk = grid.wrap(k);
    dmass += (law.density(step.y1, kk) - law.density(y0, kk)) * grid.h;
  }
  double boundary = 0.0;
  for (int i = 0; i < tab.s; ++i) {
    const Vec& Y = step.stages[static_cast<std::size_t>(i)];
    boundary += tab.b[i] * (law.flux(Y, grid.wrap(b)) - law.flux(Y, grid.wrap(a - 1)));
  }
  return dmass + dt * boundary;
}

double total_density(const SemidiscreteSystem& sys, int law_index, const Vec& y) {
  const LocalConservationLaw& law = sys.laws.at(static_cast<std::size_t>(law_index));
  double total = 0.0;
  for (int k = 0; k < sys.grid.K; ++k) total += law.density(y, k) * sys.grid.h;
  return total;
}

}  // namespace feq
