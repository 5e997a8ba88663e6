#include "feq/stepper.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace feq {

const Vec& StepResult::deriv(int i) const {
  if (stage_derivs.size() != 1)
    throw std::logic_error("StepResult::deriv: method has multiple components");
  return stage_derivs[0][static_cast<std::size_t>(i)];
}

Vec StepResult::total_deriv(int i) const {
  Vec sum = stage_derivs[0][static_cast<std::size_t>(i)];
  for (std::size_t nu = 1; nu < stage_derivs.size(); ++nu)
    sum += stage_derivs[nu][static_cast<std::size_t>(i)];
  return sum;
}

namespace {

// Stage-derivative unknowns k[nu][i], flattened as ((nu * s) + i) * n + r.
struct StageWork {
  int N, s, n;
  double dt;
  const AdditiveTableau& atab;
  const std::vector<VectorFieldSpec>& fs;
  const Vec& y0;

  Vec stage_state(const std::vector<std::vector<Vec>>& k, int i) const {
    Vec Y = y0;
    for (int nu = 0; nu < N; ++nu) {
      const Mat& A = atab.parts[nu].A;
      for (int j = 0; j < s; ++j) {
        const double a = A(i, j);
        if (a != 0.0) Y += (dt * a) * k[nu][j];
      }
    }
    return Y;
  }

  // residual[nu][i] = k[nu][i] - f^[nu](Y_i); returns max abs entry.
  double residual(const std::vector<std::vector<Vec>>& k,
                  std::vector<std::vector<Vec>>& G) const {
    double worst = 0.0;
    for (int i = 0; i < s; ++i) {
      const Vec Y = stage_state(k, i);
      for (int nu = 0; nu < N; ++nu) {
        G[nu][i] = k[nu][i] - fs[nu](Y);
        worst = std::max(worst, linf(G[nu][i]));
      }
    }
    return worst;
  }
};

// Newton matrix with per-row Jacobian anchors:
//   d G[nu][i] / d k[mu][j] = delta * I - dt A^[mu](i,j) J^[nu](anchor_i).
Eigen::PartialPivLU<Mat> factor_newton_matrix(const StageWork& w,
                                              const std::vector<Mat>& jac,
                                              const std::vector<int>& anchor) {
  const int dim = w.N * w.s * w.n;
  Mat M = Mat::Identity(dim, dim);
  for (int nu = 0; nu < w.N; ++nu) {
    for (int i = 0; i < w.s; ++i) {
      const int row = (nu * w.s + i) * w.n;
      const Mat& J = jac[static_cast<std::size_t>(anchor[static_cast<std::size_t>(i)] * w.N + nu)];
      for (int mu = 0; mu < w.N; ++mu) {
        const Mat& A = w.atab.parts[mu].A;
        for (int j = 0; j < w.s; ++j) {
          const double a = A(i, j);
          if (a != 0.0) M.block((Eigen::Index)row, (mu * w.s + j) * w.n, w.n, w.n) -= (w.dt * a) * J;
        }
      }
    }
  }
  return Eigen::PartialPivLU<Mat>(M);
}

bool all_parts_explicit(const AdditiveTableau& atab) {
  for (const auto& p : atab.parts)
    if (!p.is_explicit()) return false;
  return true;
}

}  // namespace

StepResult ark_step(const AdditiveTableau& atab,
                    const std::vector<VectorFieldSpec>& fs, const Vec& y0,
                    double dt, const SolverConfig& cfg) {
  atab.validate();
  const int N = atab.components();
  const int s = atab.stages();
  const int n = static_cast<int>(y0.size());
  if (static_cast<int>(fs.size()) != N)
    throw std::invalid_argument("ark_step: component count does not match tableau");
  for (const auto& f : fs)
    if (f.n != n) throw std::invalid_argument("ark_step: field dimension does not match state");

  StepResult out;
  out.stages.resize(static_cast<std::size_t>(s));
  out.stage_derivs.assign(static_cast<std::size_t>(N),
                          std::vector<Vec>(static_cast<std::size_t>(s)));

  std::vector<std::vector<Vec>> k(static_cast<std::size_t>(N),
                                  std::vector<Vec>(static_cast<std::size_t>(s)));
  const StageWork work{N, s, n, dt, atab, fs, y0};

  double field_scale = 0.0;
  {
    for (int nu = 0; nu < N; ++nu) {
      const Vec k0 = fs[nu](y0);
      field_scale = std::max(field_scale, linf(k0));
      for (int i = 0; i < s; ++i) k[nu][i] = k0;
    }
  }
  const double tol_eff = cfg.tol * (1.0 + linf(y0) + field_scale);

  if (all_parts_explicit(atab) && cfg.strategy == SolverConfig::Strategy::newton) {
    // Forward substitution: stage i depends on derivatives j < i only.
    for (int i = 0; i < s; ++i) {
      Vec Y = y0;
      for (int nu = 0; nu < N; ++nu) {
        const Mat& A = atab.parts[nu].A;
        for (int j = 0; j < i; ++j) {
          const double a = A(i, j);
          if (a != 0.0) Y += (dt * a) * k[nu][j];
        }
      }
      for (int nu = 0; nu < N; ++nu) k[nu][i] = fs[nu](Y);
    }
    out.solver_iters = 0;
    out.solver_residual = 0.0;
  } else if (cfg.strategy == SolverConfig::Strategy::fixed_point) {
    std::vector<std::vector<Vec>> G = k;
    double res = work.residual(k, G);
    int iter = 0;
    while (res > tol_eff) {
      if (!std::isfinite(res))
        throw SolverError("ark_step: fixed-point iteration diverged", res, iter);
      if (++iter > cfg.max_iters)
        throw SolverError("ark_step: fixed-point iteration did not converge", res, iter);
      for (int nu = 0; nu < N; ++nu)
        for (int i = 0; i < s; ++i) k[nu][i] -= G[nu][i];
      res = work.residual(k, G);
    }
    out.solver_iters = iter;
    out.solver_residual = res;
  } else {
    // Simplified Newton, Jacobians frozen at y0 and refreshed at the current
    // stage states when the iteration stagnates.
    std::vector<Mat> jac(static_cast<std::size_t>(N));
    for (int nu = 0; nu < N; ++nu) jac[static_cast<std::size_t>(nu)] = fs[nu].jacobian(y0, cfg.eps_jac);
    std::vector<int> anchor(static_cast<std::size_t>(s), 0);  // all rows share jac[0..N)
    std::vector<Mat> row_jac = jac;                            // anchor table, N entries per anchor id
    auto lu = factor_newton_matrix(work, row_jac, anchor);

    std::vector<std::vector<Vec>> G = k;
    double res = work.residual(k, G);
    double prev = res;
    int iter = 0;
    const int dim = N * s * n;
    Vec rhs(dim);
    while (res > tol_eff) {
      if (!std::isfinite(res))
        throw SolverError("ark_step: Newton iteration diverged", res, iter);
      if (++iter > cfg.max_iters)
        throw SolverError("ark_step: Newton iteration did not converge", res, iter);
      for (int nu = 0; nu < N; ++nu)
        for (int i = 0; i < s; ++i)
          rhs.segment(((nu * s) + i) * n, n) = -G[nu][i];
      const Vec delta = lu.solve(rhs);
      for (int nu = 0; nu < N; ++nu)
        for (int i = 0; i < s; ++i)
          k[nu][i] += delta.segment(((nu * s) + i) * n, n);
      res = work.residual(k, G);
      if (std::isfinite(res) && res > 0.5 * prev && res > tol_eff) {
        // Stagnating: rebuild with per-stage anchors at the current iterate.
        row_jac.resize(static_cast<std::size_t>(s) * N);
        for (int i = 0; i < s; ++i) {
          const Vec Y = work.stage_state(k, i);
          anchor[static_cast<std::size_t>(i)] = i;
          for (int nu = 0; nu < N; ++nu)
            row_jac[static_cast<std::size_t>(i * N + nu)] = fs[nu].jacobian(Y, cfg.eps_jac);
        }
        lu = factor_newton_matrix(work, row_jac, anchor);
      }
      prev = res;
    }
    out.solver_iters = iter;
    out.solver_residual = res;
  }

  for (int i = 0; i < s; ++i) out.stages[static_cast<std::size_t>(i)] = work.stage_state(k, i);
  Vec y1 = y0;
  for (int nu = 0; nu < N; ++nu) {
    const Vec& b = atab.parts[nu].b;
    for (int i = 0; i < s; ++i) {
      y1 += (dt * b[i]) * k[nu][i];
      out.stage_derivs[static_cast<std::size_t>(nu)][static_cast<std::size_t>(i)] = std::move(k[nu][i]);
    }
  }
  out.y1 = std::move(y1);
  return out;
}

StepResult rk_step(const ButcherTableau& tab, const VectorFieldSpec& f,
                   const Vec& y0, double dt, const SolverConfig& cfg) {
  if (f.n != static_cast<int>(y0.size()))
    throw std::invalid_argument("rk_step: field dimension does not match state");
  return ark_step(AdditiveTableau{{tab}}, {f}, y0, dt, cfg);
}

std::vector<VectorFieldSpec> partition_fields(const VectorFieldSpec& f,
                                              const std::vector<int>& partition) {
  if (static_cast<int>(partition.size()) != f.n)
    throw std::invalid_argument("partition_fields: partition does not cover the state");
  std::vector<VectorFieldSpec> parts;
  for (int nu = 0; nu < 2; ++nu) {
    VectorFieldSpec g;
    g.n = f.n;
    g.name = f.name + "[part" + std::to_string(nu) + "]";
    g.eval = [f, partition, nu](const Vec& y) {
      Vec v = f.eval(y);
      for (int i = 0; i < static_cast<int>(partition.size()); ++i)
        if (partition[static_cast<std::size_t>(i)] != nu) v[i] = 0.0;
      return v;
    };
    if (f.jac_action) {
      g.jac_action = [f, partition, nu](const Vec& y, const Vec& w) {
        Vec v = f.jac_action(y, w);
        for (int i = 0; i < static_cast<int>(partition.size()); ++i)
          if (partition[static_cast<std::size_t>(i)] != nu) v[i] = 0.0;
        return v;
      };
    }
    parts.push_back(std::move(g));
  }
  return parts;
}

StepResult prk_step(const PartitionedTableau& ptab, const VectorFieldSpec& f,
                    const Vec& y0, double dt, const SolverConfig& cfg) {
  ptab.validate(static_cast<int>(y0.size()));
  return ark_step(ptab.as_additive(), partition_fields(f, ptab.partition), y0, dt, cfg);
}

Vec splitting_step(const SplittingScheme& scheme,
                   const std::vector<ExactFlow>& flows, const Vec& y0,
                   double dt) {
  scheme.validate();
  if (static_cast<int>(flows.size()) != scheme.components)
    throw std::invalid_argument("splitting_step: flow count does not match scheme");
  for (const auto& phi : flows)
    if (phi.n != static_cast<int>(y0.size()))
      throw std::invalid_argument("splitting_step: flow dimension does not match state");
  Vec y = y0;
  for (const auto& st : scheme.stages)
    y = flows[static_cast<std::size_t>(st.component)].flow(st.fraction * dt, y);
  return y;
}

Vec aromatic_euler_step(const VectorFieldSpec& f, const Vec& y0, double dt,
                        double eps_div) {
  if (f.n != static_cast<int>(y0.size()))
    throw std::invalid_argument("aromatic_euler_step: field dimension does not match state");
  return y0 + (dt * dt) * f.divergence(y0, eps_div) * f(y0);
}

}  // namespace feq
