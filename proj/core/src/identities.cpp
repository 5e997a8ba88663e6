#include "feq/identities.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>

namespace feq {

namespace {

Vec stack(const Vec& y, const Vec& z) {
  Vec yz(y.size() + z.size());
  yz << y, z;
  return yz;
}

FeResult finish(const Observable& F, const Vec& yz1, const Vec& y1_plain, int n, int m) {
  FeResult r;
  r.y1 = yz1.head(n);
  r.z1 = yz1.tail(m);
  r.residual = r.z1 - F.eval(r.y1);
  r.y_mismatch = linf(r.y1 - y1_plain);
  return r;
}

}  // namespace

FeResult fe_residual(const ButcherTableau& tab, const VectorFieldSpec& f,
                     const Observable& F, const Vec& y0, double dt,
                     const SolverConfig& cfg) {
  const AugmentedSystem aug = augment(f, F);
  const Vec yz0 = stack(y0, F.eval(y0));
  const StepResult augmented = rk_step(tab, aug.combined, yz0, dt, cfg);
  const StepResult plain = rk_step(tab, f, y0, dt, cfg);
  return finish(F, augmented.y1, plain.y1, f.n, F.m);
}

FeResult fe_residual(const AdditiveTableau& atab,
                     const std::vector<VectorFieldSpec>& fs,
                     const Observable& F, const Vec& y0, double dt,
                     const SolverConfig& cfg) {
  std::vector<VectorFieldSpec> gs;
  gs.reserve(fs.size());
  for (const auto& f : fs) gs.push_back(augment(f, F).combined);
  const Vec yz0 = stack(y0, F.eval(y0));
  const StepResult augmented = ark_step(atab, gs, yz0, dt, cfg);
  const StepResult plain = ark_step(atab, fs, y0, dt, cfg);
  return finish(F, augmented.y1, plain.y1, fs.front().n, F.m);
}

FeResult fe_residual(const PartitionedTableau& ptab, const VectorFieldSpec& f,
                     const Observable& F, const Vec& y0, double dt,
                     const SolverConfig& cfg, int z_part) {
  if (z_part != 0 && z_part != 1)
    throw std::invalid_argument("fe_residual: z_part must be 0 or 1");
  const AugmentedSystem aug = augment(f, F);
  PartitionedTableau extended = ptab;
  extended.partition.insert(extended.partition.end(), static_cast<std::size_t>(F.m), z_part);
  const Vec yz0 = stack(y0, F.eval(y0));
  const StepResult augmented = prk_step(extended, aug.combined, yz0, dt, cfg);
  const StepResult plain = prk_step(ptab, f, y0, dt, cfg);
  return finish(F, augmented.y1, plain.y1, f.n, F.m);
}

ExactFlow augment_flow(const ExactFlow& phi, const Observable& F) {
  ExactFlow out;
  out.n = phi.n + F.m;
  out.name = phi.name + "+" + F.name;
  const int n = phi.n;
  const int m = F.m;
  out.flow = [phi, F, n, m](double t, const Vec& yz) -> Vec {
    const Vec y = yz.head(n);
    const Vec y1 = phi.flow(t, y);
    Vec out(n + m);
    out.head(n) = y1;
    out.tail(m) = yz.tail(m) + F.eval(y1) - F.eval(y);
    return out;
  };
  return out;
}

FeResult fe_residual(const SplittingScheme& scheme,
                     const std::vector<ExactFlow>& flows, const Observable& F,
                     const Vec& y0, double dt) {
  std::vector<ExactFlow> augmented;
  augmented.reserve(flows.size());
  for (const auto& phi : flows) augmented.push_back(augment_flow(phi, F));
  const Vec yz0 = stack(y0, F.eval(y0));
  const Vec yz1 = splitting_step(scheme, augmented, yz0, dt);
  const Vec y1_plain = splitting_step(scheme, flows, y0, dt);
  return finish(F, yz1, y1_plain, flows.front().n, F.m);
}

FeResult fe_residual_aromatic(const VectorFieldSpec& f, const Observable& F,
                              const Vec& y0, double dt, double eps_div) {
  const AugmentedSystem aug = augment(f, F);
  const Vec yz0 = stack(y0, F.eval(y0));
  const Vec yz1 = aromatic_euler_step(aug.combined, yz0, dt, eps_div);
  const Vec y1_plain = aromatic_euler_step(f, y0, dt, eps_div);
  return finish(F, yz1, y1_plain, f.n, F.m);
}

CounterexampleReport strong_equivariance_counterexample(const SolverConfig& cfg) {
  const ButcherTableau mid = builtin_tableau("midpoint");

  VectorFieldSpec f;
  f.n = 1;
  f.name = "linear-decay";
  f.eval = [](const Vec& y) -> Vec { return -y; };
  f.jac_action = [](const Vec&, const Vec& w) -> Vec { return -w; };

  VectorFieldSpec g;  // the F-related field under F(y) = y^2
  g.n = 1;
  g.name = "related-decay";
  g.eval = [](const Vec& u) -> Vec { return -2.0 * u; };
  g.jac_action = [](const Vec&, const Vec& w) -> Vec { return -2.0 * w; };

  const Observable F = Observable::quadratic_form(Mat::Identity(1, 1), Vec::Zero(1), 0.0, "square");

  const Vec one = Vec::Ones(1);
  CounterexampleReport rep;
  rep.y1 = rk_step(mid, f, one, 1.0, cfg).y1[0];
  rep.u1 = rk_step(mid, g, one, 1.0, cfg).y1[0];
  rep.y1_squared = rep.y1 * rep.y1;

  const FeResult fe = fe_residual(mid, f, F, one, 1.0, cfg);
  rep.z1 = fe.z1[0];
  rep.fe_residual = fe.max_residual();
  rep.strong_mismatch = std::abs(rep.u1 - rep.y1_squared);
  return rep;
}

double bracket_identity_residual(const ButcherTableau& tab, const VectorFieldSpec& f,
                                 const Observable& F,
                                 const std::function<double(const Vec&)>& bracket,
                                 const Vec& y0, double dt, const SolverConfig& cfg) {
  const StepResult step = rk_step(tab, f, y0, dt, cfg);
  double sum = 0.0;
  for (int i = 0; i < tab.s; ++i) sum += tab.b[i] * bracket(step.stages[static_cast<std::size_t>(i)]);
  return std::abs(F.scalar(step.y1) - F.scalar(y0) - dt * sum);
}

DissipationResidual dissipation_identity_residual(
    const ButcherTableau& tab, const Mat& M, const Potential& V,
    const std::function<Vec(const Vec&, const Vec&)>& forcing, const Vec& y0,
    double dt, const SolverConfig& cfg) {
  const int d = static_cast<int>(M.rows());
  if (y0.size() != 2 * d)
    throw std::invalid_argument("dissipation_identity_residual: state must stack (q, p)");
  const Mat Minv = M.inverse();

  VectorFieldSpec f;
  f.n = 2 * d;
  f.name = "forced-hamiltonian";
  f.eval = [d, Minv, V, forcing](const Vec& y) -> Vec {
    const Vec q = y.head(d);
    const Vec p = y.tail(d);
    Vec out(2 * d);
    out.head(d) = Minv * p;
    out.tail(d) = -V.grad(q) + forcing(q, p);
    return out;
  };

  const StepResult step = rk_step(tab, f, y0, dt, cfg);

  const auto hamiltonian = [&](const Vec& y) {
    const Vec q = y.head(d);
    const Vec p = y.tail(d);
    return 0.5 * p.dot(Minv * p) + V.eval(q);
  };
  const auto kinetic = [&](const Vec& y) {
    const Vec p = y.tail(d);
    return 0.5 * p.dot(Minv * p);
  };

  double work_forcing = 0.0;
  double work_total = 0.0;
  for (int i = 0; i < tab.s; ++i) {
    const Vec& Y = step.stages[static_cast<std::size_t>(i)];
    const Vec Q = Y.head(d);
    const Vec P = Y.tail(d);
    const Vec phi = forcing(Q, P);
    work_forcing += tab.b[i] * P.dot(Minv * phi);
    work_total += tab.b[i] * P.dot(Minv * (phi - V.grad(Q)));
  }

  DissipationResidual out;
  out.full_energy =
      std::abs(hamiltonian(step.y1) - hamiltonian(y0) - dt * work_forcing);
  out.kinetic_only = std::abs(kinetic(step.y1) - kinetic(y0) - dt * work_total);
  return out;
}

ContractivityResult contractivity_check(const ButcherTableau& tab,
                                        const VectorFieldSpec& f, const Vec& x0,
                                        const Vec& y0, double dt,
                                        const SolverConfig& cfg) {
  const StepResult sx = rk_step(tab, f, x0, dt, cfg);
  const StepResult sy = rk_step(tab, f, y0, dt, cfg);
  ContractivityResult out;
  out.dist_before = (x0 - y0).norm();
  out.dist_after = (sx.y1 - sy.y1).norm();
  return out;
}

bool monotone_decrease_check(const ButcherTableau& tab, const VectorFieldSpec& f,
                             const Observable& F, const Vec& y0, int steps,
                             double dt, const SolverConfig& cfg, double tol) {
  Vec y = y0;
  double prev = F.scalar(y);
  for (int k = 0; k < steps; ++k) {
    y = rk_step(tab, f, y, dt, cfg).y1;
    const double cur = F.scalar(y);
    if (cur > prev + tol * (1.0 + std::abs(prev))) return false;
    prev = cur;
  }
  return true;
}

}  // namespace feq
