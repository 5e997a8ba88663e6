#include "feq/variational.hpp"

#include <cmath>
#include <stdexcept>

namespace feq {

VariationalSystem make_variational(const VectorFieldSpec& f, int k) {
  if (k < 1) throw std::invalid_argument("make_variational: need at least one variation");
  const int n = f.n;

  VectorFieldSpec combined;
  combined.n = n * (1 + k);
  combined.name = f.name + "+tangent";
  combined.eval = [f, n, k](const Vec& state) -> Vec {
    const Vec y = state.head(n);
    Vec out(state.size());
    out.head(n) = f.eval(y);
    for (int j = 0; j < k; ++j) {
      const Vec eta = state.segment(n * (1 + j), n);
      out.segment(n * (1 + j), n) = f.jac_apply(y, eta);
    }
    return out;
  };

  if (f.jac_action) {
    // d/d(y,eta) of (f(y), f'(y)eta) applied to (wy, weta):
    //   (f'(y)wy, f''(y)[wy, eta] + f'(y)weta), f'' differenced on jac_action.
    combined.jac_action = [f, n, k](const Vec& state, const Vec& w) -> Vec {
      const Vec y = state.head(n);
      const Vec wy = w.head(n);
      Vec out(state.size());
      const bool move_y = linf(wy) > 0.0;
      out.head(n) = move_y ? f.jac_action(y, wy) : Vec::Zero(n);
      for (int j = 0; j < k; ++j) {
        const Vec eta = state.segment(n * (1 + j), n);
        const Vec weta = w.segment(n * (1 + j), n);
        Vec block = f.jac_action(y, weta);
        if (move_y && linf(eta) > 0.0) {
          const double h = default_fd_eps() * (1.0 + linf(y)) / (1.0 + linf(wy));
          block += (f.jac_action(y + h * wy, eta) - f.jac_action(y - h * wy, eta)) / (2.0 * h);
        }
        out.segment(n * (1 + j), n) = block;
      }
      return out;
    };
  }

  return VariationalSystem{f, k, std::move(combined)};
}

Vec TangentResult::stage_y(int i) const {
  return step.stages[static_cast<std::size_t>(i)].head(n);
}

Vec TangentResult::stage_eta(int i, int j) const {
  return step.stages[static_cast<std::size_t>(i)].segment(n * (1 + j), n);
}

Vec TangentResult::stage_eta_deriv(int i, int j) const {
  return step.total_deriv(i).segment(n * (1 + j), n);
}

namespace {

Vec stack_state(const VectorFieldSpec& f, const Vec& y0, const std::vector<Vec>& etas) {
  const int n = f.n;
  Vec state(n * (1 + static_cast<int>(etas.size())));
  state.head(n) = y0;
  for (std::size_t j = 0; j < etas.size(); ++j) {
    if (etas[j].size() != n)
      throw std::invalid_argument("tangent_step: variation dimension does not match field");
    state.segment(n * (1 + static_cast<Eigen::Index>(j)), n) = etas[j];
  }
  return state;
}

TangentResult unpack(StepResult step, int n, int k) {
  TangentResult out;
  out.n = n;
  out.k = k;
  out.y1 = step.y1.head(n);
  out.eta1.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) out.eta1.push_back(step.y1.segment(n * (1 + j), n));
  out.step = std::move(step);
  return out;
}

}  // namespace

TangentResult tangent_step(const ButcherTableau& tab, const VectorFieldSpec& f,
                           const Vec& y0, const std::vector<Vec>& etas,
                           double dt, const SolverConfig& cfg) {
  const int k = static_cast<int>(etas.size());
  const VariationalSystem var = make_variational(f, k);
  const Vec state0 = stack_state(f, y0, etas);
  return unpack(rk_step(tab, var.combined, state0, dt, cfg), f.n, k);
}

TangentResult tangent_step(const PartitionedTableau& ptab, const VectorFieldSpec& f,
                           const Vec& y0, const std::vector<Vec>& etas,
                           double dt, const SolverConfig& cfg) {
  const int k = static_cast<int>(etas.size());
  const VariationalSystem var = make_variational(f, k);
  PartitionedTableau extended = ptab;
  extended.partition.reserve(static_cast<std::size_t>(f.n) * (1 + k));
  for (int j = 0; j < k; ++j)
    extended.partition.insert(extended.partition.end(), ptab.partition.begin(),
                              ptab.partition.end());
  const Vec state0 = stack_state(f, y0, etas);
  return unpack(prk_step(extended, var.combined, state0, dt, cfg), f.n, k);
}

TangentResult tangent_step(const AdditiveTableau& atab,
                           const std::vector<VectorFieldSpec>& fs, const Vec& y0,
                           const std::vector<Vec>& etas, double dt,
                           const SolverConfig& cfg) {
  const int k = static_cast<int>(etas.size());
  std::vector<VectorFieldSpec> lifted;
  lifted.reserve(fs.size());
  for (const auto& f : fs) lifted.push_back(make_variational(f, k).combined);
  const Vec state0 = stack_state(fs.front(), y0, etas);
  return unpack(ark_step(atab, lifted, state0, dt, cfg), fs.front().n, k);
}

void BilinearFormSpec::validate() const {
  if (Omega.rows() != n || Omega.cols() != n)
    throw std::invalid_argument("bilinear form: matrix dimension mismatch");
  if (antisymmetric && (Omega + Omega.transpose()).cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("bilinear form: flagged antisymmetric but Omega != -Omega^T");
}

BilinearFormSpec BilinearFormSpec::canonical(int dof) {
  BilinearFormSpec omega;
  omega.n = 2 * dof;
  omega.Omega = Mat::Zero(2 * dof, 2 * dof);
  omega.Omega.topRightCorner(dof, dof) = Mat::Identity(dof, dof);
  omega.Omega.bottomLeftCorner(dof, dof) = -Mat::Identity(dof, dof);
  omega.antisymmetric = true;
  return omega;
}

double SymplecticResidual::drift() const { return std::abs(omega_after - omega_before); }

SymplecticResidual symplectic_residual(const ButcherTableau& tab,
                                       const VectorFieldSpec& f,
                                       const BilinearFormSpec& omega,
                                       const Vec& y0, const Vec& xi0,
                                       const Vec& eta0, double dt,
                                       const SolverConfig& cfg) {
  omega.validate();
  const TangentResult t = tangent_step(tab, f, y0, {xi0, eta0}, dt, cfg);

  double lie_sum = 0.0;
  for (int i = 0; i < tab.s; ++i) {
    const Vec Xi = t.stage_eta(i, 0);
    const Vec Eta = t.stage_eta(i, 1);
    const Vec dXi = t.stage_eta_deriv(i, 0);
    const Vec dEta = t.stage_eta_deriv(i, 1);
    lie_sum += tab.b[i] * (omega(dXi, Eta) + omega(Xi, dEta));
  }

  SymplecticResidual out;
  out.omega_before = omega(xi0, eta0);
  out.omega_after = omega(t.eta1[0], t.eta1[1]);
  out.residual = std::abs(out.omega_after - out.omega_before - dt * lie_sum);
  out.y1 = t.y1;
  out.xi1 = t.eta1[0];
  out.eta1 = t.eta1[1];
  return out;
}

}  // namespace feq
