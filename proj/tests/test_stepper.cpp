#include <doctest.h>

#include <cmath>

#include "feq/problems.hpp"
#include "feq/rng.hpp"
#include "feq/stepper.hpp"

using namespace feq;

namespace {

VectorFieldSpec decay_field(int dim = 1) { return builtin_problem("linear-decay", 0.0, dim).field; }

}  // namespace

TEST_CASE("explicit euler on y' = -y") {
  const StepResult r = rk_step(builtin_tableau("explicit-euler"), decay_field(), Vec::Ones(1), 0.5);
  CHECK(r.y1[0] == 0.5);
  CHECK(r.solver_iters == 0);
}

TEST_CASE("implicit midpoint contracts y0 = 1 to exactly 1/3 at dt = 1") {
  const StepResult r = rk_step(builtin_tableau("midpoint"), decay_field(), Vec::Ones(1), 1.0);
  CHECK(std::abs(r.y1[0] - 1.0 / 3.0) <= 1e-15);
}

TEST_CASE("rk4 on the zero field returns y0") {
  VectorFieldSpec zero;
  zero.n = 3;
  zero.name = "zero";
  zero.eval = [](const Vec& y) -> Vec { return Vec::Zero(y.size()); };
  Rng rng(7);
  const Vec y0 = rng.normal_vec(3);
  const StepResult r = rk_step(builtin_tableau("rk4"), zero, y0, 1.0);
  CHECK((r.y1 - y0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("stage data reconstructs the update formula") {
  Rng rng(11);
  const VectorFieldSpec f = random_polynomial_field(rng, 4, 3);
  const Vec y0 = rng.uniform_vec(4, -1.0, 1.0);
  const SolverConfig cfg;
  const ButcherTableau tab = builtin_tableau("gauss2");
  const StepResult r = rk_step(tab, f, y0, 0.2, cfg);

  // Reconstruction from the solver's stage derivatives is exact; from
  // re-evaluated f(Y_i) it is bounded by the stage tolerance.
  Vec recon = y0;
  Vec recon_f = y0;
  for (int i = 0; i < tab.s; ++i) {
    recon += 0.2 * tab.b[i] * r.deriv(i);
    recon_f += 0.2 * tab.b[i] * f(r.stages[i]);
  }
  CHECK(linf(r.y1 - recon) <= 1e-15);
  CHECK(linf(r.y1 - recon_f) <= 10.0 * cfg.tol * (1.0 + linf(y0)));

  for (int i = 0; i < tab.s; ++i) {
    Vec stage = y0;
    for (int j = 0; j < tab.s; ++j) stage += 0.2 * tab.A(i, j) * r.deriv(j);
    CHECK(linf(r.stages[i] - stage) <= 1e-15);
  }
}

TEST_CASE("affine covariance of rk steps") {
  Rng rng(23);
  const ButcherTableau tab = builtin_tableau("gauss2");
  for (int trial = 0; trial < 5; ++trial) {
    const VectorFieldSpec f = random_polynomial_field(rng, 3, 2);
    Mat M = rng.uniform_mat(3, 3, -1.0, 1.0) + 2.0 * Mat::Identity(3, 3);
    const Vec v = rng.uniform_vec(3, -1.0, 1.0);
    const Mat Minv = M.inverse();

    VectorFieldSpec g;
    g.n = 3;
    g.name = "related";
    g.eval = [f, M, Minv, v](const Vec& u) -> Vec { return M * f.eval(Minv * (u - v)); };
    g.jac_action = [f, M, Minv, v](const Vec& u, const Vec& w) -> Vec {
      return M * f.jac_action(Minv * (u - v), Minv * w);
    };

    const Vec y0 = rng.uniform_vec(3, -0.5, 0.5);
    const Vec via_f = M * rk_step(tab, f, y0, 0.15).y1 + v;
    const Vec via_g = rk_step(tab, g, M * y0 + v, 0.15).y1;
    CHECK(linf(via_f - via_g) <= 1e-10);
  }
}

TEST_CASE("prk lobatto pair reproduces the leapfrog update") {
  const PartitionedTableau ptab{
      {builtin_tableau("lobatto-iiia-2"), builtin_tableau("lobatto-iiib-2")},
      {0, 1}};
  const VectorFieldSpec f = builtin_problem("harmonic").field;
  Vec y0(2);
  y0 << 1.0, 0.0;
  const double dt = 0.1;
  const StepResult r = prk_step(ptab, f, y0, dt);

  const double p_half = y0[1] - 0.5 * dt * y0[0];
  const double q1 = y0[0] + dt * p_half;
  const double p1 = p_half - 0.5 * dt * q1;
  CHECK(std::abs(r.y1[0] - q1) <= 1e-14);
  CHECK(std::abs(r.y1[1] - p1) <= 1e-14);
}

TEST_CASE("prk with identical parts degenerates to rk") {
  Rng rng(5);
  const VectorFieldSpec f = random_polynomial_field(rng, 4, 2);
  const Vec y0 = rng.uniform_vec(4, -1.0, 1.0);
  const PartitionedTableau ptab{{builtin_tableau("gauss2"), builtin_tableau("gauss2")},
                                {0, 1, 0, 1}};
  const Vec via_prk = prk_step(ptab, f, y0, 0.1).y1;
  const Vec via_rk = rk_step(builtin_tableau("gauss2"), f, y0, 0.1).y1;
  CHECK(linf(via_prk - via_rk) <= 1e-12);
}

TEST_CASE("prk on the zero field is the identity") {
  VectorFieldSpec zero;
  zero.n = 2;
  zero.name = "zero";
  zero.eval = [](const Vec& y) -> Vec { return Vec::Zero(y.size()); };
  const PartitionedTableau ptab{
      {builtin_tableau("lobatto-iiia-2"), builtin_tableau("lobatto-iiib-2")},
      {0, 1}};
  Vec y0(2);
  y0 << 0.3, -0.7;
  CHECK(linf(prk_step(ptab, zero, y0, 0.4).y1 - y0) == 0.0);
}

TEST_CASE("ark with one component equals rk") {
  Rng rng(13);
  const VectorFieldSpec f = random_polynomial_field(rng, 3, 3);
  const Vec y0 = rng.uniform_vec(3, -1.0, 1.0);
  const Vec via_ark = ark_step(AdditiveTableau{{builtin_tableau("gauss2")}}, {f}, y0, 0.2).y1;
  const Vec via_rk = rk_step(builtin_tableau("gauss2"), f, y0, 0.2).y1;
  CHECK(linf(via_ark - via_rk) == 0.0);
}

TEST_CASE("ark with a vanishing second component degenerates") {
  const auto split = builtin_splitting_problem("drift-decay");
  VectorFieldSpec zero;
  zero.n = 2;
  zero.name = "zero";
  zero.eval = [](const Vec& y) -> Vec { return Vec::Zero(y.size()); };
  Vec y0(2);
  y0 << 0.4, 0.9;
  const AdditiveTableau pair{{builtin_tableau("midpoint"), builtin_tableau("midpoint")}};
  const Vec via_ark = ark_step(pair, {split.total, zero}, y0, 0.3).y1;
  const Vec via_rk = rk_step(builtin_tableau("midpoint"), split.total, y0, 0.3).y1;
  CHECK(linf(via_ark - via_rk) <= 1e-14);
}

TEST_CASE("imex euler pair against the hand-stacked solve") {
  // Implicit Euler on (p, 0), explicit Euler on (0, -q):
  //   Q = q0 + dt P, P = p0;  y1 = (q0 + dt P, p0 - dt Q).
  const auto harmonic = builtin_splitting_problem("harmonic-split");
  const AdditiveTableau imex{{builtin_tableau("implicit-euler"), builtin_tableau("explicit-euler")}};
  const double dt = 0.1;

  Vec y0(2);
  y0 << 1.0, 0.0;
  StepResult r = ark_step(imex, harmonic.components, y0, dt);
  CHECK(std::abs(r.y1[0] - 1.0) <= 1e-14);
  CHECK(std::abs(r.y1[1] - (-0.1)) <= 1e-14);

  y0 << 1.0, 0.5;
  r = ark_step(imex, harmonic.components, y0, dt);
  const double Q = y0[0] + dt * y0[1];
  CHECK(std::abs(r.y1[0] - Q) <= 1e-14);
  CHECK(std::abs(r.y1[1] - (y0[1] - dt * Q)) <= 1e-14);
}

TEST_CASE("lie-trotter splitting on the drift-decay problem") {
  const auto prob = builtin_splitting_problem("drift-decay");
  const Vec y1 = splitting_step(lie_trotter_scheme(), prob.flows, prob.default_y0, 1.0);
  CHECK(std::abs(y1[0] - 1.0) <= 1e-15);
  CHECK(std::abs(y1[1] - std::exp(-1.0)) <= 1e-15);
  // The affine invariant q + p is broken by the splitting.
  CHECK(std::abs(y1[0] + y1[1] - (1.0 + std::exp(-1.0))) <= 1e-15);
  CHECK(y1[0] + y1[1] != 1.0);
}

TEST_CASE("single-component scheme reproduces the exact flow") {
  const auto prob = builtin_splitting_problem("drift-decay");
  SplittingScheme single;
  single.components = 1;
  single.stages = {{0, 1.0}};
  const Vec y1 = splitting_step(single, {prob.flows[1]}, prob.default_y0, 0.7);
  CHECK(linf(y1 - prob.flows[1].flow(0.7, prob.default_y0)) == 0.0);
}

TEST_CASE("strang splitting on the harmonic oscillator matches leapfrog") {
  const auto prob = builtin_splitting_problem("harmonic-split");
  const double dt = 0.1;
  const Vec y1 = splitting_step(strang_scheme(), prob.flows, prob.default_y0, dt);

  const double p_half = prob.default_y0[1] - 0.5 * dt * prob.default_y0[0];
  const double q1 = prob.default_y0[0] + dt * p_half;
  const double p1 = p_half - 0.5 * dt * q1;
  CHECK(std::abs(y1[0] - q1) <= 1e-14);
  CHECK(std::abs(y1[1] - p1) <= 1e-14);

  // Identical to the Lobatto IIIA-IIIB partitioned step.
  const PartitionedTableau ptab{
      {builtin_tableau("lobatto-iiia-2"), builtin_tableau("lobatto-iiib-2")},
      {0, 1}};
  const VectorFieldSpec f = builtin_problem("harmonic").field;
  CHECK(linf(y1 - prk_step(ptab, f, prob.default_y0, dt).y1) <= 1e-14);
}

TEST_CASE("aromatic euler examples") {
  const Vec one = Vec::Ones(1);
  CHECK(std::abs(aromatic_euler_step(decay_field(), one, 0.5)[0] - (1.0 + 0.25)) <= 1e-12);

  VectorFieldSpec constant;
  constant.n = 2;
  constant.name = "constant";
  constant.eval = [](const Vec&) -> Vec {
    Vec v(2);
    v << 2.0, -1.0;
    return v;
  };
  Vec y0(2);
  y0 << 0.1, 0.2;
  CHECK(linf(aromatic_euler_step(constant, y0, 0.7) - y0) <= 1e-10);

  const VectorFieldSpec rotation = builtin_problem("harmonic").field;
  CHECK(linf(aromatic_euler_step(rotation, y0, 0.7) - y0) <= 1e-12);
}

TEST_CASE("fixed-point strategy agrees with newton at small dt") {
  const OdeProblem pend = builtin_problem("pendulum");
  SolverConfig fp;
  fp.strategy = SolverConfig::Strategy::fixed_point;
  const Vec via_fp = rk_step(builtin_tableau("midpoint"), pend.field, pend.default_y0, 0.01, fp).y1;
  const Vec via_newton = rk_step(builtin_tableau("midpoint"), pend.field, pend.default_y0, 0.01).y1;
  CHECK(linf(via_fp - via_newton) <= 1e-12);
}

TEST_CASE("nonconvergence surfaces as SolverError with the final residual") {
  const OdeProblem pend = builtin_problem("pendulum");
  SolverConfig cfg;
  cfg.max_iters = 1;
  CHECK_THROWS_AS(rk_step(builtin_tableau("gauss2"), pend.field, pend.default_y0, 0.5, cfg),
                  SolverError);
  try {
    rk_step(builtin_tableau("gauss2"), pend.field, pend.default_y0, 0.5, cfg);
  } catch (const SolverError& e) {
    CHECK(e.residual > 0.0);
    CHECK(e.iters >= 1);
  }
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(rk_step(builtin_tableau("midpoint"), decay_field(2), Vec::Ones(3), 0.1),
                  std::invalid_argument);
  const auto prob = builtin_splitting_problem("drift-decay");
  CHECK_THROWS_AS(splitting_step(lie_trotter_scheme(), prob.flows, Vec::Ones(3), 0.1),
                  std::invalid_argument);
}
