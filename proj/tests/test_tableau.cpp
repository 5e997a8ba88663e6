#include <doctest.h>

#include <cmath>

#include "feq/stepper.hpp"
#include "feq/tableau.hpp"

using namespace feq;

TEST_CASE("builtin tableaux satisfy consistency and row-sum invariants") {
  for (const auto& name : builtin_tableau_names()) {
    const ButcherTableau tab = builtin_tableau(name);
    CAPTURE(name);
    CHECK(std::abs(tab.b.sum() - 1.0) <= 1e-14);
    if (!tab.nonstandard_c) {
      for (int i = 0; i < tab.s; ++i)
        CHECK(std::abs(tab.c[i] - tab.A.row(i).sum()) <= 1e-14);
    }
  }
}

TEST_CASE("builtin coefficient spot checks") {
  const ButcherTableau mid = builtin_tableau("midpoint");
  CHECK(mid.s == 1);
  CHECK(mid.A(0, 0) == 0.5);
  CHECK(mid.b[0] == 1.0);
  CHECK(mid.c[0] == 0.5);

  const ButcherTableau ee = builtin_tableau("explicit-euler");
  CHECK(ee.A(0, 0) == 0.0);
  CHECK(ee.b[0] == 1.0);
  CHECK(ee.c[0] == 0.0);

  const ButcherTableau g2 = builtin_tableau("gauss2");
  const double r = std::sqrt(3.0) / 6.0;
  CHECK(g2.s == 2);
  CHECK(g2.A(0, 0) == 0.25);
  CHECK(g2.A(0, 1) == doctest::Approx(0.25 - r).epsilon(1e-15));
  CHECK(g2.A(1, 0) == doctest::Approx(0.25 + r).epsilon(1e-15));
  CHECK(g2.b[0] == 0.5);
  CHECK(g2.b[1] == 0.5);

  CHECK_THROWS_AS(builtin_tableau("no-such-method"), std::invalid_argument);
}

// Order conditions on y' = y collapse to b^T A^{k-1} 1 = 1/k!; checking them
// together with a step of the scalar exponential gives an independent
// verification that gauss2 reaches order 4.
TEST_CASE("gauss2 order conditions via the scalar exponential") {
  const ButcherTableau g2 = builtin_tableau("gauss2");
  Vec ones = Vec::Ones(g2.s);
  double factorial = 1.0;
  Vec power = ones;
  for (int k = 1; k <= 4; ++k) {
    factorial *= k;
    CHECK(std::abs(g2.b.dot(power) - 1.0 / factorial) <= 1e-14);
    power = g2.A * power;
  }

  VectorFieldSpec growth;
  growth.n = 1;
  growth.name = "exp";
  growth.eval = [](const Vec& y) -> Vec { return y; };
  growth.jac_action = [](const Vec&, const Vec& w) -> Vec { return w; };
  const double e1 = std::abs(rk_step(g2, growth, Vec::Ones(1), 0.2).y1[0] - std::exp(0.2));
  const double e2 = std::abs(rk_step(g2, growth, Vec::Ones(1), 0.1).y1[0] - std::exp(0.1));
  CHECK(e1 / e2 > 20.0);  // local order 5 halving ratio ~ 32
}

TEST_CASE("quadratic condition matrix examples") {
  CHECK(quadratic_condition_matrix(builtin_tableau("midpoint"))(0, 0) == 0.0);
  CHECK(quadratic_condition_matrix(builtin_tableau("explicit-euler"))(0, 0) == -1.0);
  CHECK(quadratic_condition_matrix(builtin_tableau("rk4")).cwiseAbs().maxCoeff() > 0.1);

  for (const auto& name : builtin_tableau_names()) {
    const Mat M = quadratic_condition_matrix(builtin_tableau(name));
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("preserves_quadratic classifies the builtins") {
  CHECK(preserves_quadratic(builtin_tableau("midpoint")));
  CHECK(preserves_quadratic(builtin_tableau("gauss1")));
  CHECK(preserves_quadratic(builtin_tableau("gauss2")));
  CHECK(preserves_quadratic(builtin_tableau("gauss3")));
  CHECK_FALSE(preserves_quadratic(builtin_tableau("rk4")));
  CHECK_FALSE(preserves_quadratic(builtin_tableau("explicit-euler")));
  CHECK_FALSE(preserves_quadratic(builtin_tableau("implicit-euler")));
  CHECK_FALSE(preserves_quadratic(builtin_tableau("heun")));
  CHECK_FALSE(preserves_quadratic(builtin_tableau("lobatto-iiia-2")));
  CHECK_FALSE(preserves_quadratic(builtin_tableau("lobatto-iiib-2")));
}

TEST_CASE("b_nonnegative") {
  CHECK(b_nonnegative(builtin_tableau("midpoint")));
  CHECK(b_nonnegative(builtin_tableau("gauss2")));
  ButcherTableau tab = builtin_tableau("heun");
  tab.b << 2.0, -1.0;
  tab.nonstandard_c = true;
  CHECK_FALSE(b_nonnegative(tab));
}

TEST_CASE("ark condition: N=1 agrees with preserves_quadratic") {
  for (const auto& name : builtin_tableau_names()) {
    const ButcherTableau tab = builtin_tableau(name);
    CAPTURE(name);
    CHECK(ark_quadratic_condition(AdditiveTableau{{tab}}) == preserves_quadratic(tab));
  }
}

TEST_CASE("ark condition on classic pairs") {
  const AdditiveTableau both_midpoint{{builtin_tableau("midpoint"), builtin_tableau("midpoint")}};
  CHECK(ark_quadratic_condition(both_midpoint));

  const AdditiveTableau lobatto_pair{
      {builtin_tableau("lobatto-iiia-2"), builtin_tableau("lobatto-iiib-2")}};
  CHECK(ark_quadratic_condition(lobatto_pair, kConditionTol, ArkConditionMode::bilinear_only));
  CHECK_FALSE(ark_quadratic_condition(lobatto_pair, kConditionTol, ArkConditionMode::full));

  const AdditiveTableau gauss_pair{{builtin_tableau("gauss2"), builtin_tableau("gauss2")}};
  CHECK(ark_quadratic_condition(gauss_pair, kConditionTol, ArkConditionMode::full));
}

TEST_CASE("splitting scheme consistency") {
  CHECK_NOTHROW(lie_trotter_scheme().validate());
  CHECK_NOTHROW(strang_scheme().validate());

  SplittingScheme bad;
  bad.components = 2;
  bad.stages = {{0, 1.0}, {1, 0.5}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("partitioned tableau validation") {
  PartitionedTableau ptab{{builtin_tableau("lobatto-iiia-2"), builtin_tableau("lobatto-iiib-2")},
                          {0, 1}};
  CHECK_NOTHROW(ptab.validate(2));
  CHECK_THROWS_AS(ptab.validate(3), std::invalid_argument);
  ptab.partition = {0, 2};
  CHECK_THROWS_AS(ptab.validate(2), std::invalid_argument);
}
