#include "feq/tableau.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace feq {

void ButcherTableau::validate() const {
  if (s <= 0) throw std::invalid_argument("tableau '" + name + "': s must be positive");
  if (A.rows() != s || A.cols() != s || b.size() != s || c.size() != s)
    throw std::invalid_argument("tableau '" + name + "': inconsistent dimensions");
  if (std::abs(b.sum() - 1.0) > kCoefficientTol)
    throw std::invalid_argument("tableau '" + name + "': weights do not sum to 1");
  if (!nonstandard_c) {
    for (int i = 0; i < s; ++i) {
      if (std::abs(c[i] - A.row(i).sum()) > kCoefficientTol)
        throw std::invalid_argument("tableau '" + name + "': c does not match row sums");
    }
  }
}

bool ButcherTableau::is_explicit() const {
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j)
      if (A(i, j) != 0.0) return false;
  return true;
}

namespace {

ButcherTableau make(const std::string& name, int order, Mat A, Vec b, Vec c,
                    bool nonstandard_c = false) {
  ButcherTableau tab;
  tab.s = static_cast<int>(b.size());
  tab.A = std::move(A);
  tab.b = std::move(b);
  tab.c = std::move(c);
  tab.name = name;
  tab.declared_order = order;
  tab.nonstandard_c = nonstandard_c;
  tab.validate();
  return tab;
}

ButcherTableau explicit_euler() {
  return make("explicit-euler", 1, Mat::Zero(1, 1), Vec::Ones(1), Vec::Zero(1));
}

ButcherTableau implicit_euler() {
  return make("implicit-euler", 1, Mat::Ones(1, 1), Vec::Ones(1), Vec::Ones(1));
}

ButcherTableau midpoint() {
  return make("midpoint", 2, Mat::Constant(1, 1, 0.5), Vec::Ones(1),
              Vec::Constant(1, 0.5));
}

ButcherTableau heun() {
  Mat A = Mat::Zero(2, 2);
  A(1, 0) = 1.0;
  Vec b(2), c(2);
  b << 0.5, 0.5;
  c << 0.0, 1.0;
  return make("heun", 2, A, b, c);
}

ButcherTableau rk4() {
  Mat A = Mat::Zero(4, 4);
  A(1, 0) = 0.5;
  A(2, 1) = 0.5;
  A(3, 2) = 1.0;
  Vec b(4), c(4);
  b << 1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0;
  c << 0.0, 0.5, 0.5, 1.0;
  return make("rk4", 4, A, b, c);
}

ButcherTableau gauss2() {
  const double r = std::sqrt(3.0) / 6.0;
  Mat A(2, 2);
  A << 0.25, 0.25 - r,
       0.25 + r, 0.25;
  Vec b(2), c(2);
  b << 0.5, 0.5;
  c << 0.5 - r, 0.5 + r;
  return make("gauss2", 4, A, b, c);
}

ButcherTableau gauss3() {
  const double r = std::sqrt(15.0);
  Mat A(3, 3);
  A << 5.0 / 36.0,           2.0 / 9.0 - r / 15.0, 5.0 / 36.0 - r / 30.0,
       5.0 / 36.0 + r / 24.0, 2.0 / 9.0,           5.0 / 36.0 - r / 24.0,
       5.0 / 36.0 + r / 30.0, 2.0 / 9.0 + r / 15.0, 5.0 / 36.0;
  Vec b(3), c(3);
  b << 5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0;
  c << 0.5 - r / 10.0, 0.5, 0.5 + r / 10.0;
  return make("gauss3", 6, A, b, c);
}

ButcherTableau lobatto_iiia_2() {
  Mat A(2, 2);
  A << 0.0, 0.0,
       0.5, 0.5;
  Vec b(2), c(2);
  b << 0.5, 0.5;
  c << 0.0, 1.0;
  return make("lobatto-iiia-2", 2, A, b, c);
}

ButcherTableau lobatto_iiib_2() {
  Mat A(2, 2);
  A << 0.5, 0.0,
       0.5, 0.0;
  Vec b(2), c(2);
  b << 0.5, 0.5;
  c << 0.0, 1.0;
  // Row sums are (1/2, 1/2) while the abscissae are the Lobatto nodes.
  return make("lobatto-iiib-2", 2, A, b, c, /*nonstandard_c=*/true);
}

}  // namespace

const std::vector<std::string>& builtin_tableau_names() {
  static const std::vector<std::string> names = {
      "explicit-euler", "implicit-euler", "midpoint",
      "heun",           "rk4",            "gauss2",
      "gauss3",         "lobatto-iiia-2", "lobatto-iiib-2",
  };
  return names;
}

ButcherTableau builtin_tableau(const std::string& name) {
  using Factory = ButcherTableau (*)();
  static const std::unordered_map<std::string, Factory> factories = {
      {"explicit-euler", &explicit_euler},
      {"implicit-euler", &implicit_euler},
      {"midpoint", &midpoint},
      {"gauss1", &midpoint},  // alias: the 1-stage Gauss method
      {"heun", &heun},
      {"rk4", &rk4},
      {"gauss2", &gauss2},
      {"gauss3", &gauss3},
      {"lobatto-iiia-2", &lobatto_iiia_2},
      {"lobatto-iiib-2", &lobatto_iiib_2},
  };
  auto it = factories.find(name);
  if (it == factories.end())
    throw std::invalid_argument("unknown tableau '" + name + "'");
  return it->second();
}

Mat quadratic_condition_matrix(const ButcherTableau& tab) {
  Mat M(tab.s, tab.s);
  for (int i = 0; i < tab.s; ++i)
    for (int j = 0; j < tab.s; ++j)
      M(i, j) = tab.b[i] * tab.A(i, j) + tab.b[j] * tab.A(j, i) - tab.b[i] * tab.b[j];
  return M;
}

bool preserves_quadratic(const ButcherTableau& tab, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("preserves_quadratic: tol must be positive");
  return quadratic_condition_matrix(tab).cwiseAbs().maxCoeff() <= tol;
}

bool b_nonnegative(const ButcherTableau& tab) {
  return (tab.b.array() >= 0.0).all();
}

int AdditiveTableau::stages() const {
  return parts.empty() ? 0 : parts.front().s;
}

void AdditiveTableau::validate() const {
  if (parts.empty()) throw std::invalid_argument("additive tableau: no parts");
  const int s = parts.front().s;
  for (const auto& p : parts) {
    p.validate();
    if (p.s != s)
      throw std::invalid_argument("additive tableau: parts must share the stage count");
  }
}

bool ark_quadratic_condition(const AdditiveTableau& atab, double tol,
                             ArkConditionMode mode) {
  if (tol <= 0.0) throw std::invalid_argument("ark_quadratic_condition: tol must be positive");
  atab.validate();
  const int N = atab.components();
  const int s = atab.stages();

  // Weights must agree across components.
  for (int nu = 1; nu < N; ++nu)
    if (((atab.parts[nu].b - atab.parts[0].b).cwiseAbs().maxCoeff()) > tol) return false;

  const Vec& b = atab.parts[0].b;
  for (int nu = 0; nu < N; ++nu) {
    for (int mu = 0; mu < N; ++mu) {
      if (mode == ArkConditionMode::bilinear_only && mu == nu) continue;
      const Mat& Anu = atab.parts[nu].A;
      const Mat& Amu = atab.parts[mu].A;
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
          if (std::abs(b[i] * Amu(i, j) + b[j] * Anu(j, i) - b[i] * b[j]) > tol)
            return false;
    }
  }
  return true;
}

void PartitionedTableau::validate(int n) const {
  parts[0].validate();
  parts[1].validate();
  if (parts[0].s != parts[1].s)
    throw std::invalid_argument("partitioned tableau: parts must share the stage count");
  if (static_cast<int>(partition.size()) != n)
    throw std::invalid_argument("partitioned tableau: partition does not cover the state");
  for (int part : partition)
    if (part != 0 && part != 1)
      throw std::invalid_argument("partitioned tableau: partition entries must be 0 or 1");
}

AdditiveTableau PartitionedTableau::as_additive() const {
  return AdditiveTableau{{parts[0], parts[1]}};
}

void SplittingScheme::validate() const {
  if (components <= 0) throw std::invalid_argument("splitting scheme: no components");
  std::vector<double> total(components, 0.0);
  for (const auto& st : stages) {
    if (st.component < 0 || st.component >= components)
      throw std::invalid_argument("splitting scheme: stage references unknown component");
    total[st.component] += st.fraction;
  }
  for (int nu = 0; nu < components; ++nu)
    if (std::abs(total[nu] - 1.0) > kCoefficientTol)
      throw std::invalid_argument("splitting scheme: fractions for a component do not sum to 1");
}

SplittingScheme lie_trotter_scheme(int components) {
  SplittingScheme scheme;
  scheme.components = components;
  for (int nu = 0; nu < components; ++nu) scheme.stages.push_back({nu, 1.0});
  scheme.validate();
  return scheme;
}

SplittingScheme strang_scheme() {
  SplittingScheme scheme;
  scheme.components = 2;
  scheme.stages = {{1, 0.5}, {0, 1.0}, {1, 0.5}};
  scheme.validate();
  return scheme;
}

}  // namespace feq
