#pragma once

#include <array>
#include <string>
#include <vector>

#include "feq/types.hpp"

namespace feq {

// Runge-Kutta coefficient record. All coefficients are plain doubles;
// irrational entries (Gauss nodes) are evaluated from closed forms.
struct ButcherTableau {
  int s = 0;
  Mat A;  // s x s
  Vec b;  // s
  Vec c;  // s
  std::string name;
  int declared_order = 1;
  bool nonstandard_c = false;  // c_i need not equal the row sums of A

  // Checks sum(b) = 1 and, unless nonstandard_c, c = A * ones, to 1e-14.
  void validate() const;

  bool is_explicit() const;  // strictly lower triangular A
};

// Builtin methods: explicit-euler, implicit-euler, midpoint, heun, rk4,
// gauss2, gauss3, lobatto-iiia-2, lobatto-iiib-2. Throws on unknown names.
ButcherTableau builtin_tableau(const std::string& name);
const std::vector<std::string>& builtin_tableau_names();

// M_ij = b_i a_ij + b_j a_ji - b_i b_j. M = 0 is the classical condition
// for preservation of quadratic invariants.
Mat quadratic_condition_matrix(const ButcherTableau& tab);
bool preserves_quadratic(const ButcherTableau& tab, double tol = kConditionTol);
bool b_nonnegative(const ButcherTableau& tab);

// N-component additive method: one tableau per component, shared stage count.
struct AdditiveTableau {
  std::vector<ButcherTableau> parts;

  int components() const { return static_cast<int>(parts.size()); }
  int stages() const;
  void validate() const;
};

enum class ArkConditionMode {
  full,           // all component pairs (mu, nu), including mu == nu
  bilinear_only,  // cross pairs mu != nu only
};

// Checks that b_i^[nu] is independent of nu and that
//   b_i^[nu] a_ij^[mu] + b_j^[mu] a_ji^[nu] = b_i^[nu] b_j^[mu]
// holds for all i, j and the selected component pairs. The condition is
// sufficient for preserving quadratic (full) or partition-bilinear
// (bilinear_only) invariants; the checker reports the condition only.
bool ark_quadratic_condition(const AdditiveTableau& atab,
                             double tol = kConditionTol,
                             ArkConditionMode mode = ArkConditionMode::full);

// Two-way partitioned method: tableau per part plus an assignment of each
// state index to part 0 or part 1.
struct PartitionedTableau {
  std::array<ButcherTableau, 2> parts;
  std::vector<int> partition;  // values in {0, 1}, one per state index

  void validate(int n) const;  // partition covers 0..n-1 exactly once
  AdditiveTableau as_additive() const;
};

// Composition of exact component flows, applied in stage order:
//   y <- flow[stage.component](stage.fraction * dt, y).
struct SplittingScheme {
  struct Stage {
    int component = 0;
    double fraction = 1.0;
  };

  int components = 0;
  std::vector<Stage> stages;

  // Consistency: per-component fractions sum to 1 within 1e-14.
  void validate() const;
};

SplittingScheme lie_trotter_scheme(int components = 2);
SplittingScheme strang_scheme();  // half 2nd component, full 1st, half 2nd

}  // namespace feq
