#pragma once

#include <Eigen/Dense>

namespace feq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline double linf(const Vec& v) {
  return v.size() > 0 ? v.cwiseAbs().maxCoeff() : 0.0;
}

// Tolerance for exact algebraic relations between stored coefficients
// (consistency of weights, row sums, antisymmetry of forms).
inline constexpr double kCoefficientTol = 1e-14;

// Default tolerance for algebraic method-classification conditions.
inline constexpr double kConditionTol = 1e-12;

}  // namespace feq
