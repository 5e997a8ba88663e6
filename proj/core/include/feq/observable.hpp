#pragma once

#include <functional>
#include <string>

#include "feq/types.hpp"
#include "feq/vector_field.hpp"

namespace feq {

// Observable F: R^n -> R^m with directional derivative F'(y)[w].
struct Observable {
  enum class Tag { affine, quadratic, bilinear_partitioned, general };

  int n = 0;
  int m = 1;
  std::function<Vec(const Vec&)> eval;
  std::function<Vec(const Vec&, const Vec&)> deriv;
  Tag tag = Tag::general;
  std::string name;

  // Optional closed form for m == 1: F(y) = y^T C y + d^T y + e, with
  // F'(y)[w] = y^T (C + C^T) w + d^T w.
  bool has_quadratic_form = false;
  Mat C;
  Vec d;
  double e = 0.0;

  Vec operator()(const Vec& y) const { return eval(y); }
  Vec dapply(const Vec& y, const Vec& w) const { return deriv(y, w); }
  double scalar(const Vec& y) const;  // requires m == 1

  static Observable affine(Vec row, double offset, std::string name = "affine");
  static Observable linear_map(Mat L, Vec offset, std::string name = "affine-map");
  static Observable quadratic_form(Mat C, Vec d, double e, std::string name = "quadratic");
  // Scalar observable from closures; tag describes the functional class.
  static Observable scalar_fn(int n, std::function<double(const Vec&)> f,
                              std::function<double(const Vec&, const Vec&)> df,
                              Tag tag, std::string name = "scalar");
};

// Original system extended by z' = F'(y) f(y). The z block of the combined
// field depends on the y block only.
struct AugmentedSystem {
  VectorFieldSpec base;
  Observable obs;
  VectorFieldSpec combined;  // dimension n + m
};

AugmentedSystem augment(const VectorFieldSpec& f, const Observable& F);

}  // namespace feq
