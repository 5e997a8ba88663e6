#include "feq/observable.hpp"

#include <stdexcept>
#include <utility>

namespace feq {

double Observable::scalar(const Vec& y) const {
  if (m != 1) throw std::logic_error("Observable::scalar: observable is vector-valued");
  return eval(y)[0];
}

Observable Observable::affine(Vec row, double offset, std::string name) {
  Observable F;
  F.n = static_cast<int>(row.size());
  F.m = 1;
  F.tag = Tag::affine;
  F.name = std::move(name);
  F.eval = [row, offset](const Vec& y) {
    return Vec::Constant(1, row.dot(y) + offset);
  };
  F.deriv = [row](const Vec&, const Vec& w) { return Vec::Constant(1, row.dot(w)); };
  return F;
}

Observable Observable::linear_map(Mat L, Vec offset, std::string name) {
  Observable F;
  F.n = static_cast<int>(L.cols());
  F.m = static_cast<int>(L.rows());
  F.tag = Tag::affine;
  F.name = std::move(name);
  F.eval = [L, offset](const Vec& y) -> Vec { return L * y + offset; };
  F.deriv = [L](const Vec&, const Vec& w) -> Vec { return L * w; };
  return F;
}

Observable Observable::quadratic_form(Mat C, Vec d, double e, std::string name) {
  Observable F;
  F.n = static_cast<int>(C.rows());
  F.m = 1;
  F.tag = Tag::quadratic;
  F.name = std::move(name);
  F.has_quadratic_form = true;
  F.C = C;
  F.d = d;
  F.e = e;
  const Mat S = C + C.transpose();
  F.eval = [C, d, e](const Vec& y) {
    return Vec::Constant(1, y.dot(C * y) + d.dot(y) + e);
  };
  F.deriv = [S, d](const Vec& y, const Vec& w) {
    return Vec::Constant(1, y.dot(S * w) + d.dot(w));
  };
  return F;
}

Observable Observable::scalar_fn(int n, std::function<double(const Vec&)> f,
                                 std::function<double(const Vec&, const Vec&)> df,
                                 Tag tag, std::string name) {
  Observable F;
  F.n = n;
  F.m = 1;
  F.tag = tag;
  F.name = std::move(name);
  F.eval = [f](const Vec& y) { return Vec::Constant(1, f(y)); };
  F.deriv = [df](const Vec& y, const Vec& w) { return Vec::Constant(1, df(y, w)); };
  return F;
}

AugmentedSystem augment(const VectorFieldSpec& f, const Observable& F) {
  if (F.n != f.n)
    throw std::invalid_argument("augment: observable dimension does not match field");

  const int n = f.n;
  const int m = F.m;

  VectorFieldSpec g;
  g.n = n + m;
  g.name = f.name + "+" + F.name;
  g.eval = [f, F, n, m](const Vec& yz) -> Vec {
    const Vec y = yz.head(n);
    const Vec fy = f.eval(y);
    Vec out(n + m);
    out.head(n) = fy;
    out.tail(m) = F.deriv(y, fy);
    return out;
  };

  if (f.jac_action) {
    // z rows: d/dy [F'(y) f(y)] w = F''(y)[w, f(y)] + F'(y) f'(y) w.
    // Exact for affine and closed-form quadratic F; otherwise the F'' term
    // is differenced. z columns vanish since g does not depend on z.
    g.jac_action = [f, F, n, m](const Vec& yz, const Vec& w) -> Vec {
      const Vec y = yz.head(n);
      const Vec wy = w.head(n);
      Vec out = Vec::Zero(n + m);
      if (linf(wy) == 0.0) return out;
      const Vec dfw = f.jac_action(y, wy);
      out.head(n) = dfw;
      if (F.tag == Observable::Tag::affine) {
        out.tail(m) = F.deriv(y, dfw);
      } else if (F.has_quadratic_form) {
        const Vec fy = f.eval(y);
        const Mat S = F.C + F.C.transpose();
        out.tail(m) = Vec::Constant(1, wy.dot(S * fy) + y.dot(S * dfw) + F.d.dot(dfw));
      } else {
        const double h = default_fd_eps() * (1.0 + linf(y)) / (1.0 + linf(wy));
        const Vec yp = y + h * wy;
        const Vec ym = y - h * wy;
        out.tail(m) = (F.deriv(yp, f.eval(yp)) - F.deriv(ym, f.eval(ym))) / (2.0 * h);
      }
      return out;
    };
  }

  return AugmentedSystem{f, F, std::move(g)};
}

}  // namespace feq
