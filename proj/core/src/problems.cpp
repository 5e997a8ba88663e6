#include "feq/problems.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace feq {

namespace {

VectorFieldSpec linear_field(Mat L, std::string name) {
  VectorFieldSpec f;
  f.n = static_cast<int>(L.rows());
  f.name = std::move(name);
  f.eval = [L](const Vec& y) -> Vec { return L * y; };
  f.jac_action = [L](const Vec&, const Vec& w) -> Vec { return L * w; };
  return f;
}

OdeProblem linear_decay(int dim) {
  Mat L = -Mat::Identity(dim, dim);
  return OdeProblem{linear_field(std::move(L), "linear-decay"), Vec::Ones(dim),
                    "y' = -y"};
}

OdeProblem harmonic() {
  Mat L(2, 2);
  L << 0.0, 1.0, -1.0, 0.0;
  Vec y0(2);
  y0 << 1.0, 0.0;
  return OdeProblem{linear_field(std::move(L), "harmonic"), y0,
                    "harmonic oscillator q' = p, p' = -q"};
}

OdeProblem pendulum() {
  VectorFieldSpec f;
  f.n = 2;
  f.name = "pendulum";
  f.eval = [](const Vec& y) -> Vec {
    Vec out(2);
    out << y[1], -std::sin(y[0]);
    return out;
  };
  f.jac_action = [](const Vec& y, const Vec& w) -> Vec {
    Vec out(2);
    out << w[1], -std::cos(y[0]) * w[0];
    return out;
  };
  Vec y0(2);
  y0 << 1.2, 0.4;
  return OdeProblem{std::move(f), y0, "pendulum q' = p, p' = -sin q"};
}

OdeProblem damped_oscillator(double c) {
  Mat L(2, 2);
  L << 0.0, 1.0, -1.0, -c;
  Vec y0(2);
  y0 << 1.0, 0.5;
  return OdeProblem{linear_field(std::move(L), "damped-oscillator"), y0,
                    "q' = p, p' = -q - c p"};
}

OdeProblem damped_pendulum(double c) {
  VectorFieldSpec f;
  f.n = 2;
  f.name = "damped-pendulum";
  f.eval = [c](const Vec& y) -> Vec {
    Vec out(2);
    out << y[1], -std::sin(y[0]) - c * y[1];
    return out;
  };
  f.jac_action = [c](const Vec& y, const Vec& w) -> Vec {
    Vec out(2);
    out << w[1], -std::cos(y[0]) * w[0] - c * w[1];
    return out;
  };
  Vec y0(2);
  y0 << 1.2, 0.4;
  return OdeProblem{std::move(f), y0, "q' = p, p' = -sin q - c p"};
}

OdeProblem rigid_body() {
  // Free rigid body m' = m x (I^-1 m), principal inertias (0.8, 1.2, 2.0).
  Vec inv(3);
  inv << 1.0 / 0.8, 1.0 / 1.2, 1.0 / 2.0;
  VectorFieldSpec f;
  f.n = 3;
  f.name = "rigid-body";
  f.eval = [inv](const Vec& m) -> Vec {
    const Vec w = inv.cwiseProduct(m);
    Vec out(3);
    out << m[1] * w[2] - m[2] * w[1], m[2] * w[0] - m[0] * w[2],
        m[0] * w[1] - m[1] * w[0];
    return out;
  };
  f.jac_action = [inv](const Vec& m, const Vec& d) -> Vec {
    const Vec w = inv.cwiseProduct(m);
    const Vec dw = inv.cwiseProduct(d);
    Vec out(3);
    out << d[1] * w[2] + m[1] * dw[2] - d[2] * w[1] - m[2] * dw[1],
        d[2] * w[0] + m[2] * dw[0] - d[0] * w[2] - m[0] * dw[2],
        d[0] * w[1] + m[0] * dw[1] - d[1] * w[0] - m[1] * dw[0];
    return out;
  };
  Vec y0(3);
  y0 << 0.4, 0.3, 0.8;
  return OdeProblem{std::move(f), y0, "free rigid body on so(3)*"};
}

OdeProblem cubic_decay(int dim) {
  VectorFieldSpec f;
  f.n = dim;
  f.name = "cubic-decay";
  f.eval = [](const Vec& y) -> Vec { return -y.array().cube().matrix(); };
  f.jac_action = [](const Vec& y, const Vec& w) -> Vec {
    return (-3.0 * y.array().square() * w.array()).matrix();
  };
  return OdeProblem{std::move(f), Vec::Ones(dim), "y' = -y^3, componentwise"};
}

OdeProblem gradient_flow(int dim) {
  // f = -A y with A = 2I - shift - shift^T (SPD), the convex quadratic
  // gradient flow of V(y) = y^T A y / 2.
  Mat A = 2.0 * Mat::Identity(dim, dim);
  for (int i = 0; i + 1 < dim; ++i) {
    A(i, i + 1) -= 1.0;
    A(i + 1, i) -= 1.0;
  }
  return OdeProblem{linear_field(-A, "gradient-flow"), Vec::Ones(dim),
                    "y' = -A y, A SPD tridiagonal"};
}

}  // namespace

OdeProblem builtin_problem(const std::string& name, double param, int dim) {
  if (name == "linear-decay") return linear_decay(dim > 0 ? dim : 1);
  if (name == "harmonic") return harmonic();
  if (name == "pendulum") return pendulum();
  if (name == "damped-oscillator") return damped_oscillator(param > 0.0 ? param : 0.3);
  if (name == "damped-pendulum") return damped_pendulum(param > 0.0 ? param : 0.3);
  if (name == "rigid-body") return rigid_body();
  if (name == "cubic-decay") return cubic_decay(dim > 0 ? dim : 1);
  if (name == "gradient-flow") return gradient_flow(dim > 0 ? dim : 3);
  throw std::invalid_argument("unknown problem '" + name + "'");
}

const std::vector<std::pair<std::string, std::string>>& builtin_problem_catalog() {
  static const std::vector<std::pair<std::string, std::string>> catalog = {
      {"linear-decay", "y' = -y"},
      {"harmonic", "harmonic oscillator q' = p, p' = -q"},
      {"pendulum", "pendulum q' = p, p' = -sin q"},
      {"damped-oscillator", "q' = p, p' = -q - c p (c = 0.3)"},
      {"damped-pendulum", "q' = p, p' = -sin q - c p (c = 0.3)"},
      {"rigid-body", "free rigid body on so(3)*, |m|^2 is a Casimir"},
      {"cubic-decay", "y' = -y^3, monotone"},
      {"gradient-flow", "y' = -A y, A SPD (convex gradient flow)"},
  };
  return catalog;
}

SplittingProblem builtin_splitting_problem(const std::string& name) {
  SplittingProblem prob;
  if (name == "drift-decay") {
    // f(q, p) = (p, -p); q + p is a conserved affine quantity.
    VectorFieldSpec f1;
    f1.n = 2;
    f1.name = "drift";
    f1.eval = [](const Vec& y) -> Vec {
      Vec out(2);
      out << y[1], 0.0;
      return out;
    };
    f1.jac_action = [](const Vec&, const Vec& w) -> Vec {
      Vec out(2);
      out << w[1], 0.0;
      return out;
    };
    VectorFieldSpec f2;
    f2.n = 2;
    f2.name = "decay";
    f2.eval = [](const Vec& y) -> Vec {
      Vec out(2);
      out << 0.0, -y[1];
      return out;
    };
    f2.jac_action = [](const Vec&, const Vec& w) -> Vec {
      Vec out(2);
      out << 0.0, -w[1];
      return out;
    };
    ExactFlow phi1{2, [](double t, const Vec& y) -> Vec {
                     Vec out(2);
                     out << y[0] + t * y[1], y[1];
                     return out;
                   },
                   "drift-flow"};
    ExactFlow phi2{2, [](double t, const Vec& y) -> Vec {
                     Vec out(2);
                     out << y[0], y[1] * std::exp(-t);
                     return out;
                   },
                   "decay-flow"};
    VectorFieldSpec total;
    total.n = 2;
    total.name = "drift-decay";
    total.eval = [](const Vec& y) -> Vec {
      Vec out(2);
      out << y[1], -y[1];
      return out;
    };
    total.jac_action = [](const Vec&, const Vec& w) -> Vec {
      Vec out(2);
      out << w[1], -w[1];
      return out;
    };
    Vec y0(2);
    y0 << 0.0, 1.0;
    prob = SplittingProblem{{f1, f2}, {phi1, phi2}, total, y0,
                            "f = (p, -p); d(q+p)/dt = 0"};
  } else if (name == "harmonic-split") {
    VectorFieldSpec kin;
    kin.n = 2;
    kin.name = "kinetic";
    kin.eval = [](const Vec& y) -> Vec {
      Vec out(2);
      out << y[1], 0.0;
      return out;
    };
    kin.jac_action = [](const Vec&, const Vec& w) -> Vec {
      Vec out(2);
      out << w[1], 0.0;
      return out;
    };
    VectorFieldSpec pot;
    pot.n = 2;
    pot.name = "potential";
    pot.eval = [](const Vec& y) -> Vec {
      Vec out(2);
      out << 0.0, -y[0];
      return out;
    };
    pot.jac_action = [](const Vec&, const Vec& w) -> Vec {
      Vec out(2);
      out << 0.0, -w[0];
      return out;
    };
    ExactFlow drift{2, [](double t, const Vec& y) -> Vec {
                      Vec out(2);
                      out << y[0] + t * y[1], y[1];
                      return out;
                    },
                    "drift-flow"};
    ExactFlow kick{2, [](double t, const Vec& y) -> Vec {
                     Vec out(2);
                     out << y[0], y[1] - t * y[0];
                     return out;
                   },
                   "kick-flow"};
    Vec y0(2);
    y0 << 1.0, 0.0;
    prob = SplittingProblem{{kin, pot},
                            {drift, kick},
                            builtin_problem("harmonic").field,
                            y0,
                            "harmonic oscillator, kinetic/potential split"};
  } else {
    throw std::invalid_argument("unknown splitting problem '" + name + "'");
  }
  return prob;
}

const std::vector<std::pair<std::string, std::string>>& builtin_splitting_catalog() {
  static const std::vector<std::pair<std::string, std::string>> catalog = {
      {"drift-decay", "f = (p, -p) split as (p, 0) + (0, -p); q + p conserved"},
      {"harmonic-split", "harmonic oscillator, kinetic/potential split"},
  };
  return catalog;
}

VectorFieldSpec random_polynomial_field(Rng& rng, int n, int degree, double scale) {
  if (degree < 1 || degree > 3)
    throw std::invalid_argument("random_polynomial_field: degree must be 1..3");
  const Vec c = rng.uniform_vec(n, -scale, scale);
  const Mat L = rng.uniform_mat(n, n, -scale, scale);

  struct RankOne {
    Vec out, v, w;  // term: out * (v.y) * (w.y)
  };
  struct RankCube {
    Vec out, q;  // term: out * (q.y)^3
  };
  std::vector<RankOne> quad;
  std::vector<RankCube> cubic;
  if (degree >= 2) {
    for (int r = 0; r < 2; ++r)
      quad.push_back({rng.uniform_vec(n, -scale, scale) * 0.6,
                      rng.uniform_vec(n, -1.0, 1.0), rng.uniform_vec(n, -1.0, 1.0)});
  }
  if (degree >= 3) {
    for (int r = 0; r < 2; ++r)
      cubic.push_back({rng.uniform_vec(n, -scale, scale) * 0.3,
                       rng.uniform_vec(n, -1.0, 1.0)});
  }

  VectorFieldSpec f;
  f.n = n;
  f.name = "random-polynomial";
  f.eval = [c, L, quad, cubic](const Vec& y) -> Vec {
    Vec out = c + L * y;
    for (const auto& t : quad) out += t.out * (t.v.dot(y) * t.w.dot(y));
    for (const auto& t : cubic) {
      const double s = t.q.dot(y);
      out += t.out * (s * s * s);
    }
    return out;
  };
  f.jac_action = [L, quad, cubic](const Vec& y, const Vec& w) -> Vec {
    Vec out = L * w;
    for (const auto& t : quad)
      out += t.out * (t.v.dot(w) * t.w.dot(y) + t.v.dot(y) * t.w.dot(w));
    for (const auto& t : cubic) {
      const double s = t.q.dot(y);
      out += t.out * (3.0 * s * s * t.q.dot(w));
    }
    return out;
  };
  return f;
}

Observable random_affine_observable(Rng& rng, int n) {
  return Observable::affine(rng.uniform_vec(n, -1.0, 1.0), rng.uniform(-1.0, 1.0),
                            "random-affine");
}

Observable random_quadratic_observable(Rng& rng, int n, double scale) {
  Mat C = rng.uniform_mat(n, n, -scale, scale);
  C = 0.5 * (C + C.transpose()).eval();
  return Observable::quadratic_form(C, rng.uniform_vec(n, -scale, scale),
                                    rng.uniform(-scale, scale), "random-quadratic");
}

VectorFieldSpec invariant_preserving_field(Rng& rng, const Observable& F) {
  if (!F.has_quadratic_form)
    throw std::invalid_argument("invariant_preserving_field: need a closed quadratic form");
  const int n = F.n;
  Mat B = rng.uniform_mat(n, n, -1.0, 1.0);
  const Mat S = 0.5 * (B - B.transpose()).eval();
  const Mat Sym = F.C + F.C.transpose();
  const Vec d = F.d;

  VectorFieldSpec f;
  f.n = n;
  f.name = "skew-gradient";
  f.eval = [S, Sym, d](const Vec& y) -> Vec { return S * (Sym * y + d); };
  f.jac_action = [S, Sym](const Vec&, const Vec& w) -> Vec { return S * (Sym * w); };
  return f;
}

}  // namespace feq
