#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "edgecalc/charts.hpp"
#include "edgecalc/core.hpp"

namespace edgecalc {

/// An evaluable test function on R^6 with optional analytic derivative
/// oracles. Operators fall back to central differences (default 4th order)
/// when an oracle is missing.
struct ScalarField {
  std::function<double(const CartesianPoint&)> eval;
  std::function<Vec6(const CartesianPoint&)> gradient;  // optional
  std::function<Mat6(const CartesianPoint&)> hessian;   // optional
  double fd_step = 1e-3;
  int fd_order = 4;

  double value(const CartesianPoint& x) const { return eval(x); }

  Vec6 grad(const CartesianPoint& x) const {
    if (gradient) return gradient(x);
    Vec6 g;
    for (int i = 0; i < 6; ++i) {
      g[i] = fd::d1(
          [&](double s) {
            CartesianPoint y = x;
            y.x[i] = s;
            return eval(y);
          },
          x.x[i], fd_step, fd_order);
    }
    return g;
  }

  Mat6 hess(const CartesianPoint& x) const {
    if (hessian) return hessian(x);
    Mat6 h = zero_mat6();
    for (int i = 0; i < 6; ++i) {
      h[i][i] = fd::d2(
          [&](double s) {
            CartesianPoint y = x;
            y.x[i] = s;
            return eval(y);
          },
          x.x[i], fd_step, fd_order);
    }
    for (int i = 0; i < 6; ++i) {
      for (int j = i + 1; j < 6; ++j) {
        const auto f = [&](double a, double b) {
          CartesianPoint y = x;
          y.x[i] = a;
          y.x[j] = b;
          return eval(y);
        };
        const double h1 = fd_step;
        h[i][j] = h[j][i] =
            (f(x.x[i] + h1, x.x[j] + h1) - f(x.x[i] + h1, x.x[j] - h1) -
             f(x.x[i] - h1, x.x[j] + h1) + f(x.x[i] - h1, x.x[j] - h1)) /
            (4.0 * h1 * h1);
      }
    }
    return h;
  }

  double laplacian(const CartesianPoint& x) const {
    if (hessian) {
      const Mat6 h = hessian(x);
      double s = 0.0;
      for (int i = 0; i < 6; ++i) s += h[i][i];
      return s;
    }
    double s = 0.0;
    for (int i = 0; i < 6; ++i) {
      s += fd::d2(
          [&](double v) {
            CartesianPoint y = x;
            y.x[i] = v;
            return eval(y);
          },
          x.x[i], fd_step, fd_order);
    }
    return s;
  }
};

/// A field in hyperspherical variables with a partial-derivative oracle up to
/// order 2 per variable (the operator forms need no mixed partials).
struct EdgeField {
  std::function<double(const HyperPoint&)> eval;
  std::function<double(const HyperPoint&, HyperVar, int)> partial;  // optional
  double fd_step = 1e-4;
  int fd_order = 4;

  double value(const HyperPoint& p) const { return eval(p); }

  double d1(const HyperPoint& p, HyperVar v) const {
    if (partial) return partial(p, v, 1);
    return fd::d1([&](double s) { return eval(place(p, v, s)); }, coord(p, v),
                  fd_step, fd_order);
  }

  double d2(const HyperPoint& p, HyperVar v) const {
    if (partial) return partial(p, v, 2);
    return fd::d2([&](double s) { return eval(place(p, v, s)); }, coord(p, v),
                  fd_step, fd_order);
  }

 private:
  static double coord(const HyperPoint& p, HyperVar v) {
    switch (v) {
      case HyperVar::t: return p.t;
      case HyperVar::r: return p.r;
      case HyperVar::theta1: return p.theta1;
      case HyperVar::phi1: return p.phi1;
      case HyperVar::theta2: return p.theta2;
      case HyperVar::phi2: return p.phi2;
    }
    return 0.0;
  }
  static HyperPoint place(const HyperPoint& p, HyperVar v, double s) {
    return shifted(p, v, s - coord(p, v));
  }
};

/// Pullback of a Cartesian field through a chart. When the field carries
/// analytic gradient and Hessian oracles the partials are assembled by the
/// chain rule through the analytic embedding derivatives,
///   d_v u = grad . dE/dv,   d_vv u = (dE/dv)^T H (dE/dv) + grad . d2E/dv2,
/// otherwise they fall back to finite differences in the hyper variables.
inline EdgeField pullback(const ScalarField& u) {
  EdgeField f;
  f.eval = [u](const HyperPoint& p) { return u.value(to_cartesian(p)); };
  if (u.gradient && u.hessian) {
    f.partial = [u](const HyperPoint& p, HyperVar v, int order) {
      const CartesianPoint x = to_cartesian(p);
      const Vec6 g = u.gradient(x);
      const CartesianPoint e1 = embedding_d1(p, v);
      if (order == 1) return dot(g, e1.x);
      const Mat6 h = u.hessian(x);
      const CartesianPoint e2 = embedding_d2(p, v);
      double quad = 0.0;
      for (int i = 0; i < 6; ++i) {
        double row = 0.0;
        for (int j = 0; j < 6; ++j) row += h[i][j] * e1.x[j];
        quad += e1.x[i] * row;
      }
      return quad + dot(g, e2.x);
    };
  }
  return f;
}

/// EdgeField depending on t only; the operator forms reduce to
/// -f''/2 - (5/2t) f' + V f on such fields.
inline EdgeField radial_profile(std::function<double(double)> f,
                                std::function<double(double)> df,
                                std::function<double(double)> d2f) {
  EdgeField g;
  g.eval = [f](const HyperPoint& p) { return f(p.t); };
  g.partial = [df, d2f](const HyperPoint& p, HyperVar v, int order) {
    if (v != HyperVar::t) return 0.0;
    return order == 1 ? df(p.t) : d2f(p.t);
  };
  return g;
}

struct TestField {
  std::string name;
  ScalarField field;
};

/// Catalogue of smooth test fields with analytic gradients and Hessians.
/// Each entry stresses a different group of operator terms: pure radial,
/// Gaussian radial, single-electron direction, electron-electron coupling,
/// azimuthal dependence, and the pair-separation square.
inline std::vector<TestField> standard_test_fields() {
  std::vector<TestField> fields;

  {  // |x|^2
    ScalarField f;
    f.eval = [](const CartesianPoint& x) { return dot(x.x, x.x); };
    f.gradient = [](const CartesianPoint& x) {
      Vec6 g;
      for (int i = 0; i < 6; ++i) g[i] = 2.0 * x.x[i];
      return g;
    };
    f.hessian = [](const CartesianPoint&) {
      Mat6 h = zero_mat6();
      for (int i = 0; i < 6; ++i) h[i][i] = 2.0;
      return h;
    };
    fields.push_back({"radius_sq", std::move(f)});
  }

  {  // exp(-|x|^2)
    ScalarField f;
    f.eval = [](const CartesianPoint& x) { return std::exp(-dot(x.x, x.x)); };
    f.gradient = [](const CartesianPoint& x) {
      const double u = std::exp(-dot(x.x, x.x));
      Vec6 g;
      for (int i = 0; i < 6; ++i) g[i] = -2.0 * x.x[i] * u;
      return g;
    };
    f.hessian = [](const CartesianPoint& x) {
      const double u = std::exp(-dot(x.x, x.x));
      Mat6 h;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          h[i][j] = (4.0 * x.x[i] * x.x[j] - (i == j ? 2.0 : 0.0)) * u;
      return h;
    };
    fields.push_back({"gaussian", std::move(f)});
  }

  {  // x3, a harmonic linear field aligned with the electron-1 polar axis
    ScalarField f;
    f.eval = [](const CartesianPoint& x) { return x.x[2]; };
    f.gradient = [](const CartesianPoint&) {
      return Vec6{0, 0, 1, 0, 0, 0};
    };
    f.hessian = [](const CartesianPoint&) { return zero_mat6(); };
    fields.push_back({"linear_z1", std::move(f)});
  }

  {  // x1 . x2 (dot product of the electron blocks)
    ScalarField f;
    f.eval = [](const CartesianPoint& x) {
      return x.x[0] * x.x[3] + x.x[1] * x.x[4] + x.x[2] * x.x[5];
    };
    f.gradient = [](const CartesianPoint& x) {
      return Vec6{x.x[3], x.x[4], x.x[5], x.x[0], x.x[1], x.x[2]};
    };
    f.hessian = [](const CartesianPoint&) {
      Mat6 h = zero_mat6();
      for (int i = 0; i < 3; ++i) h[i][i + 3] = h[i + 3][i] = 1.0;
      return h;
    };
    fields.push_back({"pair_dot", std::move(f)});
  }

  {  // x3 exp(-|x|^2): Gaussian-modulated l=1 profile
    ScalarField f;
    f.eval = [](const CartesianPoint& x) {
      return x.x[2] * std::exp(-dot(x.x, x.x));
    };
    f.gradient = [](const CartesianPoint& x) {
      const double g0 = std::exp(-dot(x.x, x.x));
      Vec6 g;
      for (int i = 0; i < 6; ++i)
        g[i] = ((i == 2 ? 1.0 : 0.0) - 2.0 * x.x[i] * x.x[2]) * g0;
      return g;
    };
    f.hessian = [](const CartesianPoint& x) {
      const double g0 = std::exp(-dot(x.x, x.x));
      Mat6 h;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          double v = 4.0 * x.x[i] * x.x[j] * x.x[2];
          if (i == 2) v -= 2.0 * x.x[j];
          if (j == 2) v -= 2.0 * x.x[i];
          if (i == j) v -= 2.0 * x.x[2];
          h[i][j] = v * g0;
        }
      return h;
    };
    fields.push_back({"gauss_z1", std::move(f)});
  }

  {  // x1^2 - x2^2: harmonic l=2, m=2 profile in the electron-1 angles
    ScalarField f;
    f.eval = [](const CartesianPoint& x) {
      return x.x[0] * x.x[0] - x.x[1] * x.x[1];
    };
    f.gradient = [](const CartesianPoint& x) {
      return Vec6{2.0 * x.x[0], -2.0 * x.x[1], 0, 0, 0, 0};
    };
    f.hessian = [](const CartesianPoint&) {
      Mat6 h = zero_mat6();
      h[0][0] = 2.0;
      h[1][1] = -2.0;
      return h;
    };
    fields.push_back({"ylm22", std::move(f)});
  }

  {  // |x1 - x2|^2
    ScalarField f;
    f.eval = [](const CartesianPoint& x) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double d = x.x[i] - x.x[i + 3];
        s += d * d;
      }
      return s;
    };
    f.gradient = [](const CartesianPoint& x) {
      Vec6 g;
      for (int i = 0; i < 3; ++i) {
        const double d = x.x[i] - x.x[i + 3];
        g[i] = 2.0 * d;
        g[i + 3] = -2.0 * d;
      }
      return g;
    };
    f.hessian = [](const CartesianPoint&) {
      Mat6 h = zero_mat6();
      for (int i = 0; i < 3; ++i) {
        h[i][i] = h[i + 3][i + 3] = 2.0;
        h[i][i + 3] = h[i + 3][i] = -2.0;
      }
      return h;
    };
    fields.push_back({"pair_sep_sq", std::move(f)});
  }

  return fields;
}

}  // namespace edgecalc
