#pragma once

#include <array>
#include <cmath>
#include <string>

#include "edgecalc/core.hpp"

namespace edgecalc {

// ---------------------------------------------------------------------------
// Coordinate atlas around the three Coulomb edges of the two-electron
// configuration space R^6.
//
// Chart U1 covers a neighbourhood of |x_1| = 0, chart U2 of |x_2| = 0 and
// chart U3 of |x_1 - x_2| = 0. All three reduce to the same hyperspherical
// template
//
//   x~_1 = sin r sin(th1) cos(ph1)   x~_4 = cos r sin(th2) cos(ph2)
//   x~_2 = sin r sin(th1) sin(ph1)   x~_5 = cos r sin(th2) sin(ph2)
//   x~_3 = sin r cos(th1)            x~_6 = cos r cos(th2)
//
// with x~ = x / t and t the R^6 norm; U2 composes with the electron swap
// (x_1, x_2, x_3) <-> (x_4, x_5, x_6) and U3 with the orthogonal
// center-of-mass map z = ((x_1 - x_2)/sqrt2, (x_1 + x_2)/sqrt2) so the
// Euclidean metric is preserved exactly.
// ---------------------------------------------------------------------------

class ZeroPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateAnglesError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class WrongChartError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ChartId { U1, U2, U3 };

inline const char* to_string(ChartId c) {
  switch (c) {
    case ChartId::U1: return "u1";
    case ChartId::U2: return "u2";
    case ChartId::U3: return "u3";
  }
  return "?";
}

/// A point of the two-electron configuration space R^6 in atomic units.
/// x[0..2] is electron 1, x[3..5] is electron 2.
struct CartesianPoint {
  Vec6 x{};

  double operator[](int i) const { return x[i]; }
  double& operator[](int i) { return x[i]; }

  double norm() const { return edgecalc::norm(x); }

  double electron1_norm() const {
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  }
  double electron2_norm() const {
    return std::sqrt(x[3] * x[3] + x[4] * x[4] + x[5] * x[5]);
  }
  double pair_distance() const {
    const double d0 = x[0] - x[3], d1 = x[1] - x[4], d2 = x[2] - x[5];
    return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
  }
};

inline CartesianPoint swap_electrons(const CartesianPoint& p) {
  return CartesianPoint{{p.x[3], p.x[4], p.x[5], p.x[0], p.x[1], p.x[2]}};
}

/// Orthogonal center-of-mass map used by chart U3,
/// z_i = (x_i - x_{i+3})/sqrt2, z_{i+3} = (x_i + x_{i+3})/sqrt2.
inline CartesianPoint center_of_mass_map(const CartesianPoint& p) {
  constexpr double s = std::numbers::sqrt2;
  CartesianPoint z;
  for (int i = 0; i < 3; ++i) {
    z.x[i] = (p.x[i] - p.x[i + 3]) / s;
    z.x[i + 3] = (p.x[i] + p.x[i + 3]) / s;
  }
  return z;
}

inline CartesianPoint center_of_mass_inverse(const CartesianPoint& z) {
  constexpr double s = std::numbers::sqrt2;
  CartesianPoint p;
  for (int i = 0; i < 3; ++i) {
    p.x[i] = (z.x[i] + z.x[i + 3]) / s;
    p.x[i + 3] = (z.x[i + 3] - z.x[i]) / s;
  }
  return p;
}

/// Degenerate loci of a chart, reported as flags rather than clamped away:
/// the symbol and kernel layers need exact awareness of where a chart breaks.
enum class Degeneracy : unsigned {
  none = 0u,
  r_low = 1u,    // sin r ~ 0, (th1, ph1) undefined
  r_high = 2u,   // cos r ~ 0, (th2, ph2) undefined
  theta1 = 4u,   // sin th1 ~ 0, ph1 undefined
  theta2 = 8u,   // sin th2 ~ 0, ph2 undefined
};

inline Degeneracy operator|(Degeneracy a, Degeneracy b) {
  return static_cast<Degeneracy>(static_cast<unsigned>(a) |
                                 static_cast<unsigned>(b));
}
inline bool any(Degeneracy f) { return static_cast<unsigned>(f) != 0u; }
inline bool has(Degeneracy f, Degeneracy bit) {
  return (static_cast<unsigned>(f) & static_cast<unsigned>(bit)) != 0u;
}

/// Chart-tagged hyperspherical coordinates. t > 0 is the corner radius,
/// r in (0, pi/2) the cone axial variable, (theta1, phi1) the cone-sphere
/// angles and (theta2, phi2) the edge-sphere angles. Boundary values carry a
/// degeneracy flag.
struct HyperPoint {
  ChartId chart = ChartId::U1;
  double t = 1.0;
  double r = kHalfPi / 2.0;
  double theta1 = kHalfPi;
  double phi1 = 0.0;
  double theta2 = kHalfPi;
  double phi2 = 0.0;
  Degeneracy flags = Degeneracy::none;
};

inline double max_coordinate_diff(const HyperPoint& a, const HyperPoint& b) {
  double v = std::abs(a.t - b.t);
  v = std::max(v, std::abs(a.r - b.r));
  v = std::max(v, std::abs(a.theta1 - b.theta1));
  v = std::max(v, std::abs(a.phi1 - b.phi1));
  v = std::max(v, std::abs(a.theta2 - b.theta2));
  v = std::max(v, std::abs(a.phi2 - b.phi2));
  return v;
}

inline void require_interior(const HyperPoint& p,
                             double tol = kDegenerateTol) {
  if (any(p.flags))
    throw DegenerateAnglesError("hyper point carries a degeneracy flag");
  if (!(p.t > 0.0)) throw ZeroPointError("t must be positive");
  if (std::sin(p.r) < tol || std::cos(p.r) < tol ||
      std::sin(p.theta1) < tol || std::sin(p.theta2) < tol)
    throw DegenerateAnglesError("point within tolerance of a degenerate locus");
}

namespace detail {

inline double wrap_phi(double phi) {
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi) phi -= kTwoPi;
  return phi;
}

// Spherical angles of a 3-vector whose norm n is already known.
// Returns {theta, phi, degenerate?}; phi = 0 where undefined.
struct Angles {
  double theta, phi;
  bool degenerate;
};

inline Angles sphere_angles(double vx, double vy, double vz, double n,
                            double tol) {
  Angles a{0.0, 0.0, false};
  const double rho = std::sqrt(vx * vx + vy * vy);
  a.theta = std::atan2(rho, vz);
  if (rho < tol * n) {
    a.degenerate = true;
    a.theta = vz >= 0.0 ? 0.0 : kPi;
  } else {
    a.phi = wrap_phi(std::atan2(vy, vx));
  }
  return a;
}

inline CartesianPoint chart_post_map(const CartesianPoint& y, ChartId chart) {
  switch (chart) {
    case ChartId::U1: return y;
    case ChartId::U2: return swap_electrons(y);
    case ChartId::U3: return center_of_mass_inverse(y);
  }
  return y;
}

inline CartesianPoint chart_pre_map(const CartesianPoint& x, ChartId chart) {
  switch (chart) {
    case ChartId::U1: return x;
    case ChartId::U2: return swap_electrons(x);
    case ChartId::U3: return center_of_mass_map(x);
  }
  return x;
}

}  // namespace detail

/// Forward transform into a chart. Degenerate loci are flagged on the result,
/// not clamped; undefined azimuths are set to 0.
inline HyperPoint to_hyper(const CartesianPoint& x, ChartId chart,
                           double tol = kDegenerateTol) {
  const CartesianPoint y = detail::chart_pre_map(x, chart);
  const double t = y.norm();
  if (!(t > 0.0)) throw ZeroPointError("to_hyper: zero point");

  const double na = y.electron1_norm();
  const double nb = y.electron2_norm();

  HyperPoint p;
  p.chart = chart;
  p.t = t;
  p.r = std::atan2(na, nb);

  if (na < tol * t) p.flags = p.flags | Degeneracy::r_low;
  if (nb < tol * t) p.flags = p.flags | Degeneracy::r_high;

  if (!has(p.flags, Degeneracy::r_low)) {
    const auto a = detail::sphere_angles(y.x[0], y.x[1], y.x[2], na, tol);
    p.theta1 = a.theta;
    p.phi1 = a.phi;
    if (a.degenerate) p.flags = p.flags | Degeneracy::theta1;
  }
  if (!has(p.flags, Degeneracy::r_high)) {
    const auto b = detail::sphere_angles(y.x[3], y.x[4], y.x[5], nb, tol);
    p.theta2 = b.theta;
    p.phi2 = b.phi;
    if (b.degenerate) p.flags = p.flags | Degeneracy::theta2;
  }
  return p;
}

/// Inverse transform; |result| = t exactly up to rounding.
inline CartesianPoint to_cartesian(const HyperPoint& p) {
  const double sr = std::sin(p.r), cr = std::cos(p.r);
  const double s1 = std::sin(p.theta1), c1 = std::cos(p.theta1);
  const double s2 = std::sin(p.theta2), c2 = std::cos(p.theta2);
  const double cp1 = std::cos(p.phi1), sp1 = std::sin(p.phi1);
  const double cp2 = std::cos(p.phi2), sp2 = std::sin(p.phi2);

  CartesianPoint y;
  y.x[0] = p.t * sr * s1 * cp1;
  y.x[1] = p.t * sr * s1 * sp1;
  y.x[2] = p.t * sr * c1;
  y.x[3] = p.t * cr * s2 * cp2;
  y.x[4] = p.t * cr * s2 * sp2;
  y.x[5] = p.t * cr * c2;
  return detail::chart_post_map(y, p.chart);
}

enum class HyperVar { t, r, theta1, phi1, theta2, phi2 };

inline constexpr std::array<HyperVar, 6> kHyperVars = {
    HyperVar::t,      HyperVar::r,    HyperVar::theta1,
    HyperVar::phi1,   HyperVar::theta2, HyperVar::phi2};

inline HyperPoint shifted(const HyperPoint& p, HyperVar v, double dv) {
  HyperPoint q = p;
  switch (v) {
    case HyperVar::t: q.t += dv; break;
    case HyperVar::r: q.r += dv; break;
    case HyperVar::theta1: q.theta1 += dv; break;
    case HyperVar::phi1: q.phi1 += dv; break;
    case HyperVar::theta2: q.theta2 += dv; break;
    case HyperVar::phi2: q.phi2 += dv; break;
  }
  return q;
}

/// Analytic first partial of to_cartesian with respect to one hyperspherical
/// variable. Used to pull derivative oracles back through a chart.
inline CartesianPoint embedding_d1(const HyperPoint& p, HyperVar v) {
  const double sr = std::sin(p.r), cr = std::cos(p.r);
  const double s1 = std::sin(p.theta1), c1 = std::cos(p.theta1);
  const double s2 = std::sin(p.theta2), c2 = std::cos(p.theta2);
  const double cp1 = std::cos(p.phi1), sp1 = std::sin(p.phi1);
  const double cp2 = std::cos(p.phi2), sp2 = std::sin(p.phi2);
  const double t = p.t;

  CartesianPoint d{};
  switch (v) {
    case HyperVar::t:
      d.x = {sr * s1 * cp1, sr * s1 * sp1, sr * c1,
             cr * s2 * cp2, cr * s2 * sp2, cr * c2};
      break;
    case HyperVar::r:
      d.x = {t * cr * s1 * cp1,  t * cr * s1 * sp1,  t * cr * c1,
             -t * sr * s2 * cp2, -t * sr * s2 * sp2, -t * sr * c2};
      break;
    case HyperVar::theta1:
      d.x = {t * sr * c1 * cp1, t * sr * c1 * sp1, -t * sr * s1, 0, 0, 0};
      break;
    case HyperVar::phi1:
      d.x = {-t * sr * s1 * sp1, t * sr * s1 * cp1, 0, 0, 0, 0};
      break;
    case HyperVar::theta2:
      d.x = {0, 0, 0, t * cr * c2 * cp2, t * cr * c2 * sp2, -t * cr * s2};
      break;
    case HyperVar::phi2:
      d.x = {0, 0, 0, -t * cr * s2 * sp2, t * cr * s2 * cp2, 0};
      break;
  }
  return detail::chart_post_map(d, p.chart);
}

/// Analytic pure second partial of to_cartesian (no mixed partials are needed
/// by the operator forms).
inline CartesianPoint embedding_d2(const HyperPoint& p, HyperVar v) {
  const double sr = std::sin(p.r), cr = std::cos(p.r);
  const double s1 = std::sin(p.theta1), c1 = std::cos(p.theta1);
  const double s2 = std::sin(p.theta2), c2 = std::cos(p.theta2);
  const double cp1 = std::cos(p.phi1), sp1 = std::sin(p.phi1);
  const double cp2 = std::cos(p.phi2), sp2 = std::sin(p.phi2);
  const double t = p.t;

  const double y0 = t * sr * s1 * cp1, y1 = t * sr * s1 * sp1,
               y2 = t * sr * c1;
  const double y3 = t * cr * s2 * cp2, y4 = t * cr * s2 * sp2,
               y5 = t * cr * c2;

  CartesianPoint d{};
  switch (v) {
    case HyperVar::t:
      d.x = {0, 0, 0, 0, 0, 0};
      break;
    case HyperVar::r:  // each block is a pure sine/cosine in r
      d.x = {-y0, -y1, -y2, -y3, -y4, -y5};
      break;
    case HyperVar::theta1:
      d.x = {-y0, -y1, -y2, 0, 0, 0};
      break;
    case HyperVar::phi1:
      d.x = {-y0, -y1, 0, 0, 0, 0};
      break;
    case HyperVar::theta2:
      d.x = {0, 0, 0, -y3, -y4, -y5};
      break;
    case HyperVar::phi2:
      d.x = {0, 0, 0, -y3, -y4, 0};
      break;
  }
  return detail::chart_post_map(d, p.chart);
}

struct Distances {
  double d1;   // |x_1|
  double d2;   // |x_2|
  double d12;  // |x_1 - x_2|
};

/// Closed-form interparticle distances in chart U1,
///   d1 = t sin r, d2 = t cos r,
///   d12 = t sqrt(1 - sin(2r) [cos th1 cos th2 + sin th1 sin th2 cos(ph1-ph2)]).
/// U2/U3 points go through to_cartesian and the electron-swap / center-of-mass
/// symmetry instead.
inline Distances interparticle_distances(const HyperPoint& p) {
  if (p.chart != ChartId::U1)
    throw WrongChartError(
        "interparticle_distances: closed forms are chart-U1 only");
  const double sr = std::sin(p.r), cr = std::cos(p.r);
  const double kappa =
      std::cos(p.theta1) * std::cos(p.theta2) +
      std::sin(p.theta1) * std::sin(p.theta2) * std::cos(p.phi1 - p.phi2);
  const double radicand = std::max(0.0, 1.0 - std::sin(2.0 * p.r) * kappa);
  return Distances{p.t * sr, p.t * cr, p.t * std::sqrt(radicand)};
}

/// Measured ratio |x_1 - x_2| / (t r) for a chart-U3 point. Reported rather
/// than asserted: with the 1/sqrt2-normalized center-of-mass coordinates the
/// e-e distance is sqrt2 * t * sin r, so the ratio tends to sqrt2 as r -> 0.
inline double ee_distance_ratio_u3(const HyperPoint& p) {
  if (p.chart != ChartId::U3)
    throw WrongChartError("ee_distance_ratio_u3: chart U3 only");
  const CartesianPoint x = to_cartesian(p);
  return x.pair_distance() / (p.t * p.r);
}

/// Diagonal blocks of the closed-form metric
///   ds^2 = dt^2 + t^2 [dr^2 + sin^2 r g_X + cos^2 r g_Y]
/// in coordinate order (t, r, th1, ph1, th2, ph2).
struct MetricBlocks {
  double dt2_coeff;
  double dr2_coeff;
  double gX_scale;  // multiplies g_X = diag(1, sin^2 th1)
  double gY_scale;  // multiplies g_Y = diag(1, sin^2 th2)
  std::array<std::array<double, 2>, 2> gX;
  std::array<std::array<double, 2>, 2> gY;

  Mat6 assemble() const {
    Mat6 m = zero_mat6();
    m[0][0] = dt2_coeff;
    m[1][1] = dr2_coeff;
    m[2][2] = gX_scale * gX[0][0];
    m[3][3] = gX_scale * gX[1][1];
    m[4][4] = gY_scale * gY[0][0];
    m[5][5] = gY_scale * gY[1][1];
    return m;
  }
};

inline MetricBlocks metric_closed_form(const HyperPoint& p) {
  const double t2 = p.t * p.t;
  const double sr = std::sin(p.r), cr = std::cos(p.r);
  const double s1 = std::sin(p.theta1), s2 = std::sin(p.theta2);
  MetricBlocks b;
  b.dt2_coeff = 1.0;
  b.dr2_coeff = t2;
  b.gX_scale = t2 * sr * sr;
  b.gY_scale = t2 * cr * cr;
  b.gX = {{{1.0, 0.0}, {0.0, s1 * s1}}};
  b.gY = {{{1.0, 0.0}, {0.0, s2 * s2}}};
  return b;
}

/// Numerical metric pullback J^T J with J the central-difference Jacobian of
/// to_cartesian. Independent oracle for metric_closed_form; agreement is
/// O(step^2).
inline Mat6 metric_pullback(const HyperPoint& p, double step = 1e-5,
                            bool richardson = false) {
  if (!(step >= 1e-7 && step <= 1e-3))
    throw std::invalid_argument("metric_pullback: step outside [1e-7, 1e-3]");
  if (p.t - step <= 0.0 || p.r - step <= 0.0 || p.r + step >= kHalfPi ||
      p.theta1 - step <= 0.0 || p.theta1 + step >= kPi ||
      p.theta2 - step <= 0.0 || p.theta2 + step >= kPi)
    throw DegenerateAnglesError("metric_pullback: stencil exits the chart");

  const auto jacobian = [&p](double h) {
    std::array<Vec6, 6> cols;  // cols[j] = d(to_cartesian)/d(var_j)
    for (int j = 0; j < 6; ++j) {
      const CartesianPoint xp = to_cartesian(shifted(p, kHyperVars[j], h));
      const CartesianPoint xm = to_cartesian(shifted(p, kHyperVars[j], -h));
      for (int i = 0; i < 6; ++i) cols[j][i] = (xp.x[i] - xm.x[i]) / (2.0 * h);
    }
    return cols;
  };

  auto cols = jacobian(step);
  if (richardson) {
    const auto fine = jacobian(step / 2.0);
    for (int j = 0; j < 6; ++j)
      for (int i = 0; i < 6; ++i)
        cols[j][i] = (4.0 * fine[j][i] - cols[j][i]) / 3.0;
  }

  Mat6 m;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m[i][j] = dot(cols[i], cols[j]);
  return m;
}

}  // namespace edgecalc
