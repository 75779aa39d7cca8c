#pragma once

#include <cmath>

#include "edgecalc/charts.hpp"
#include "edgecalc/core.hpp"
#include "edgecalc/fields.hpp"

namespace edgecalc {

// ---------------------------------------------------------------------------
// The helium Hamiltonian
//
//   H = -1/2 (Delta_1 + Delta_2) - 2/|x_1| - 2/|x_2| + 1/|x_1 - x_2|
//
// in Cartesian, corner-degenerate and edge-degenerate form, together with the
// smooth coefficient functions h and v of the degenerate forms. The three
// forms are algebraic rearrangements of one operator; apply_* evaluates each
// literally so their pointwise agreement is a checkable identity rather than
// an assumption.
// ---------------------------------------------------------------------------

class OnSingularSetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class CoalescenceOverlapError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Threshold below which h and v switch to their Taylor branches. Keeps the
/// removable 0/0 quotients at full precision through r = 0.
inline constexpr double kSeriesSwitch = 1e-3;

/// h(r) = 1 + 2 r tan r - 2 r ctan r, smooth on [0, pi/2) with h(0) = -1.
inline double coeff_h(double r) {
  if (!(r >= 0.0 && r < kHalfPi))
    throw OutOfDomainError("coeff_h: r outside [0, pi/2)");
  if (r < kSeriesSwitch) {
    const double r2 = r * r;
    return -1.0 + r2 * (8.0 / 3.0 + r2 * (32.0 / 45.0 + r2 * (256.0 / 945.0)));
  }
  return 1.0 + 2.0 * r * std::tan(r) - 2.0 * r / std::tan(r);
}

namespace detail {

// r / sin r with series branch; equals 1 at r = 0.
inline double r_over_sin(double r) {
  if (std::abs(r) < kSeriesSwitch) {
    const double r2 = r * r;
    return 1.0 + r2 * (1.0 / 6.0 + r2 * (7.0 / 360.0 + r2 * (31.0 / 15120.0)));
  }
  return r / std::sin(r);
}

inline double angular_kappa(double th1, double ph1, double th2, double ph2) {
  return std::cos(th1) * std::cos(th2) +
         std::sin(th1) * std::sin(th2) * std::cos(ph1 - ph2);
}

}  // namespace detail

/// v(r, th1, ph1, th2, ph2) from the chart-U1 potential factorization
/// V = t^-1 r^-1 v,
///   v = -2r/sin r - 2r/cos r + r / sqrt(1 - sin(2r) kappa),
/// smooth up to r = 0 with v(0, .) = -2.
inline double coeff_v(double r, double th1, double ph1, double th2, double ph2,
                      double tol = kDegenerateTol) {
  const double kappa = detail::angular_kappa(th1, ph1, th2, ph2);
  const double radicand = 1.0 - std::sin(2.0 * r) * kappa;
  if (radicand <= tol)
    throw CoalescenceOverlapError("coeff_v: point on the e-e edge");
  return -2.0 * detail::r_over_sin(r) - 2.0 * r / std::cos(r) +
         r / std::sqrt(radicand);
}

/// Chart-aware potential factor: for any chart, V(to_cartesian(p)) equals
/// potential_v(p) / (t r). Charts U1 and U2 share one formula (both
/// electron-nucleus terms carry the same charge); chart U3 leads with the
/// electron-electron term since there sin r measures |x_1 - x_2| / (sqrt2 t).
inline double potential_v(const HyperPoint& p, double tol = kDegenerateTol) {
  if (p.chart != ChartId::U3)
    return coeff_v(p.r, p.theta1, p.phi1, p.theta2, p.phi2, tol);
  const double kappa =
      detail::angular_kappa(p.theta1, p.phi1, p.theta2, p.phi2);
  const double s2r = std::sin(2.0 * p.r);
  const double rad_plus = 1.0 + s2r * kappa;   // (|x_1| / t)^2 * 2
  const double rad_minus = 1.0 - s2r * kappa;  // (|x_2| / t)^2 * 2
  if (rad_plus <= tol || rad_minus <= tol)
    throw OnSingularSetError("potential_v: point on an e-n edge (chart U3)");
  constexpr double s = std::numbers::sqrt2;
  return detail::r_over_sin(p.r) / s - 2.0 * s * p.r / std::sqrt(rad_plus) -
         2.0 * s * p.r / std::sqrt(rad_minus);
}

/// Coulomb potential -2/|x_1| - 2/|x_2| + 1/|x_1 - x_2|.
inline double coulomb_potential(const CartesianPoint& x,
                                double tol = kDegenerateTol) {
  const double n1 = x.electron1_norm();
  const double n2 = x.electron2_norm();
  const double n12 = x.pair_distance();
  if (n1 < tol || n2 < tol || n12 < tol)
    throw OnSingularSetError("coulomb_potential: point on a singular set");
  return -2.0 / n1 - 2.0 / n2 + 1.0 / n12;
}

/// H u at a Cartesian point: -1/2 Laplacian + Coulomb multiplication.
inline double apply_cartesian(const ScalarField& u, const CartesianPoint& x,
                              double tol = kDegenerateTol) {
  return -0.5 * u.laplacian(x) + coulomb_potential(x, tol) * u.value(x);
}

/// Spherical Laplacian on the cone base X1 ~ S^2,
/// Delta_X1 = d2_th1 + ctan(th1) d_th1 + sin(th1)^-2 d2_ph1.
inline double laplace_x1(const EdgeField& u, const HyperPoint& p) {
  const double s1 = std::sin(p.theta1);
  return u.d2(p, HyperVar::theta1) +
         u.d1(p, HyperVar::theta1) * std::cos(p.theta1) / s1 +
         u.d2(p, HyperVar::phi1) / (s1 * s1);
}

inline double laplace_y1(const EdgeField& u, const HyperPoint& p) {
  const double s2 = std::sin(p.theta2);
  return u.d2(p, HyperVar::theta2) +
         u.d1(p, HyperVar::theta2) * std::cos(p.theta2) / s2 +
         u.d2(p, HyperVar::phi2) / (s2 * s2);
}

/// Coefficients of the edge-degenerate form, i.e. of each operator monomial
/// inside the r^-2 [ ... ] bracket. All of them extend smoothly to r = 0,
/// which is the Fuchs-shape requirement the tests sample.
struct EdgeTermCoefficients {
  double c_rdr2;   // (-r d_r)^2
  double c_rdr1;   // (-r d_r)
  double c_tdt2;   // (r d_t)^2
  double c_tdt1;   // (r d_t)
  double c_th2_2;  // (r d_th2)^2
  double c_th2_1;  // (r d_th2)
  double c_ph2_2;  // (r d_ph2)^2
  double c_lapx1;  // Delta_X1
  double c_id;     // multiplication, (r/t) v
};

inline EdgeTermCoefficients edge_term_coefficients(const HyperPoint& p,
                                                   double tol = kDegenerateTol) {
  const double t = p.t, r = p.r;
  const double t2 = t * t;
  const double cr = std::cos(r);
  const double s2 = std::sin(p.theta2), c2 = std::cos(p.theta2);
  EdgeTermCoefficients c;
  c.c_rdr2 = -0.5 / t2;
  c.c_rdr1 = -0.5 * coeff_h(r) / t2;
  c.c_tdt2 = -0.5;
  c.c_tdt1 = -2.5 * r / t;
  c.c_th2_2 = -0.5 / (t2 * cr * cr);
  c.c_th2_1 = -0.5 * r * (c2 / s2) / (t2 * cr * cr);
  c.c_ph2_2 = -0.5 / (t2 * s2 * s2 * cr * cr);
  c.c_lapx1 = -0.5 * sq_over_sinsq(r) / t2;
  c.c_id = (r / t) * potential_v(p, tol);
  return c;
}

/// H u in the edge-degenerate form: t is an edge variable, the bracket is a
/// Fuchs-type expression in (-r d_r) and r-scaled edge derivatives, the whole
/// scaled by r^-2.
inline double apply_edge(const EdgeField& u, const HyperPoint& p,
                         double tol = kDegenerateTol) {
  if (std::sin(p.r) < tol) throw OnSingularSetError("apply_edge: r at the edge");
  require_interior(p, tol);

  const double r = p.r;
  const double u_r = u.d1(p, HyperVar::r), u_rr = u.d2(p, HyperVar::r);
  const double u_t = u.d1(p, HyperVar::t), u_tt = u.d2(p, HyperVar::t);
  const double u_b = u.d1(p, HyperVar::theta2),
               u_bb = u.d2(p, HyperVar::theta2);
  const double u_pp = u.d2(p, HyperVar::phi2);

  const double m_rdr2 = r * r * u_rr + r * u_r;  // (-r d_r)^2 u
  const double m_rdr1 = -r * u_r;                // (-r d_r) u
  const EdgeTermCoefficients c = edge_term_coefficients(p, tol);

  const double bracket = c.c_rdr2 * m_rdr2 + c.c_rdr1 * m_rdr1 +
                         c.c_tdt2 * (r * r * u_tt) + c.c_tdt1 * (r * u_t) +
                         c.c_th2_2 * (r * r * u_bb) + c.c_th2_1 * (r * u_b) +
                         c.c_ph2_2 * (r * r * u_pp) +
                         c.c_lapx1 * laplace_x1(u, p) + c.c_id * u.value(p);
  return bracket / (r * r);
}

/// H u in the corner-degenerate form: the same operator grouped in powers of
/// (-r t d_t) and scaled by t^-2 r^-2. Implemented independently of apply_edge so
/// the pointwise identity with apply_edge is a genuine numerical check.
inline double apply_corner(const EdgeField& u, const HyperPoint& p,
                           double tol = kDegenerateTol) {
  if (std::sin(p.r) < tol)
    throw OnSingularSetError("apply_corner: r at the edge");
  require_interior(p, tol);

  const double t = p.t, r = p.r;
  const double cr = std::cos(r);
  const double s2 = std::sin(p.theta2), c2 = std::cos(p.theta2);

  const double u_r = u.d1(p, HyperVar::r), u_rr = u.d2(p, HyperVar::r);
  const double u_t = u.d1(p, HyperVar::t), u_tt = u.d2(p, HyperVar::t);
  const double u_b = u.d1(p, HyperVar::theta2),
               u_bb = u.d2(p, HyperVar::theta2);
  const double u_pp = u.d2(p, HyperVar::phi2);

  const double m_rtdt2 = r * r * t * t * u_tt + r * r * t * u_t;  // (-rt d_t)^2
  const double m_rtdt1 = -r * t * u_t;                            // (-rt d_t)
  const double m_rdr2 = r * r * u_rr + r * u_r;
  const double m_rdr1 = -r * u_r;

  const double bracket =
      -0.5 * m_rtdt2 + 2.0 * r * m_rtdt1 - 0.5 * m_rdr2 -
      0.5 * coeff_h(r) * m_rdr1 - 0.5 / (cr * cr) * (r * r * u_bb) -
      0.5 * r * (c2 / s2) / (cr * cr) * (r * u_b) -
      0.5 / (s2 * s2 * cr * cr) * (r * r * u_pp) -
      0.5 * sq_over_sinsq(r) * laplace_x1(u, p) +
      t * r * potential_v(p, tol) * u.value(p);
  return bracket / (t * t * r * r);
}

/// Laplace-Beltrami operator on S^5 near the edge,
///   Delta~ = r^-2 [ (-r d_r)^2 + h(r)(-r d_r)
///                   + (r/sin r)^2 Delta_X1 + (r/cos r)^2 Delta_Y1 ].
/// Only the angular behaviour of u is consumed; t is held fixed.
inline double apply_beltrami(const EdgeField& u, const HyperPoint& p,
                             double tol = kDegenerateTol) {
  require_interior(p, tol);
  const double r = p.r;
  const double cr = std::cos(r);
  const double u_r = u.d1(p, HyperVar::r), u_rr = u.d2(p, HyperVar::r);
  const double m_rdr2 = r * r * u_rr + r * u_r;
  const double m_rdr1 = -r * u_r;
  const double bracket = m_rdr2 + coeff_h(r) * m_rdr1 +
                         r * r / (std::sin(r) * std::sin(r)) *
                             laplace_x1(u, p) +
                         r * r / (cr * cr) * laplace_y1(u, p);
  return bracket / (r * r);
}

/// Full R^6 Laplacian assembled from the radial part and Delta~,
///   Delta = t^-2 [ (-t d_t)^2 - 4 (-t d_t) + Delta~ ]
///         = d2_t + (5/t) d_t + t^-2 Delta~.
inline double laplacian_hyper(const EdgeField& u, const HyperPoint& p,
                              double tol = kDegenerateTol) {
  return u.d2(p, HyperVar::t) + 5.0 / p.t * u.d1(p, HyperVar::t) +
         apply_beltrami(u, p, tol) / (p.t * p.t);
}

}  // namespace edgecalc
