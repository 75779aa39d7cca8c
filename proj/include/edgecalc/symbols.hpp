#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "edgecalc/charts.hpp"
#include "edgecalc/core.hpp"
#include "edgecalc/sampling.hpp"

namespace edgecalc {

// ---------------------------------------------------------------------------
// Symbolic hierarchy of the edge-degenerate Hamiltonian: principal symbol
// sigma_psi, compressed symbol sigma~_psi, principal edge symbol sigma_wedge
// as an operator family on the model cone (S^2)^wedge, and the principal
// conormal symbol. Grid sweeps certify the ellipticity claims numerically.
// ---------------------------------------------------------------------------

/// Covariables dual to (r, t, th1, ph1, th2, ph2).
struct Covector {
  double rho = 0.0;
  double tau = 0.0;
  double Theta1 = 0.0;
  double Phi1 = 0.0;
  double Theta2 = 0.0;
  double Phi2 = 0.0;

  double norm() const {
    return std::sqrt(rho * rho + tau * tau + Theta1 * Theta1 + Phi1 * Phi1 +
                     Theta2 * Theta2 + Phi2 * Phi2);
  }
  Covector scaled(double s) const {
    return Covector{s * rho, s * tau, s * Theta1, s * Phi1, s * Theta2,
                    s * Phi2};
  }
};

inline Covector covector_from(const Vec6& v) {
  return Covector{v[0], v[1], v[2], v[3], v[4], v[5]};
}

namespace detail {

inline void check_symbol_point(const HyperPoint& p, bool allow_r_zero,
                               double tol) {
  if (p.chart != ChartId::U1)
    throw WrongChartError("symbols: chart U1 only (others by symmetry)");
  if (!(p.t > 0.0)) throw ZeroPointError("symbols: t must be positive");
  if (std::sin(p.theta1) < tol || std::sin(p.theta2) < tol ||
      std::cos(p.r) < tol)
    throw DegenerateAnglesError("symbols: degenerate angles");
  if (!allow_r_zero && std::sin(p.r) < tol)
    throw DegenerateAnglesError("symbols: r at the edge");
}

}  // namespace detail

/// Homogeneous principal symbol of the edge form,
///   sigma_psi = r^-2 [ (r rho)^2/2t^2 + (r tau)^2/2 + (r Th2)^2/2t^2 cos^2 r
///                      + (r Ph2)^2/2t^2 sin^2 th2 cos^2 r
///                      + r^2 Th1^2/2t^2 sin^2 r
///                      + r^2 Ph1^2/2t^2 sin^2 r sin^2 th1 ].
/// Strictly positive off the zero section; degree 2 in the covariables.
inline double sigma_psi(const HyperPoint& p, const Covector& c,
                        double tol = kDegenerateTol) {
  detail::check_symbol_point(p, /*allow_r_zero=*/false, tol);
  const double t2 = p.t * p.t, r = p.r;
  const double cr = std::cos(r), sr = std::sin(r);
  const double s1 = std::sin(p.theta1), s2 = std::sin(p.theta2);
  const double bracket =
      (r * c.rho) * (r * c.rho) / (2.0 * t2) + (r * c.tau) * (r * c.tau) / 2.0 +
      (r * c.Theta2) * (r * c.Theta2) / (2.0 * t2 * cr * cr) +
      (r * c.Phi2) * (r * c.Phi2) / (2.0 * t2 * s2 * s2 * cr * cr) +
      r * r * c.Theta1 * c.Theta1 / (2.0 * t2 * sr * sr) +
      r * r * c.Phi1 * c.Phi1 / (2.0 * t2 * sr * sr * s1 * s1);
  return bracket / (r * r);
}

/// Compressed principal symbol sigma~_psi(rho, ...) =
/// r^2 sigma_psi(r^-1 rho, Th1, Ph1, r^-1 (tau, Th2, Ph2)), evaluable up to
/// r = 0 via the limit r^2/sin^2 r -> 1.
inline double sigma_psi_tilde(const HyperPoint& p, const Covector& c,
                              double tol = kDegenerateTol) {
  detail::check_symbol_point(p, /*allow_r_zero=*/true, tol);
  if (!(p.r >= 0.0 && p.r < kHalfPi))
    throw OutOfDomainError("sigma_psi_tilde: r outside [0, pi/2)");
  const double t2 = p.t * p.t;
  const double cr = std::cos(p.r);
  const double s1 = std::sin(p.theta1), s2 = std::sin(p.theta2);
  const double axial = sq_over_sinsq(p.r);
  return c.rho * c.rho / (2.0 * t2) + c.tau * c.tau / 2.0 +
         c.Theta2 * c.Theta2 / (2.0 * t2 * cr * cr) +
         c.Phi2 * c.Phi2 / (2.0 * t2 * s2 * s2 * cr * cr) +
         axial * (c.Theta1 * c.Theta1 +
                  c.Phi1 * c.Phi1 / (s1 * s1)) /
             (2.0 * t2);
}

/// Frozen edge variables/covariables of the principal edge symbol and the
/// derived constant C = -(t tau)^2 - Th2^2 - Ph2^2 / sin^2 th2; C < 0 exactly
/// when the edge covector (tau, Th2, Ph2) is nonzero.
struct EdgeSymbolParams {
  double t = 1.0;
  double theta2 = kHalfPi;
  double phi2 = 0.0;
  double tau = 0.0;
  double Theta2 = 0.0;
  double Phi2 = 0.0;

  double C(double tol = kDegenerateTol) const {
    const double s2 = std::sin(theta2);
    if (s2 < tol)
      throw DegenerateAnglesError("EdgeSymbolParams: sin th2 ~ 0");
    return -(t * tau) * (t * tau) - Theta2 * Theta2 -
           Phi2 * Phi2 / (s2 * s2);
  }

  bool edge_covector_zero() const {
    return tau == 0.0 && Theta2 == 0.0 && Phi2 == 0.0;
  }
};

enum class ConeVar { r, theta, phi };

/// Field on the open stretched cone (0, inf) x S^2, the operand of the
/// principal edge symbol. Partial oracle up to order 2 per variable; finite
/// differences otherwise.
struct ConeField {
  std::function<double(double r, double theta, double phi)> eval;
  std::function<double(double, double, double, ConeVar, int)> partial;
  double fd_step = 1e-4;
  int fd_order = 4;

  double value(double r, double th, double ph) const { return eval(r, th, ph); }

  double d(double r, double th, double ph, ConeVar v, int order) const {
    if (partial) return partial(r, th, ph, v, order);
    const auto line = [&](double s) {
      switch (v) {
        case ConeVar::r: return eval(s, th, ph);
        case ConeVar::theta: return eval(r, s, ph);
        case ConeVar::phi: return eval(r, th, s);
      }
      return 0.0;
    };
    const double at = v == ConeVar::r ? r : (v == ConeVar::theta ? th : ph);
    return order == 1 ? fd::d1(line, at, fd_step, fd_order)
                      : fd::d2(line, at, fd_step, fd_order);
  }
};

/// Two groupings of the principal edge symbol. `fuchs` uses (-r d_r) powers
/// with the r = 0 coefficients frozen; `laplace` is the flat form
/// -(1/2t^2)[d2_r + (2/r) d_r + Delta_X1/r^2 + C]. They are algebraically
/// identical; both are implemented so their pointwise agreement is an
/// automated check.
enum class WedgeForm { fuchs, laplace };

inline double sigma_wedge_apply(const EdgeSymbolParams& params,
                                const ConeField& u, double r, double theta,
                                double phi,
                                WedgeForm form = WedgeForm::laplace,
                                double tol = kDegenerateTol) {
  if (!(r > 0.0)) throw OutOfDomainError("sigma_wedge_apply: r must be > 0");
  if (std::sin(theta) < tol)
    throw DegenerateAnglesError("sigma_wedge_apply: degenerate theta");

  const double t2 = params.t * params.t;
  const double C = params.C(tol);
  const double s = std::sin(theta), c = std::cos(theta);

  const double u0 = u.value(r, theta, phi);
  const double u_r = u.d(r, theta, phi, ConeVar::r, 1);
  const double u_rr = u.d(r, theta, phi, ConeVar::r, 2);
  const double lap_x1 = u.d(r, theta, phi, ConeVar::theta, 2) +
                        (c / s) * u.d(r, theta, phi, ConeVar::theta, 1) +
                        u.d(r, theta, phi, ConeVar::phi, 2) / (s * s);

  if (form == WedgeForm::laplace)
    return -0.5 / t2 * (u_rr + 2.0 / r * u_r + lap_x1 / (r * r) + C * u0);

  // Fuchs grouping: r^-2 [ -(1/2t^2)(-r d_r)^2 + (1/2t^2)(-r d_r)
  //   + (r tau)^2/2 + (r Th2)^2/2t^2 + (r Ph2)^2/2t^2 sin^2 th2
  //   - Delta_X1 / 2t^2 ].
  const double m_rdr2 = r * r * u_rr + r * u_r;
  const double m_rdr1 = -r * u_r;
  const double s2 = std::sin(params.theta2);
  const double bracket =
      -0.5 / t2 * m_rdr2 + 0.5 / t2 * m_rdr1 +
      0.5 * (r * params.tau) * (r * params.tau) * u0 +
      0.5 * (r * params.Theta2) * (r * params.Theta2) / t2 * u0 +
      0.5 * (r * params.Phi2) * (r * params.Phi2) / (t2 * s2 * s2) * u0 -
      0.5 * lap_x1 / t2;
  return bracket / (r * r);
}

/// Conormal symbol of the principal edge symbol on the harmonic sector l,
///   sigma_c(w) = (1/2t^2)(-w^2 + w + l(l+1)),
/// obtained from the Fuchs coefficients frozen at r = 0 with Delta_X1
/// replaced by its eigenvalue -l(l+1).
inline double conormal_symbol(int l, double t, double w) {
  return 0.5 / (t * t) * (-w * w + w + static_cast<double>(l) * (l + 1));
}

struct SectorRoots {
  int l;
  double w_minus;  // smaller root
  double w_plus;   // larger root
};

/// Non-invertibility points of sigma_c per spherical-harmonic sector,
/// computed as the roots of the sector quadratic. The union over all l is a
/// subset of the integers.
struct ConormalSpectrum {
  double t;
  std::vector<SectorRoots> sectors;
};

inline ConormalSpectrum conormal_spectrum(int l_max, double t) {
  if (l_max < 0) throw std::invalid_argument("conormal_spectrum: l_max >= 0");
  ConormalSpectrum sp;
  sp.t = t;
  sp.sectors.reserve(static_cast<std::size_t>(l_max) + 1);
  const double a2 = -0.5 / (t * t);
  const double a1 = 0.5 / (t * t);
  for (int l = 0; l <= l_max; ++l) {
    const double a0 = 0.5 * static_cast<double>(l) * (l + 1) / (t * t);
    // stable quadratic formula on a2 w^2 + a1 w + a0
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (a1 + (a1 >= 0.0 ? sq : -sq));
    const double w1 = q / a2;
    const double w2 = (a0 == 0.0 && q == 0.0) ? 0.0 : a0 / q;
    sp.sectors.push_back(
        SectorRoots{l, std::min(w1, w2), std::max(w1, w2)});
  }
  return sp;
}

/// Grid sweep certifying positivity of sigma_psi and sigma~_psi on unit
/// covectors. The compressed symbol sweep additionally covers the r = 0
/// slice.
struct EllipticityGrid {
  int points_per_axis = 10;
  std::uint64_t seed = 42;
  double t_min = 0.5, t_max = 2.0;
  double r_min = 1e-3;
  double r_max = kHalfPi - 1e-3;
  double theta_min = 0.1;
  double theta_max = kPi - 0.1;
  int r_zero_slice_points = 1000;  // extra sigma~ samples on the r = 0 slice
  /// Optional explicit covectors; zero-norm entries are reported as
  /// degenerate inputs, not failures.
  std::vector<Covector> covectors;
};

struct EllipticityReport {
  double min_sigma_psi = 0.0;
  double min_sigma_psi_tilde = 0.0;
  double min_sigma_psi_tilde_r0 = 0.0;
  std::size_t samples = 0;
  std::size_t r0_samples = 0;
  std::size_t degenerate_inputs = 0;
  double threshold = 1e-12;

  bool pass() const {
    return min_sigma_psi > threshold && min_sigma_psi_tilde > threshold &&
           min_sigma_psi_tilde_r0 > threshold;
  }
};

inline EllipticityReport check_ellipticity(const EllipticityGrid& grid) {
  EllipticityReport rep;
  rep.min_sigma_psi = std::numeric_limits<double>::infinity();
  rep.min_sigma_psi_tilde = std::numeric_limits<double>::infinity();
  rep.min_sigma_psi_tilde_r0 = std::numeric_limits<double>::infinity();
  SampleGen gen(grid.seed);

  const int n = grid.points_per_axis;
  const auto lin = [n](double a, double b, int i) {
    return n == 1 ? a : a + (b - a) * static_cast<double>(i) / (n - 1);
  };

  std::size_t cov_cursor = 0;
  const auto next_cov = [&]() -> std::pair<Covector, bool> {
    if (!grid.covectors.empty()) {
      const Covector c = grid.covectors[cov_cursor % grid.covectors.size()];
      ++cov_cursor;
      if (c.norm() < 1e-15) return {c, false};
      return {c.scaled(1.0 / c.norm()), true};
    }
    return {covector_from(sample_unit_covector(gen)), true};
  };

  for (int it = 0; it < n; ++it)
    for (int ir = 0; ir < n; ++ir)
      for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) {
          HyperPoint p;
          p.chart = ChartId::U1;
          p.t = lin(grid.t_min, grid.t_max, it);
          p.r = lin(grid.r_min, grid.r_max, ir);
          p.theta1 = lin(grid.theta_min, grid.theta_max, i1);
          p.theta2 = lin(grid.theta_min, grid.theta_max, i2);
          const auto [cov, ok] = next_cov();
          if (!ok) {
            ++rep.degenerate_inputs;
            continue;
          }
          rep.min_sigma_psi = std::min(rep.min_sigma_psi, sigma_psi(p, cov));
          rep.min_sigma_psi_tilde =
              std::min(rep.min_sigma_psi_tilde, sigma_psi_tilde(p, cov));
          ++rep.samples;
        }

  for (int k = 0; k < grid.r_zero_slice_points; ++k) {
    HyperPoint p;
    p.chart = ChartId::U1;
    p.t = gen.uniform(grid.t_min, grid.t_max);
    p.r = 0.0;
    p.theta1 = gen.uniform(grid.theta_min, grid.theta_max);
    p.theta2 = gen.uniform(grid.theta_min, grid.theta_max);
    const auto [cov, ok] = next_cov();
    if (!ok) {
      ++rep.degenerate_inputs;
      continue;
    }
    rep.min_sigma_psi_tilde_r0 =
        std::min(rep.min_sigma_psi_tilde_r0, sigma_psi_tilde(p, cov));
    ++rep.r0_samples;
  }
  return rep;
}

}  // namespace edgecalc
