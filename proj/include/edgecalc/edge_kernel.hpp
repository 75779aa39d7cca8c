#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "edgecalc/bessel.hpp"
#include "edgecalc/core.hpp"
#include "edgecalc/sphharm.hpp"
#include "edgecalc/symbols.hpp"

namespace edgecalc {

// ---------------------------------------------------------------------------
// Exact solutions of the separated principal-edge-symbol equation
//
//   [ d2 + (2/r) d - l(l+1)/r^2 + C ] f_l(r) = 0,    C < 0,
//
// via f_l(r) = r^-1/2 B_{l+1/2}(sqrt(-C) r) for the three modified Bessel
// kinds, weighted-space membership of the separated solutions, and the
// resulting kernel/cokernel dimensions and Fredholm index of the principal
// edge symbol as functions of the weight gamma.
// ---------------------------------------------------------------------------

class TruncationBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double radial_solution(int l, double C, double r, BesselKind kind,
                              int l_max = kBesselLMaxDefault) {
  if (!(C < 0.0))
    throw std::domain_error("radial_solution: requires C < 0");
  if (!(r > 0.0))
    throw NonpositiveArgumentError("radial_solution: r must be positive");
  const double a = std::sqrt(-C);
  return bessel_half(BesselHalfOrder{l, kind}, a * r, l_max) / std::sqrt(r);
}

inline double radial_solution_d1(int l, double C, double r, BesselKind kind,
                                 int l_max = kBesselLMaxDefault) {
  const double a = std::sqrt(-C);
  const BesselHalfOrder spec{l, kind};
  const double b = bessel_half(spec, a * r, l_max);
  const double b1 = bessel_half_d1(spec, a * r, l_max);
  return -0.5 * std::pow(r, -1.5) * b + a * b1 / std::sqrt(r);
}

inline double radial_solution_d2(int l, double C, double r, BesselKind kind,
                                 int l_max = kBesselLMaxDefault) {
  const double a = std::sqrt(-C);
  const BesselHalfOrder spec{l, kind};
  const double b = bessel_half(spec, a * r, l_max);
  const double b1 = bessel_half_d1(spec, a * r, l_max);
  const double b2 = bessel_half_d2(spec, a * r, l_max);
  return 0.75 * std::pow(r, -2.5) * b - a * std::pow(r, -1.5) * b1 +
         a * a * b2 / std::sqrt(r);
}

/// Relative residual of the separated radial equation on f_l; vanishes to
/// rounding for every Bessel kind. `finite_difference` differentiates the
/// evaluated solution and is the certifying mode; `recurrence` only checks
/// the internal consistency of the derivative chains.
inline double radial_residual(int l, double C, double r, BesselKind kind,
                              DerivativeMode mode =
                                  DerivativeMode::finite_difference,
                              int l_max = kBesselLMaxDefault) {
  if (!(C < 0.0))
    throw std::domain_error("radial_residual: requires C < 0");
  const double f = radial_solution(l, C, r, kind, l_max);
  double f1, f2;
  if (mode == DerivativeMode::recurrence) {
    f1 = radial_solution_d1(l, C, r, kind, l_max);
    f2 = radial_solution_d2(l, C, r, kind, l_max);
  } else {
    const auto g = [&](double s) {
      return radial_solution(l, C, s, kind, l_max);
    };
    // Every solution except I_{1/2} varies on the scale r itself (power
    // behaviour at the tip); r^-1/2 I_{1/2}(a r) is analytic in r^2 and
    // varies on 1/a instead, so the step follows that scale there.
    const double h = (kind == BesselKind::I_plus && l == 0)
                         ? std::max(r, 1.0 / std::sqrt(-C))
                         : r;
    f1 = fd::d1(g, r, 3e-4 * h);
    f2 = fd::d2(g, r, 1.2e-3 * h);
  }
  const double t1 = f2;
  const double t2 = 2.0 / r * f1;
  const double t3 = -static_cast<double>(l) * (l + 1) / (r * r) * f;
  const double t4 = C * f;
  const double scale = std::max(
      {std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4), 1e-300});
  return std::abs(t1 + t2 + t3 + t4) / scale;
}

enum class GrowthClass { decaying, growing };

struct MembershipExponent {
  double small_r_exponent;  // f_l ~ r^exponent as r -> 0
  GrowthClass large_r;
};

/// Asymptotic classes of the separated solutions. K decays exponentially and
/// behaves like r^-(l+1) at the tip; both I kinds grow like e^{ar}/r and are
/// in no weighted space at infinity.
inline MembershipExponent membership_exponent(int l, BesselKind kind) {
  if (l < 0) throw std::invalid_argument("membership_exponent: l >= 0");
  switch (kind) {
    case BesselKind::K:
      return {-(static_cast<double>(l) + 1.0), GrowthClass::decaying};
    case BesselKind::I_plus:
      return {static_cast<double>(l), GrowthClass::growing};
    case BesselKind::I_minus:
      return {-(static_cast<double>(l) + 1.0), GrowthClass::growing};
  }
  return {0.0, GrowthClass::growing};
}

/// Whether r^-1/2 K_{l+1/2}(a r) Y_lm lies in K^{2,gamma}((S^2)^wedge).
/// With base dimension n = 2 and measure dr dS, the tip criterion for a
/// solution ~ r^-(l+1) is gamma + l < 1/2; the exponential tail is harmless.
inline bool membership_decide(int l, double gamma) {
  if (l < 0) throw std::invalid_argument("membership_decide: l >= 0");
  return gamma < 0.5 - static_cast<double>(l);
}

/// Weight with its Fredholm admissibility flag: gamma must stay away from
/// Z + 1/2 (tolerance 1e-12 absolute).
struct WeightGamma {
  double gamma;
  bool fredholm_ok;
};

inline WeightGamma make_weight(double gamma, double tol = 1e-12) {
  const double u = gamma + 0.5;
  const double dist = std::abs(u - std::round(u));
  return WeightGamma{gamma, dist > tol};
}

/// Kernel/cokernel data of the principal edge symbol at weight gamma.
/// dim_ker counts l < 1/2 - gamma with the full (2l+1) m-degeneracy,
/// dim_coker counts l < gamma - 3/2 (kernel of the adjoint at weight
/// 2 - gamma); ker_sectors / coker_sectors list the contributing l, matching
/// the per-generator bookkeeping without degeneracy.
struct FredholmData {
  double gamma = 0.0;
  bool fredholm_ok = true;
  int dim_ker = 0;
  int dim_coker = 0;
  int index = 0;
  std::vector<int> ker_sectors;
  std::vector<int> coker_sectors;
};

inline FredholmData fredholm_data(double gamma, int l_max = 20) {
  const double ker_bound = 0.5 - gamma;
  const double coker_bound = gamma - 1.5;
  if (ker_bound >= static_cast<double>(l_max) ||
      coker_bound >= static_cast<double>(l_max))
    throw TruncationBoundError("fredholm_data: l_max binds the sector sums");

  FredholmData d;
  d.gamma = gamma;
  d.fredholm_ok = make_weight(gamma).fredholm_ok;
  for (int l = 0; l <= l_max; ++l) {
    if (static_cast<double>(l) < ker_bound) {
      d.ker_sectors.push_back(l);
      d.dim_ker += 2 * l + 1;
    }
    if (static_cast<double>(l) < coker_bound) {
      d.coker_sectors.push_back(l);
      d.dim_coker += 2 * l + 1;
    }
  }
  d.index = d.dim_ker - d.dim_coker;
  return d;
}

/// Exit symbols of the edge symbol pushed forward to R^3,
///   sigma_e = (|xi|^2 - C) / 2t^2,   sigma_psi_e = |xi|^2 / 2t^2.
/// For a nonzero edge covector C < 0, so sigma_e never vanishes; sigma_psi_e
/// vanishes only at xi = 0.
struct ExitSymbols {
  double sigma_e;
  double sigma_psi_e;
};

inline ExitSymbols exit_symbols(const EdgeSymbolParams& params,
                                const std::array<double, 3>& xi) {
  const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  const double t2 = params.t * params.t;
  const double C =
      params.edge_covector_zero() ? 0.0 : params.C();
  return ExitSymbols{(xi2 - C) / (2.0 * t2), xi2 / (2.0 * t2)};
}

/// The separated kernel candidate r^-1/2 B_{l+1/2}(sqrt(-C) r) Y_lm as a cone
/// field with analytic partials; with kind K it annihilates the principal
/// edge symbol pointwise.
inline ConeField separated_cone_field(int l, int m, double C,
                                      BesselKind kind = BesselKind::K,
                                      int l_max = kBesselLMaxDefault) {
  ConeField u;
  u.eval = [l, m, C, kind, l_max](double r, double th, double ph) {
    return radial_solution(l, C, r, kind, l_max) * sph_harmonic(l, m, th, ph);
  };
  u.partial = [l, m, C, kind, l_max](double r, double th, double ph,
                                     ConeVar v, int order) {
    switch (v) {
      case ConeVar::r: {
        const double y = sph_harmonic(l, m, th, ph);
        return (order == 1 ? radial_solution_d1(l, C, r, kind, l_max)
                           : radial_solution_d2(l, C, r, kind, l_max)) *
               y;
      }
      case ConeVar::theta: {
        const double f = radial_solution(l, C, r, kind, l_max);
        return (order == 1 ? sph_harmonic_dtheta(l, m, th, ph)
                           : sph_harmonic_d2theta(l, m, th, ph)) *
               f;
      }
      case ConeVar::phi: {
        const double f = radial_solution(l, C, r, kind, l_max);
        return (order == 1 ? sph_harmonic_dphi(l, m, th, ph)
                           : sph_harmonic_d2phi(l, m, th, ph)) *
               f;
      }
    }
    return 0.0;
  };
  return u;
}

}  // namespace edgecalc
