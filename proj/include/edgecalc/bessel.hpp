#pragma once

#include <cmath>
#include <stdexcept>

#include "edgecalc/core.hpp"

namespace edgecalc {

// ---------------------------------------------------------------------------
// Modified Bessel functions of half-integer order. Every order has an
// elementary closed form; the seeds
//
//   I_{ 1/2}(z) = sqrt(2/pi z) sinh z
//   I_{-1/2}(z) = sqrt(2/pi z) cosh z
//   K_{ 1/2}(z) = sqrt(pi/2z) e^-z
//
// are propagated by the standard three-term recurrence, run in the direction
// that is numerically stable for the target solution: upward for K and
// I_{-(l+1/2)} (both grow with the order index), downward with Miller
// normalization for I_{l+1/2} (the recessive solution under upward
// recurrence).
// ---------------------------------------------------------------------------

class NonpositiveArgumentError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OrderOverflowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

enum class BesselKind { I_plus, I_minus, K };

/// Order l + 1/2 for I_plus and K, -(l + 1/2) for I_minus.
struct BesselHalfOrder {
  int l = 0;
  BesselKind kind = BesselKind::K;

  double order() const {
    return kind == BesselKind::I_minus ? -(l + 0.5) : l + 0.5;
  }
};

inline constexpr int kBesselLMaxDefault = 20;

namespace detail {

inline double bessel_i_half_closed(double z) {
  return std::sqrt(2.0 / (kPi * z)) * std::sinh(z);
}
inline double bessel_i_minus_half_closed(double z) {
  return std::sqrt(2.0 / (kPi * z)) * std::cosh(z);
}
inline double bessel_k_half_closed(double z) {
  return std::sqrt(kPi / (2.0 * z)) * std::exp(-z);
}

// K_{l+1/2} by upward recurrence K_{nu+1} = K_{nu-1} + (2 nu / z) K_nu.
inline double bessel_k_chain(int l, double z) {
  double km = bessel_k_half_closed(z);  // K_{1/2} (= K_{-1/2})
  if (l == 0) return km;
  double kc = km * (1.0 + 1.0 / z);  // K_{3/2}
  for (int k = 1; k < l; ++k) {
    const double kn = km + (2.0 * k + 1.0) / z * kc;
    km = kc;
    kc = kn;
  }
  return kc;
}

inline double bessel_i_plus_miller(int l, double z);

// I_{-(l+1/2)} through the exact half-integer connection
//   I_{-nu} = I_nu + (2/pi) sin(nu pi) K_nu,  sin((l+1/2) pi) = (-1)^l.
// Running the three-term recurrence directly toward this order subtracts
// away the recessive I part once z exceeds the order and caps the relative
// accuracy near 1e-12; the two stable chains composed here do not.
inline double bessel_i_minus_connection(int l, double z) {
  if (l == 0) return bessel_i_minus_half_closed(z);
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  return bessel_i_plus_miller(l, z) +
         (2.0 / kPi) * sign * bessel_k_chain(l, z);
}

// I_{l+1/2} by downward (Miller) recurrence normalized at the I_{1/2} closed
// form; upward recurrence would cancel catastrophically for z < l.
inline double bessel_i_plus_miller(int l, double z) {
  const int start = l + 16 + static_cast<int>(std::ceil(z));
  double g_up = 0.0;   // trial value at index k+1
  double g_cur = 1.0;  // trial value at index k
  double target = 0.0;
  bool have_target = false;
  for (int k = start; k >= 1; --k) {
    const double g_down = g_up + (2.0 * k + 1.0) / z * g_cur;
    g_up = g_cur;
    g_cur = g_down;
    if (k - 1 == l) {
      target = g_cur;
      have_target = true;
    }
    if (std::abs(g_cur) > 1e250) {
      g_cur *= 1e-250;
      g_up *= 1e-250;
      if (have_target) target *= 1e-250;
    }
  }
  return target * (bessel_i_half_closed(z) / g_cur);
}

// Value at order n + 1/2 for any integer n (negative n reaches the
// I_{-(l+1/2)} family); used by the derivative recurrences.
inline double bessel_i_signed(int n, double z) {
  return n >= 0 ? bessel_i_plus_miller(n, z) : bessel_i_minus_connection(-n - 1, z);
}

inline double bessel_k_signed(int n, double z) {
  return bessel_k_chain(n >= 0 ? n : -n - 1, z);  // K_nu = K_-nu
}

inline int signed_index(const BesselHalfOrder& spec) {
  return spec.kind == BesselKind::I_minus ? -spec.l - 1 : spec.l;
}

inline double bessel_signed(const BesselHalfOrder& spec, int offset, double z) {
  const int n = signed_index(spec) + offset;
  return spec.kind == BesselKind::K ? bessel_k_signed(n, z)
                                    : bessel_i_signed(n, z);
}

}  // namespace detail

inline void check_bessel_args(const BesselHalfOrder& spec, double z,
                              int l_max) {
  if (!(z > 0.0))
    throw NonpositiveArgumentError("bessel_half: z must be positive");
  if (spec.l < 0) throw std::invalid_argument("bessel_half: l must be >= 0");
  if (spec.l > l_max)
    throw OrderOverflowError("bessel_half: order beyond l_max");
}

inline double bessel_half(const BesselHalfOrder& spec, double z,
                          int l_max = kBesselLMaxDefault) {
  check_bessel_args(spec, z, l_max);
  return detail::bessel_signed(spec, 0, z);
}

/// d/dz; I'_nu = (I_{nu-1} + I_{nu+1})/2, K'_nu = -(K_{nu-1} + K_{nu+1})/2.
inline double bessel_half_d1(const BesselHalfOrder& spec, double z,
                             int l_max = kBesselLMaxDefault) {
  check_bessel_args(spec, z, l_max);
  const double lo = detail::bessel_signed(spec, -1, z);
  const double hi = detail::bessel_signed(spec, +1, z);
  return spec.kind == BesselKind::K ? -0.5 * (lo + hi) : 0.5 * (lo + hi);
}

/// d2/dz2 via the doubled recurrence,
/// w'' = (w_{nu-2} + 2 w_nu + w_{nu+2})/4 for both families.
inline double bessel_half_d2(const BesselHalfOrder& spec, double z,
                             int l_max = kBesselLMaxDefault) {
  check_bessel_args(spec, z, l_max);
  return 0.25 * (detail::bessel_signed(spec, -2, z) +
                 2.0 * detail::bessel_signed(spec, 0, z) +
                 detail::bessel_signed(spec, +2, z));
}

/// How residual checks obtain derivatives. The recurrence relations imply
/// the Bessel equation identically, so a residual built purely from them
/// only measures chain consistency; `finite_difference` differentiates the
/// evaluated function itself and genuinely certifies the values.
enum class DerivativeMode { finite_difference, recurrence };

/// Relative residual of the modified Bessel equation
///   z^2 w'' + z w' - (z^2 + nu^2) w = 0,
/// normalized by the largest term magnitude.
inline double bessel_ode_residual(
    const BesselHalfOrder& spec, double z,
    DerivativeMode mode = DerivativeMode::finite_difference,
    int l_max = kBesselLMaxDefault) {
  const double nu = spec.order();
  const double w = bessel_half(spec, z, l_max);
  double w1, w2;
  if (mode == DerivativeMode::recurrence) {
    w1 = bessel_half_d1(spec, z, l_max);
    w2 = bessel_half_d2(spec, z, l_max);
  } else {
    // separate steps balance truncation against roundoff for each order
    const auto f = [&](double s) { return bessel_half(spec, s, l_max); };
    w1 = fd::d1(f, z, 3e-4 * z);
    w2 = fd::d2(f, z, 1.2e-3 * z);
  }
  const double t1 = z * z * w2;
  const double t2 = z * w1;
  const double t3 = -(z * z + nu * nu) * w;
  const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3),
                                 1e-300});
  return std::abs(t1 + t2 + t3) / scale;
}

}  // namespace edgecalc
