#pragma once

#include <cmath>
#include <stdexcept>

#include "edgecalc/core.hpp"

namespace edgecalc {

// Real spherical harmonics with analytic theta-derivatives up to order 2.
// Convention: no Condon-Shortley phase,
//   Y_{l,m>0} = sqrt2 N_lm cos(m phi) P_l^m(cos th),
//   Y_{l,0}   = N_l0 P_l(cos th),
//   Y_{l,m<0} = sqrt2 N_l|m| sin(|m| phi) P_l^|m|(cos th),
// with N_lm = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!).

/// Associated Legendre P_l^m(x) without Condon-Shortley phase, m >= 0.
inline double legendre_p(int l, int m, double x) {
  if (l < 0 || m < 0) throw std::invalid_argument("legendre_p: l, m >= 0");
  if (m > l) return 0.0;
  const double somx2 = std::sqrt(std::max(0.0, 1.0 - x * x));
  double pmm = 1.0;  // P_m^m
  for (int i = 1; i <= m; ++i) pmm *= (2.0 * i - 1.0) * somx2;
  if (l == m) return pmm;
  double pmmp1 = x * (2.0 * m + 1.0) * pmm;  // P_{m+1}^m
  if (l == m + 1) return pmmp1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

namespace detail {

// d/dtheta P_l^m(cos th) = [ l cos th P_l^m - (l+m) P_{l-1}^m ] / sin th.
inline double legendre_p_dtheta(int l, int m, double theta) {
  if (m > l) return 0.0;
  const double c = std::cos(theta), s = std::sin(theta);
  const double pl = legendre_p(l, m, c);
  const double plm1 = (l - 1 >= m) ? legendre_p(l - 1, m, c) : 0.0;
  return (l * c * pl - (l + m) * plm1) / s;
}

inline double legendre_p_d2theta(int l, int m, double theta) {
  if (m > l) return 0.0;
  const double c = std::cos(theta), s = std::sin(theta);
  const double pl = legendre_p(l, m, c);
  const double plm1 = (l - 1 >= m) ? legendre_p(l - 1, m, c) : 0.0;
  const double dpl = legendre_p_dtheta(l, m, theta);
  const double dplm1 = (l - 1 >= m) ? legendre_p_dtheta(l - 1, m, theta) : 0.0;
  const double g = l * c * pl - (l + m) * plm1;  // = s * dP/dtheta
  return (l * (-s * pl + c * dpl) - (l + m) * dplm1) / s - g * c / (s * s);
}

inline double sph_norm(int l, int m) {
  double ratio = 1.0;  // (l-m)! / (l+m)!
  for (int k = l - m + 1; k <= l + m; ++k) ratio /= static_cast<double>(k);
  return std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * ratio);
}

inline double azimuth_factor(int m, double phi) {
  if (m == 0) return 1.0;
  if (m > 0) return std::numbers::sqrt2 * std::cos(m * phi);
  return std::numbers::sqrt2 * std::sin(-m * phi);
}

}  // namespace detail

inline double sph_harmonic(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  return detail::sph_norm(l, am) * detail::azimuth_factor(m, phi) *
         legendre_p(l, am, std::cos(theta));
}

inline double sph_harmonic_dtheta(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  return detail::sph_norm(l, am) * detail::azimuth_factor(m, phi) *
         detail::legendre_p_dtheta(l, am, theta);
}

inline double sph_harmonic_d2theta(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  return detail::sph_norm(l, am) * detail::azimuth_factor(m, phi) *
         detail::legendre_p_d2theta(l, am, theta);
}

inline double sph_harmonic_dphi(int l, int m, double theta, double phi) {
  if (m == 0) return 0.0;
  const int am = std::abs(m);
  const double base =
      detail::sph_norm(l, am) * legendre_p(l, am, std::cos(theta));
  if (m > 0)
    return -m * std::numbers::sqrt2 * std::sin(m * phi) * base;
  return am * std::numbers::sqrt2 * std::cos(am * phi) * base;
}

/// Second phi-derivative; the azimuthal factor is a pure harmonic in m phi.
inline double sph_harmonic_d2phi(int l, int m, double theta, double phi) {
  return -static_cast<double>(m) * m * sph_harmonic(l, m, theta, phi);
}

}  // namespace edgecalc
