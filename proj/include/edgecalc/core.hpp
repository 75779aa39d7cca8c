#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

namespace edgecalc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHalfPi = 0.5 * std::numbers::pi;

/// Default tolerance for detecting degenerate chart loci (r near 0 or pi/2,
/// theta near 0 or pi). Detection is relative to the natural scale of the
/// quantity (sin r against 1, etc.).
inline constexpr double kDegenerateTol = 1e-10;

class OutOfDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using Vec6 = std::array<double, 6>;
using Mat6 = std::array<std::array<double, 6>, 6>;

inline double dot(const Vec6& a, const Vec6& b) {
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec6& a) { return std::sqrt(dot(a, a)); }

inline Mat6 zero_mat6() {
  Mat6 m{};
  return m;
}

inline double max_abs_entry(const Mat6& m) {
  double v = 0.0;
  for (const auto& row : m)
    for (double e : row) v = std::max(v, std::abs(e));
  return v;
}

inline double max_asymmetry(const Mat6& m) {
  double v = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) v = std::max(v, std::abs(m[i][j] - m[j][i]));
  return v;
}

inline double max_entry_diff(const Mat6& a, const Mat6& b) {
  double v = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) v = std::max(v, std::abs(a[i][j] - b[i][j]));
  return v;
}

// x^2 / sin^2(x), continued by its limit 1 at x = 0. Series branch below the
// switch point keeps full precision where the quotient is 0/0.
inline double sq_over_sinsq(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return 1.0 + x2 * (1.0 / 3.0 + x2 * (1.0 / 15.0 + x2 * (2.0 / 189.0)));
  }
  const double s = std::sin(x);
  return x * x / (s * s);
}

/// Deterministic sample stream. Wraps mt19937_64 and derives doubles from the
/// raw bit stream directly so results do not depend on the standard library's
/// distribution implementations.
class SampleGen {
 public:
  explicit SampleGen(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  /// Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * unit(); }

  /// Standard normal via Box-Muller.
  double normal() {
    double u1 = unit();
    while (u1 <= 0.0) u1 = unit();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  std::mt19937_64 rng_;
};

namespace fd {

/// Central difference stencils on a 1D callable. `order` is 2 or 4.
inline double d1(const std::function<double(double)>& f, double x, double h,
                 int order = 4) {
  if (order <= 2) return (f(x + h) - f(x - h)) / (2.0 * h);
  return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) /
         (12.0 * h);
}

inline double d2(const std::function<double(double)>& f, double x, double h,
                 int order = 4) {
  if (order <= 2) return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
  return (-f(x + 2 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) -
          f(x - 2 * h)) /
         (12.0 * h * h);
}

}  // namespace fd

}  // namespace edgecalc
