#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "edgecalc/edge_kernel.hpp"
#include "edgecalc/sampling.hpp"

using namespace edgecalc;

namespace {

// Truncated weighted tip norm sum_{j<=2} int_eps^1 r^{-2(gamma-1)}
// |(r d_r)^j f|^2 dr, integrated in log space by composite Simpson. The
// epsilon-refinement of this quantity is the divergence detector used to
// confirm the analytic membership decision.
double truncated_weighted_norm(int l, double C, double gamma, double eps) {
  const auto integrand = [&](double r) {
    const double f = radial_solution(l, C, r, BesselKind::K);
    const double f1 = radial_solution_d1(l, C, r, BesselKind::K);
    const double f2 = radial_solution_d2(l, C, r, BesselKind::K);
    const double rd1 = r * f1;                 // (r d_r) f
    const double rd2 = r * f1 + r * r * f2;    // (r d_r)^2 f
    const double w = std::pow(r, -2.0 * (gamma - 1.0));
    return w * (f * f + rd1 * rd1 + rd2 * rd2);
  };
  const int n = 2000;  // Simpson panels in s = ln r
  const double s0 = std::log(eps), s1 = 0.0;
  const double h = (s1 - s0) / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double s = s0 + h * i;
    const double g = integrand(std::exp(s)) * std::exp(s);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * g;
  }
  return acc * h / 3.0;
}

// true if halving epsilon six times never grows the norm by more than 10%
bool quadrature_converges(int l, double C, double gamma) {
  double eps = 1e-2;
  double prev = truncated_weighted_norm(l, C, gamma, eps);
  for (int k = 0; k < 6; ++k) {
    eps *= 0.5;
    const double cur = truncated_weighted_norm(l, C, gamma, eps);
    if (cur > 1.10 * prev) return false;
    prev = cur;
  }
  return true;
}

TEST(RadialSolution, LZeroKernelElementClosedForm) {
  // r^-1/2 K_1/2(a r) = sqrt(pi/2a) e^{-a r} / r
  const double C = -1.7;
  const double a = std::sqrt(-C);
  for (double r : {0.3, 1.0, 2.5}) {
    const double expected = std::sqrt(kPi / (2.0 * a)) * std::exp(-a * r) / r;
    EXPECT_NEAR(radial_solution(0, C, r, BesselKind::K), expected,
                1e-14 * expected);
  }
}

TEST(RadialResidual, SpecifiedSpotChecks) {
  EXPECT_LT(radial_residual(0, -1.0, 1.0, BesselKind::K), 1e-9);
  EXPECT_LT(radial_residual(3, -4.0, 0.7, BesselKind::I_plus), 1e-8);
}

TEST(RadialResidual, AllKindsAcrossOrdersAndRadii) {
  for (BesselKind kind :
       {BesselKind::K, BesselKind::I_plus, BesselKind::I_minus})
    for (int l = 0; l <= 10; ++l)
      for (double C : {-0.25, -1.0, -4.0})
        for (double r : {0.2, 0.7, 1.5, 3.0})
          EXPECT_LT(radial_residual(l, C, r, kind), 1e-8)
              << "kind=" << static_cast<int>(kind) << " l=" << l
              << " C=" << C << " r=" << r;
}

TEST(RadialResidual, NonnegativeCThrows) {
  EXPECT_THROW(radial_residual(0, 0.0, 1.0, BesselKind::K),
               std::domain_error);
  EXPECT_THROW(radial_residual(0, 2.0, 1.0, BesselKind::K),
               std::domain_error);
  EXPECT_THROW(radial_solution(1, 1.0, 1.0, BesselKind::K),
               std::domain_error);
}

TEST(MembershipExponent, AnalyticClassesAndFittedSlopes) {
  EXPECT_EQ(membership_exponent(0, BesselKind::K).small_r_exponent, -1.0);
  EXPECT_EQ(membership_exponent(2, BesselKind::K).small_r_exponent, -3.0);
  EXPECT_EQ(membership_exponent(0, BesselKind::K).large_r,
            GrowthClass::decaying);
  EXPECT_EQ(membership_exponent(0, BesselKind::I_plus).large_r,
            GrowthClass::growing);
  EXPECT_EQ(membership_exponent(1, BesselKind::I_minus).small_r_exponent,
            -2.0);

  // least-squares slope of log|f| against log r on r in [1e-6, 1e-3]
  const double C = -1.0;
  for (BesselKind kind :
       {BesselKind::K, BesselKind::I_plus, BesselKind::I_minus}) {
    for (int l : {0, 1, 2, 4}) {
      std::vector<double> xs, ys;
      for (int k = 0; k <= 12; ++k) {
        const double r = 1e-6 * std::pow(10.0, 3.0 * k / 12.0);
        xs.push_back(std::log(r));
        ys.push_back(std::log(std::abs(radial_solution(l, C, r, kind))));
      }
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
      }
      const double n = static_cast<double>(xs.size());
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      EXPECT_NEAR(slope, membership_exponent(l, kind).small_r_exponent, 1e-3)
          << "kind=" << static_cast<int>(kind) << " l=" << l;
    }
  }
}

TEST(MembershipExponent, LargeArgumentEnvelopes) {
  const double C = -1.0;  // a = 1
  for (int l : {0, 2}) {
    const double k25 = std::abs(radial_solution(l, C, 25.0, BesselKind::K));
    const double k50 = std::abs(radial_solution(l, C, 50.0, BesselKind::K));
    EXPECT_LT(k50, k25 * std::exp(-12.0));  // decays at least like e^{-r/2}
    const double i25 =
        std::abs(radial_solution(l, C, 25.0, BesselKind::I_plus));
    const double i50 =
        std::abs(radial_solution(l, C, 50.0, BesselKind::I_plus));
    EXPECT_GT(i50, i25 * std::exp(12.0));  // grows at least like e^{r/2}
  }
}

TEST(MembershipDecide, SpecifiedExamplesAndBoundary) {
  EXPECT_TRUE(membership_decide(0, 0.0));
  EXPECT_FALSE(membership_decide(0, 0.6));
  EXPECT_TRUE(membership_decide(1, -1.0));
  EXPECT_FALSE(membership_decide(0, 0.5));   // boundary excluded
  EXPECT_FALSE(membership_decide(1, -0.5));  // gamma = 1/2 - l
}

TEST(MembershipDecide, QuadratureRefinementConfirms) {
  const double C = -1.0;
  struct Case {
    int l;
    double gamma;
  };
  for (const Case c : {Case{0, 0.0}, Case{1, -1.0}, Case{2, -2.0}}) {
    EXPECT_TRUE(membership_decide(c.l, c.gamma));
    EXPECT_TRUE(quadrature_converges(c.l, C, c.gamma)) << c.l << " " << c.gamma;
  }
  for (const Case c : {Case{0, 0.8}, Case{1, -0.2}, Case{2, -1.2}}) {
    EXPECT_FALSE(membership_decide(c.l, c.gamma));
    EXPECT_FALSE(quadrature_converges(c.l, C, c.gamma))
        << c.l << " " << c.gamma;
  }
}

TEST(Weights, FredholmAdmissibility) {
  EXPECT_FALSE(make_weight(0.5).fredholm_ok);
  EXPECT_FALSE(make_weight(-2.5).fredholm_ok);
  EXPECT_FALSE(make_weight(0.5 + 5e-13).fredholm_ok);
  EXPECT_TRUE(make_weight(0.5 + 5e-12).fredholm_ok);
  EXPECT_TRUE(make_weight(1.0).fredholm_ok);
}

TEST(Fredholm, SpecifiedWeights) {
  const FredholmData g1 = fredholm_data(1.0);
  EXPECT_EQ(g1.dim_ker, 0);
  EXPECT_EQ(g1.dim_coker, 0);
  EXPECT_EQ(g1.index, 0);
  EXPECT_TRUE(g1.ker_sectors.empty());

  const FredholmData g0 = fredholm_data(0.0);
  EXPECT_EQ(g0.dim_ker, 1);  // l = 0 only, multiplicity 2*0+1
  EXPECT_EQ(g0.dim_coker, 0);
  EXPECT_EQ(g0.index, 1);
  EXPECT_EQ(g0.ker_sectors, std::vector<int>{0});

  const FredholmData g2 = fredholm_data(2.0);
  EXPECT_EQ(g2.dim_ker, 0);
  EXPECT_EQ(g2.dim_coker, 1);
  EXPECT_EQ(g2.index, -1);
  EXPECT_EQ(g2.coker_sectors, std::vector<int>{0});

  const FredholmData gm1 = fredholm_data(-1.0);
  EXPECT_EQ(gm1.dim_ker, 4);  // l in {0, 1}: 1 + 3
  EXPECT_EQ(gm1.dim_coker, 0);
  EXPECT_EQ(gm1.index, 4);
  EXPECT_EQ(gm1.ker_sectors, (std::vector<int>{0, 1}));
}

TEST(Fredholm, HalfIntegerWeightFlaggedButReported) {
  const FredholmData d = fredholm_data(0.5);
  EXPECT_FALSE(d.fredholm_ok);
  EXPECT_EQ(d.index, d.dim_ker - d.dim_coker);
}

TEST(Fredholm, TruncationBoundThrows) {
  EXPECT_THROW(fredholm_data(-25.0, 20), TruncationBoundError);
  EXPECT_THROW(fredholm_data(30.0, 20), TruncationBoundError);
  EXPECT_NO_THROW(fredholm_data(-15.0, 20));
}

TEST(Fredholm, WindowJumpsAndDualityOverWeightGrid) {
  std::vector<FredholmData> rows;
  for (int k = 0; k <= 140; ++k) {
    const double gamma = -3.0 + 0.05 * k;
    if (!make_weight(gamma).fredholm_ok) continue;
    rows.push_back(fredholm_data(gamma));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& d = rows[i];
    const bool zero = d.dim_ker == 0 && d.dim_coker == 0;
    const bool window = d.gamma > 0.5 && d.gamma < 1.5;
    EXPECT_EQ(zero, window) << "gamma=" << d.gamma;

    EXPECT_EQ(d.dim_coker, fredholm_data(2.0 - d.gamma).dim_ker);

    if (i > 0) {
      const auto& prev = rows[i - 1];
      EXPECT_LE(d.index, prev.index);
      // exactly one half-integer between consecutive surviving grid points
      const double mid =
          std::round((prev.gamma + d.gamma) / 2.0 - 0.5) + 0.5;
      if (mid > prev.gamma && mid < d.gamma) {
        const long l = mid <= 0.5 ? std::lround(0.5 - mid)
                                  : std::lround(mid - 1.5);
        EXPECT_EQ(prev.index - d.index, 2 * l + 1) << "crossing " << mid;
      } else {
        EXPECT_EQ(prev.index, d.index);
      }
    }
  }
}

TEST(ExitSymbols, SpotValueAndSweep) {
  EdgeSymbolParams par;
  par.t = 1.0;
  par.tau = 1.0;  // C = -1
  const ExitSymbols at_zero = exit_symbols(par, {0.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(at_zero.sigma_e, 0.5);
  EXPECT_DOUBLE_EQ(at_zero.sigma_psi_e, 0.0);

  SampleGen gen(42);
  double min_e = 1e300, min_psi = 1e300;
  for (int i = 0; i < 1000; ++i) {
    EdgeSymbolParams p;
    p.t = gen.uniform(0.5, 2.0);
    p.theta2 = gen.uniform(0.3, kPi - 0.3);
    p.tau = gen.normal();
    p.Theta2 = gen.normal();
    p.Phi2 = gen.normal();
    if (p.edge_covector_zero()) continue;
    std::array<double, 3> xi{gen.normal(), gen.normal(), gen.normal()};
    const ExitSymbols ex = exit_symbols(p, xi);
    min_e = std::min(min_e, ex.sigma_e);
    if (xi[0] != 0.0 || xi[1] != 0.0 || xi[2] != 0.0)
      min_psi = std::min(min_psi, ex.sigma_psi_e);
  }
  EXPECT_GT(min_e, 0.0);
  EXPECT_GT(min_psi, 0.0);

  EdgeSymbolParams zero;  // boundary of the hypothesis: C = 0
  EXPECT_DOUBLE_EQ(exit_symbols(zero, {0.0, 0.0, 0.0}).sigma_e, 0.0);
}

TEST(SeparatedConeField, AnalyticPartialsMatchFiniteDifferences) {
  const double C = -2.3;
  const ConeField u = separated_cone_field(3, 2, C);
  ConeField numeric;
  numeric.eval = u.eval;
  const double r = 0.9, th = 1.2, ph = 2.5;
  for (ConeVar v : {ConeVar::r, ConeVar::theta, ConeVar::phi}) {
    EXPECT_NEAR(u.d(r, th, ph, v, 1), numeric.d(r, th, ph, v, 1), 1e-7);
    EXPECT_NEAR(u.d(r, th, ph, v, 2), numeric.d(r, th, ph, v, 2), 1e-5);
  }
}

TEST(SeparatedConeField, KKindAnnihilatesEdgeSymbol) {
  SampleGen gen(42);
  for (int l = 0; l <= 5; ++l) {
    for (int m : {-l, 0, l}) {
      EdgeSymbolParams par;
      par.t = gen.uniform(0.5, 2.0);
      par.theta2 = gen.uniform(0.4, kPi - 0.4);
      par.tau = gen.uniform(0.2, 1.0);
      par.Theta2 = gen.uniform(-1.0, 1.0);
      par.Phi2 = gen.uniform(-1.0, 1.0);
      const ConeField u = separated_cone_field(l, m, par.C());
      for (int i = 0; i < 4; ++i) {
        const double r = gen.uniform(0.2, 2.5);
        const double th = gen.uniform(0.4, kPi - 0.4);
        const double ph = gen.uniform(0.0, kTwoPi);
        const double val = sigma_wedge_apply(par, u, r, th, ph);
        const double scale =
            std::abs(par.C() * u.value(r, th, ph)) / (2.0 * par.t * par.t);
        EXPECT_LT(std::abs(val), 1e-8 * std::max(1.0, scale))
            << "l=" << l << " m=" << m;
      }
    }
  }
}

}  // namespace
