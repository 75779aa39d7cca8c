#include <cmath>

#include <gtest/gtest.h>

#include "edgecalc/sphharm.hpp"
#include "edgecalc/symbols.hpp"

using namespace edgecalc;

namespace {

HyperPoint interior_point() {
  HyperPoint p;
  p.chart = ChartId::U1;
  p.t = 1.3;
  p.r = 0.6;
  p.theta1 = 1.1;
  p.phi1 = 0.9;
  p.theta2 = 2.0;
  p.phi2 = 4.2;
  return p;
}

TEST(SigmaPsi, VanishesOnZeroCovector) {
  EXPECT_DOUBLE_EQ(sigma_psi(interior_point(), Covector{}), 0.0);
}

TEST(SigmaPsi, SingleRhoTermCancelsRadialWeight) {
  SampleGen gen(42);
  Covector c;
  c.rho = 1.0;
  for (int i = 0; i < 20; ++i) {
    const HyperPoint p = sample_interior(gen, ChartId::U1);
    EXPECT_NEAR(sigma_psi(p, c), 0.5 / (p.t * p.t), 1e-14);
  }
}

TEST(SigmaPsi, HomogeneousOfDegreeTwo) {
  SampleGen gen(42);
  for (int i = 0; i < 50; ++i) {
    const HyperPoint p = sample_interior(gen, ChartId::U1);
    const Covector c = covector_from(sample_unit_covector(gen));
    const double lam = gen.uniform(0.1, 10.0);
    const double base = sigma_psi(p, c);
    EXPECT_NEAR(sigma_psi(p, c.scaled(lam)), lam * lam * base,
                1e-12 * lam * lam * base);
  }
}

TEST(SigmaPsi, PositiveOnUnitCovectors) {
  SampleGen gen(42);
  double min_val = 1e300;
  for (int i = 0; i < 2000; ++i) {
    const HyperPoint p = sample_interior(gen, ChartId::U1);
    const Covector c = covector_from(sample_unit_covector(gen));
    min_val = std::min(min_val, sigma_psi(p, c));
  }
  EXPECT_GT(min_val, 1e-12);
}

TEST(SigmaPsi, RejectsWrongChartAndDegenerateAngles) {
  HyperPoint p = interior_point();
  p.chart = ChartId::U2;
  EXPECT_THROW(sigma_psi(p, Covector{}), WrongChartError);
  HyperPoint q = interior_point();
  q.theta1 = 1e-14;
  EXPECT_THROW(sigma_psi(q, Covector{}), DegenerateAnglesError);
}

TEST(SigmaPsiTilde, EdgeSliceLimitValue) {
  HyperPoint p;
  p.t = 1.0;
  p.r = 0.0;
  p.theta1 = kPi / 2;
  p.theta2 = kPi / 2;
  Covector c;
  c.Theta1 = 1.0;
  // r^2/sin^2 r -> 1, so the Theta1 term contributes 1/(2 t^2)
  EXPECT_NEAR(sigma_psi_tilde(p, c), 0.5, 1e-15);
}

TEST(SigmaPsiTilde, RescalingRelationToSigmaPsi) {
  SampleGen gen(42);
  for (int i = 0; i < 50; ++i) {
    const HyperPoint p = sample_interior(gen, ChartId::U1);
    const Covector c = covector_from(sample_unit_covector(gen));
    Covector scaled = c;
    scaled.rho /= p.r;
    scaled.tau /= p.r;
    scaled.Theta2 /= p.r;
    scaled.Phi2 /= p.r;
    const double lhs = p.r * p.r * sigma_psi(p, scaled);
    const double rhs = sigma_psi_tilde(p, c);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs));
  }
}

TEST(SigmaPsiTilde, PositiveIncludingEdgeSlice) {
  SampleGen gen(42);
  double min_val = 1e300;
  for (int i = 0; i < 2000; ++i) {
    HyperPoint p = sample_interior(gen, ChartId::U1);
    if (i % 4 == 0) p.r = 0.0;  // quarter of the sweep on the edge slice
    const Covector c = covector_from(sample_unit_covector(gen));
    min_val = std::min(min_val, sigma_psi_tilde(p, c));
  }
  EXPECT_GT(min_val, 1e-12);
}

TEST(EdgeSymbolParams, NonzeroEdgeCovectorMakesCNegative) {
  SampleGen gen(42);
  for (int i = 0; i < 100; ++i) {
    EdgeSymbolParams par;
    par.t = gen.uniform(0.5, 2.0);
    par.theta2 = gen.uniform(0.3, kPi - 0.3);
    par.tau = gen.normal();
    par.Theta2 = gen.normal();
    par.Phi2 = gen.normal();
    if (par.edge_covector_zero()) continue;
    EXPECT_LT(par.C(), 0.0);
  }
  EdgeSymbolParams zero;
  EXPECT_DOUBLE_EQ(zero.C(), 0.0);
}

TEST(SigmaWedge, ConstantOperandLeavesOnlyC) {
  EdgeSymbolParams par;
  par.t = 1.4;
  par.theta2 = 1.2;
  par.tau = 0.6;
  par.Theta2 = -0.8;
  par.Phi2 = 0.3;
  ConeField one;
  one.eval = [](double, double, double) { return 1.0; };
  one.partial = [](double, double, double, ConeVar, int) { return 0.0; };
  const double expected = -par.C() / (2.0 * par.t * par.t);
  EXPECT_NEAR(sigma_wedge_apply(par, one, 0.7, 1.0, 2.0), expected, 1e-15);
  EXPECT_NEAR(sigma_wedge_apply(par, one, 0.7, 1.0, 2.0, WedgeForm::fuchs),
              expected, 1e-15);
}

TEST(SigmaWedge, TwoFormsAgreeOnGenericField) {
  ConeField u;  // finite-difference partials
  u.eval = [](double r, double th, double ph) {
    return std::exp(-0.8 * r) *
           (1.0 + 0.5 * std::cos(th) + 0.3 * std::sin(th) * std::cos(ph));
  };
  SampleGen gen(42);
  for (int i = 0; i < 100; ++i) {
    EdgeSymbolParams par;
    par.t = gen.uniform(0.5, 2.0);
    par.theta2 = gen.uniform(0.3, kPi - 0.3);
    par.tau = gen.normal();
    par.Theta2 = gen.normal();
    par.Phi2 = gen.normal();
    const double r = gen.uniform(0.3, 2.0);
    const double th = gen.uniform(0.3, kPi - 0.3);
    const double ph = gen.uniform(0.0, kTwoPi);
    const double a = sigma_wedge_apply(par, u, r, th, ph, WedgeForm::laplace);
    const double b = sigma_wedge_apply(par, u, r, th, ph, WedgeForm::fuchs);
    EXPECT_NEAR(a, b, 1e-10 * std::max(1.0, std::abs(a)));
  }
}

TEST(SigmaWedge, AnnihilatesTheLZeroKernelElement) {
  // l = 0 closed form: r^-1/2 K_1/2(a r) ~ e^{-a r} / r
  EdgeSymbolParams par;
  par.t = 1.2;
  par.theta2 = 1.9;
  par.tau = 0.5;
  par.Theta2 = 0.7;
  par.Phi2 = -0.4;
  const double a = std::sqrt(-par.C());
  ConeField u;
  u.eval = [a](double r, double, double) { return std::exp(-a * r) / r; };
  u.partial = [a](double r, double, double, ConeVar v, int order) {
    if (v != ConeVar::r) return 0.0;
    const double e = std::exp(-a * r);
    if (order == 1) return -e * (a / r + 1.0 / (r * r));
    return e * (a * a / r + 2.0 * a / (r * r) + 2.0 / (r * r * r));
  };
  for (double r : {0.2, 0.5, 1.0, 2.0, 4.0}) {
    const double val = sigma_wedge_apply(par, u, r, 1.0, 2.0);
    const double scale = std::abs(par.C()) * u.eval(r, 0, 0) /
                         (2.0 * par.t * par.t);
    EXPECT_LT(std::abs(val), 1e-9 * std::max(1.0, scale)) << "r=" << r;
  }
}

TEST(Conormal, SectorRootsAreMinusLAndLPlusOne) {
  const ConormalSpectrum sp = conormal_spectrum(10, 1.0);
  ASSERT_EQ(sp.sectors.size(), 11u);
  EXPECT_NEAR(sp.sectors[0].w_minus, 0.0, 1e-12);
  EXPECT_NEAR(sp.sectors[0].w_plus, 1.0, 1e-12);
  EXPECT_NEAR(sp.sectors[2].w_minus, -2.0, 1e-12);
  EXPECT_NEAR(sp.sectors[2].w_plus, 3.0, 1e-12);
  for (const SectorRoots& s : sp.sectors) {
    EXPECT_NEAR(s.w_minus, -static_cast<double>(s.l), 1e-12);
    EXPECT_NEAR(s.w_plus, s.l + 1.0, 1e-12);
    // roots must solve the sector quadratic
    EXPECT_NEAR(conormal_symbol(s.l, sp.t, s.w_minus), 0.0, 1e-12);
    EXPECT_NEAR(conormal_symbol(s.l, sp.t, s.w_plus), 0.0, 1e-12);
  }
}

TEST(Conormal, UnionOverSectorsIsIntegerRange) {
  const ConormalSpectrum sp = conormal_spectrum(10, 1.3);
  std::set<long> found;
  for (const SectorRoots& s : sp.sectors) {
    for (double w : {s.w_minus, s.w_plus}) {
      EXPECT_LT(std::abs(w - std::round(w)), 1e-12);
      found.insert(std::lround(w));
    }
  }
  std::set<long> expected;
  for (long l = 0; l <= 10; ++l) {
    expected.insert(-l);
    expected.insert(l + 1);
  }
  EXPECT_EQ(found, expected);  // = {-10, ..., 11}, a subset of Z
}

TEST(Conormal, MatchesOperatorAppliedToMellinPowers) {
  // sigma_wedge on r^w Y_lm, rescaled by r^2 / r^w, approaches sigma_c(-w)
  // as r -> 0 (the covariable terms contribute only O(r^2))
  EdgeSymbolParams par;
  par.t = 1.4;
  par.theta2 = 1.0;
  par.tau = 0.8;
  par.Theta2 = 0.2;
  par.Phi2 = 0.5;
  for (int l = 0; l <= 3; ++l) {
    for (double w : {0.3, -1.7, 2.4, static_cast<double>(l)}) {
      ConeField u;
      u.eval = [l, w](double r, double th, double ph) {
        return std::pow(r, w) * sph_harmonic(l, 0, th, ph);
      };
      u.partial = [l, w](double r, double th, double ph, ConeVar v,
                         int order) {
        switch (v) {
          case ConeVar::r:
            return (order == 1 ? w * std::pow(r, w - 1.0)
                               : w * (w - 1.0) * std::pow(r, w - 2.0)) *
                   sph_harmonic(l, 0, th, ph);
          case ConeVar::theta:
            return std::pow(r, w) *
                   (order == 1 ? sph_harmonic_dtheta(l, 0, th, ph)
                               : sph_harmonic_d2theta(l, 0, th, ph));
          case ConeVar::phi:
            return order == 1 ? 0.0
                              : std::pow(r, w) *
                                    sph_harmonic_d2phi(l, 0, th, ph);
        }
        return 0.0;
      };
      const double r0 = 1e-6, th = 1.1, ph = 0.4;
      const double base = std::pow(r0, w) * sph_harmonic(l, 0, th, ph);
      const double measured =
          r0 * r0 * sigma_wedge_apply(par, u, r0, th, ph) / base;
      const double expected = conormal_symbol(l, par.t, -w) -
                              par.C() * r0 * r0 / (2.0 * par.t * par.t);
      EXPECT_NEAR(measured, expected, 1e-9) << "l=" << l << " w=" << w;
    }
  }
}

TEST(Ellipticity, DefaultGridPasses) {
  EllipticityGrid grid;
  const EllipticityReport rep = check_ellipticity(grid);
  EXPECT_EQ(rep.samples, 10000u);
  EXPECT_EQ(rep.r0_samples, 1000u);
  EXPECT_TRUE(rep.pass());
  EXPECT_GT(rep.min_sigma_psi, 1e-12);
  EXPECT_GT(rep.min_sigma_psi_tilde, 1e-12);
  EXPECT_GT(rep.min_sigma_psi_tilde_r0, 1e-12);
  EXPECT_EQ(rep.degenerate_inputs, 0u);
}

TEST(Ellipticity, ZeroCovectorsAreDegenerateEntriesNotFailures) {
  EllipticityGrid grid;
  grid.points_per_axis = 3;
  grid.r_zero_slice_points = 5;
  grid.covectors = {Covector{}, Covector{1, 0, 0, 0, 0, 0}};
  const EllipticityReport rep = check_ellipticity(grid);
  EXPECT_GT(rep.degenerate_inputs, 0u);
  EXPECT_TRUE(rep.pass());
}

}  // namespace
