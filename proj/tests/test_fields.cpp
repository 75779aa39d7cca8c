#include <cmath>

#include <gtest/gtest.h>

#include "edgecalc/fields.hpp"
#include "edgecalc/sampling.hpp"

using namespace edgecalc;

namespace {

// Every catalogue oracle has to agree with finite differences of its own
// evaluation; this is the ScalarField invariant that licenses using the
// analytic oracles in the operator-equivalence certification.
TEST(Catalogue, AnalyticOraclesMatchFiniteDifferences) {
  SampleGen gen(42);
  const auto fields = standard_test_fields();
  for (int i = 0; i < 10; ++i) {
    CartesianPoint x;
    for (int k = 0; k < 6; ++k) x.x[k] = gen.uniform(-1.2, 1.2);
    for (const TestField& tf : fields) {
      ScalarField numeric;  // same evaluation, oracles stripped
      numeric.eval = tf.field.eval;
      numeric.fd_step = 1e-3;
      const Vec6 ga = tf.field.grad(x);
      const Vec6 gn = numeric.grad(x);
      for (int k = 0; k < 6; ++k)
        EXPECT_NEAR(ga[k], gn[k], 1e-8) << tf.name << " grad[" << k << "]";
      const Mat6 ha = tf.field.hess(x);
      const Mat6 hn = numeric.hess(x);
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
          EXPECT_NEAR(ha[a][b], hn[a][b], 1e-6)
              << tf.name << " hess[" << a << "][" << b << "]";
      EXPECT_NEAR(tf.field.laplacian(x), numeric.laplacian(x), 1e-6)
          << tf.name;
    }
  }
}

TEST(Pullback, ChainRulePartialsMatchFiniteDifferences) {
  SampleGen gen(9);
  const auto fields = standard_test_fields();
  for (ChartId chart : {ChartId::U1, ChartId::U2, ChartId::U3}) {
    for (int i = 0; i < 5; ++i) {
      const HyperPoint p = sample_interior(gen, chart);
      for (const TestField& tf : fields) {
        const EdgeField analytic = pullback(tf.field);
        EdgeField numeric;  // finite differences in the hyper variables
        numeric.eval = analytic.eval;
        for (HyperVar v : kHyperVars) {
          EXPECT_NEAR(analytic.d1(p, v), numeric.d1(p, v), 2e-7)
              << tf.name << " d1 " << static_cast<int>(v);
          EXPECT_NEAR(analytic.d2(p, v), numeric.d2(p, v), 2e-5)
              << tf.name << " d2 " << static_cast<int>(v);
        }
      }
    }
  }
}

TEST(Pullback, EvaluatesThroughTheChart) {
  SampleGen gen(3);
  const auto fields = standard_test_fields();
  for (int i = 0; i < 10; ++i) {
    const HyperPoint p = sample_interior(gen, ChartId::U3);
    for (const TestField& tf : fields) {
      const EdgeField ef = pullback(tf.field);
      EXPECT_DOUBLE_EQ(ef.value(p), tf.field.value(to_cartesian(p)));
    }
  }
}

TEST(RadialProfile, OnlyTDerivativesSurvive) {
  const EdgeField f = radial_profile(
      [](double t) { return t * t; }, [](double t) { return 2.0 * t; },
      [](double) { return 2.0; });
  HyperPoint p;
  p.t = 1.7;
  EXPECT_DOUBLE_EQ(f.value(p), 1.7 * 1.7);
  EXPECT_DOUBLE_EQ(f.d1(p, HyperVar::t), 3.4);
  EXPECT_DOUBLE_EQ(f.d2(p, HyperVar::t), 2.0);
  EXPECT_DOUBLE_EQ(f.d1(p, HyperVar::theta1), 0.0);
  EXPECT_DOUBLE_EQ(f.d2(p, HyperVar::phi2), 0.0);
}

}  // namespace
