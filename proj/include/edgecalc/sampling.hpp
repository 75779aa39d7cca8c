#pragma once

#include "edgecalc/charts.hpp"
#include "edgecalc/core.hpp"

namespace edgecalc {

/// Margins for drawing chart-interior points. The defaults keep every sampled
/// point well away from degenerate loci so finite-difference stencils and
/// Coulomb denominators stay healthy.
struct InteriorBox {
  double t_min = 0.5, t_max = 2.0;
  double r_margin = 0.15;      // r in (r_margin, pi/2 - r_margin)
  double theta_margin = 0.15;  // theta in (theta_margin, pi - theta_margin)
  double phi_margin = 0.15;    // phi in (phi_margin, 2 pi - phi_margin)
};

inline HyperPoint sample_interior(SampleGen& gen, ChartId chart,
                                  const InteriorBox& box = {}) {
  HyperPoint p;
  p.chart = chart;
  p.t = gen.uniform(box.t_min, box.t_max);
  p.r = gen.uniform(box.r_margin, kHalfPi - box.r_margin);
  p.theta1 = gen.uniform(box.theta_margin, kPi - box.theta_margin);
  p.phi1 = gen.uniform(box.phi_margin, kTwoPi - box.phi_margin);
  p.theta2 = gen.uniform(box.theta_margin, kPi - box.theta_margin);
  p.phi2 = gen.uniform(box.phi_margin, kTwoPi - box.phi_margin);
  return p;
}

/// Interior point whose image also keeps all three interparticle distances
/// above `distance_floor * t`, so Coulomb terms are evaluable. Rejection is
/// deterministic for a fixed generator state.
inline HyperPoint sample_interior_off_singular(SampleGen& gen, ChartId chart,
                                               double distance_floor = 0.05,
                                               const InteriorBox& box = {}) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const HyperPoint p = sample_interior(gen, chart, box);
    const CartesianPoint x = to_cartesian(p);
    const double floor = distance_floor * p.t;
    if (x.electron1_norm() > floor && x.electron2_norm() > floor &&
        x.pair_distance() > floor)
      return p;
  }
  throw std::runtime_error("sample_interior_off_singular: rejection stalled");
}

/// Unit covector in the six covariables, from six normal deviates.
inline Vec6 sample_unit_covector(SampleGen& gen) {
  for (;;) {
    Vec6 v;
    for (double& c : v) c = gen.normal();
    const double n = norm(v);
    if (n > 1e-6) {
      for (double& c : v) c /= n;
      return v;
    }
  }
}

}  // namespace edgecalc
