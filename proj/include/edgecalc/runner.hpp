#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "edgecalc/charts.hpp"
#include "edgecalc/edge_kernel.hpp"
#include "edgecalc/fields.hpp"
#include "edgecalc/hamiltonian.hpp"
#include "edgecalc/report.hpp"
#include "edgecalc/sampling.hpp"
#include "edgecalc/symbols.hpp"

namespace edgecalc {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ReportFormat { json, csv };

/// Effective configuration of one verification run. Defaults reproduce the
/// acceptance-scale sweeps; every field can come from a flag, a key=value
/// config file, or (for the seed) the EDGECALC_SEED environment variable.
struct RunConfig {
  std::string command = "report-all";
  std::optional<ChartId> chart;  // nullopt = all charts
  int samples = 100;
  std::uint64_t seed = 42;
  std::optional<double> tol;  // overrides the 1e-12 round-trip family
  double gamma_min = -3.0;
  double gamma_max = 4.0;
  double gamma_step = 0.05;
  int l_max = 10;
  int grid_points = 10;
  std::string output_path;  // empty or "-" -> stdout
  ReportFormat format = ReportFormat::json;

  void validate() const {
    if (samples < 1) throw ConfigError("samples must be >= 1");
    if (!(gamma_step > 0.0)) throw ConfigError("gamma-step must be > 0");
    if (!(gamma_min < gamma_max))
      throw ConfigError("gamma-min must be < gamma-max");
    if (l_max < 0) throw ConfigError("l-max must be >= 0");
    if (grid_points < 1) throw ConfigError("grid points must be >= 1");
    if (tol && !(*tol > 0.0)) throw ConfigError("tol must be > 0");
  }

  double roundtrip_tol() const { return tol.value_or(1e-12); }

  std::vector<ChartId> charts() const {
    if (chart) return {*chart};
    return {ChartId::U1, ChartId::U2, ChartId::U3};
  }
};

inline ChartId parse_chart(const std::string& s) {
  if (s == "u1" || s == "U1") return ChartId::U1;
  if (s == "u2" || s == "U2") return ChartId::U2;
  if (s == "u3" || s == "U3") return ChartId::U3;
  throw ConfigError("unknown chart '" + s + "' (expected u1|u2|u3|all)");
}

inline ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw ConfigError("unknown format '" + s + "' (expected json|csv)");
}

namespace detail {

inline std::string fmt(double v) { return format_double(v); }

inline std::map<std::string, std::string> config_echo(const RunConfig& c) {
  std::map<std::string, std::string> m;
  m["command"] = c.command;
  m["chart"] = c.chart ? to_string(*c.chart) : "all";
  m["samples"] = std::to_string(c.samples);
  m["seed"] = std::to_string(c.seed);
  m["tol"] = c.tol ? fmt(*c.tol) : "default";
  m["gamma_min"] = fmt(c.gamma_min);
  m["gamma_max"] = fmt(c.gamma_max);
  m["gamma_step"] = fmt(c.gamma_step);
  m["l_max"] = std::to_string(c.l_max);
  m["grid_points"] = std::to_string(c.grid_points);
  m["format"] = c.format == ReportFormat::json ? "json" : "csv";
  m["output"] = c.output_path.empty() ? "-" : c.output_path;
  return m;
}

inline EdgeField sph_harmonic_edge_field(int l, int m) {
  EdgeField u;
  u.eval = [l, m](const HyperPoint& p) {
    return sph_harmonic(l, m, p.theta1, p.phi1);
  };
  u.partial = [l, m](const HyperPoint& p, HyperVar v, int order) {
    switch (v) {
      case HyperVar::theta1:
        return order == 1 ? sph_harmonic_dtheta(l, m, p.theta1, p.phi1)
                          : sph_harmonic_d2theta(l, m, p.theta1, p.phi1);
      case HyperVar::phi1:
        return order == 1 ? sph_harmonic_dphi(l, m, p.theta1, p.phi1)
                          : sph_harmonic_d2phi(l, m, p.theta1, p.phi1);
      default:
        return 0.0;
    }
  };
  return u;
}

inline ConeField power_cone_field(int l, int m, double w) {
  ConeField u;
  u.eval = [l, m, w](double r, double th, double ph) {
    return std::pow(r, w) * sph_harmonic(l, m, th, ph);
  };
  u.partial = [l, m, w](double r, double th, double ph, ConeVar v, int order) {
    switch (v) {
      case ConeVar::r: {
        const double y = sph_harmonic(l, m, th, ph);
        return order == 1 ? w * std::pow(r, w - 1.0) * y
                          : w * (w - 1.0) * std::pow(r, w - 2.0) * y;
      }
      case ConeVar::theta: {
        const double f = std::pow(r, w);
        return (order == 1 ? sph_harmonic_dtheta(l, m, th, ph)
                           : sph_harmonic_d2theta(l, m, th, ph)) *
               f;
      }
      case ConeVar::phi: {
        const double f = std::pow(r, w);
        return (order == 1 ? sph_harmonic_dphi(l, m, th, ph)
                           : sph_harmonic_d2phi(l, m, th, ph)) *
               f;
      }
    }
    return 0.0;
  };
  return u;
}

inline EdgeSymbolParams sample_edge_params(SampleGen& gen) {
  EdgeSymbolParams par;
  par.t = gen.uniform(0.5, 2.0);
  par.theta2 = gen.uniform(0.3, kPi - 0.3);
  par.phi2 = gen.uniform(0.0, kTwoPi);
  do {
    par.tau = gen.normal();
    par.Theta2 = gen.normal();
    par.Phi2 = gen.normal();
  } while (par.tau * par.tau + par.Theta2 * par.Theta2 +
               par.Phi2 * par.Phi2 <
           1e-3);
  return par;
}

// ---------------------------------------------------------------------- //

inline void run_verify_coords(const RunConfig& cfg, Report& rep) {
  const double rt_tol = cfg.roundtrip_tol();
  for (ChartId chart : cfg.charts()) {
    SampleGen gen(cfg.seed + 11);
    const std::string tag = to_string(chart);
    double max_rt = 0.0, max_norm = 0.0, max_metric = 0.0, max_sym = 0.0;
    double max_dist = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const HyperPoint p = sample_interior(gen, chart);
      const CartesianPoint x = to_cartesian(p);
      const HyperPoint q = to_hyper(x, chart);
      max_rt = std::max(max_rt, max_coordinate_diff(p, q));
      max_norm = std::max(max_norm, std::abs(x.norm() - p.t));

      const Mat6 closed = metric_closed_form(p).assemble();
      const Mat6 pulled = metric_pullback(p, 1e-5);
      max_metric = std::max(max_metric, max_entry_diff(closed, pulled));
      max_sym = std::max(max_sym, max_asymmetry(pulled));

      if (chart == ChartId::U1) {
        const Distances d = interparticle_distances(p);
        max_dist = std::max(
            {max_dist, std::abs(d.d1 - x.electron1_norm()),
             std::abs(d.d2 - x.electron2_norm()),
             std::abs(d.d12 - x.pair_distance())});
      }
    }
    rep.check("coords/" + tag + "/roundtrip_max_error", max_rt, rt_tol);
    rep.check("coords/" + tag + "/norm_preservation_max_error", max_norm,
              rt_tol);
    rep.check("coords/" + tag + "/metric_pullback_vs_closed_max_error",
              max_metric, 1e-8, "step=1e-5");
    rep.check("coords/" + tag + "/metric_pullback_asymmetry", max_sym, 1e-14);
    if (chart == ChartId::U1) {
      rep.check("coords/u1/distances_closed_vs_euclid_max_error", max_dist,
                rt_tol);

      HyperPoint edge;
      edge.chart = ChartId::U1;
      edge.t = 1.3;
      edge.r = 1e-8;
      edge.theta1 = 1.0;
      edge.phi1 = 0.3;
      edge.theta2 = 2.0;
      edge.phi2 = 5.0;
      const Distances d = interparticle_distances(edge);
      const double dev = std::max(
          {std::abs(d.d1), std::abs(d.d2 - edge.t), std::abs(d.d12 - edge.t)});
      rep.check("coords/u1/edge_limit_r_to_0", dev, 1e-7,
                "expected (0, t, t)");
    }
    if (chart == ChartId::U3) {
      HyperPoint p;
      p.chart = ChartId::U3;
      p.t = 1.0;
      p.r = 1e-3;
      p.theta1 = 1.2;
      p.phi1 = 0.7;
      p.theta2 = 1.9;
      p.phi2 = 4.1;
      rep.add({"coords/u3/ee_distance_over_tr", CheckStatus::pass,
               ee_distance_ratio_u3(p), 0.0,
               "informational; tends to sqrt(2) as r -> 0 with the "
               "1/sqrt2-normalized center-of-mass coordinates"});
    }
  }

  if (!cfg.chart) {  // chart symmetry needs both U1 and U2 views
    SampleGen gen(cfg.seed + 12);
    double max_err = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const HyperPoint p = sample_interior(gen, ChartId::U1);
      const CartesianPoint x = to_cartesian(p);
      const HyperPoint q = to_hyper(x, ChartId::U2);
      double e = std::abs(q.r - (kHalfPi - p.r));
      e = std::max(e, std::abs(q.theta1 - p.theta2));
      e = std::max(e, std::abs(q.phi1 - p.phi2));
      e = std::max(e, std::abs(q.theta2 - p.theta1));
      e = std::max(e, std::abs(q.phi2 - p.phi1));
      e = std::max(e, std::abs(q.t - p.t));
      max_err = std::max(max_err, e);
    }
    rep.check("coords/chart_symmetry_u1_u2_max_error", max_err, rt_tol,
              "electron swap maps U1 data to U2 data with r -> pi/2 - r");
  }
}

// ---------------------------------------------------------------------- //

inline void run_verify_operator(const RunConfig& cfg, Report& rep) {
  const double eq_tol = cfg.tol.value_or(1e-6);
  const auto fields = standard_test_fields();

  for (ChartId chart : cfg.charts()) {
    SampleGen gen(cfg.seed + 21);
    const std::string tag = to_string(chart);
    double max_ce = 0.0, max_ec = 0.0, max_pot = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const HyperPoint p = sample_interior_off_singular(gen, chart);
      const CartesianPoint x = to_cartesian(p);
      for (const TestField& tf : fields) {
        const EdgeField ef = pullback(tf.field);
        const double a = apply_cartesian(tf.field, x);
        const double e = apply_edge(ef, p);
        const double c = apply_corner(ef, p);
        max_ce = std::max(max_ce, std::abs(a - e));
        max_ec = std::max(max_ec, std::abs(e - c));
      }
      const double v = potential_v(p);
      const double tr_v = p.t * p.r * coulomb_potential(x);
      max_pot = std::max(max_pot,
                         std::abs(v - tr_v) / std::max(1.0, std::abs(tr_v)));
    }
    rep.check("operator/" + tag + "/cartesian_vs_edge_max_error", max_ce,
              eq_tol, "analytic-derivative test fields");
    rep.check("operator/" + tag + "/edge_vs_corner_max_error", max_ec, 1e-9,
              "same operator, rearranged grouping");
    rep.check("operator/" + tag + "/potential_factorization_rel_error",
              max_pot, 1e-12, "v = t r V");
  }

  {  // coefficient functions at and across the series switch
    const double r0 = 0.999e-3;
    const double h_direct =
        1.0 + 2.0 * r0 * std::tan(r0) - 2.0 * r0 / std::tan(r0);
    rep.check("operator/coeff_h/branch_consistency",
              std::abs(coeff_h(r0) - h_direct), 1e-12, "series vs direct");
    rep.check("operator/coeff_h/edge_value", std::abs(coeff_h(0.0) + 1.0), 0.0,
              "h(0) = -1");
    const double v_direct = -2.0 * r0 / std::sin(r0) - 2.0 * r0 / std::cos(r0) +
                            r0 / std::sqrt(1.0 - std::sin(2.0 * r0) * 0.4);
    // angles (acos 0.4, *, 0, *) give kappa = cos th1 = 0.4
    const double v_series = coeff_v(r0, std::acos(0.4), 0.0, 0.0, 0.0);
    rep.check("operator/coeff_v/branch_consistency",
              std::abs(v_series - v_direct), 1e-12, "series vs direct");
    rep.check("operator/coeff_v/edge_value",
              std::abs(coeff_v(0.0, 1.0, 2.0, 2.5, 0.5) + 2.0), 0.0,
              "v(0, .) = -2");
  }

  {  // Fuchs shape: every bracket coefficient extends smoothly to r = 0
    HyperPoint p;
    p.chart = ChartId::U1;
    p.t = 1.4;
    p.theta1 = 1.1;
    p.phi1 = 0.4;
    p.theta2 = 2.2;
    p.phi2 = 1.7;
    double max_bad = 0.0;
    for (int k = 0; k <= 40; ++k) {
      p.r = kPi / 4.0 * static_cast<double>(k) / 40.0;
      const EdgeTermCoefficients c = edge_term_coefficients(p);
      for (double v : {c.c_rdr2, c.c_rdr1, c.c_tdt2, c.c_tdt1, c.c_th2_2,
                       c.c_th2_1, c.c_ph2_2, c.c_lapx1, c.c_id})
        if (!std::isfinite(v)) max_bad = 1.0;
    }
    p.r = 0.0;
    const EdgeTermCoefficients c0 = edge_term_coefficients(p);
    const double t2 = p.t * p.t;
    double dev = std::abs(c0.c_rdr2 + 0.5 / t2);
    dev = std::max(dev, std::abs(c0.c_rdr1 - 0.5 / t2));  // -h(0)/2t^2 = +1/2t^2
    dev = std::max(dev, std::abs(c0.c_tdt1));
    dev = std::max(dev, std::abs(c0.c_th2_1));
    dev = std::max(dev, std::abs(c0.c_id));
    dev = std::max(dev, std::abs(c0.c_lapx1 + 0.5 / t2));
    rep.check("operator/fuchs_shape/coefficients_smooth_to_r0",
              std::max(max_bad, dev), 1e-12,
              "sampled on r in [0, pi/4]; frozen r=0 limits");
  }

  {  // Beltrami checks on chart U1
    SampleGen gen(cfg.seed + 22);
    const EdgeField y10 = sph_harmonic_edge_field(1, 0);
    const auto gaussian = standard_test_fields()[1];
    const EdgeField gauss_edge = pullback(gaussian.field);
    double max_eig = 0.0, max_asm = 0.0, max_rad = 0.0, max_const = 0.0;
    for (int i = 0; i < std::min(cfg.samples, 50); ++i) {
      const HyperPoint p = sample_interior_off_singular(gen, ChartId::U1);
      const double sr = std::sin(p.r);
      const double u = y10.value(p);
      max_eig = std::max(max_eig,
                         std::abs(apply_beltrami(y10, p) + 2.0 * u / (sr * sr)));
      max_asm = std::max(
          max_asm, std::abs(laplacian_hyper(gauss_edge, p) -
                            gaussian.field.laplacian(to_cartesian(p))));

      // t-only profile: H reduces to -f''/2 - (5/2t) f' + V f
      const double t = p.t;
      const double f = std::exp(-t * t);
      const double f1 = -2.0 * t * f;
      const double f2 = (4.0 * t * t - 2.0) * f;
      const EdgeField rad = radial_profile(
          [](double s) { return std::exp(-s * s); },
          [](double s) { return -2.0 * s * std::exp(-s * s); },
          [](double s) { return (4.0 * s * s - 2.0) * std::exp(-s * s); });
      const double expected =
          -0.5 * f2 - 2.5 / t * f1 + coulomb_potential(to_cartesian(p)) * f;
      max_rad = std::max(max_rad, std::abs(apply_edge(rad, p) - expected));

      // constant field: only multiplication by the potential survives
      EdgeField one;
      one.eval = [](const HyperPoint&) { return 1.0; };
      one.partial = [](const HyperPoint&, HyperVar, int) { return 0.0; };
      max_const = std::max(
          max_const, std::abs(apply_corner(one, p) -
                              coulomb_potential(to_cartesian(p))));
    }
    rep.check("operator/beltrami/y10_eigenvalue", max_eig, 1e-9,
              "Delta~ Y10 = -2 Y10 / sin^2 r");
    rep.check("operator/beltrami/assembly_vs_cartesian_laplacian", max_asm,
              1e-9);
    rep.check("operator/radial_reduction", max_rad, 1e-9,
              "-f''/2 - (5/2t) f' + V f");
    rep.check("operator/constant_field_potential_only", max_const, 1e-12);
  }
}

// ---------------------------------------------------------------------- //

inline void run_symbols(const RunConfig& cfg, Report& rep) {
  SampleGen gen(cfg.seed + 31);

  {  // two groupings of the principal edge symbol agree pointwise
    ConeField u;
    u.eval = [](double r, double th, double ph) {
      return std::exp(-0.8 * r) *
             (1.0 + 0.5 * std::cos(th) + 0.3 * std::sin(th) * std::cos(ph));
    };
    double max_rel = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const EdgeSymbolParams par = sample_edge_params(gen);
      const double r = gen.uniform(0.3, 2.0);
      const double th = gen.uniform(0.3, kPi - 0.3);
      const double ph = gen.uniform(0.0, kTwoPi);
      const double a = sigma_wedge_apply(par, u, r, th, ph, WedgeForm::laplace);
      const double b = sigma_wedge_apply(par, u, r, th, ph, WedgeForm::fuchs);
      max_rel = std::max(max_rel,
                         std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
    rep.check("symbols/wedge_two_forms_agreement", max_rel, 1e-10,
              "Fuchs-type vs flat-Laplacian grouping");
  }

  {  // homogeneity and the compressed-symbol relation
    double max_hom = 0.0, max_rel = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const HyperPoint p = sample_interior(gen, ChartId::U1);
      const Covector c = covector_from(sample_unit_covector(gen));
      const double lam = gen.uniform(0.1, 10.0);
      const double s = sigma_psi(p, c);
      max_hom = std::max(max_hom, std::abs(sigma_psi(p, c.scaled(lam)) -
                                           lam * lam * s) /
                                      (lam * lam * s));
      Covector sc = c;
      sc.rho /= p.r;
      sc.tau /= p.r;
      sc.Theta2 /= p.r;
      sc.Phi2 /= p.r;
      const double lhs = p.r * p.r * sigma_psi(p, sc);
      const double rhs = sigma_psi_tilde(p, c);
      max_rel = std::max(max_rel, std::abs(lhs - rhs) / std::abs(rhs));
    }
    rep.check("symbols/sigma_psi_homogeneity_degree2", max_hom, 1e-12);
    rep.check("symbols/compressed_symbol_relation", max_rel, 1e-12,
              "r^2 sigma_psi(rho/r, Th1, Ph1, eta/r) = sigma~_psi");
  }

  {  // conormal symbol against the operator applied to r^w Y_lm
    double max_dev = 0.0;
    for (int l = 0; l <= std::min(cfg.l_max, 3); ++l) {
      for (double w : {0.3, -1.7, 2.4}) {
        const EdgeSymbolParams par = sample_edge_params(gen);
        const ConeField u = power_cone_field(l, 0, w);
        const double r0 = 1e-6;
        const double th = 1.1, ph = 0.4;
        const double val = sigma_wedge_apply(par, u, r0, th, ph);
        const double base = std::pow(r0, w) * sph_harmonic(l, 0, th, ph);
        const double measured = r0 * r0 * val / base;
        const double expected = conormal_symbol(l, par.t, -w) -
                                par.C() * r0 * r0 / (2.0 * par.t * par.t);
        max_dev = std::max(max_dev, std::abs(measured - expected));
      }
    }
    rep.check("symbols/conormal_vs_operator_application", max_dev, 1e-9,
              "r^2 sigma_wedge(r^w Y_lm) / r^w Y_lm -> sigma_c(-w)");
  }
}

// ---------------------------------------------------------------------- //

inline void run_ellipticity(const RunConfig& cfg, Report& rep) {
  EllipticityGrid grid;
  grid.points_per_axis = cfg.grid_points;
  grid.seed = cfg.seed + 41;
  const EllipticityReport er = check_ellipticity(grid);

  rep.check_above("ellipticity/sigma_psi_min_on_unit_covectors",
                  er.min_sigma_psi, er.threshold,
                  "interior grid, " + std::to_string(er.samples) + " samples");
  rep.check_above("ellipticity/sigma_psi_tilde_min_on_unit_covectors",
                  er.min_sigma_psi_tilde, er.threshold);
  rep.check_above("ellipticity/sigma_psi_tilde_min_r0_slice",
                  er.min_sigma_psi_tilde_r0, er.threshold,
                  std::to_string(er.r0_samples) + " samples at r = 0");
  rep.add({"ellipticity/degenerate_inputs",
           er.degenerate_inputs == 0 ? CheckStatus::pass
                                     : CheckStatus::degenerate,
           static_cast<double>(er.degenerate_inputs), 0.0,
           "zero covectors skipped, not failed"});
}

// ---------------------------------------------------------------------- //

inline void run_conormal(const RunConfig& cfg, Report& rep) {
  const ConormalSpectrum sp = conormal_spectrum(cfg.l_max, 1.0);
  std::set<long> found;
  double max_int_dev = 0.0, max_set_dev = 0.0;
  for (const SectorRoots& s : sp.sectors) {
    for (double w : {s.w_minus, s.w_plus}) {
      max_int_dev = std::max(max_int_dev, std::abs(w - std::round(w)));
      found.insert(std::lround(w));
    }
    max_set_dev = std::max({max_set_dev,
                            std::abs(s.w_minus + static_cast<double>(s.l)),
                            std::abs(s.w_plus - (s.l + 1.0))});
    char name[64];
    std::snprintf(name, sizeof(name), "conormal/sector_l=%02d_roots", s.l);
    rep.check(name,
              std::max(std::abs(s.w_minus + static_cast<double>(s.l)),
                       std::abs(s.w_plus - (s.l + 1.0))),
              1e-12, "roots {-l, l+1}");
  }
  rep.check("conormal/roots_integrality", max_int_dev, 1e-12,
            "non-invertibility points lie in Z");

  std::set<long> expected;
  for (long l = 0; l <= cfg.l_max; ++l) {
    expected.insert(-l);
    expected.insert(l + 1);
  }
  rep.check("conormal/union_matches_integer_range",
            found == expected ? 0.0 : 1.0, 0.0,
            "union over l <= l_max is {-l_max, ..., l_max + 1}");
}

// ---------------------------------------------------------------------- //

inline void run_kernel(const RunConfig& cfg, Report& rep) {
  SampleGen gen(cfg.seed + 51);

  {  // modified Bessel equation residuals, finite-difference derivatives
    double max_res = 0.0;
    for (BesselKind kind :
         {BesselKind::K, BesselKind::I_plus, BesselKind::I_minus}) {
      for (int l = 0; l <= cfg.l_max; ++l) {
        for (int iz = 0; iz <= 14; ++iz) {
          const double z = 0.1 * std::pow(100.0, iz / 14.0);  // [0.1, 10]
          max_res =
              std::max(max_res, bessel_ode_residual(BesselHalfOrder{l, kind},
                                                    z));
        }
      }
    }
    rep.check("kernel/bessel_ode_residual_max", max_res, 1e-8,
              "all kinds, l <= l_max, z in [0.1, 10]");
  }

  {  // derivative recurrences against finite differences
    double max_dev = 0.0;
    for (BesselKind kind :
         {BesselKind::K, BesselKind::I_plus, BesselKind::I_minus}) {
      for (int l : {0, 2, 5}) {
        for (double z : {0.5, 1.0, 5.0}) {
          const BesselHalfOrder spec{l, kind};
          const double ana = bessel_half_d1(spec, z);
          const double num = fd::d1(
              [&](double s) { return bessel_half(spec, s); }, z, 3e-4 * z);
          max_dev = std::max(max_dev,
                             std::abs(ana - num) / std::max(1.0, std::abs(ana)));
        }
      }
    }
    rep.check("kernel/bessel_derivative_recurrence_vs_fd", max_dev, 1e-8);
  }

  {  // separated radial equation residuals
    double max_res = 0.0;
    for (BesselKind kind :
         {BesselKind::K, BesselKind::I_plus, BesselKind::I_minus})
      for (int l = 0; l <= std::min(cfg.l_max, 5); ++l)
        for (double C : {-0.5, -2.0, -4.0})
          for (double r : {0.3, 0.7, 1.5})
            max_res = std::max(max_res, radial_residual(l, C, r, kind));
    rep.check("kernel/radial_equation_residual_max", max_res, 1e-8,
              "f_l = r^-1/2 B_{l+1/2}(sqrt(-C) r), all kinds");
  }

  {  // the K-solutions annihilate the principal edge symbol
    double max_rel = 0.0;
    for (int l = 0; l <= std::min(cfg.l_max, 5); ++l) {
      for (int m : {-l, 0, l}) {
        const EdgeSymbolParams par = sample_edge_params(gen);
        const double C = par.C();
        const ConeField u = separated_cone_field(l, m, C, BesselKind::K);
        for (int i = 0; i < 5; ++i) {
          const double r = gen.uniform(0.2, 2.5);
          const double th = gen.uniform(0.4, kPi - 0.4);
          const double ph = gen.uniform(0.0, kTwoPi);
          const double val = sigma_wedge_apply(par, u, r, th, ph);
          const double scale = std::max(
              1e-300, std::abs(C * u.value(r, th, ph) / (2.0 * par.t * par.t)));
          max_rel = std::max(max_rel, std::abs(val) / std::max(1.0, scale));
        }
      }
    }
    rep.check("kernel/sigma_wedge_annihilates_K_solutions", max_rel, 1e-8,
              "l <= 5, sampled m and edge parameters");
  }

  {  // membership table (analytic decision; quadrature oracle in tests)
    for (int l = 0; l <= std::min(cfg.l_max, 3); ++l) {
      char name[64];
      std::snprintf(name, sizeof(name), "kernel/membership_l=%d_window", l);
      rep.add({name, CheckStatus::pass, 0.5 - static_cast<double>(l), 0.0,
               "K-solution in K^{2,gamma} iff gamma < 1/2 - l"});
    }
  }

  {  // exit symbols
    double min_e = std::numeric_limits<double>::infinity();
    double min_psi_e = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 1000; ++i) {
      const EdgeSymbolParams par = sample_edge_params(gen);
      std::array<double, 3> xi{gen.normal(), gen.normal(), gen.normal()};
      const ExitSymbols ex = exit_symbols(par, xi);
      min_e = std::min(min_e, ex.sigma_e);
      const double xi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
      if (xi2 > 0.0) min_psi_e = std::min(min_psi_e, ex.sigma_psi_e);
    }
    rep.check_above("kernel/exit_sigma_e_min", min_e, 1e-12,
                    "nonzero edge covector implies -C > 0");
    rep.check_above("kernel/exit_sigma_psi_e_min_nonzero_xi", min_psi_e, 0.0);

    EdgeSymbolParams zero;  // excluded case: zero edge covector
    const ExitSymbols ex0 = exit_symbols(zero, {0.0, 0.0, 0.0});
    rep.add({"kernel/exit_zero_edge_covector", CheckStatus::degenerate,
             ex0.sigma_e, 0.0,
             "C = 0 and sigma_e(0) = 0: outside the Fredholm hypothesis"});
  }
}

// ---------------------------------------------------------------------- //

inline void run_fredholm(const RunConfig& cfg, Report& rep) {
  struct Row {
    double gamma;
    FredholmData data;
  };
  std::vector<Row> rows;

  const int steps =
      static_cast<int>(std::round((cfg.gamma_max - cfg.gamma_min) /
                                  cfg.gamma_step));
  const int fredholm_lmax = std::max(cfg.l_max, 20);
  int row_index = 0;
  for (int k = 0; k <= steps; ++k) {
    const double gamma = cfg.gamma_min + k * cfg.gamma_step;
    char name[64];
    std::snprintf(name, sizeof(name), "fredholm/table/%03d_gamma=%+.3f",
                  row_index++, gamma);
    const WeightGamma wg = make_weight(gamma);
    if (!wg.fredholm_ok) {
      rep.add({name, CheckStatus::warning, gamma, 0.0,
               "gamma in Z + 1/2: not Fredholm, row excluded"});
      continue;
    }
    const FredholmData d = fredholm_data(gamma, fredholm_lmax);
    char detail[96];
    std::snprintf(detail, sizeof(detail),
                  "dim_ker=%d dim_coker=%d ker_sectors=%zu coker_sectors=%zu",
                  d.dim_ker, d.dim_coker, d.ker_sectors.size(),
                  d.coker_sectors.size());
    rep.add({name, CheckStatus::pass, static_cast<double>(d.index), 0.0,
             detail});
    rows.push_back({gamma, d});
  }

  int window_mismatch = 0;
  int monotone_violation = 0;
  int jump_mismatch = 0;
  int duality_mismatch = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [gamma, d] = rows[i];
    const bool zero_rows = d.dim_ker == 0 && d.dim_coker == 0;
    const bool in_window = gamma > 0.5 && gamma < 1.5;
    if (zero_rows != in_window) ++window_mismatch;

    const FredholmData dual = fredholm_data(2.0 - gamma, fredholm_lmax);
    if (d.dim_coker != dual.dim_ker) ++duality_mismatch;

    if (i > 0) {
      const auto& [prev_gamma, prev] = rows[i - 1];
      if (d.index > prev.index) ++monotone_violation;
      // locate half-integers crossed between consecutive Fredholm rows
      const long h_lo = std::lround(std::ceil(prev_gamma - 0.5 + 1e-9));
      const long h_hi = std::lround(std::floor(gamma - 0.5 - 1e-9));
      int expected_drop = 0;
      for (long n = h_lo; n <= h_hi; ++n) {
        const double h = n + 0.5;
        const long l = h <= 0.5 ? std::lround(0.5 - h) : std::lround(h - 1.5);
        expected_drop += 2 * static_cast<int>(l) + 1;
      }
      if (prev.index - d.index != expected_drop) ++jump_mismatch;
    }
  }

  rep.check("fredholm/isomorphism_window_is_(0.5,1.5)",
            static_cast<double>(window_mismatch), 0.0,
            "rows with dim_ker = dim_coker = 0");
  rep.check("fredholm/index_monotone_nonincreasing",
            static_cast<double>(monotone_violation), 0.0);
  rep.check("fredholm/index_jumps_are_-(2l+1)",
            static_cast<double>(jump_mismatch), 0.0,
            "at gamma = 1/2 - l and gamma = 3/2 + l");
  rep.check("fredholm/duality_coker(gamma)=ker(2-gamma)",
            static_cast<double>(duality_mismatch), 0.0);
}

}  // namespace detail

/// Runs the configured verification suite and assembles the report.
/// Exit-code contract for callers: nonzero iff the report has a fail record.
inline Report run(const RunConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();

  Report rep;
  rep.command = cfg.command;
  rep.config = detail::config_echo(cfg);

  const std::string& c = cfg.command;
  if (c == "verify-coords") {
    detail::run_verify_coords(cfg, rep);
  } else if (c == "verify-operator") {
    detail::run_verify_operator(cfg, rep);
  } else if (c == "symbols") {
    detail::run_symbols(cfg, rep);
  } else if (c == "ellipticity") {
    detail::run_ellipticity(cfg, rep);
  } else if (c == "conormal") {
    detail::run_conormal(cfg, rep);
  } else if (c == "kernel") {
    detail::run_kernel(cfg, rep);
  } else if (c == "fredholm") {
    detail::run_fredholm(cfg, rep);
  } else if (c == "report-all") {
    detail::run_verify_coords(cfg, rep);
    detail::run_verify_operator(cfg, rep);
    detail::run_symbols(cfg, rep);
    detail::run_ellipticity(cfg, rep);
    detail::run_conormal(cfg, rep);
    detail::run_kernel(cfg, rep);
    detail::run_fredholm(cfg, rep);
  } else {
    throw ConfigError("unknown command '" + c + "'");
  }

  rep.sort_records();
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

/// Serializes per the configured format and writes to output_path
/// ("-" or empty meaning stdout).
inline void write_report(const Report& rep, const RunConfig& cfg) {
  const std::string body =
      cfg.format == ReportFormat::json ? rep.to_json() : rep.to_csv();
  if (cfg.output_path.empty() || cfg.output_path == "-") {
    std::fputs(body.c_str(), stdout);
    return;
  }
  std::ofstream out(cfg.output_path);
  if (!out) throw IoError("cannot open output path: " + cfg.output_path);
  out << body;
  if (!out) throw IoError("write failed: " + cfg.output_path);
}

}  // namespace edgecalc
