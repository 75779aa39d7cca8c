// Command-line frontend: one subcommand per claim cluster, machine-readable
// JSON/CSV reports, deterministic for a fixed seed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edgecalc/runner.hpp"

namespace {

using edgecalc::ConfigError;
using edgecalc::RunConfig;

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw edgecalc::IoError("cannot read config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) kv[key] = value;
  }
  return kv;
}

int parse_grid(const std::string& s) {
  if (s == "default") return 10;
  try {
    const int n = std::stoi(s);
    if (n >= 1) return n;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad --grid value '" + s + "' (expected 'default' or N)");
}

// Precedence: flags > config file > EDGECALC_SEED (seed only) > defaults.
void apply_file_overrides(RunConfig& cfg, CLI::App* sub,
                          const std::map<std::string, std::string>& kv,
                          bool& seed_set) {
  const auto given = [sub](const std::string& flag) {
    return sub->count(flag) > 0;
  };
  const auto get = [&kv](const std::string& key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  try {
    if (const auto* v = get("chart"); v && !given("--chart"))
      cfg.chart = (*v == "all") ? std::nullopt
                                : std::optional(edgecalc::parse_chart(*v));
    if (const auto* v = get("samples"); v && !given("--samples"))
      cfg.samples = std::stoi(*v);
    if (const auto* v = get("seed"); v && !given("--seed")) {
      cfg.seed = std::stoull(*v);
      seed_set = true;
    }
    if (const auto* v = get("tol"); v && !given("--tol"))
      cfg.tol = std::stod(*v);
    if (const auto* v = get("gamma_min"); v && !given("--gamma-min"))
      cfg.gamma_min = std::stod(*v);
    if (const auto* v = get("gamma_max"); v && !given("--gamma-max"))
      cfg.gamma_max = std::stod(*v);
    if (const auto* v = get("gamma_step"); v && !given("--gamma-step"))
      cfg.gamma_step = std::stod(*v);
    if (const auto* v = get("l_max"); v && !given("--l-max"))
      cfg.l_max = std::stoi(*v);
    if (const auto* v = get("grid"); v && !given("--grid"))
      cfg.grid_points = parse_grid(*v);
    if (const auto* v = get("format"); v && !given("--format"))
      cfg.format = edgecalc::parse_format(*v);
    if (const auto* v = get("output"); v && !given("--output"))
      cfg.output_path = *v;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad config file value: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(std::string("config file value out of range: ") +
                      e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edgecalc: numerical certification of the helium Hamiltonian "
               "as an edge-degenerate operator"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string chart_str = "all";
  std::string format_str = "json";
  std::string grid_str = "default";
  std::string config_path;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify-coords", "round trips, metric pullback vs closed form"},
      {"verify-operator", "Cartesian / edge / corner form equivalence"},
      {"symbols", "symbol identities and conormal cross-checks"},
      {"ellipticity", "positivity sweep of sigma_psi and sigma~_psi"},
      {"conormal", "non-invertibility points of the conormal symbol"},
      {"kernel", "Bessel solutions, annihilation, exit symbols"},
      {"fredholm", "kernel/cokernel/index table over the weight line"},
      {"report-all", "every suite in one report"},
  };

  std::vector<CLI::App*> subs;
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--chart", chart_str, "chart: u1|u2|u3|all")
        ->default_str("all");
    sub->add_option("--samples", cfg.samples, "seeded samples per check")
        ->default_val(100);
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--tol", cfg.tol, "override round-trip tolerances");
    sub->add_option("--gamma-min", cfg.gamma_min, "weight sweep start")
        ->default_val(-3.0);
    sub->add_option("--gamma-max", cfg.gamma_max, "weight sweep end")
        ->default_val(4.0);
    sub->add_option("--gamma-step", cfg.gamma_step, "weight sweep step")
        ->default_val(0.05);
    sub->add_option("--l-max", cfg.l_max, "harmonic sector cutoff")
        ->default_val(10);
    sub->add_option("--grid", grid_str,
                    "ellipticity grid: 'default' or points per axis");
    sub->add_option("--output,-o", cfg.output_path,
                    "report path ('-' = stdout)");
    sub->add_option("--format", format_str, "report format: json|csv")
        ->default_str("json");
    sub->add_option("--config", config_path,
                    "key=value config file (flags take precedence)");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = nullptr;
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (subs[i]->parsed()) {
        sub = subs[i];
        cfg.command = commands[i].first;
      }
    if (!sub) throw ConfigError("no subcommand selected");

    bool seed_set = sub->count("--seed") > 0;
    if (sub->count("--chart") > 0)
      cfg.chart = (chart_str == "all")
                      ? std::nullopt
                      : std::optional(edgecalc::parse_chart(chart_str));
    if (sub->count("--format") > 0) cfg.format = edgecalc::parse_format(format_str);
    if (sub->count("--grid") > 0) cfg.grid_points = parse_grid(grid_str);

    if (!config_path.empty())
      apply_file_overrides(cfg, sub, read_config_file(config_path), seed_set);

    if (!seed_set) {
      if (const char* env = std::getenv("EDGECALC_SEED"))
        cfg.seed = std::stoull(env);
    }

    const edgecalc::Report rep = edgecalc::run(cfg);
    edgecalc::write_report(rep, cfg);

    const edgecalc::ReportSummary s = rep.summary();
    std::fprintf(stderr,
                 "edgecalc %s: %d pass, %d fail, %d degenerate, %d warning "
                 "(%.2fs)\n",
                 cfg.command.c_str(), s.passed, s.failed, s.degenerate,
                 s.warnings, rep.wall_seconds);
    return rep.all_passed() ? 0 : 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const edgecalc::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
