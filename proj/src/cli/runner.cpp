#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>

#include "lplab/cli.hpp"
#include "lplab/errors.hpp"
#include "lplab/fields.hpp"
#include "lplab/parallel.hpp"

namespace lplab::cli {

using nlohmann::ordered_json;

SpectralGrid experiment_grid(const Experiment& e) {
  if (e.grid) return {e.dimension, e.grid->halfwidth, e.grid->points};
  if (e.formula == "kernel_decay") return e.dimension == 1 ? default_kernel_grid() : default_grid(e.dimension);
  SpectralGrid g = default_grid(e.dimension);
  if (e.formula == "density") {
    int top = 0;
    for (int J : e.J_values.empty() ? std::vector<int>{2, 4} : e.J_values) top = std::max(top, J);
    while (std::ldexp(1.0, top) > g.nyquist() && g.points < (1 << 16)) g.points *= 2;
  }
  return g;
}

std::uint64_t experiment_seed(std::uint64_t run_seed, std::size_t index) {
  std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// measured = spread statistic, reference = its allowed bound.
VerificationReport spread_report(const std::string& id, double spread, double bound) {
  VerificationReport r;
  r.formula_id = id;
  r.measured = spread;
  r.reference = bound;
  r.tolerance = 0.0;
  r.rel_error = std::isfinite(spread) ? std::max(0.0, spread / bound - 1.0) : INFINITY;
  r.passed = std::isfinite(spread) && spread <= bound;
  return r;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

ordered_json inputs_json(const Experiment& e, std::uint64_t seed) {
  ordered_json in;
  in["function"] = e.function;
  in["dimension"] = e.dimension;
  in["p"] = e.p;
  if (!e.lambdas.empty()) in["lambdas"] = e.lambdas;
  if (!e.s_grid.empty()) in["s_grid"] = e.s_grid;
  ordered_json est;
  est["method"] = std::string(to_string(e.estimator.method));
  est["box_halfwidth"] = e.estimator.box_halfwidth;
  est["samples_or_nodes"] = e.estimator.samples_or_nodes;
  est["rng_seed"] = seed;
  est["strata_per_axis"] = e.estimator.strata_per_axis;
  est["directions"] = e.estimator.directions;
  est["ray_samples"] = e.estimator.ray_samples;
  est["half_space"] = e.estimator.half_space;
  in["estimator"] = est;
  if (e.formula == "embedding_scan") in["mode"] = e.mode;
  if (e.formula == "kernel_decay" || e.formula == "density") in["s"] = e.s;
  if (e.formula == "kernel_decay") {
    in["vary"] = e.vary;
    in["t"] = e.t;
    in["j"] = e.j;
  }
  if (e.formula == "density") in["q"] = e.q;
  if (e.formula == "embedding_scan" || e.formula == "fpp_scan" || e.formula == "kernel_decay" ||
      e.formula == "density") {
    const SpectralGrid g = experiment_grid(e);
    in["grid"] = ordered_json{{"halfwidth", g.halfwidth}, {"points", g.points}};
  }
  return in;
}

void from_verification(Outcome& o, Verification v) {
  o.report = std::move(v.report);
  o.abscissa_name = v.abscissa_name;
  o.series = std::move(v.series);
}

void scan_outcome(Outcome& o, const std::vector<ScanPoint>& pts, const std::string& id) {
  std::vector<double> ratios;
  bool finite = true;
  for (const auto& pt : pts) {
    o.series.push_back({pt.s, pt.ratio, pt.error});
    ratios.push_back(pt.ratio);
    finite = finite && std::isfinite(pt.ratio) && pt.ratio > 0.0;
  }
  const double med = median(ratios);
  const double mx = *std::max_element(ratios.begin(), ratios.end());
  o.report = spread_report(id, finite ? mx / med : INFINITY, 3.0);
  o.report.add("max_ratio", mx);
  o.report.add("median_ratio", med);
  o.report.add("min_ratio", *std::min_element(ratios.begin(), ratios.end()));
  double tail = 0.0;
  for (const auto& pt : pts) tail = std::max(tail, pt.truncated_tail);
  o.report.add("max_truncated_tail", tail);
  o.abscissa_name = "s";
}

std::vector<double> or_default(const std::vector<double>& v, std::vector<double> d) { return v.empty() ? d : v; }

}  // namespace

Outcome run_experiment(const Experiment& e, std::uint64_t seed, std::optional<double> global_tolerance) {
  Outcome o;
  o.name = e.name;
  o.formula = e.formula;
  o.inputs = inputs_json(e, seed);
  o.report.formula_id = e.formula;
  auto tol = [&](double d) { return e.tolerance ? *e.tolerance : global_tolerance ? *global_tolerance : d; };
  EstimatorConfig est = e.estimator;
  est.rng_seed = seed;
  try {
    if (e.formula == "lp_formula") {
      from_verification(o, verify_lp_formula(catalog_lookup(e.function, e.dimension), e.p, est, e.lambdas, tol(0.03)));
    } else if (e.formula == "gradient_formula") {
      from_verification(o, verify_gradient_formula(catalog_lookup(e.function, e.dimension), e.p, est, e.lambdas,
                                                   tol(0.05)));
    } else if (e.formula == "bounds") {
      from_verification(o, verify_bounds(catalog_lookup(e.function, e.dimension), e.p, est, e.lambdas, tol(0.02)));
    } else if (e.formula == "bbm") {
      const TestFunction u = catalog_lookup(e.function, e.dimension);
      Box omega = e.omega_lo ? Box{*e.omega_lo, *e.omega_hi} : *u.natural_domain;
      from_verification(o, verify_bbm(u, e.p, omega, e.s_grid, tol(0.02)));
    } else if (e.formula == "msh") {
      from_verification(o, verify_msh(catalog_lookup(e.function, e.dimension), e.p, e.s_grid, tol(0.02)));
    } else if (e.formula == "embedding_scan" || e.formula == "fpp_scan") {
      ScanConfig sc;
      sc.grid = experiment_grid(e);
      sc.estimator = est;
      const auto s_grid = or_default(e.s_grid, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
      const TestFunction u = catalog_lookup(e.function, e.dimension);
      if (e.formula == "embedding_scan") {
        const auto mode = e.mode == "bessel" ? EmbeddingMode::bessel : EmbeddingMode::homogeneous_tl;
        scan_outcome(o, embedding_ratio_scan(u, e.p, s_grid, mode, sc), e.formula);
      } else {
        FppScan scan = fpp_ratio_scan(u, e.p, s_grid, sc);
        scan_outcome(o, scan.points, e.formula);
        o.report.add("factor_exponent", scan.factor_exponent);
        o.report.add("measured_exponent", scan.measured_exponent);
      }
    } else if (e.formula == "kernel_decay") {
      const SpectralGrid g = experiment_grid(e);
      const CutoffPair cut;
      std::vector<double> values;
      if (e.vary == "j") {
        const std::vector<int> js = e.j_values.empty() ? std::vector<int>{-2, -1, 0, 1, 2} : e.j_values;
        for (int jj : js) {
          values.push_back(kernel_decay_check(jj, e.s, e.t, g, cut));
          o.series.push_back({static_cast<double>(jj), values.back(), 0.0});
        }
        o.abscissa_name = "j";
      } else {
        for (double t : or_default(e.t_values, {0.0, 1.0, 5.0})) {
          values.push_back(kernel_decay_check(e.j, e.s, t, g, cut));
          o.series.push_back({t, values.back(), 0.0});
        }
        o.abscissa_name = "t";
      }
      const double mx = *std::max_element(values.begin(), values.end());
      const double mn = *std::min_element(values.begin(), values.end());
      o.report = spread_report(e.formula, mn > 0.0 ? mx / mn : INFINITY, e.vary == "j" ? 1.05 : 10.0);
      o.report.add("max_value", mx);
      o.report.add("min_value", mn);
    } else if (e.formula == "density") {
      const SpectralGrid g = experiment_grid(e);
      const GridField u = sample(catalog_lookup(e.function, e.dimension), g);
      std::vector<int> Js = e.J_values.empty() ? std::vector<int>{2, 4} : e.J_values;
      std::sort(Js.begin(), Js.end());
      bool monotone = true;
      double prev = INFINITY;
      for (int J : Js) {
        const double delta = e.delta ? *e.delta : std::ldexp(1.0, -J) / 8.0;
        DensityResult r = density_approximation(u, J, delta, e.s, e.p, e.q);
        o.series.push_back({static_cast<double>(J), r.error.value, r.error.truncated_tail});
        monotone = monotone && r.error.value <= prev;
        prev = r.error.value;
      }
      o.abscissa_name = "J";
      o.report = make_report(e.formula, prev, 0.0, tol(1e-2));
      o.report.add("monotone_in_J", monotone ? 1.0 : 0.0);
      if (!monotone) o.report.passed = false;
    }
  } catch (const Error& err) {
    o.error = err.what();
    o.report.passed = false;
  } catch (const std::exception& err) {
    o.error = std::string("internal error: ") + err.what();
    o.report.passed = false;
  }
  return o;
}

std::string format_csv(const Outcome& o) {
  std::string out = (o.abscissa_name.empty() ? std::string("x") : o.abscissa_name) + ",value,error\n";
  char buf[128];
  for (const auto& r : o.series) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.abscissa, r.value, r.error);
    out += buf;
  }
  return out;
}

namespace {

// JSON has no inf/nan; emit null instead.
ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

}  // namespace

ordered_json report_json(const Outcome& o) {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["name"] = o.name;
  j["formula_id"] = o.formula;
  j["inputs"] = o.inputs;
  j["measured"] = num(o.report.measured);
  j["reference"] = num(o.report.reference);
  j["rel_error"] = num(o.report.rel_error);
  j["tolerance"] = num(o.report.tolerance);
  j["passed"] = o.report.passed;
  j["error"] = o.error ? ordered_json(*o.error) : ordered_json(nullptr);
  ordered_json diag = ordered_json::object();
  for (const auto& [k, v] : o.report.diagnostics) diag[k] = num(v);
  j["diagnostics"] = diag;
  ordered_json rows = ordered_json::array();
  for (const auto& r : o.series) rows.push_back({{"x", num(r.abscissa)}, {"value", num(r.value)}, {"error", num(r.error)}});
  j["table"] = {{"abscissa", o.abscissa_name.empty() ? "x" : o.abscissa_name}, {"rows", rows}};
  return j;
}

int run(const RunConfig& cfg, int jobs, std::ostream& log) {
  const auto problems = validate(cfg);
  if (!problems.empty()) {
    for (const auto& p : problems) log << "config error: " << p << '\n';
    return 1;
  }
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) {
    log << "config error: cannot create output directory " << cfg.output_dir << ": " << ec.message() << '\n';
    return 1;
  }

  std::vector<Outcome> outcomes(cfg.experiments.size());
  std::mutex log_mutex;
  parallel_for(cfg.experiments.size(), std::max(jobs, 1), [&](std::size_t i) {
    outcomes[i] = run_experiment(cfg.experiments[i], experiment_seed(cfg.rng_seed, i), cfg.tolerance);
    std::lock_guard lock(log_mutex);
    const Outcome& o = outcomes[i];
    log << (o.report.passed ? "PASS " : "FAIL ") << o.name << " (" << o.formula << ")";
    if (o.error) log << ": " << *o.error;
    else log << ": measured " << o.report.measured << ", reference " << o.report.reference;
    log << '\n';
  });

  // Written in config order once everything is done, so file contents never
  // depend on scheduling.
  int passed = 0;
  ordered_json list = ordered_json::array();
  for (const Outcome& o : outcomes) {
    const auto base = cfg.output_dir / o.name;
    std::ofstream(base.string() + ".json", std::ios::binary) << report_json(o).dump(2) << '\n';
    std::ofstream(base.string() + ".csv", std::ios::binary) << format_csv(o);
    passed += o.report.passed ? 1 : 0;
    list.push_back({{"name", o.name},
                    {"formula_id", o.formula},
                    {"passed", o.report.passed},
                    {"error", o.error ? ordered_json(*o.error) : ordered_json(nullptr)}});
  }
  ordered_json summary;
  summary["schema_version"] = kReportSchemaVersion;
  summary["rng_seed"] = cfg.rng_seed;
  summary["total"] = outcomes.size();
  summary["passed"] = passed;
  summary["failed"] = static_cast<int>(outcomes.size()) - passed;
  summary["experiments"] = list;
  std::ofstream(cfg.output_dir / "summary.json", std::ios::binary) << summary.dump(2) << '\n';
  log << passed << "/" << outcomes.size() << " experiments passed\n";
  return passed == static_cast<int>(outcomes.size()) ? 0 : 2;
}

}  // namespace lplab::cli
