#include <cmath>
#include <fstream>
#include <regex>
#include <set>

#include "lplab/cli.hpp"
#include "lplab/errors.hpp"
#include "lplab/fields.hpp"

namespace lplab::cli {

using nlohmann::json;

const std::vector<std::string>& formula_ids() {
  static const std::vector<std::string> ids = {"lp_formula", "gradient_formula", "bbm",          "msh",
                                               "bounds",     "embedding_scan",   "fpp_scan",     "kernel_decay",
                                               "density"};
  return ids;
}

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

template <class T>
T read(const json& obj, const char* key, const std::string& where, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + where);
  }
}

EstimatorConfig parse_estimator(const json& j, const std::string& where) {
  check_keys(j, {"method", "box_halfwidth", "samples_or_nodes", "strata_per_axis", "directions", "ray_samples",
                 "threads", "half_space", "permit_non_lp"},
             where);
  EstimatorConfig c;
  c.method = EstimatorMethod::radial_rays;
  if (j.contains("method")) {
    try {
      c.method = parse_estimator_method(read<std::string>(j, "method", where, ""));
    } catch (const Error& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  c.box_halfwidth = read(j, "box_halfwidth", where, c.box_halfwidth);
  c.samples_or_nodes = read(j, "samples_or_nodes", where, c.samples_or_nodes);
  c.strata_per_axis = read(j, "strata_per_axis", where, c.strata_per_axis);
  c.directions = read(j, "directions", where, c.directions);
  c.ray_samples = read(j, "ray_samples", where, c.ray_samples);
  c.threads = read(j, "threads", where, c.threads);
  c.half_space = read(j, "half_space", where, c.half_space);
  c.permit_non_lp = read(j, "permit_non_lp", where, c.permit_non_lp);
  return c;
}

Experiment parse_experiment(const json& j, std::size_t index) {
  const std::string where = "experiments[" + std::to_string(index) + "]";
  check_keys(j, {"name", "description", "formula", "function", "dimension", "p", "lambdas", "s_grid", "omega",
                 "estimator", "tolerance", "mode", "vary", "j_values", "t_values", "s", "t", "j", "J_values",
                 "delta", "q", "grid"},
             where);
  Experiment e;
  e.formula = read<std::string>(j, "formula", where, "");
  e.name = read<std::string>(j, "name", where, e.formula + "_" + std::to_string(index));
  e.function = read<std::string>(j, "function", where, "");
  e.dimension = read(j, "dimension", where, e.dimension);
  e.p = read(j, "p", where, e.p);
  e.lambdas = read(j, "lambdas", where, e.lambdas);
  e.s_grid = read(j, "s_grid", where, e.s_grid);
  if (j.contains("omega")) {
    const json& o = j.at("omega");
    check_keys(o, {"lo", "hi"}, where + ".omega");
    e.omega_lo = read<std::vector<double>>(o, "lo", where + ".omega", {});
    e.omega_hi = read<std::vector<double>>(o, "hi", where + ".omega", {});
  }
  e.estimator = parse_estimator(j.value("estimator", json::object()), where + ".estimator");
  if (j.contains("tolerance")) e.tolerance = read<double>(j, "tolerance", where, 0.0);
  e.mode = read(j, "mode", where, e.mode);
  e.vary = read(j, "vary", where, e.vary);
  e.j_values = read(j, "j_values", where, e.j_values);
  e.t_values = read(j, "t_values", where, e.t_values);
  e.s = read(j, "s", where, e.s);
  e.t = read(j, "t", where, e.t);
  e.j = read(j, "j", where, e.j);
  e.J_values = read(j, "J_values", where, e.J_values);
  if (j.contains("delta")) e.delta = read<double>(j, "delta", where, 0.0);
  e.q = read(j, "q", where, e.q);
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    check_keys(g, {"halfwidth", "points"}, where + ".grid");
    e.grid = GridOverride{read(g, "halfwidth", where + ".grid", 0.0), read(g, "points", where + ".grid", 0)};
  }
  return e;
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

bool power_of_two(int m) { return m >= 4 && (m & (m - 1)) == 0; }

}  // namespace

RunConfig parse_config(const json& doc) {
  check_keys(doc, {"output_dir", "rng_seed", "tolerance", "description", "experiments"}, "config");
  RunConfig cfg;
  cfg.output_dir = read<std::string>(doc, "output_dir", "config", cfg.output_dir.string());
  cfg.rng_seed = read<std::uint64_t>(doc, "rng_seed", "config", cfg.rng_seed);
  if (doc.contains("tolerance")) cfg.tolerance = read<double>(doc, "tolerance", "config", 0.0);
  if (doc.contains("experiments")) {
    const json& list = doc.at("experiments");
    if (!list.is_array()) throw ConfigError("'experiments' must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) cfg.experiments.push_back(parse_experiment(list[i], i));
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(is, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

std::vector<std::string> validate(const RunConfig& cfg) {
  std::vector<std::string> problems;
  if (cfg.experiments.empty()) {
    problems.push_back("no experiments in config");
    return problems;
  }
  if (cfg.tolerance && !finite_positive(*cfg.tolerance)) problems.push_back("global tolerance must be positive");
  const std::regex safe_name("[A-Za-z0-9_.-]+");
  std::set<std::string> names;
  for (const Experiment& e : cfg.experiments) {
    const std::string tag = "experiment '" + e.name + "': ";
    auto bad = [&](const std::string& msg) { problems.push_back(tag + msg); };
    if (!std::regex_match(e.name, safe_name) || e.name == "summary")
      bad("name must be non-empty, use only [A-Za-z0-9_.-] and differ from 'summary'");
    if (!names.insert(e.name).second) bad("duplicate experiment name");
    const auto& ids = formula_ids();
    if (std::find(ids.begin(), ids.end(), e.formula) == ids.end()) {
      bad("unknown formula '" + e.formula + "'");
      continue;
    }
    if (e.dimension < 1 || e.dimension > 3) {
      bad("dimension must be 1, 2 or 3");
      continue;
    }
    if (e.tolerance && !finite_positive(*e.tolerance)) bad("tolerance must be positive");
    if (!(std::isfinite(e.p) && e.p >= 1.0)) bad("p must be >= 1");

    std::optional<TestFunction> u;
    if (e.formula != "kernel_decay") {
      try {
        u = catalog_lookup(e.function, e.dimension);
      } catch (const Error& err) {
        bad("catalog miss: " + std::string(err.what()));
      }
    }

    for (std::size_t i = 0; i < e.lambdas.size(); ++i) {
      if (!finite_positive(e.lambdas[i])) bad("lambdas must be positive");
      else if (i > 0 && !(e.lambdas[i] > e.lambdas[i - 1])) bad("lambdas must be strictly increasing");
    }
    for (double s : e.s_grid)
      if (!(s > 0.0 && s < 1.0)) bad("s_grid values must lie in (0, 1)");

    const EstimatorConfig& est = e.estimator;
    if (est.method == EstimatorMethod::tensor_quadrature && e.dimension > 2)
      bad("tensor_quadrature supports dimension 1 and 2 only");
    if (est.samples_or_nodes < 0 || est.strata_per_axis < 1 || est.directions < 1 || est.ray_samples < 2 ||
        est.threads < 0 || est.box_halfwidth < 0.0)
      bad("estimator settings out of range");

    if (e.formula == "bbm") {
      if (!e.s_grid.empty() && *std::max_element(e.s_grid.begin(), e.s_grid.end()) < 0.9)
        bad("bbm needs max s >= 0.9");
      if (e.omega_lo || e.omega_hi) {
        const auto lo = e.omega_lo.value_or(std::vector<double>{});
        const auto hi = e.omega_hi.value_or(std::vector<double>{});
        bool ok = lo.size() == static_cast<std::size_t>(e.dimension) && hi.size() == lo.size();
        for (std::size_t k = 0; ok && k < lo.size(); ++k) ok = lo[k] < hi[k];
        if (!ok) bad("omega needs lo < hi with one entry per dimension");
      } else if (u && !u->natural_domain) {
        bad("bbm needs an omega box for a function without a natural domain");
      }
    }
    if (e.formula == "msh" && !e.s_grid.empty() && *std::min_element(e.s_grid.begin(), e.s_grid.end()) > 0.05)
      bad("msh needs min s <= 0.05");

    if (e.formula == "embedding_scan" || e.formula == "fpp_scan" || e.formula == "density" ||
        e.formula == "kernel_decay") {
      if (e.grid && (!finite_positive(e.grid->halfwidth) || !power_of_two(e.grid->points)))
        bad("grid needs a positive halfwidth and a power-of-two point count >= 4");
    }
    if (e.formula == "embedding_scan") {
      if (e.mode != "bessel" && e.mode != "homogeneous_tl") bad("mode must be 'bessel' or 'homogeneous_tl'");
      if (u) {
        const bool schwartz_ok = u->smoothness == Smoothness::schwartz || u->smoothness == Smoothness::band_limited;
        if (e.mode == "bessel" && !schwartz_ok) bad("function is not admissible (needs schwartz or band_limited)");
        if (e.mode == "homogeneous_tl" && u->smoothness != Smoothness::band_limited)
          bad("function is not admissible (needs band_limited)");
      }
    }
    if (e.formula == "fpp_scan" && u && u->smoothness != Smoothness::smooth &&
        u->smoothness != Smoothness::schwartz && u->smoothness != Smoothness::band_limited)
      bad("function is not admissible (needs a smooth class)");
    if (e.formula == "kernel_decay") {
      if (!(e.s > 0.0 && e.s < 1.0)) bad("s must lie in (0, 1)");
      if (e.vary != "j" && e.vary != "t") bad("vary must be 'j' or 't'");
      const SpectralGrid g = experiment_grid(e);
      std::vector<int> js = e.vary == "j" ? (e.j_values.empty() ? std::vector<int>{-2, -1, 0, 1, 2} : e.j_values)
                                          : std::vector<int>{e.j};
      for (int jj : js)
        if (std::ldexp(1.0, jj + 2) > g.nyquist() || std::ldexp(1.0, jj - 2) < g.freq_spacing())
          bad("kernel band j = " + std::to_string(jj) + " is not resolved by the grid");
      if (e.vary == "t" && e.t_values.size() == 1) bad("vary 't' needs at least two t values");
    }
    if (e.formula == "density") {
      if (!(e.q >= 1.0)) bad("q must be >= 1");
      if (!(e.s > 0.0 && e.s < 1.0)) bad("s must lie in (0, 1)");
      const SpectralGrid g = experiment_grid(e);
      const BandRange ok = resolvable_band_range(g);
      std::vector<int> Js = e.J_values.empty() ? std::vector<int>{2, 4} : e.J_values;
      for (int J : Js) {
        if (J < 1) bad("J must be >= 1");
        else if (-J < ok.jmin || J > ok.jmax) bad("bands |j| <= " + std::to_string(J) + " are not resolved by the grid");
        if (e.delta && !(*e.delta > 0.0 && *e.delta <= std::ldexp(1.0, -J) / 8.0))
          bad("delta must lie in (0, 2^-J / 8] for J = " + std::to_string(J));
      }
    }
  }
  return problems;
}

}  // namespace lplab::cli
