#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lplab/asymptotics.hpp"
#include "lplab/measure.hpp"
#include "lplab/spectral.hpp"

namespace lplab::cli {

inline constexpr int kReportSchemaVersion = 1;

// Formula ids accepted in configs, in listing order.
const std::vector<std::string>& formula_ids();

struct GridOverride {
  double halfwidth = 0.0;
  int points = 0;
};

struct Experiment {
  std::string name;
  std::string formula;
  std::string function;
  int dimension = 1;
  double p = 1.0;
  std::vector<double> lambdas;   // lp_formula, gradient_formula, bounds; empty = default grid
  std::vector<double> s_grid;    // bbm, msh, scans
  std::optional<std::vector<double>> omega_lo, omega_hi;  // bbm; default natural domain
  EstimatorConfig estimator{};
  std::optional<double> tolerance;
  // embedding_scan
  std::string mode = "bessel";
  // kernel_decay
  std::string vary = "j";
  std::vector<int> j_values;
  std::vector<double> t_values;
  double s = 0.5;
  double t = 0.0;
  int j = 0;
  // density
  std::vector<int> J_values;
  std::optional<double> delta;  // default 2^-J / 8 for each J
  double q = 2.0;
  std::optional<GridOverride> grid;
};

struct RunConfig {
  std::filesystem::path output_dir = "lplab-out";
  std::uint64_t rng_seed = 1;
  std::optional<double> tolerance;  // global override
  std::vector<Experiment> experiments;
};

// Throws ConfigError. Unknown keys are rejected so typos surface early.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

// Every problem found, one message each; empty means runnable.
std::vector<std::string> validate(const RunConfig& cfg);

struct Outcome {
  std::string name;
  std::string formula;
  VerificationReport report;
  std::string abscissa_name;
  std::vector<SeriesRow> series;
  nlohmann::ordered_json inputs;
  std::optional<std::string> error;  // refusal or failure message
};

// Spectral grid an experiment runs on: the override when given, otherwise
// the module default refined until every requested band is resolvable.
SpectralGrid experiment_grid(const Experiment& e);

// Seed for experiment `index`, independent of scheduling.
std::uint64_t experiment_seed(std::uint64_t run_seed, std::size_t index);

Outcome run_experiment(const Experiment& e, std::uint64_t seed, std::optional<double> global_tolerance);

// CSV body: header "<abscissa>,value,error", 17 significant digits, LF.
std::string format_csv(const Outcome& o);
nlohmann::ordered_json report_json(const Outcome& o);

// Runs all experiments with up to `jobs` in flight and writes
// <name>.json, <name>.csv and summary.json. Returns 0, 2 or 1.
int run(const RunConfig& cfg, int jobs, std::ostream& log);

}  // namespace lplab::cli
