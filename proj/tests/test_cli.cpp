#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lplab/cli.hpp"
#include "lplab/errors.hpp"

using namespace lplab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("lplab_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

json base_config(const fs::path& out) {
  return json{{"output_dir", out.string()},
              {"rng_seed", 99},
              {"experiments",
               json::array({json{{"name", "ind"},
                                 {"formula", "lp_formula"},
                                 {"function", "cube_indicator"},
                                 {"dimension", 1},
                                 {"p", 1},
                                 {"lambdas", {0.03125, 0.0625, 0.125, 0.25, 0.5}},
                                 {"estimator", {{"method", "tensor_quadrature"}}}},
                            json{{"name", "mc"},
                                 {"formula", "lp_formula"},
                                 {"function", "gaussian"},
                                 {"dimension", 1},
                                 {"p", 2},
                                 {"estimator", {{"method", "stratified_mc"}, {"samples_or_nodes", 262144}}}},
                            json{{"name", "kern"}, {"formula", "kernel_decay"}, {"dimension", 1}, {"vary", "j"}},
                            json{{"name", "msh"}, {"formula", "msh"}, {"function", "cube_indicator"}, {"p", 1}}})}};
}

}  // namespace

TEST_CASE("config parsing rejects unknown keys and bad types") {
  CHECK_THROWS_AS(cli::parse_config(json{{"experiment", json::array()}}), ConfigError);
  CHECK_THROWS_AS(cli::parse_config(json{{"experiments", json::array({json{{"formula", "msh"}, {"bogus", 1}}})}}),
                  ConfigError);
  CHECK_THROWS_AS(cli::parse_config(json{{"experiments", json::array({json{{"p", "two"}}})}}), ConfigError);
}

TEST_CASE("validation collects every problem before running") {
  json doc = {{"experiments",
               json::array({json{{"name", "a"}, {"formula", "nope"}},
                            json{{"name", "b"}, {"formula", "lp_formula"}, {"function", "missing"}},
                            json{{"name", "c"},
                                 {"formula", "lp_formula"},
                                 {"function", "gaussian"},
                                 {"lambdas", {0.5, 0.25}}},
                            json{{"name", "c"}, {"formula", "bbm"}, {"function", "ramp"}, {"s_grid", {0.5, 0.6}}},
                            json{{"name", "d"}, {"formula", "kernel_decay"}, {"j_values", {12}}},
                            json{{"name", "e"},
                                 {"formula", "lp_formula"},
                                 {"function", "gaussian"},
                                 {"dimension", 3},
                                 {"estimator", {{"method", "tensor_quadrature"}}}}})}};
  auto problems = cli::validate(cli::parse_config(doc));
  auto has = [&](const std::string& s) {
    for (const auto& p : problems)
      if (p.find(s) != std::string::npos) return true;
    return false;
  };
  CHECK(has("unknown formula"));
  CHECK(has("catalog miss"));
  CHECK(has("strictly increasing"));
  CHECK(has("duplicate"));
  CHECK(has("max s >= 0.9"));
  CHECK(has("not resolved"));
  CHECK(has("tensor_quadrature"));
}

TEST_CASE("empty experiment list exits 1 without touching the output") {
  const auto out = scratch("empty");
  cli::RunConfig cfg;
  cfg.output_dir = out;
  std::ostringstream log;
  CHECK(cli::run(cfg, 1, log) == 1);
  CHECK(log.str().find("no experiments") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("indicator run: passes and the CSV reproduces 4 - 2 lambda") {
  const auto out = scratch("indicator");
  json doc = base_config(out);
  doc["experiments"] = json::array({doc["experiments"][0]});
  std::ostringstream log;
  CHECK(cli::run(cli::parse_config(doc), 1, log) == 0);
  auto summary = json::parse(slurp(out / "summary.json"));
  CHECK(summary["passed"] == 1);
  std::istringstream csv(slurp(out / "ind.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "lambda,value,error");
  int rows = 0;
  while (std::getline(csv, line)) {
    double lam, val, err;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &lam, &val, &err) == 3);
    CHECK(val == doctest::Approx(4.0 - 2.0 * lam).epsilon(0.01));
    ++rows;
  }
  CHECK(rows == 5);
  fs::remove_all(out);
}

TEST_CASE("outputs are byte-identical for any job count") {
  const auto a = scratch("jobs1"), b = scratch("jobs4");
  std::ostringstream log;
  cli::RunConfig ca = cli::parse_config(base_config(a));
  cli::RunConfig cb = cli::parse_config(base_config(b));
  cli::run(ca, 1, log);
  cli::run(cb, 4, log);
  for (const char* name : {"ind.csv", "mc.csv", "kern.csv", "msh.csv", "ind.json", "mc.json", "summary.json"})
    CHECK_MESSAGE(slurp(a / name) == slurp(b / name), name);
  const std::string csv = slurp(a / "mc.csv");
  CHECK(csv.find('\r') == std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("a different seed moves stochastic values within three standard errors") {
  json doc = base_config("unused");
  const cli::Experiment e = cli::parse_config(doc).experiments[1];
  const cli::Outcome x = cli::run_experiment(e, 1, std::nullopt);
  const cli::Outcome y = cli::run_experiment(e, 2, std::nullopt);
  REQUIRE(x.series.size() == y.series.size());
  bool any_diff = false;
  for (std::size_t i = 0; i < x.series.size(); ++i) {
    const double d = std::abs(x.series[i].value - y.series[i].value);
    any_diff = any_diff || d > 0.0;
    CHECK(d <= 3.0 * std::hypot(x.series[i].error, y.series[i].error));
  }
  CHECK(any_diff);
}

TEST_CASE("refusals and failures give exit status 2") {
  const auto out = scratch("refusal");
  json doc = {{"output_dir", out.string()},
              {"experiments",
               json::array({json{{"name", "const"}, {"formula", "lp_formula"}, {"function", "constant_one"}}})}};
  std::ostringstream log;
  CHECK(cli::run(cli::parse_config(doc), 1, log) == 2);
  auto rep = json::parse(slurp(out / "const.json"));
  CHECK(rep["passed"] == false);
  CHECK(rep["error"].get<std::string>().find("not in L^p") != std::string::npos);
  fs::remove_all(out);
}

TEST_CASE("csv formatting") {
  cli::Outcome o;
  o.abscissa_name = "s";
  o.series = {{0.1, 1.0 / 3.0, 0.0}};
  CHECK(cli::format_csv(o) == "s,value,error\n0.10000000000000001,0.33333333333333331,0\n");
}

TEST_CASE("experiment seeds are stable and distinct") {
  CHECK(cli::experiment_seed(1, 0) == cli::experiment_seed(1, 0));
  CHECK(cli::experiment_seed(1, 0) != cli::experiment_seed(1, 1));
  CHECK(cli::experiment_seed(1, 0) != cli::experiment_seed(2, 0));
}
