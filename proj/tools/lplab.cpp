// Command-line runner for lplab experiment configs.
#include <CLI11.hpp>
#include <iostream>

#include "lplab/cli.hpp"
#include "lplab/errors.hpp"
#include "lplab/fields.hpp"

namespace {

const char* describe(const std::string& id) {
  if (id == "lp_formula") return "lambda -> 0 limit of lambda^p m(lambda) against 2 kappa_N ||u||_p^p";
  if (id == "gradient_formula") return "lambda -> infinity limit at s = 1 against k(p,N) ||grad u||_p^p / N";
  if (id == "bbm") return "s -> 1 limit of (1-s) |u|^p on a box against k(p,N) ||grad u||_p^p / p";
  if (id == "msh") return "s -> 0 limit of s |u|^p against (2N/p) kappa_N ||u||_p^p";
  if (id == "bounds") return "sup of the level-set profile between 2 kappa_N and 2^{p+1} kappa_N times ||u||_p^p";
  if (id == "embedding_scan") return "weak-norm / Bessel or homogeneous TL norm ratio over s, max/median <= 3";
  if (id == "fpp_scan") return "Gagliardo / ([s(1-s)]^-e F_pp norm) ratio over s, max/median <= 3";
  if (id == "kernel_decay") return "normalized kernel gradient decay across j (5%) or t (factor 10)";
  if (id == "density") return "TL-norm error of the band-truncated, mollified approximation";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lplab: level-set and fractional-norm verification runner"};
  std::string config_path, output_dir;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool list_experiments = false, list_functions = false;
  app.add_option("--config", config_path, "experiment config (JSON)");
  app.add_option("--output", output_dir, "output directory, overrides the config");
  app.add_option("--seed", seed, "run seed, overrides the config");
  app.add_option("--jobs", jobs, "experiments run concurrently")->check(CLI::PositiveNumber);
  app.add_flag("--list-experiments", list_experiments, "list formula ids and exit");
  app.add_flag("--list-functions", list_functions, "list catalog functions and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (list_experiments || list_functions) {
    if (list_experiments)
      for (const auto& id : lplab::cli::formula_ids()) std::cout << id << "\t" << describe(id) << "\n";
    if (list_functions) {
      for (const auto& name : lplab::catalog_names()) {
        const auto u = lplab::catalog_lookup(name, 1);
        std::cout << name << "\t" << lplab::to_string(u.smoothness) << (u.in_lp ? "" : "\tnot in L^p") << "\n";
      }
    }
    return 0;
  }
  if (config_path.empty()) {
    std::cerr << "config error: --config is required\n";
    return 1;
  }
  try {
    lplab::cli::RunConfig cfg = lplab::cli::load_config(config_path);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (seed) cfg.rng_seed = *seed;
    return lplab::cli::run(cfg, jobs, std::cerr);
  } catch (const lplab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
}
