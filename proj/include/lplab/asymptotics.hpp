#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lplab/measure.hpp"
#include "lplab/norms.hpp"
#include "lplab/report.hpp"

namespace lplab {

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double intercept_error = 0.0;  // standard error from residuals
  double residual_rms = 0.0;
};

// Least squares for value = a + b * basis.
LinearFit fit_intercept(std::span<const double> basis, std::span<const double> values);

// Fits a + b lambda^p (to_zero) or a + b / lambda (to_infinity) and stores the
// intercept in profile.limit_estimate. Throws NotAsymptoticError when the
// points nearest the limit disagree with the full fit.
LimitEstimate extrapolate_limit(WeakNormProfile& profile, LimitDirection direction);

struct SeriesRow {
  double abscissa = 0.0;
  double value = 0.0;
  double error = 0.0;
};

// A report plus the table it was derived from.
struct Verification {
  VerificationReport report;
  std::string abscissa_name;  // "lambda" or "s"
  std::vector<SeriesRow> series;
};

// Geometric ratio-2 grids with 6 points.
std::vector<double> default_lambda_grid_to_zero(const TestFunction& u, double p);
std::vector<double> default_lambda_grid_to_infinity(const TestFunction& u, double p);
std::vector<double> default_bbm_s_grid();
std::vector<double> default_msh_s_grid();

Verification verify_lp_formula(const TestFunction& u, double p, const EstimatorConfig& cfg,
                               std::span<const double> grid = {}, double tolerance = 0.03);

Verification verify_gradient_formula(const TestFunction& u, double p, const EstimatorConfig& cfg,
                                     std::span<const double> grid = {}, double tolerance = 0.05);

Verification verify_bbm(const TestFunction& u, double p, const Box& omega, std::span<const double> s_grid = {},
                        double tolerance = 0.02, const GagliardoOptions& opt = {});

Verification verify_msh(const TestFunction& u, double p, std::span<const double> s_grid = {},
                        double tolerance = 0.02, const GagliardoOptions& opt = {});

// Runs the profile over the default (or given) grid and checks the
// bracket 2 kappa_N |u|_p^p <= sup <= 2^{p+1} kappa_N |u|_p^p.
Verification verify_bounds(const TestFunction& u, double p, const EstimatorConfig& cfg,
                           std::span<const double> grid = {}, double tolerance = 0.02);

}  // namespace lplab
