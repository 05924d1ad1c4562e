#include <doctest.h>

#include <cmath>
#include <string>

#include "lplab/asymptotics.hpp"
#include "lplab/errors.hpp"
#include "oracles.hpp"

using namespace lplab;

namespace {

EstimatorConfig rays() {
  EstimatorConfig c;
  c.method = EstimatorMethod::radial_rays;
  return c;
}

WeakNormProfile synthetic(double p, const std::vector<double>& lam, double (*f)(double)) {
  WeakNormProfile prof;
  prof.p = p;
  for (double l : lam) {
    prof.entries.push_back({l, f(l), 0.0});
    prof.sup_value = std::max(prof.sup_value, f(l));
  }
  return prof;
}

}  // namespace

TEST_CASE("linear fit recovers exact lines") {
  const double x[] = {0.0, 1.0, 2.0, 3.0};
  const double y[] = {1.5, 3.5, 5.5, 7.5};
  LinearFit f = fit_intercept(x, y);
  CHECK(f.intercept == doctest::Approx(1.5));
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.residual_rms == doctest::Approx(0.0));
}

TEST_CASE("extrapolation of synthetic profiles") {
  auto lam = geometric_grid(0.01, 2.0, 6);
  auto prof = synthetic(1.0, lam, [](double l) { return 4.0 - 2.0 * l; });
  LimitEstimate e = extrapolate_limit(prof, LimitDirection::to_zero);
  CHECK(e.value == doctest::Approx(4.0).epsilon(1e-12));
  REQUIRE(prof.limit_estimate);
  CHECK(prof.limit_estimate->direction == LimitDirection::to_zero);

  auto big = geometric_grid(8.0, 2.0, 6);
  auto inf = synthetic(2.0, big, [](double l) { return 6.0 + 3.0 / l; });
  CHECK(extrapolate_limit(inf, LimitDirection::to_infinity).value == doctest::Approx(6.0).epsilon(1e-12));

  // far from the model near the limit: refuse rather than guess
  auto wild = synthetic(1.0, lam, [](double l) { return 1.0 / std::sqrt(l); });
  CHECK_THROWS_AS(extrapolate_limit(wild, LimitDirection::to_zero), NotAsymptoticError);
}

TEST_CASE("fit residuals shrink as the grid moves toward the limit") {
  const TestFunction g = gaussian(1);
  double prev = INFINITY;
  for (double start : {0.4, 0.1, 0.025}) {
    auto prof = measure_profile(g, {0.0, 2.0}, geometric_grid(start, 2.0, 6), rays());
    std::vector<double> basis, vals;
    for (const auto& e : prof.entries) {
      basis.push_back(e.lambda * e.lambda);
      vals.push_back(e.scaled_value);
    }
    const double r = fit_intercept(basis, vals).residual_rms;
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("L^p formula on the indicator") {
  Verification v = verify_lp_formula(cube_indicator(1), 1.0, rays());
  CHECK(v.report.passed);
  CHECK(v.report.measured == doctest::Approx(4.0).epsilon(0.01));
  CHECK(v.report.reference == doctest::Approx(4.0));
  CHECK(v.abscissa_name == "lambda");
  // the grid sup can only reach the limit up to the model's remaining gap
  CHECK(v.report.diagnostic("sup_value") >=
        v.report.measured - v.report.diagnostic("limit_error") - v.report.diagnostic("model_gap") - 1e-9);
}

TEST_CASE("L^p formula, Gaussians: sup dominates the limit") {
  for (int N : {1, 2})
    for (double p : {1.0, 2.0}) {
      Verification v = verify_lp_formula(gaussian(N), p, rays());
      INFO("N=" << N << " p=" << p);
      CHECK(v.report.passed);
      // the grid sup can only reach the limit up to the model's remaining gap
  CHECK(v.report.diagnostic("sup_value") >=
        v.report.measured - v.report.diagnostic("limit_error") - v.report.diagnostic("model_gap") - 1e-9);
    }
}

TEST_CASE("L^p formula refuses the constant function") {
  try {
    verify_lp_formula(constant_one(1), 1.0, rays());
    FAIL("expected a refusal");
  } catch (const NotInLpError& e) {
    CHECK(std::string(e.what()).find("not in L^p") != std::string::npos);
  }
}

TEST_CASE("zero function gives zero against zero") {
  CHECK(verify_lp_formula(zero_function(1), 1.0, rays()).report.passed);
  Verification m = verify_msh(zero_function(1), 1.0);
  CHECK(m.report.measured == 0.0);
  CHECK(m.report.passed);
}

TEST_CASE("gradient formula on the bump") {
  Verification v = verify_gradient_formula(bump(1), 2.0, rays());
  CHECK(v.report.passed);
  CHECK(v.report.rel_error <= 0.05);
  CHECK_THROWS_AS(verify_gradient_formula(cube_indicator(1), 2.0, rays()), DomainError);
}

TEST_CASE("BBM on the ramp") {
  Verification v = verify_bbm(ramp(1), 2.0, Box{{0.0}, {1.0}});
  CHECK(v.report.passed);
  CHECK(v.report.reference == doctest::Approx(1.0));
  for (const auto& row : v.series)
    CHECK(row.value == doctest::Approx(1.0 / (3.0 - 2.0 * row.abscissa)).epsilon(0.01));
  const double low[] = {0.5, 0.7, 0.8};
  CHECK_THROWS_AS(verify_bbm(ramp(1), 2.0, Box{{0.0}, {1.0}}, low), DomainError);
}

TEST_CASE("BBM for a constant on a box is zero against zero") {
  Verification v = verify_bbm(constant_one(1), 2.0, Box{{0.0}, {1.0}});
  CHECK(v.report.measured == doctest::Approx(0.0));
  CHECK(v.report.reference == doctest::Approx(0.0));
  CHECK(v.report.passed);
}

TEST_CASE("Maz'ya-Shaposhnikova on the indicator") {
  Verification v = verify_msh(cube_indicator(1), 1.0);
  CHECK(v.report.passed);
  CHECK(v.report.measured == doctest::Approx(4.0).epsilon(0.02));
  for (const auto& row : v.series) CHECK(row.value == doctest::Approx(4.0 / (1.0 - row.abscissa)).epsilon(0.01));
  const double high[] = {0.1, 0.2, 0.3};
  CHECK_THROWS_AS(verify_msh(cube_indicator(1), 1.0, high), DomainError);
}

TEST_CASE("bounds verification") {
  Verification v = verify_bounds(gaussian(2), 1.0, rays());
  CHECK(v.report.passed);
  CHECK(v.report.diagnostic("lower_bound") == doctest::Approx(2.0 * oracle::pi));
}
