#include <doctest.h>

#include <cmath>
#include <random>

#include "lplab/ball_geometry.hpp"
#include "lplab/errors.hpp"
#include "lplab/measure.hpp"
#include "oracles.hpp"

using namespace lplab;

namespace {

double indicator_exact(double lambda) { return lambda <= 1.0 ? 4.0 / lambda - 2.0 : 2.0 / (lambda * lambda); }

EstimatorConfig with(EstimatorMethod m) {
  EstimatorConfig c;
  c.method = m;
  return c;
}

}  // namespace

TEST_CASE("difference quotient") {
  const TestFunction u = cube_indicator(1);
  const QuotientParams q{0.0, 1.0};
  const double a[] = {0.5}, b[] = {1.5}, c[] = {3.0};
  CHECK(difference_quotient(u, q, a, b) == doctest::Approx(1.0));
  CHECK(difference_quotient(u, q, a, c) == doctest::Approx(0.4));
  CHECK(difference_quotient(zero_function(1), q, a, c) == 0.0);
  CHECK_THROWS_AS(difference_quotient(u, q, a, a), DomainError);
}

TEST_CASE("brute-force planar count confirms the indicator oracle") {
  CHECK(oracle::indicator_level_set_count(0.5, 2000) == doctest::Approx(indicator_exact(0.5)).epsilon(2e-3));
  CHECK(oracle::indicator_level_set_count(2.0, 2000) == doctest::Approx(indicator_exact(2.0)).epsilon(2e-3));
}

TEST_CASE("indicator level sets for every estimator") {
  const TestFunction u = cube_indicator(1);
  const QuotientParams q{0.0, 1.0};
  const double lambdas[] = {0.1, 0.25, 0.5, 2.0};
  for (auto m : {EstimatorMethod::tensor_quadrature, EstimatorMethod::radial_rays, EstimatorMethod::stratified_mc}) {
    INFO(to_string(m));
    const auto est = level_set_measures(u, q, lambdas, with(m));
    for (std::size_t i = 0; i < est.size(); ++i) {
      const double ref = indicator_exact(lambdas[i]);
      CHECK(est[i].tail_bound <= 1e-8);  // only the excluded diagonal strip
      if (m == EstimatorMethod::stratified_mc)
        CHECK(std::abs(est[i].measure - ref) <= 4.0 * est[i].std_error + 1e-3 * ref);
      else
        CHECK(est[i].measure == doctest::Approx(ref).epsilon(1e-3));
    }
  }
}

TEST_CASE("profile entries for the indicator and the zero function") {
  const double lambdas[] = {0.1, 0.25, 0.5};
  auto prof = measure_profile(cube_indicator(1), {0.0, 1.0}, lambdas, with(EstimatorMethod::radial_rays));
  CHECK(prof.entries[0].scaled_value == doctest::Approx(3.8).epsilon(1e-6));
  CHECK(prof.entries[1].scaled_value == doctest::Approx(3.5).epsilon(1e-6));
  CHECK(prof.entries[2].scaled_value == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(prof.sup_value == doctest::Approx(3.8).epsilon(1e-6));
  auto z = measure_profile(zero_function(2), {0.0, 2.0}, lambdas, with(EstimatorMethod::radial_rays));
  for (const auto& e : z.entries) CHECK(e.scaled_value == 0.0);
}

TEST_CASE("constant function: refused unless permitted, then measure zero") {
  const double lambdas[] = {0.1, 1.0};
  CHECK_THROWS_AS(measure_profile(constant_one(1), {0.0, 1.0}, lambdas), NotInLpError);
  EstimatorConfig c = with(EstimatorMethod::stratified_mc);
  c.permit_non_lp = true;
  auto prof = measure_profile(constant_one(2), {0.0, 1.0}, lambdas, c);
  for (const auto& e : prof.entries) CHECK(e.scaled_value == 0.0);
}

TEST_CASE("measure is nonincreasing in lambda") {
  const double lambdas[] = {0.05, 0.1, 0.2, 0.4, 0.8, 1.6, 3.2};
  for (auto m : {EstimatorMethod::tensor_quadrature, EstimatorMethod::stratified_mc, EstimatorMethod::radial_rays}) {
    const auto est = level_set_measures(gaussian(2), {0.0, 1.0}, lambdas, with(m));
    for (std::size_t i = 1; i < est.size(); ++i)
      CHECK(est[i].measure <= est[i - 1].measure + 2 * (est[i].std_error + est[i - 1].std_error) + 1e-12);
  }
}

TEST_CASE("half-space doubling agrees with the full product region") {
  const double lambdas[] = {0.2, 0.8};
  for (auto m : {EstimatorMethod::tensor_quadrature, EstimatorMethod::stratified_mc}) {
    EstimatorConfig half = with(m), full = with(m);
    full.half_space = false;
    const auto a = level_set_measures(gaussian(1), {0.0, 2.0}, lambdas, half);
    const auto b = level_set_measures(gaussian(1), {0.0, 2.0}, lambdas, full);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double tol = 4 * (a[i].std_error + b[i].std_error) + 2e-3 * a[i].measure;
      CHECK(std::abs(a[i].measure - b[i].measure) <= tol);
    }
  }
}

TEST_CASE("results do not depend on the thread count") {
  const double lambdas[] = {0.1, 0.3, 1.0};
  for (auto m : {EstimatorMethod::tensor_quadrature, EstimatorMethod::stratified_mc, EstimatorMethod::radial_rays}) {
    EstimatorConfig one = with(m), many = with(m);
    one.threads = 1;
    many.threads = 4;
    const auto a = level_set_measures(gaussian(2), {0.3, 2.0}, lambdas, one);
    const auto b = level_set_measures(gaussian(2), {0.3, 2.0}, lambdas, many);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].measure == b[i].measure);
      CHECK(a[i].std_error == b[i].std_error);
    }
  }
}

TEST_CASE("dilation covariance on the indicator") {
  // m_{u(./r)}(lambda) = r^{2N} m_u(lambda r^{N/p}); N = p = 1 here.
  const TestFunction u = cube_indicator(1);
  for (double r : {2.0, 4.0}) {
    const TestFunction ur = dilated(u, r);
    for (double lambda : {0.05, 0.1}) {
      const double lhs = level_set_measure(ur, {0.0, 1.0}, lambda, with(EstimatorMethod::tensor_quadrature)).measure;
      CHECK(lhs == doctest::Approx(r * r * indicator_exact(lambda * r)).epsilon(0.01));
    }
  }
}

TEST_CASE("finite-lambda sandwich of the half-space measure") {
  // kappa ||u||^p / lambda^p - kappa^2 R^{2N} <= half <= kappa ||u||^p / lambda^p + kappa^2 R^{2N}
  const TestFunction u = cube_indicator(1);
  const double kappa = 2.0, R = *u.support_radius;
  for (double lambda : {0.5, 0.25}) {
    const double half = 0.5 * level_set_measure(u, {0.0, 1.0}, lambda, with(EstimatorMethod::radial_rays)).measure;
    CHECK(half >= kappa / lambda - kappa * kappa * R * R);
    CHECK(half <= kappa / lambda + kappa * kappa * R * R);
  }
}

TEST_CASE("upper envelope of the profile") {
  for (int N : {1, 2})
    for (double p : {1.0, 2.0}) {
      const TestFunction g = gaussian(N);
      const double bound = std::pow(2.0, p + 1) * unit_ball_volume(N) * std::pow(g.analytic_lp_norm(p), p);
      auto prof = measure_profile(g, {0.0, p}, geometric_grid(0.02, 2.0, 10), with(EstimatorMethod::radial_rays));
      for (const auto& e : prof.entries) CHECK(e.scaled_value <= bound + e.error);
    }
}

TEST_CASE("Gaussian small-lambda values approach 2 kappa ||u||^p") {
  for (int N : {1, 2}) {
    const TestFunction g = gaussian(N);
    const double lambdas[] = {1e-4};
    for (auto m : {EstimatorMethod::tensor_quadrature, EstimatorMethod::radial_rays}) {
      auto prof = measure_profile(g, {0.0, 1.0}, lambdas, with(m));
      CHECK(prof.entries[0].scaled_value == doctest::Approx(2.0 * unit_ball_volume(N)).epsilon(5e-3));
    }
  }
}

TEST_CASE("translation leaves the measure unchanged") {
  const double shift[] = {0.37, -0.2};
  const double lambdas[] = {0.1, 0.5};
  const auto a = level_set_measures(gaussian(2), {0.0, 1.0}, lambdas, with(EstimatorMethod::radial_rays));
  const auto b = level_set_measures(translated(gaussian(2), shift), {0.0, 1.0}, lambdas,
                                    with(EstimatorMethod::radial_rays));
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(b[i].measure == doctest::Approx(a[i].measure).epsilon(5e-3));
}

TEST_CASE("sphere integrals") {
  const double e1[] = {1.0}, e2[] = {1.0, 0.0}, e2b[] = {0.6, 0.8}, e3[] = {0.0, 0.0, 1.0};
  const double e3b[] = {1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)};
  for (double p : {1.0, 2.0, 3.5}) CHECK(sphere_integral(p, 1, e1) == doctest::Approx(2.0));
  CHECK(sphere_integral(2.0, 2, e2) == doctest::Approx(oracle::pi).epsilon(1e-12));
  CHECK(sphere_integral(1.0, 2, e2) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(sphere_integral(2.0, 3, e3) == doctest::Approx(4.0 * oracle::pi / 3.0).epsilon(1e-12));
  for (double p : {1.0, 2.0, 3.5}) {
    CHECK(std::abs(sphere_integral(p, 2, e2) - sphere_integral(p, 2, e2b)) <= 1e-10);
    CHECK(std::abs(sphere_integral(p, 3, e3) - sphere_integral(p, 3, e3b)) <= 1e-10);
  }
}

TEST_CASE("ball intersection volumes against sampling") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  for (int N : {2, 3})
    for (auto [d, rho, R] : {std::tuple{0.5, 0.8, 1.0}, std::tuple{1.5, 1.0, 1.0}, std::tuple{0.2, 2.0, 1.0}}) {
      const int n = 400000;
      int hits = 0;
      for (int i = 0; i < n; ++i) {
        double x[3] = {0, 0, 0}, r2 = 0.0, c2 = 0.0;
        for (int k = 0; k < N; ++k) x[k] = rho * ud(rng);
        for (int k = 0; k < N; ++k) r2 += x[k] * x[k];
        if (r2 > rho * rho) continue;
        x[0] += d;
        for (int k = 0; k < N; ++k) c2 += x[k] * x[k];
        if (c2 <= R * R) ++hits;
      }
      const double est = hits * std::pow(2 * rho, N) / n;
      CHECK(ball_intersection_volume(N, d, rho, R) == doctest::Approx(est).epsilon(0.01));
    }
  CHECK(ball_intersection_volume(1, 0.5, 1.0, 1.0) == doctest::Approx(1.5));
}

TEST_CASE("geometric grids and method names") {
  auto g = geometric_grid(0.5, 2.0, 4);
  CHECK(g == std::vector<double>{0.5, 1.0, 2.0, 4.0});
  CHECK(parse_estimator_method("stratified_mc") == EstimatorMethod::stratified_mc);
  CHECK_THROWS(parse_estimator_method("bogus"));
}

TEST_CASE("tensor quadrature is limited to 2N <= 4") {
  const double lambdas[] = {1.0};
  CHECK_THROWS_AS(level_set_measures(gaussian(3), {0.0, 1.0}, lambdas, with(EstimatorMethod::tensor_quadrature)),
                  DomainError);
}
