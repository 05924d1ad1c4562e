#include <doctest.h>

#include <cmath>

#include "lplab/errors.hpp"
#include "lplab/measure.hpp"
#include "lplab/norms.hpp"
#include "oracles.hpp"

using namespace lplab;

namespace {

EstimatorConfig rays() {
  EstimatorConfig c;
  c.method = EstimatorMethod::radial_rays;
  return c;
}

}  // namespace

TEST_CASE("unit ball volumes") {
  CHECK(std::abs(unit_ball_volume(1) - 2.0) <= 1e-12);
  CHECK(std::abs(unit_ball_volume(2) - oracle::pi) <= 1e-12);
  CHECK(std::abs(unit_ball_volume(3) - 4.0 * oracle::pi / 3.0) <= 1e-12);
}

TEST_CASE("k(p,N) closed form equals the sphere integral") {
  for (int N = 1; N <= 3; ++N)
    for (double p : {1.0, 2.0, 3.5}) {
      std::vector<double> e(N, 0.0);
      e[0] = 1.0;
      CHECK(std::abs(bbm_constant(p, N) - sphere_integral(p, N, e)) <= 1e-6);
    }
  CHECK(bbm_constant(2.0, 1) == doctest::Approx(2.0));
  CHECK(bbm_constant(2.0, 2) == doctest::Approx(oracle::pi));
  CHECK(bbm_constant(1.0, 2) == doctest::Approx(4.0));
}

TEST_CASE("weak quasi-norm of simple profiles") {
  const double fine[] = {1e-5, 1e-4, 1e-3};
  auto ind = measure_profile(cube_indicator(1), {0.0, 1.0}, fine, rays());
  CHECK(weak_lp_quasinorm(ind) == doctest::Approx(4.0).epsilon(1e-4));
  auto z = measure_profile(zero_function(1), {0.0, 1.0}, fine, rays());
  CHECK(weak_lp_quasinorm(z) == 0.0);
  // Gaussian N = 1, p = 2: bracket (2 kappa ||u||_2^2)^{1/2} .. (2^3 kappa ||u||_2^2)^{1/2}
  auto g = measure_profile(gaussian(1), {0.0, 2.0}, geometric_grid(1e-3, 2.0, 14), rays());
  const double w = weak_lp_quasinorm(g);
  CHECK(w >= std::sqrt(4.0 / std::sqrt(2.0)) * (1 - 1e-3));
  CHECK(w <= std::sqrt(16.0 / std::sqrt(2.0)));
  CHECK(std::sqrt(4.0 / std::sqrt(2.0)) == doctest::Approx(1.682).epsilon(1e-3));
}

TEST_CASE("indicator Gagliardo seminorm closed form") {
  const double ss[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  const auto est = gagliardo_seminorms(cube_indicator(1), ss, 1.0);
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double s = ss[i];
    CHECK(est[i].value == doctest::Approx(4.0 / (s * (1.0 - s))).epsilon(1e-3));
  }
}

TEST_CASE("ramp on the unit interval, p = 2") {
  const double ss[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  const auto dom = GagliardoDomain::on(Box{{0.0}, {1.0}});
  const auto est = gagliardo_seminorms(ramp(1), ss, 2.0, dom);
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double s = ss[i];
    CHECK(est[i].pow_value == doctest::Approx(1.0 / ((1.0 - s) * (3.0 - 2.0 * s))).epsilon(1e-4));
    CHECK(est[i].error <= 1e-2 * est[i].pow_value);
  }
}

TEST_CASE("Gaussian seminorm against the Fourier-side oracle") {
  for (double s : {0.1, 0.5, 0.9}) {
    const auto est = gagliardo_seminorm(gaussian(1), s, 2.0);
    CHECK(est.pow_value == doctest::Approx(oracle::gaussian_gagliardo_sq(s)).epsilon(1e-4));
  }
}

TEST_CASE("zero seminorm and divergent singularity") {
  CHECK(gagliardo_seminorm(zero_function(1), 0.5, 2.0).value == 0.0);
  // |1_[0,1]|_{W^{s,2}} is infinite once 2s >= 1
  CHECK_THROWS_AS(gagliardo_seminorm(cube_indicator(1), 0.6, 2.0), SingularityError);
  CHECK_THROWS_AS(gagliardo_seminorm(gaussian(1), 1.2, 2.0), DomainError);
}

TEST_CASE("profile homogeneity under scaling") {
  const auto lam = geometric_grid(0.01, 2.0, 8);
  for (double p : {1.0, 2.0}) {
    auto a = measure_profile(gaussian(2), {0.0, p}, lam, rays());
    std::vector<double> lam2(lam);
    for (double& l : lam2) l *= 2.0;
    auto b = measure_profile(scaled(gaussian(2), 2.0), {0.0, p}, lam2, rays());
    CHECK(b.sup_value == doctest::Approx(std::pow(2.0, p) * a.sup_value).epsilon(0.02));
  }
}

TEST_CASE("weak-norm bracket checks") {
  const auto fine = geometric_grid(1e-4, 2.0, 8);
  auto ind = measure_profile(cube_indicator(1), {0.0, 1.0}, fine, rays());
  auto r = check_theorem11_bounds(cube_indicator(1), 1.0, ind);
  CHECK(r.passed);
  CHECK(r.diagnostic("lower_bound") == doctest::Approx(4.0));
  CHECK(r.diagnostic("upper_bound") == doctest::Approx(8.0));

  auto z = measure_profile(zero_function(1), {0.0, 1.0}, fine, rays());
  CHECK(check_theorem11_bounds(zero_function(1), 1.0, z).passed);

  auto g = measure_profile(gaussian(2), {0.0, 1.0}, fine, rays());
  auto rg = check_theorem11_bounds(gaussian(2), 1.0, g);
  CHECK(rg.passed);
  CHECK(rg.diagnostic("lower_bound") == doctest::Approx(2.0 * oracle::pi));
  CHECK(rg.diagnostic("upper_bound") == doctest::Approx(4.0 * oracle::pi));
}

TEST_CASE("report relative error conventions") {
  auto r = make_report("x", 1.01, 1.0, 0.02);
  CHECK(r.rel_error == doctest::Approx(0.01));
  CHECK(r.passed);
  auto z = make_report("x", 1e-3, 0.0, 1e-2);
  CHECK(z.rel_error == doctest::Approx(1e-3));
  CHECK(z.passed);
  CHECK(std::isnan(z.diagnostic("absent")));
}
