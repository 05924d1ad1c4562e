#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lplab/quadrature.hpp"

namespace lplab {

enum class Smoothness { indicator, lipschitz, smooth, schwartz, band_limited };

std::string_view to_string(Smoothness s);

using Point = std::span<const double>;

// |u(x)| <= amplitude * exp(-rate |x|^2) for every x.
struct GaussianEnvelope {
  double amplitude = 1.0;
  double rate = 1.0;
};

struct Box {
  std::vector<double> lo, hi;
  double volume() const;
  double diameter() const;
};

struct TestFunction {
  std::string name;
  int dimension = 1;
  std::function<double(Point)> evaluate;
  std::optional<double> support_radius;
  std::function<double(double)> analytic_lp_norm;           // empty when absent
  std::function<double(double)> analytic_gradient_lp_norm;  // over natural_domain if set
  std::function<void(Point, std::span<double>)> gradient;   // empty when absent
  Smoothness smoothness = Smoothness::smooth;
  bool in_lp = true;
  std::optional<GaussianEnvelope> envelope;
  // breakpoints[k]: coordinates along axis k where u may jump or kink.
  std::vector<std::vector<double>> breakpoints;
  // Open set on which the function is smooth and which gradient norms refer to.
  std::optional<Box> natural_domain;
  double sup_norm = 1.0;
  // u(x) = radial_profile(|x|) when set; lets norms reduce to 1-D integrals.
  std::function<double(double)> radial_profile;

  double operator()(Point x) const { return evaluate(x); }
  double at(std::initializer_list<double> x) const;
};

struct TruncationPair {
  TestFunction inner;
  TestFunction outer;
  double radius = 0.0;
};

enum class NormMethod { analytic, quadrature };

std::vector<TestFunction> catalog_standard(int N);
// Throws DomainError for unknown names, UnsupportedDimension for bad N.
TestFunction catalog_lookup(std::string_view name, int N);
std::vector<std::string> catalog_names();
// Adds or replaces a named entry consulted by catalog_lookup.
void register_function(const std::string& name, std::function<TestFunction(int)> factory);

TestFunction cube_indicator(int N);
TestFunction gaussian(int N);
TestFunction ramp(int N);
TestFunction bump(int N);
TestFunction bandlimited(int N);
TestFunction constant_one(int N);
TestFunction zero_function(int N);

// Spectrum of the band-limited entry: u_hat(xi) = c_N * bandlimited_profile(|xi|).
double bandlimited_profile(double r);
// c_N: normalisation making u(0) = 1.
double bandlimited_scale(int N);
constexpr double kBandlimitedInner = 0.25;
constexpr double kBandlimitedOuter = 1.75;

TestFunction scaled(const TestFunction& u, double c);
// x -> u(x / r)
TestFunction dilated(const TestFunction& u, double r);
// x -> u(x - shift)
TestFunction translated(const TestFunction& u, std::span<const double> shift);

TruncationPair truncate(const TestFunction& u, double R);

// Half-width L of the cube [-L, L]^N outside which the L^p mass of u is below
// tail_mass (support radius when compact).
double integration_halfwidth(const TestFunction& u, double p, double tail_mass = 1e-8);

QuadResult lp_norm_quadrature(const TestFunction& u, double p, const QuadOptions& opt = {});
double lp_norm(const TestFunction& u, double p, NormMethod method = NormMethod::quadrature);
// p-th power of ||grad u||_p over natural_domain when set, else R^N.
QuadResult gradient_lp_norm_pow_quadrature(const TestFunction& u, double p,
                                           const QuadOptions& opt = {});
double gradient_lp_norm(const TestFunction& u, double p);
// Largest |grad u| on a sampling grid; used to place large-lambda grids.
double max_gradient_norm(const TestFunction& u, int samples_per_axis = 0);

// Regularised upper incomplete gamma Q(N/2, z) for N in {1,2,3}.
double upper_gamma_half(int N, double z);
// int_{|x|>R} exp(-rate |x|^2) dx in R^N.
double gaussian_tail_mass(int N, double rate, double R);

}  // namespace lplab
