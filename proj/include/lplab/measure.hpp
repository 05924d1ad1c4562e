#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "lplab/fields.hpp"
#include "lplab/profile.hpp"

namespace lplab {

struct QuotientParams {
  double s = 0.0;
  double p = 1.0;
  double exponent(int N) const { return N / p + s; }
};

enum class EstimatorMethod { tensor_quadrature, stratified_mc, radial_rays };

std::string_view to_string(EstimatorMethod m);
EstimatorMethod parse_estimator_method(std::string_view name);

struct EstimatorConfig {
  EstimatorMethod method = EstimatorMethod::tensor_quadrature;
  // Half-width of the integration region for functions with neither compact
  // support nor a decay envelope (only the permitted constant); 0 = default 4.
  // For decaying functions a positive value overrides the truncation radius.
  double box_halfwidth = 0.0;
  // tensor: nodes per axis; stratified_mc: total samples; radial_rays: x-nodes per axis.
  int samples_or_nodes = 0;  // 0 = method default
  std::uint64_t rng_seed = 0x5eedULL;
  int strata_per_axis = 8;
  int directions = 32;   // radial_rays, N >= 2
  int ray_samples = 256; // radial_rays: uniform samples per ray
  int threads = 1;       // 0 = hardware concurrency; never changes results
  bool half_space = true;
  bool permit_non_lp = false;
};

struct MeasureEstimate {
  double lambda = 0.0;
  double measure = 0.0;
  double std_error = 0.0;
  double tail_bound = 0.0;
};

double difference_quotient(const TestFunction& u, const QuotientParams& q, Point x, Point y);

MeasureEstimate level_set_measure(const TestFunction& u, const QuotientParams& q, double lambda,
                                  const EstimatorConfig& cfg = {});

// All lambdas share one pass over the sample set. Lambdas must be positive
// and strictly increasing.
std::vector<MeasureEstimate> level_set_measures(const TestFunction& u, const QuotientParams& q,
                                                std::span<const double> lambdas,
                                                const EstimatorConfig& cfg = {});

WeakNormProfile measure_profile(const TestFunction& u, const QuotientParams& q,
                                std::span<const double> lambdas, const EstimatorConfig& cfg = {});

// int_{S^{N-1}} |e . omega|^p d omega
double sphere_integral(double p, int N, std::span<const double> e);

std::vector<double> geometric_grid(double first, double ratio, int count);

}  // namespace lplab
