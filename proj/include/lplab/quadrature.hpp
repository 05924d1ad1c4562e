#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lplab {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Cached n-point Gauss-Legendre rule; the reference stays valid for the
// lifetime of the program.
const GaussRule& gauss_legendre(int n);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int order = 10;
  int max_depth = 50;
  int max_panels = 4000;
};

using Integrand1 = std::function<double(double)>;
using IntegrandN = std::function<double(std::span<const double>)>;

// Adaptive Gauss-Legendre on [a, b]; the interval is first split at every
// breakpoint lying strictly inside it.
QuadResult integrate(const Integrand1& f, double a, double b,
                     std::span<const double> breaks = {},
                     const QuadOptions& opt = {});

// Iterated adaptive rule over the box prod [lo_k, hi_k]; breaks[k] lists
// discontinuity coordinates along axis k (may be empty or shorter than N).
QuadResult integrate_box(const IntegrandN& f, std::span<const double> lo,
                         std::span<const double> hi,
                         const std::vector<std::vector<double>>& breaks,
                         const QuadOptions& opt = {});

// Composite Gauss-Legendre nodes on [a, b] with `panels` equal panels per
// segment between consecutive breakpoints (at least one per segment).
struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
};
NodeSet composite_gauss(double a, double b, std::span<const double> breaks,
                        int total_nodes, int order = 4);

}  // namespace lplab
