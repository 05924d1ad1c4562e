#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lplab/ball_geometry.hpp"
#include "lplab/fields.hpp"
#include "lplab/profile.hpp"
#include "lplab/report.hpp"

namespace lplab {

// (sup_value)^{1/p}: a lower approximation of the true supremum over lambda.
double weak_lp_quasinorm(const WeakNormProfile& profile);

// 2 Gamma((p+1)/2) pi^{(N-1)/2} / Gamma((N+p)/2) = int_{S^{N-1}} |e.omega|^p
double bbm_constant(double p, int N);

struct GagliardoDomain {
  bool all_space = true;
  Box box;
  static GagliardoDomain whole() { return {}; }
  static GagliardoDomain on(Box b) { return {false, std::move(b)}; }
};

struct GagliardoOptions {
  // graded |h| mesh starts here; 0 picks 1e-6 for N = 1 or jumps, 1e-3 otherwise
  double h_min = 0.0;
  int gauss_points = 16;  // per geometric panel
  int directions = 16;    // N >= 2, non-radial integrands
  double rel_tol = 1e-10;  // inner x-integrals
};

struct SeminormEstimate {
  double s = 0.0;
  double value = 0.0;      // |u|_{W^{s,p}}
  double pow_value = 0.0;  // value^p
  double error = 0.0;      // on pow_value
  double small_h_part = 0.0;  // contribution modelled below h_min
};

SeminormEstimate gagliardo_seminorm(const TestFunction& u, double s, double p,
                                    const GagliardoDomain& domain = {},
                                    const GagliardoOptions& opt = {});

// Shares the translation-difference table D(h) between all s values.
std::vector<SeminormEstimate> gagliardo_seminorms(const TestFunction& u, std::span<const double> s_values,
                                                  double p, const GagliardoDomain& domain = {},
                                                  const GagliardoOptions& opt = {});

// ||u||_p^p using the analytic oracle when present, quadrature otherwise.
double lp_norm_pow(const TestFunction& u, double p);

// Checks 2 kappa_N ||u||_p^p - tol <= sup_value <= 2^{p+1} kappa_N ||u||_p^p + tol,
// tol = profile error at the supremum + rel_tol relative.
VerificationReport check_theorem11_bounds(const TestFunction& u, double p, const WeakNormProfile& profile,
                                          double rel_tol = 0.02);

}  // namespace lplab
