#include "lplab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lplab/errors.hpp"

namespace lplab {

double WeakNormProfile::sup_error() const {
  double best = -1.0, err = 0.0;
  for (const auto& e : entries)
    if (e.scaled_value > best) {
      best = e.scaled_value;
      err = e.error;
    }
  return err;
}

double VerificationReport::diagnostic(const std::string& name) const {
  for (const auto& [k, v] : diagnostics)
    if (k == name) return v;
  return std::numeric_limits<double>::quiet_NaN();
}

double relative_error(double measured, double reference) {
  double d = std::abs(measured - reference);
  return reference == 0.0 ? d : d / std::abs(reference);
}

VerificationReport make_report(std::string formula_id, double measured, double reference,
                               double tolerance) {
  VerificationReport r;
  r.formula_id = std::move(formula_id);
  r.measured = measured;
  r.reference = reference;
  r.rel_error = relative_error(measured, reference);
  r.tolerance = tolerance;
  r.passed = r.rel_error <= tolerance;
  return r;
}

double weak_lp_quasinorm(const WeakNormProfile& profile) {
  if (profile.entries.empty()) throw DomainError("empty profile");
  return std::pow(profile.sup_value, 1.0 / profile.p);
}

double bbm_constant(double p, int N) {
  if (N < 1) throw DomainError("dimension must be positive");
  return 2.0 * std::tgamma(0.5 * (p + 1.0)) * std::pow(std::numbers::pi, 0.5 * (N - 1)) /
         std::tgamma(0.5 * (N + p));
}

double lp_norm_pow(const TestFunction& u, double p) {
  if (!u.in_lp) throw NotInLpError(u.name + " is not in L^p (e.g. u identically 1)");
  if (u.analytic_lp_norm) return std::pow(u.analytic_lp_norm(p), p);
  return lp_norm_quadrature(u, p).value;
}

VerificationReport check_theorem11_bounds(const TestFunction& u, double p, const WeakNormProfile& profile,
                                          double rel_tol) {
  if (profile.s != 0.0) throw DomainError("bound check needs a profile with s = 0");
  const double kappa = unit_ball_volume(u.dimension);
  const double norm = lp_norm_pow(u, p);
  const double lower = 2.0 * kappa * norm;
  const double upper = std::pow(2.0, p + 1.0) * kappa * norm;
  const double sup = profile.sup_value;
  const double ref = std::clamp(sup, lower, upper);
  const double err = profile.sup_error();
  const double tol = rel_tol + (ref != 0.0 ? err / std::abs(ref) : err);
  VerificationReport r = make_report("bounds", sup, ref, tol);
  r.add("lower_bound", lower);
  r.add("upper_bound", upper);
  r.add("lp_norm_pow", norm);
  r.add("sup_error", err);
  r.add("p", p);
  return r;
}

}  // namespace lplab
