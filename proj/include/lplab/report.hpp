#pragma once

#include <string>
#include <utility>
#include <vector>

namespace lplab {

// One formula check. rel_error = |measured - reference| / |reference|, or the
// absolute difference when reference is 0. passed <=> rel_error <= tolerance.
struct VerificationReport {
  std::string formula_id;
  double measured = 0.0;
  double reference = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<std::pair<std::string, double>> diagnostics;

  void add(std::string name, double value) { diagnostics.emplace_back(std::move(name), value); }
  // NaN when absent.
  double diagnostic(const std::string& name) const;
};

double relative_error(double measured, double reference);

VerificationReport make_report(std::string formula_id, double measured, double reference,
                               double tolerance);

}  // namespace lplab
