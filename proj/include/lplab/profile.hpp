#pragma once

#include <optional>
#include <vector>

namespace lplab {

enum class LimitDirection { to_zero, to_infinity };

struct ProfileEntry {
  double lambda = 0.0;
  double scaled_value = 0.0;  // lambda^p * measure
  double error = 0.0;
};

struct LimitEstimate {
  double value = 0.0;
  double error = 0.0;
  LimitDirection direction = LimitDirection::to_zero;
  double slope = 0.0;      // fitted b, diagnostic only
  double model_gap = 0.0;  // |b| * basis at the grid point nearest the limit
};

// lambda -> lambda^p * L^{2N}(E_lambda) over a finite grid.
struct WeakNormProfile {
  double p = 1.0;
  double s = 0.0;
  std::vector<ProfileEntry> entries;
  double sup_value = 0.0;
  std::optional<LimitEstimate> limit_estimate;

  // Error attached to the entry attaining sup_value.
  double sup_error() const;
};

}  // namespace lplab
