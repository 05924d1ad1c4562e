#include "lplab/ball_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lplab/errors.hpp"

namespace lplab {

double unit_ball_volume(int N) {
  switch (N) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default:
      if (N < 1) throw DomainError("dimension must be positive");
      return std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N + 1.0);
  }
}

double ball_intersection_volume(int N, double d, double rho, double R) {
  if (rho <= 0.0 || R <= 0.0) return 0.0;
  d = std::abs(d);
  if (N == 1) return std::max(0.0, std::min(d + rho, R) - std::max(d - rho, -R));
  if (d >= rho + R) return 0.0;
  if (d + rho <= R) return unit_ball_volume(N) * std::pow(rho, N);
  if (d + R <= rho) return unit_ball_volume(N) * std::pow(R, N);
  if (N == 2) {
    double c1 = std::clamp((d * d + rho * rho - R * R) / (2.0 * d * rho), -1.0, 1.0);
    double c2 = std::clamp((d * d + R * R - rho * rho) / (2.0 * d * R), -1.0, 1.0);
    double k = (-d + rho + R) * (d + rho - R) * (d - rho + R) * (d + rho + R);
    return rho * rho * std::acos(c1) + R * R * std::acos(c2) - 0.5 * std::sqrt(std::max(0.0, k));
  }
  if (N == 3) {
    double t = rho + R - d;
    return std::numbers::pi * t * t * (d * d + 2.0 * d * (rho + R) - 3.0 * (rho - R) * (rho - R)) /
           (12.0 * d);
  }
  throw UnsupportedDimension("ball intersection implemented for N <= 3");
}

double ball_exterior_volume(int N, double d, double rho, double R) {
  if (rho <= 0.0) return 0.0;
  if (std::abs(d) + rho <= R) return 0.0;
  return std::max(0.0, unit_ball_volume(N) * std::pow(rho, N) - ball_intersection_volume(N, d, rho, R));
}

}  // namespace lplab
