#pragma once

namespace lplab {

// pi^{N/2} / Gamma(N/2 + 1)
double unit_ball_volume(int N);

// Volume of B(x, rho) ∩ B(0, R) for |x| = d, N in {1, 2, 3}.
double ball_intersection_volume(int N, double d, double rho, double R);

// Volume of B(x, rho) \ B(0, R): the part of a ball around x lying outside
// the support ball.
double ball_exterior_volume(int N, double d, double rho, double R);

}  // namespace lplab
