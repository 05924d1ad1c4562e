#include "lplab/radial.hpp"

#include <cmath>
#include <numbers>

#include "lplab/errors.hpp"
#include "lplab/quadrature.hpp"

namespace lplab {

RadialTable::RadialTable(std::vector<double> f, std::vector<double> df, double h)
    : f_(std::move(f)), df_(std::move(df)), h_(h) {}

namespace {

struct Hermite {
  double h00, h10, h01, h11, d00, d10, d01, d11;
};

Hermite basis(double t, double h) {
  double t2 = t * t, t3 = t2 * t;
  Hermite b{};
  b.h00 = 2 * t3 - 3 * t2 + 1;
  b.h10 = (t3 - 2 * t2 + t) * h;
  b.h01 = -2 * t3 + 3 * t2;
  b.h11 = (t3 - t2) * h;
  b.d00 = (6 * t2 - 6 * t) / h;
  b.d10 = 3 * t2 - 4 * t + 1;
  b.d01 = (-6 * t2 + 6 * t) / h;
  b.d11 = 3 * t2 - 2 * t;
  return b;
}

}  // namespace

double RadialTable::value(double r) const {
  if (f_.size() < 2 || r < 0.0) return 0.0;
  double pos = r / h_;
  auto i = static_cast<std::size_t>(pos);
  if (i >= f_.size() - 1) return r <= rmax() ? f_.back() : 0.0;
  Hermite b = basis(pos - static_cast<double>(i), h_);
  return b.h00 * f_[i] + b.h10 * df_[i] + b.h01 * f_[i + 1] + b.h11 * df_[i + 1];
}

double RadialTable::derivative(double r) const {
  if (f_.size() < 2 || r < 0.0) return 0.0;
  double pos = r / h_;
  auto i = static_cast<std::size_t>(pos);
  if (i >= f_.size() - 1) return r <= rmax() ? df_.back() : 0.0;
  Hermite b = basis(pos - static_cast<double>(i), h_);
  return b.d00 * f_[i] + b.d10 * df_[i] + b.d01 * f_[i + 1] + b.d11 * df_[i + 1];
}

RadialTable RadialTable::scaled(double c) const {
  RadialTable out = *this;
  for (auto& v : out.f_) v *= c;
  for (auto& v : out.df_) v *= c;
  return out;
}

double radial_transform_at_origin(int N, const std::function<double(double)>& b,
                                  double ra, double rb, int nodes) {
  const GaussRule& g = gauss_legendre(nodes);
  const double c = 0.5 * (ra + rb), w = 0.5 * (rb - ra);
  const double sphere = N == 1 ? 2.0 : (N == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi);
  double s = 0.0;
  for (int k = 0; k < nodes; ++k) {
    double r = c + w * g.nodes[k];
    s += g.weights[k] * b(r) * std::pow(r, N - 1);
  }
  return sphere * s * w;
}

RadialTable inverse_radial_transform(int N, const std::function<double(double)>& b,
                                     double ra, double rb, double rmax, double h,
                                     int nodes) {
  if (N < 1 || N > 3) throw UnsupportedDimension("radial transform: N must be 1, 2 or 3");
  const double pi = std::numbers::pi;
  const GaussRule& g = gauss_legendre(nodes);
  const double c = 0.5 * (ra + rb), w = 0.5 * (rb - ra);
  std::vector<double> rr(nodes), bw(nodes);
  for (int k = 0; k < nodes; ++k) {
    rr[k] = c + w * g.nodes[k];
    bw[k] = g.weights[k] * w * b(rr[k]);
  }
  const auto count = static_cast<std::size_t>(std::ceil(rmax / h)) + 1;
  std::vector<double> f(count), df(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double rho = h * static_cast<double>(i);
    double sf = 0.0, sd = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const double r = rr[k];
      const double z = 2.0 * pi * rho * r;
      if (N == 1) {
        sf += bw[k] * 2.0 * std::cos(z);
        sd -= bw[k] * 2.0 * 2.0 * pi * r * std::sin(z);
      } else if (N == 2) {
        sf += bw[k] * 2.0 * pi * r * std::cyl_bessel_j(0.0, z);
        sd -= bw[k] * 2.0 * pi * r * 2.0 * pi * r * std::cyl_bessel_j(1.0, z);
      } else {
        double j0, j1;
        if (z < 1e-3) {
          j0 = 1.0 - z * z / 6.0;
          j1 = z / 3.0 - z * z * z / 30.0;
        } else {
          double sz = std::sin(z), cz = std::cos(z);
          j0 = sz / z;
          j1 = sz / (z * z) - cz / z;
        }
        sf += bw[k] * 4.0 * pi * r * r * j0;
        sd -= bw[k] * 4.0 * pi * r * r * 2.0 * pi * r * j1;
      }
    }
    f[i] = sf;
    df[i] = sd;
  }
  return RadialTable(std::move(f), std::move(df), h);
}

}  // namespace lplab
