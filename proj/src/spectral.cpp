#include "lplab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lplab/errors.hpp"
#include "lplab/fft.hpp"

namespace lplab {

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;
}  // namespace

std::size_t SpectralGrid::total() const {
  std::size_t t = 1;
  for (int k = 0; k < dimension; ++k) t *= static_cast<std::size_t>(points);
  return t;
}

void SpectralGrid::validate() const {
  if (dimension < 1 || dimension > 3) throw UnsupportedDimension("spectral grid dimension must be 1, 2 or 3");
  if (!(halfwidth > 0.0)) throw DomainError("grid half-width must be positive");
  if (points < 4 || (points & (points - 1)) != 0) throw DomainError("points per axis must be a power of two >= 4");
}

SpectralGrid default_grid(int N) {
  switch (N) {
    case 1: return {1, 32.0, 1024};
    case 2: return {2, 16.0, 256};
    case 3: return {3, 8.0, 64};
    default: throw UnsupportedDimension("spectral grid dimension must be 1, 2 or 3");
  }
}

GridField GridField::zeros(const SpectralGrid& g) {
  g.validate();
  return {g, std::vector<cplx>(g.total(), cplx(0.0, 0.0))};
}

GridField sample(const TestFunction& u, const SpectralGrid& g) {
  if (u.dimension != g.dimension) throw DomainError("function and grid dimensions differ");
  GridField f = GridField::zeros(g);
  const int N = g.dimension, M = g.points;
  std::vector<int> idx(N, 0);
  double x[3];
  for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
    std::size_t rem = flat;
    for (int k = N - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % M);
      rem /= M;
    }
    for (int k = 0; k < N; ++k) x[k] = g.coord(idx[k]);
    f.values[flat] = u(std::span<const double>(x, N));
  }
  return f;
}

double grid_lp_norm(const GridField& f, double p) {
  double s = 0.0;
  for (const auto& v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(s * std::pow(f.grid.spacing(), f.grid.dimension), 1.0 / p);
}

std::vector<double> frequency_magnitudes(const SpectralGrid& g) {
  std::vector<double> out(g.total());
  const int N = g.dimension, M = g.points;
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::size_t rem = flat;
    double r2 = 0.0;
    for (int k = 0; k < N; ++k) {
      double f = g.freq(static_cast<int>(rem % M));
      rem /= M;
      r2 += f * f;
    }
    out[flat] = std::sqrt(r2);
  }
  return out;
}

CutoffPair::CutoffPair(double transition_sharpness) : c_(transition_sharpness) {
  if (!(c_ > 0.0)) throw DomainError("transition sharpness must be positive");
}

double CutoffPair::phi(double r) const {
  r = std::abs(r);
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  double a = g(2.0 - r), b = g(r - 1.0);
  return a / (a + b);
}

CutoffPair build_cutoffs(double transition_sharpness) { return CutoffPair(transition_sharpness); }

BandRange resolvable_band_range(const SpectralGrid& g) {
  BandRange r;
  r.jmin = static_cast<int>(std::ceil(std::log2(g.freq_spacing()) - 1e-12)) + 1;
  r.jmax = static_cast<int>(std::floor(std::log2(g.nyquist()) + 1e-12));
  return r;
}

BandRange default_band_range(const SpectralGrid& g) {
  BandRange r = resolvable_band_range(g);
  return {std::max(r.jmin, -5), std::min(r.jmax, 5)};
}

namespace {

void check_range(const SpectralGrid& g, BandRange range) {
  BandRange ok = resolvable_band_range(g);
  if (range.jmin > range.jmax) throw DomainError("empty band range");
  if (range.jmin < ok.jmin || range.jmax > ok.jmax)
    throw UnderResolvedError("bands [" + std::to_string(range.jmin) + ", " + std::to_string(range.jmax) +
                             "] exceed the resolvable range [" + std::to_string(ok.jmin) + ", " +
                             std::to_string(ok.jmax) + "] of the grid");
}

std::vector<cplx> forward(const GridField& f) {
  std::vector<cplx> s = f.values;
  fft_nd(s, f.grid.dimension, f.grid.points, -1);
  return s;
}

GridField inverse(const SpectralGrid& g, std::vector<cplx> spec) {
  fft_nd(spec, g.dimension, g.points, +1);
  const double scale = 1.0 / static_cast<double>(g.total());
  for (auto& v : spec) v *= scale;
  return {g, std::move(spec)};
}

template <class Mult>
GridField apply_multiplier(const GridField& f, const std::vector<cplx>& spec, const std::vector<double>& mag,
                           Mult m) {
  std::vector<cplx> out(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) out[i] = spec[i] * m(mag[i]);
  return inverse(f.grid, std::move(out));
}

}  // namespace

BandDecomposition littlewood_paley(const GridField& u, const CutoffPair& cutoffs, BandRange range,
                                   bool with_base) {
  u.grid.validate();
  check_range(u.grid, range);
  const auto spec = forward(u);
  const auto mag = frequency_magnitudes(u.grid);
  BandDecomposition d;
  if (with_base) d.base = apply_multiplier(u, spec, mag, [&](double r) { return cutoffs.phi(r); });
  for (int j = range.jmin; j <= range.jmax; ++j)
    d.bands.emplace(j, apply_multiplier(u, spec, mag, [&](double r) { return cutoffs.psi_j(j, r); }));
  return d;
}

GridField fractional_laplacian(const GridField& u, cplx z) {
  u.grid.validate();
  auto spec = forward(u);
  const auto mag = frequency_magnitudes(u.grid);
  if (z == cplx(0.0, 0.0)) return u;
  double peak = 0.0;
  for (const auto& v : spec) peak = std::max(peak, std::abs(v));
  if (z.real() <= 0.0 && std::abs(spec[0]) > 1e-10 * peak)
    throw DomainError("fractional Laplacian with Re z <= 0 needs a vanishing zero-frequency coefficient");
  for (std::size_t i = 0; i < spec.size(); ++i)
    spec[i] = mag[i] == 0.0 ? cplx(0.0, 0.0) : spec[i] * std::exp(2.0 * z * std::log(2.0 * kPi * mag[i]));
  return inverse(u.grid, std::move(spec));
}

TLNorm tl_norm(const GridField& u, const TLParams& params, const CutoffPair& cutoffs, BandRange range) {
  u.grid.validate();
  if (!(params.p > 1.0 || params.p == 1.0) || !(params.q >= 1.0)) throw DomainError("p, q must be >= 1");
  if (!params.homogeneous) range.jmin = std::max(range.jmin, 1);
  const BandRange ok = resolvable_band_range(u.grid);
  if (range.jmin < ok.jmin || range.jmax > ok.jmax) {
    // report how much of u the resolvable part of the request leaves uncovered
    BandRange clipped{std::max(range.jmin, ok.jmin), std::min(range.jmax, ok.jmax)};
    double tail = grid_lp_norm(u, params.p);
    if (clipped.jmin <= clipped.jmax) tail = tl_norm(u, params, cutoffs, clipped).truncated_tail;
    throw UnderResolvedError("bands [" + std::to_string(range.jmin) + ", " + std::to_string(range.jmax) +
                             "] exceed the resolvable range [" + std::to_string(ok.jmin) + ", " +
                             std::to_string(ok.jmax) + "]; truncated tail over the resolvable part " +
                             std::to_string(tail));
  }
  check_range(u.grid, range);
  const auto spec = forward(u);
  const auto mag = frequency_magnitudes(u.grid);
  const std::size_t n = spec.size();
  std::vector<double> agg(n, 0.0);
  std::vector<cplx> covered(n, cplx(0.0, 0.0));
  auto accumulate = [&](const GridField& band, double weight) {
    for (std::size_t i = 0; i < n; ++i) {
      agg[i] += std::pow(weight * std::abs(band.values[i]), params.q);
      covered[i] += band.values[i];
    }
  };
  if (!params.homogeneous) accumulate(apply_multiplier(u, spec, mag, [&](double r) { return cutoffs.phi(r); }), 1.0);
  for (int j = range.jmin; j <= range.jmax; ++j)
    accumulate(apply_multiplier(u, spec, mag, [&](double r) { return cutoffs.psi_j(j, r); }),
               std::pow(2.0, j * params.s));
  double sum = 0.0;
  for (double a : agg) sum += std::pow(a, params.p / params.q);
  const double cell = std::pow(u.grid.spacing(), u.grid.dimension);
  TLNorm out;
  out.value = std::pow(sum * cell, 1.0 / params.p);
  GridField rest{u.grid, u.values};
  for (std::size_t i = 0; i < n; ++i) rest.values[i] -= covered[i];
  out.truncated_tail = grid_lp_norm(rest, params.p);
  return out;
}

double bessel_norm(const GridField& u, double s, double p) {
  u.grid.validate();
  if (s == 0.0) return grid_lp_norm(u, p);
  const auto spec = forward(u);
  const auto mag = frequency_magnitudes(u.grid);
  GridField v = apply_multiplier(u, spec, mag, [&](double r) { return std::pow(1.0 + 4.0 * kPi * kPi * r * r, 0.5 * s); });
  return grid_lp_norm(v, p);
}

double band_shift_ratio(const GridField& u, int band, double shift, double p, const CutoffPair& cutoffs) {
  u.grid.validate();
  check_range(u.grid, {band, band});
  const auto spec = forward(u);
  const auto mag = frequency_magnitudes(u.grid);
  const SpectralGrid& g = u.grid;
  std::vector<cplx> vb(spec.size()), vd(spec.size());
  std::size_t stride = 1;
  for (int k = 1; k < g.dimension; ++k) stride *= static_cast<std::size_t>(g.points);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    double xi0 = g.freq(static_cast<int>((i / stride) % g.points));
    cplx b = spec[i] * cutoffs.psi_j(band, mag[i]);
    vb[i] = b;
    vd[i] = b * (std::exp(cplx(0.0, 2.0 * kPi * shift * xi0)) - 1.0);
  }
  double nb = grid_lp_norm(inverse(g, std::move(vb)), p);
  double nd = grid_lp_norm(inverse(g, std::move(vd)), p);
  if (nb == 0.0) return 0.0;
  return nd / nb;
}

}  // namespace lplab
