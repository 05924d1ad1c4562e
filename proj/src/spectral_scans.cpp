#include <algorithm>
#include <cmath>
#include <numbers>

#include "lplab/errors.hpp"
#include "lplab/fft.hpp"
#include "lplab/norms.hpp"
#include "lplab/radial.hpp"
#include "lplab/spectral.hpp"

namespace lplab {

namespace {
constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

SpectralGrid grid_for(const TestFunction& u, const ScanConfig& cfg) {
  SpectralGrid g = cfg.grid ? *cfg.grid : default_grid(u.dimension);
  if (g.dimension != u.dimension) throw DomainError("scan grid dimension differs from the function's");
  g.validate();
  return g;
}

void merge_into(WeakNormProfile& into, const WeakNormProfile& extra) {
  for (const auto& e : extra.entries) {
    bool dup = false;
    for (const auto& f : into.entries)
      if (std::abs(f.lambda - e.lambda) <= 1e-12 * f.lambda) dup = true;
    if (!dup) into.entries.push_back(e);
  }
  std::sort(into.entries.begin(), into.entries.end(),
            [](const ProfileEntry& a, const ProfileEntry& b) { return a.lambda < b.lambda; });
  into.sup_value = 0.0;
  for (const auto& e : into.entries) into.sup_value = std::max(into.sup_value, e.scaled_value);
}

}  // namespace

WeakNormProfile weak_norm_search(const TestFunction& u, const QuotientParams& q, const EstimatorConfig& cfg) {
  const double top = u.sup_norm;
  if (!(top > 0.0)) throw DomainError("weak-norm search needs a function with positive sup norm");
  std::vector<double> coarse;
  for (int k = -10; k <= 10; ++k) coarse.push_back(std::ldexp(top, k));
  WeakNormProfile prof = measure_profile(u, q, coarse, cfg);
  std::size_t best = 0;
  for (std::size_t i = 0; i < prof.entries.size(); ++i)
    if (prof.entries[i].scaled_value > prof.entries[best].scaled_value) best = i;
  const double centre = prof.entries[best].lambda;
  std::vector<double> fine;
  for (int i = -3; i <= 3; ++i)
    if (i != 0) fine.push_back(centre * std::pow(2.0, 0.25 * i));
  merge_into(prof, measure_profile(u, q, fine, cfg));
  return prof;
}

std::vector<ScanPoint> embedding_ratio_scan(const TestFunction& u, double p, std::span<const double> s_grid,
                                            EmbeddingMode mode, const ScanConfig& cfg) {
  if (mode == EmbeddingMode::bessel && u.smoothness != Smoothness::band_limited &&
      u.smoothness != Smoothness::schwartz)
    throw DomainError("Bessel-potential embedding scan needs a Schwartz or band-limited function, got '" +
                      u.name + "'");
  if (mode == EmbeddingMode::homogeneous_tl && u.smoothness != Smoothness::band_limited)
    throw DomainError("homogeneous Triebel-Lizorkin scan needs a band-limited function, got '" + u.name + "'");
  if (!(p >= 1.0)) throw DomainError("p must be >= 1");
  const SpectralGrid g = grid_for(u, cfg);
  const BandRange range = cfg.range ? *cfg.range : default_band_range(g);
  const CutoffPair cut(cfg.cutoff_sharpness);
  const GridField field = sample(u, g);

  std::vector<ScanPoint> out;
  for (double s : s_grid) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0, 1)");
    WeakNormProfile prof = weak_norm_search(u, QuotientParams{s, p}, cfg.estimator);
    ScanPoint pt;
    pt.s = s;
    pt.numerator = weak_lp_quasinorm(prof);
    if (mode == EmbeddingMode::bessel) {
      pt.denominator = bessel_norm(field, s, p);
    } else {
      TLNorm n = tl_norm(field, TLParams{s, p, 2.0, true}, cut, range);
      pt.denominator = n.value;
      pt.truncated_tail = n.truncated_tail;
    }
    if (!(pt.denominator > 0.0)) throw DomainError("embedding denominator vanished");
    pt.ratio = pt.numerator / pt.denominator;
    pt.error = pt.ratio * prof.sup_error() / (p * std::max(prof.sup_value, 1e-300));
    out.push_back(pt);
  }
  return out;
}

FppScan fpp_ratio_scan(const TestFunction& u, double p, std::span<const double> s_grid, const ScanConfig& cfg) {
  if (u.smoothness != Smoothness::smooth && u.smoothness != Smoothness::schwartz &&
      u.smoothness != Smoothness::band_limited)
    throw DomainError("F_pp comparison needs a smooth function, got '" + u.name + "'");
  if (!(p >= 1.0)) throw DomainError("p must be >= 1");
  const SpectralGrid g = grid_for(u, cfg);
  const BandRange range = cfg.range ? *cfg.range : default_band_range(g);
  const CutoffPair cut(cfg.cutoff_sharpness);
  const GridField field = sample(u, g);

  FppScan scan;
  scan.factor_exponent = std::max(0.5, 1.0 / p);
  std::vector<double> ss(s_grid.begin(), s_grid.end());
  for (double s : ss)
    if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0, 1)");
  const auto semis = gagliardo_seminorms(u, ss, p);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    const double s = ss[i];
    TLNorm f = tl_norm(field, TLParams{s, p, p, true}, cut, range);
    ScanPoint pt;
    pt.s = s;
    pt.numerator = semis[i].value;
    pt.denominator = f.value;
    pt.truncated_tail = f.truncated_tail;
    if (!(f.value > 0.0)) throw DomainError("F_pp norm vanished");
    const double factor = std::pow(s * (1.0 - s), -scan.factor_exponent);
    pt.ratio = pt.numerator / (factor * pt.denominator);
    pt.error = semis[i].pow_value > 0.0 ? pt.ratio * semis[i].error / (p * semis[i].pow_value) : 0.0;
    scan.points.push_back(pt);
    const double x = -std::log(s * (1.0 - s)), y = std::log(pt.numerator / pt.denominator);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(ss.size());
  const double den = n * sxx - sx * sx;
  scan.measured_exponent = (ss.size() >= 2 && den > 0.0) ? (n * sxy - sx * sy) / den : 0.0;
  return scan;
}

SpectralGrid default_kernel_grid() { return {1, 64.0, 16384}; }

double kernel_decay_check(int j, double s, double t, const SpectralGrid& grid, const CutoffPair& cutoffs) {
  grid.validate();
  if (!(s > 0.0 && s < 1.0)) throw DomainError("s must lie in (0, 1)");
  if (std::ldexp(1.0, j + 2) > grid.nyquist() || std::ldexp(1.0, j - 2) < grid.freq_spacing())
    throw UnderResolvedError("kernel band j = " + std::to_string(j) + " is not resolved by the grid");
  const int N = grid.dimension, M = grid.points;
  const auto mag = frequency_magnitudes(grid);
  const double cell = std::pow(grid.freq_spacing(), N);
  const double pre = std::pow(2.0, -j * s);
  std::vector<cplx> mult(mag.size());
  for (std::size_t i = 0; i < mag.size(); ++i) {
    const double r = mag[i];
    const double w = cutoffs.widened(std::ldexp(r, -j));
    mult[i] = (r == 0.0 || w == 0.0) ? cplx(0.0, 0.0)
                                     : pre * w * std::exp(cplx(s, -t) * std::log(2.0 * kPi * r)) * cell;
  }
  std::vector<double> grad2(mag.size(), 0.0);
  std::size_t stride = 1;
  for (int k = 0; k < N; ++k) {
    // axis k has stride M^{N-1-k} in the row-major layout
    stride = 1;
    for (int m = k + 1; m < N; ++m) stride *= static_cast<std::size_t>(M);
    std::vector<cplx> d(mag.size());
    for (std::size_t i = 0; i < mag.size(); ++i) {
      const double xi = grid.freq(static_cast<int>((i / stride) % M));
      d[i] = mult[i] * cplx(0.0, 2.0 * kPi * xi);
    }
    fft_nd(d, N, M, +1);
    for (std::size_t i = 0; i < d.size(); ++i) grad2[i] += std::norm(d[i]);
  }
  // DFT index n corresponds to the periodic position n * dx, folded into [-L, L).
  const double dx = grid.spacing();
  double best = 0.0;
  for (std::size_t i = 0; i < grad2.size(); ++i) {
    std::size_t rem = i;
    double r2 = 0.0;
    for (int k = 0; k < N; ++k) {
      const int n = static_cast<int>(rem % M);
      rem /= M;
      const double x = (n < M / 2 ? n : n - M) * dx;
      r2 += x * x;
    }
    if (r2 == 0.0) continue;
    best = std::max(best, std::pow(r2, 0.5 * (N + 1)) * std::sqrt(grad2[i]));
  }
  return best / std::pow(1.0 + std::abs(t), N + 1);
}

DensityResult density_approximation(const GridField& u, int J, double delta, double s, double p, double q,
                                    const CutoffPair& cutoffs, std::optional<BandRange> range) {
  const SpectralGrid& g = u.grid;
  g.validate();
  if (J < 1) throw DomainError("J must be >= 1");
  if (!(delta > 0.0) || delta > std::ldexp(1.0, -J) / 8.0)
    throw DomainError("delta must lie in (0, 2^-J / 8]");
  const BandRange ok = resolvable_band_range(g);
  if (-J < ok.jmin || J > ok.jmax)
    throw UnderResolvedError("bands |j| <= " + std::to_string(J) + " are not resolved by the grid");
  const BandRange err_range = range ? *range : default_band_range(g);

  BandDecomposition parts = littlewood_paley(u, cutoffs, {-J, J}, false);
  GridField approx = GridField::zeros(g);
  for (const auto& [j, band] : parts.bands)
    for (std::size_t i = 0; i < approx.values.size(); ++i) approx.values[i] += band.values[i];

  auto spectrum = [&](double r) { return cutoffs.phi(2.0 * r); };
  const double rmax = delta * g.halfwidth * std::sqrt(static_cast<double>(g.dimension)) * 1.01 + 1e-3;
  const double h = std::min(1e-3, rmax / 2000.0);
  RadialTable mollifier = inverse_radial_transform(g.dimension, spectrum, 0.0, 1.0, rmax + 4.0 * h, h, 400);
  mollifier = mollifier.scaled(1.0 / mollifier.at_origin());

  const int N = g.dimension, M = g.points;
  for (std::size_t i = 0; i < approx.values.size(); ++i) {
    std::size_t rem = i;
    double r2 = 0.0;
    for (int k = 0; k < N; ++k) {
      const double x = g.coord(static_cast<int>(rem % M));
      rem /= M;
      r2 += x * x;
    }
    approx.values[i] *= mollifier.value(delta * std::sqrt(r2));
  }
  GridField diff{g, approx.values};
  for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= u.values[i];
  DensityResult out{std::move(approx), tl_norm(diff, TLParams{s, p, q, true}, cutoffs, err_range)};
  return out;
}

}  // namespace lplab
