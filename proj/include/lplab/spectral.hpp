#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "lplab/fields.hpp"
#include "lplab/measure.hpp"

namespace lplab {

// Periodic sampling of [-L, L)^N with M points per axis; node k sits at
// -L + k * spacing().
struct SpectralGrid {
  int dimension = 1;
  double halfwidth = 32.0;
  int points = 1024;

  double spacing() const { return 2.0 * halfwidth / points; }
  double freq_spacing() const { return 1.0 / (2.0 * halfwidth); }
  double nyquist() const { return points / (4.0 * halfwidth); }
  std::size_t total() const;
  double coord(int i) const { return -halfwidth + i * spacing(); }
  double freq(int i) const { return (i < points / 2 ? i : i - points) * freq_spacing(); }
  void validate() const;
};

SpectralGrid default_grid(int N);

struct GridField {
  SpectralGrid grid;
  std::vector<std::complex<double>> values;
  static GridField zeros(const SpectralGrid& g);
};

GridField sample(const TestFunction& u, const SpectralGrid& g);
// (Delta x)^N sum |v|^p, raised to 1/p.
double grid_lp_norm(const GridField& f, double p);
// |xi| for every flat index.
std::vector<double> frequency_magnitudes(const SpectralGrid& g);

// Radial cutoffs phi (1 on |xi| <= 1, 0 beyond 2) and psi = phi - phi(2.).
class CutoffPair {
 public:
  explicit CutoffPair(double transition_sharpness = 1.0);
  double phi(double r) const;
  double psi(double r) const { return phi(r) - phi(2.0 * r); }
  double psi_j(int j, double r) const { return psi(std::ldexp(r, -j)); }
  // 1 on [1/2, 2], supported in [1/4, 4].
  double widened(double r) const { return phi(0.5 * r) - phi(4.0 * r); }
  double sharpness() const { return c_; }

 private:
  double g(double t) const { return t > 0.0 ? std::exp(-c_ / t) : 0.0; }
  double c_;
};

CutoffPair build_cutoffs(double transition_sharpness = 1.0);

struct BandRange {
  int jmin = -5;
  int jmax = 5;
};

// Bands j with 2^{j-1} >= 1/(2L) and 2^j <= M/(4L).
BandRange resolvable_band_range(const SpectralGrid& g);
// resolvable range intersected with [-5, 5]
BandRange default_band_range(const SpectralGrid& g);

struct BandDecomposition {
  std::optional<GridField> base;
  std::map<int, GridField> bands;
};

BandDecomposition littlewood_paley(const GridField& u, const CutoffPair& cutoffs, BandRange range,
                                   bool with_base = true);

// Multiplier (2 pi |xi|)^{2z}.
GridField fractional_laplacian(const GridField& u, std::complex<double> z);

struct TLParams {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  bool homogeneous = true;
};

struct TLNorm {
  double value = 0.0;
  // ||u - (P0 u) - sum Delta_j u||_p over the bands used: frequency content
  // the truncated range did not see.
  double truncated_tail = 0.0;
};

TLNorm tl_norm(const GridField& u, const TLParams& params, const CutoffPair& cutoffs, BandRange range);

double bessel_norm(const GridField& u, double s, double p);

// ||v(. + z e_1) - v||_p / ||v||_p for v = Delta_band u, shift applied spectrally.
double band_shift_ratio(const GridField& u, int band, double shift, double p, const CutoffPair& cutoffs);

enum class EmbeddingMode { bessel, homogeneous_tl };

struct ScanConfig {
  std::optional<SpectralGrid> grid;  // default_grid(N) when absent
  std::optional<BandRange> range;    // default_band_range(grid) when absent
  EstimatorConfig estimator{EstimatorMethod::radial_rays};
  double cutoff_sharpness = 1.0;
};

struct ScanPoint {
  double s = 0.0;
  double ratio = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double error = 0.0;  // on ratio
  double truncated_tail = 0.0;
};

// Lambda search for sup_lambda lambda^p m(lambda) of the s-quotient: a coarse
// ratio-2 scan over 2^{-10..10} times ||u||_inf, then a 2^{1/4} refinement
// around the best entry.
WeakNormProfile weak_norm_search(const TestFunction& u, const QuotientParams& q, const EstimatorConfig& cfg);

std::vector<ScanPoint> embedding_ratio_scan(const TestFunction& u, double p, std::span<const double> s_grid,
                                            EmbeddingMode mode, const ScanConfig& cfg = {});

struct FppScan {
  std::vector<ScanPoint> points;
  double factor_exponent = 0.0;    // max(1/2, 1/p)
  double measured_exponent = 0.0;  // slope of log(|u|_{W^{s,p}} / ||u||_F) against -log(s(1-s))
};

FppScan fpp_ratio_scan(const TestFunction& u, double p, std::span<const double> s_grid, const ScanConfig& cfg = {});

// sup_{x != 0} |x|^{N+1} |grad K_j(x)| / (1 + |t|)^{N+1} with
// K_j = F^{-1}[2^{-js} (2 pi |xi|)^{s - it} psi~(2^{-j} xi)].
double kernel_decay_check(int j, double s, double t, const SpectralGrid& grid, const CutoffPair& cutoffs = CutoffPair{});

SpectralGrid default_kernel_grid();

struct DensityResult {
  GridField approx;
  TLNorm error;
};

// u_{J,delta}(x) = Phi(delta x) sum_{|j|<=J} Delta_j u(x), Phi(0) = 1 with
// spectrum in the unit ball; error measured in the homogeneous (s,p,q) norm
// over `range` (default_band_range when absent).
DensityResult density_approximation(const GridField& u, int J, double delta, double s, double p, double q,
                                    const CutoffPair& cutoffs = CutoffPair{},
                                    std::optional<BandRange> range = std::nullopt);

}  // namespace lplab
