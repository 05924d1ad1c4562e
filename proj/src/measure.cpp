#include "lplab/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "lplab/ball_geometry.hpp"
#include "lplab/errors.hpp"
#include "lplab/parallel.hpp"
#include "lplab/quadrature.hpp"

namespace lplab {

std::string_view to_string(EstimatorMethod m) {
  switch (m) {
    case EstimatorMethod::tensor_quadrature: return "tensor_quadrature";
    case EstimatorMethod::stratified_mc: return "stratified_mc";
    case EstimatorMethod::radial_rays: return "radial_rays";
  }
  return "unknown";
}

EstimatorMethod parse_estimator_method(std::string_view name) {
  if (name == "tensor_quadrature") return EstimatorMethod::tensor_quadrature;
  if (name == "stratified_mc") return EstimatorMethod::stratified_mc;
  if (name == "radial_rays") return EstimatorMethod::radial_rays;
  throw ConfigError("unknown estimator method '" + std::string(name) + "'");
}

std::vector<double> geometric_grid(double first, double ratio, int count) {
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) g[k] = first * std::pow(ratio, k);
  return g;
}

double difference_quotient(const TestFunction& u, const QuotientParams& q, Point x, Point y) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) d2 += (x[k] - y[k]) * (x[k] - y[k]);
  if (d2 == 0.0) throw DomainError("difference quotient undefined for x = y");
  return (u(x) - u(y)) / std::pow(std::sqrt(d2), q.exponent(u.dimension));
}

namespace {

constexpr double kDiagonalFraction = 1e-9;
constexpr double kEnvelopeTail = 1e-10;
constexpr std::size_t kChunk = 64;

struct Setup {
  int N = 1;
  double a = 1.0;        // quotient exponent N/p + s
  double R = 1.0;        // radius of the explicitly integrated ball
  bool exterior = true;  // u vanishes (or is below eps) outside B_R
  double eps = 0.0;      // sup of |u| outside B_R
  double outside_mass = 0.0;  // int_{|x|>R} |u|^{N/a}
  bool unbounded = false;     // only part of R^N x R^N was examined
  double r_diag = 0.0;
};

Setup make_setup(const TestFunction& u, const QuotientParams& q, const EstimatorConfig& cfg) {
  if (!(q.p >= 1.0)) throw DomainError("p must be >= 1");
  if (!(q.s >= 0.0 && q.s <= 1.0)) throw DomainError("s must lie in [0, 1]");
  Setup st;
  st.N = u.dimension;
  if (st.N < 1 || st.N > 3) throw UnsupportedDimension("measure engine supports N <= 3");
  st.a = q.exponent(st.N);
  if (!u.in_lp) {
    if (!cfg.permit_non_lp)
      throw NotInLpError(u.name + " is not in L^p: the level-set formula does not apply (u identically 1)");
    st.R = cfg.box_halfwidth > 0.0 ? cfg.box_halfwidth : 4.0;
    st.exterior = false;
    st.unbounded = true;
  } else if (u.support_radius && !(cfg.box_halfwidth > 0.0 && u.envelope)) {
    st.R = *u.support_radius;
  } else if (u.envelope) {
    const double qq = st.N / st.a;
    const double A = u.envelope->amplitude, rate = u.envelope->rate;
    if (cfg.box_halfwidth > 0.0) {
      st.R = cfg.box_halfwidth;
    } else {
      double lo = 0.0, hi = 1.0;
      while (upper_gamma_half(st.N, qq * rate * hi * hi) > kEnvelopeTail) hi *= 2.0;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (upper_gamma_half(st.N, qq * rate * mid * mid) > kEnvelopeTail ? lo : hi) = mid;
      }
      st.R = hi;
    }
    st.eps = A * std::exp(-rate * st.R * st.R);
    st.outside_mass = std::pow(A, qq) * gaussian_tail_mass(st.N, qq * rate, st.R);
  } else {
    throw DomainError(u.name + ": neither compact support nor a decay envelope");
  }
  st.r_diag = kDiagonalFraction * st.R;
  return st;
}

// Number of lambdas <= Q; pair counts toward lambda_j iff j < bin.
inline std::size_t bin_of(double Q, const std::vector<double>& lam) {
  return static_cast<std::size_t>(std::upper_bound(lam.begin(), lam.end(), Q) - lam.begin());
}

struct InnerResult {
  std::vector<double> value;     // half-space measure per lambda
  std::vector<double> variance;  // of value
};

std::vector<double> cumulate(const std::vector<double>& hist, std::size_t K) {
  std::vector<double> m(K, 0.0);
  double acc = 0.0;
  for (std::size_t b = K; b >= 1; --b) {
    acc += hist[b];
    m[b - 1] = acc;
  }
  return m;
}

InnerResult inner_tensor(const TestFunction& u, const Setup& st, const std::vector<double>& lam,
                         const EstimatorConfig& cfg) {
  const int N = st.N;
  if (2 * N > 4) throw DomainError("tensor_quadrature requires 2N <= 4; use stratified_mc or radial_rays");
  const int M = cfg.samples_or_nodes > 0 ? cfg.samples_or_nodes : (N == 1 ? 4000 : 128);
  const double h = 2.0 * st.R / M;
  const std::size_t K = lam.size();

  struct Node {
    std::array<int, 2> idx;
    long long n2;
    double value;
  };
  std::vector<Node> nodes;
  const long long limit = static_cast<long long>(M) * M;
  double x[2];
  for (int i0 = 0; i0 < M; ++i0)
    for (int i1 = 0; i1 < (N == 2 ? M : 1); ++i1) {
      long long c0 = 2LL * i0 - (M - 1), c1 = N == 2 ? 2LL * i1 - (M - 1) : 0;
      long long n2 = c0 * c0 + c1 * c1;
      if (n2 >= limit) continue;
      x[0] = -st.R + (i0 + 0.5) * h;
      x[1] = -st.R + (i1 + 0.5) * h;
      nodes.push_back({{i0, i1}, n2, u(std::span<const double>(x, N))});
    }
  std::stable_sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.n2 < b.n2; });
  const std::size_t n = nodes.size();
  std::vector<std::size_t> group_start(n);
  for (std::size_t i = 0; i < n; ++i)
    group_start[i] = (i > 0 && nodes[i].n2 == nodes[i - 1].n2) ? group_start[i - 1] : i;

  const std::size_t Dmax = static_cast<std::size_t>(N) * (M - 1) * (M - 1);
  std::vector<double> inv_dist(Dmax + 1, 0.0);
  for (std::size_t D = 1; D <= Dmax; ++D) inv_dist[D] = std::pow(h * h * static_cast<double>(D), -0.5 * st.a);

  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> partial(chunks);
  parallel_for(chunks, cfg.threads, [&](std::size_t c) {
    std::vector<double> hist(K + 1, 0.0);
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const Node& xi = nodes[i];
      const std::size_t k0 = cfg.half_space ? group_start[i] : 0;
      for (std::size_t k = k0; k < n; ++k) {
        if (k == i) continue;
        const Node& yk = nodes[k];
        double w = (!cfg.half_space || yk.n2 == xi.n2) ? 0.5 : 1.0;
        double diff = std::abs(xi.value - yk.value);
        if (diff == 0.0) continue;
        long long d0 = xi.idx[0] - yk.idx[0], d1 = xi.idx[1] - yk.idx[1];
        double Q = diff * inv_dist[static_cast<std::size_t>(d0 * d0 + d1 * d1)];
        hist[bin_of(Q, lam)] += w;
      }
    }
    partial[c] = std::move(hist);
  });
  std::vector<double> hist(K + 1, 0.0);
  for (const auto& ph : partial)
    for (std::size_t b = 0; b <= K; ++b) hist[b] += ph[b];
  InnerResult res;
  res.value = cumulate(hist, K);
  const double cell = std::pow(h, 2 * N);
  for (double& v : res.value) v *= cell;
  res.variance.assign(K, 0.0);
  return res;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

InnerResult inner_mc(const TestFunction& u, const Setup& st, const std::vector<double>& lam,
                     const EstimatorConfig& cfg) {
  const int N = st.N;
  const int S = std::max(1, cfg.strata_per_axis);
  std::size_t cells = 1;
  for (int k = 0; k < N; ++k) cells *= static_cast<std::size_t>(S);
  const long long total = cfg.samples_or_nodes > 0 ? cfg.samples_or_nodes : (1LL << 21);
  const long long per_cell = std::max<long long>(2, total / static_cast<long long>(cells));
  const double cw = 2.0 * st.R / S;
  const double R2 = st.R * st.R, rd2 = st.r_diag * st.r_diag;
  const std::size_t K = lam.size();
  const double weight = cfg.half_space ? 1.0 : 0.5;
  const double volume = std::pow(cw, N) * std::pow(2.0 * st.R, N);

  std::vector<std::vector<double>> hist_by_cell(cells);
  parallel_for(cells, cfg.threads, [&](std::size_t c) {
    std::mt19937_64 rng(splitmix64(cfg.rng_seed ^ splitmix64(c + 1)));
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    double lo[3];
    std::size_t rem = c;
    for (int k = 0; k < N; ++k) {
      lo[k] = -st.R + cw * static_cast<double>(rem % S);
      rem /= S;
    }
    std::vector<double> hist(K + 1, 0.0);
    double x[3], y[3];
    for (long long i = 0; i < per_cell; ++i) {
      double nx = 0.0, ny = 0.0, d2 = 0.0;
      for (int k = 0; k < N; ++k) {
        x[k] = lo[k] + cw * uniform();
        y[k] = -st.R + 2.0 * st.R * uniform();
        nx += x[k] * x[k];
        ny += y[k] * y[k];
        d2 += (x[k] - y[k]) * (x[k] - y[k]);
      }
      if (nx >= R2 || ny >= R2 || d2 < rd2) continue;
      if (cfg.half_space && ny <= nx) continue;
      double diff = std::abs(u(std::span<const double>(x, N)) - u(std::span<const double>(y, N)));
      if (diff == 0.0) continue;
      hist[bin_of(diff * std::pow(d2, -0.5 * st.a), lam)] += 1.0;
    }
    hist_by_cell[c] = std::move(hist);
  });

  InnerResult res;
  res.value.assign(K, 0.0);
  res.variance.assign(K, 0.0);
  const double n = static_cast<double>(per_cell);
  for (std::size_t c = 0; c < cells; ++c) {
    std::vector<double> counts = cumulate(hist_by_cell[c], K);
    for (std::size_t j = 0; j < K; ++j) {
      double mean = counts[j] / n;
      double scale = weight * volume;
      res.value[j] += scale * mean;
      res.variance[j] += scale * scale * mean * (1.0 - mean) / (n - 1.0);
    }
  }
  return res;
}

struct Direction {
  std::array<double, 3> w;
  double weight;
};

std::vector<Direction> sphere_directions(int N, int count) {
  std::vector<Direction> dirs;
  const double pi = std::numbers::pi;
  if (N == 1) {
    dirs.push_back({{1.0, 0.0, 0.0}, 1.0});
    dirs.push_back({{-1.0, 0.0, 0.0}, 1.0});
  } else if (N == 2) {
    for (int k = 0; k < count; ++k) {
      double t = 2.0 * pi * (k + 0.5) / count;
      dirs.push_back({{std::cos(t), std::sin(t), 0.0}, 2.0 * pi / count});
    }
  } else {
    const int nt = std::max(2, count / 2);
    const GaussRule& g = gauss_legendre(nt);
    for (int i = 0; i < nt; ++i) {
      double ct = g.nodes[i], st = std::sqrt(1.0 - ct * ct);
      for (int k = 0; k < count; ++k) {
        double ph = 2.0 * pi * (k + 0.5) / count;
        dirs.push_back({{st * std::cos(ph), st * std::sin(ph), ct}, g.weights[i] * 2.0 * pi / count});
      }
    }
  }
  return dirs;
}

InnerResult inner_rays(const TestFunction& u, const Setup& st, const std::vector<double>& lam,
                       const EstimatorConfig& cfg) {
  const int N = st.N;
  const int nodes = cfg.samples_or_nodes > 0 ? cfg.samples_or_nodes : (N == 1 ? 512 : (N == 2 ? 64 : 20));
  const std::size_t K = lam.size();
  std::vector<NodeSet> axes(N);
  for (int k = 0; k < N; ++k) {
    std::vector<double> br;
    if (k < static_cast<int>(u.breakpoints.size())) br = u.breakpoints[k];
    axes[k] = composite_gauss(-st.R, st.R, br, nodes, 4);
  }
  struct XNode {
    std::array<double, 3> x;
    double w;
  };
  std::vector<XNode> xs;
  {
    std::vector<std::size_t> idx(N, 0);
    for (;;) {
      XNode xn{{0.0, 0.0, 0.0}, 1.0};
      double n2 = 0.0;
      for (int k = 0; k < N; ++k) {
        xn.x[k] = axes[k].x[idx[k]];
        xn.w *= axes[k].w[idx[k]];
        n2 += xn.x[k] * xn.x[k];
      }
      if (n2 < st.R * st.R) xs.push_back(xn);
      int k = 0;
      while (k < N && ++idx[k] == axes[k].x.size()) idx[k++] = 0;
      if (k == N) break;
    }
  }
  const auto dirs = sphere_directions(N, cfg.directions);
  const double delta = 2.0 * st.R / std::max(8, cfg.ray_samples);
  const double weight = cfg.half_space ? 1.0 : 0.5;
  const int n_geo = 48;

  const std::size_t chunks = (xs.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> partial(chunks);
  parallel_for(chunks, cfg.threads, [&](std::size_t c) {
    std::vector<double> acc(K, 0.0);
    std::vector<double> rs, dv, tv;
    double y[3];
    const std::size_t end = std::min(xs.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const XNode& xn = xs[i];
      const std::span<const double> xp(xn.x.data(), N);
      const double u0 = u(xp);
      double n2 = 0.0;
      for (int k = 0; k < N; ++k) n2 += xn.x[k] * xn.x[k];
      for (const Direction& d : dirs) {
        double xw = 0.0;
        for (int k = 0; k < N; ++k) xw += xn.x[k] * d.w[k];
        const double r_exit = -xw + std::sqrt(std::max(0.0, xw * xw - n2 + st.R * st.R));
        double r_lo = st.r_diag;
        if (cfg.half_space && xw < 0.0) r_lo = std::max(r_lo, -2.0 * xw);
        if (r_lo >= r_exit) continue;
        rs.clear();
        double r = r_lo;
        if (r_lo < delta) {
          const double top = std::min(delta, r_exit);
          const double ratio = std::pow(top / r_lo, 1.0 / n_geo);
          for (int g = 0; g < n_geo; ++g) rs.push_back(r_lo * std::pow(ratio, g));
          r = top;
        }
        for (; r < r_exit; r += delta) rs.push_back(r);
        rs.push_back(r_exit);
        auto diff_at = [&](double rr) {
          for (int k = 0; k < N; ++k) y[k] = xn.x[k] + rr * d.w[k];
          return std::abs(u0 - u(std::span<const double>(y, N)));
        };
        dv.resize(rs.size());
        tv.resize(rs.size());
        for (std::size_t m = 0; m < rs.size(); ++m) {
          dv[m] = diff_at(rs[m]);
          tv[m] = std::pow(rs[m], st.a);
        }
        const double w = xn.w * d.weight * weight;
        for (std::size_t j = 0; j < K; ++j) {
          const double L = lam[j];
          bool in_prev = dv[0] >= L * tv[0];
          double start = rs[0];
          double sum = 0.0;
          for (std::size_t m = 1; m < rs.size(); ++m) {
            bool in_now = dv[m] >= L * tv[m];
            if (in_now == in_prev) continue;
            double a = rs[m - 1], b = rs[m];
            for (int it = 0; it < 60 && b - a > 1e-14 * (1.0 + b); ++it) {
              double mid = 0.5 * (a + b);
              bool in_mid = diff_at(mid) >= L * std::pow(mid, st.a);
              (in_mid == in_prev ? a : b) = mid;
            }
            double cross = 0.5 * (a + b);
            if (in_prev)
              sum += (std::pow(cross, N) - std::pow(start, N)) / N;
            else
              start = cross;
            in_prev = in_now;
          }
          if (in_prev) sum += (std::pow(rs.back(), N) - std::pow(start, N)) / N;
          acc[j] += w * sum;
        }
      }
    }
    partial[c] = std::move(acc);
  });
  InnerResult res;
  res.value.assign(K, 0.0);
  res.variance.assign(K, 0.0);
  for (const auto& pv : partial)
    for (std::size_t j = 0; j < K; ++j) res.value[j] += pv[j];
  return res;
}

// Exact contribution of pairs x in B_R, y outside B_R:
// int_{B_R} |B(x, rho(x)) \ B_R| dx with rho = ((|u(x)| + shift) / lambda)^{1/a}.
double exterior_term(const TestFunction& u, const Setup& st, double lambda, double shift) {
  const int N = st.N;
  const double R = st.R, a = st.a;
  auto rho_of = [&](double value) {
    double v = std::abs(value) + shift;
    return v > 0.0 ? std::pow(v / lambda, 1.0 / a) : 0.0;
  };
  QuadOptions opt;
  opt.rel_tol = 1e-10;
  opt.abs_tol = 1e-300;
  if (u.radial_profile && N > 1) {
    const double area = N * unit_ball_volume(N);
    auto rp = u.radial_profile;
    std::vector<double> rb;
    for (const auto& axis : u.breakpoints)
      for (double b : axis)
        if (std::abs(b) < R) rb.push_back(std::abs(b));
    return integrate(
               [&](double r) {
                 return area * std::pow(r, N - 1) * ball_exterior_volume(N, r, rho_of(rp(r)), R);
               },
               0.0, R, rb, opt)
        .value;
  }
  std::vector<double> lo(N, -R), hi(N, R);
  if (N == 3) {
    opt.rel_tol = 1e-7;
    opt.max_panels = 100;
  } else if (N == 2) {
    opt.rel_tol = 1e-9;
    opt.max_panels = 400;
  }
  return integrate_box(
             [&](Point x) {
               double n2 = 0.0;
               for (double v : x) n2 += v * v;
               if (n2 >= R * R) return 0.0;
               return ball_exterior_volume(N, std::sqrt(n2), rho_of(u(x)), R);
             },
             lo, hi, u.breakpoints, opt)
      .value;
}

}  // namespace

std::vector<MeasureEstimate> level_set_measures(const TestFunction& u, const QuotientParams& q,
                                                std::span<const double> lambdas,
                                                const EstimatorConfig& cfg) {
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    if (!(lambdas[j] > 0.0)) throw DomainError("lambda must be positive");
    if (j > 0 && !(lambdas[j] > lambdas[j - 1])) throw DomainError("lambdas must be strictly increasing");
  }
  const Setup st = make_setup(u, q, cfg);
  std::vector<double> lam(lambdas.begin(), lambdas.end());
  const std::size_t K = lam.size();
  if (K == 0) return {};

  InnerResult inner;
  switch (cfg.method) {
    case EstimatorMethod::tensor_quadrature: inner = inner_tensor(u, st, lam, cfg); break;
    case EstimatorMethod::stratified_mc: inner = inner_mc(u, st, lam, cfg); break;
    case EstimatorMethod::radial_rays: inner = inner_rays(u, st, lam, cfg); break;
  }

  const double kappa = unit_ball_volume(st.N);
  const double diag = unit_ball_volume(st.N) * std::pow(st.R, st.N) * kappa * std::pow(st.r_diag, st.N) * 0.5;
  std::vector<MeasureEstimate> out(K);
  std::vector<double> ext_lo(K, 0.0), ext_hi(K, 0.0);
  if (st.exterior) {
    parallel_for(K, cfg.threads, [&](std::size_t j) {
      ext_hi[j] = exterior_term(u, st, lam[j], st.eps);
      ext_lo[j] = st.eps > 0.0 ? exterior_term(u, st, lam[j], -st.eps) : ext_hi[j];
    });
  }
  for (std::size_t j = 0; j < K; ++j) {
    MeasureEstimate& e = out[j];
    e.lambda = lam[j];
    double ext_mid = 0.5 * (ext_lo[j] + ext_hi[j]);
    double ext_half_width = 0.5 * (ext_hi[j] - ext_lo[j]);
    double outside = 0.0;
    if (st.outside_mass > 0.0)
      outside = kappa * std::pow(2.0 / lam[j], st.N / st.a) * st.outside_mass;
    e.measure = 2.0 * (inner.value[j] + ext_mid);
    e.std_error = 2.0 * std::sqrt(inner.variance[j]);
    e.tail_bound = st.unbounded ? std::numeric_limits<double>::infinity()
                                : 2.0 * (ext_half_width + outside + diag);
  }
  return out;
}

MeasureEstimate level_set_measure(const TestFunction& u, const QuotientParams& q, double lambda,
                                  const EstimatorConfig& cfg) {
  double l[1] = {lambda};
  return level_set_measures(u, q, l, cfg).front();
}

WeakNormProfile measure_profile(const TestFunction& u, const QuotientParams& q,
                                std::span<const double> lambdas, const EstimatorConfig& cfg) {
  if (lambdas.empty()) throw DomainError("empty lambda grid");
  auto est = level_set_measures(u, q, lambdas, cfg);
  WeakNormProfile prof;
  prof.p = q.p;
  prof.s = q.s;
  for (const auto& e : est) {
    double lp = std::pow(e.lambda, q.p);
    prof.entries.push_back({e.lambda, lp * e.measure, lp * (e.std_error + e.tail_bound)});
    prof.sup_value = std::max(prof.sup_value, lp * e.measure);
  }
  return prof;
}

double sphere_integral(double p, int N, std::span<const double> e) {
  if (static_cast<int>(e.size()) != N) throw DomainError("direction has wrong dimension");
  double n2 = 0.0;
  for (double v : e) n2 += v * v;
  if (std::abs(n2 - 1.0) > 1e-12) throw DomainError("direction must be a unit vector");
  const double pi = std::numbers::pi;
  QuadOptions opt;
  opt.rel_tol = 1e-14;
  opt.abs_tol = 1e-15;
  opt.max_panels = 20000;
  if (N == 1) return 2.0 * std::pow(std::abs(e[0]), p);
  if (N == 2) {
    double t0 = std::atan2(e[1], e[0]);
    std::vector<double> br;
    for (int k = -3; k <= 3; ++k) br.push_back(t0 + 0.5 * pi + k * pi);
    return integrate([&](double t) { return std::pow(std::abs(e[0] * std::cos(t) + e[1] * std::sin(t)), p); },
                     0.0, 2.0 * pi, br, opt)
        .value;
  }
  if (N == 3) {
    const double B = std::hypot(e[0], e[1]);
    const double phi0 = std::atan2(e[1], e[0]);
    QuadOptions inner = opt;
    inner.rel_tol = 1e-13;
    std::vector<double> tbr;
    // tangency of the great circle e.omega = 0 with a latitude circle
    double tt = std::atan2(B, std::abs(e[2]));
    tbr = {0.5 * pi - tt, 0.5 * pi + tt, tt, pi - tt};
    return integrate(
               [&](double th) {
                 double A = e[2] * std::cos(th), Bs = B * std::sin(th);
                 std::vector<double> br;
                 if (Bs > 0.0 && std::abs(A) <= Bs) {
                   double c = std::acos(-A / Bs);
                   for (int k = -2; k <= 2; ++k) {
                     br.push_back(phi0 + c + 2.0 * pi * k);
                     br.push_back(phi0 - c + 2.0 * pi * k);
                   }
                 }
                 return std::sin(th) *
                        integrate([&](double ph) { return std::pow(std::abs(A + Bs * std::cos(ph - phi0)), p); },
                                  0.0, 2.0 * pi, br, inner)
                            .value;
               },
               0.0, pi, tbr, opt)
        .value;
  }
  throw UnsupportedDimension("sphere_integral supports N <= 3");
}

}  // namespace lplab
