#include "lplab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "lplab/errors.hpp"
#include "lplab/radial.hpp"

namespace lplab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dimension(int N) {
  if (N < 1 || N > 3) throw UnsupportedDimension("dimension must be 1, 2 or 3, got " + std::to_string(N));
}

double norm2(Point x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double ball_volume(int N) { return std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N + 1.0); }

std::vector<std::vector<double>> same_breaks(int N, std::vector<double> b) {
  return std::vector<std::vector<double>>(static_cast<std::size_t>(N), std::move(b));
}

Box unit_cube(int N) { return Box{std::vector<double>(N, 0.0), std::vector<double>(N, 1.0)}; }

bool in_closed_unit_cube(Point x) {
  for (double v : x)
    if (v < 0.0 || v > 1.0) return false;
  return true;
}

}  // namespace

std::string_view to_string(Smoothness s) {
  switch (s) {
    case Smoothness::indicator: return "indicator";
    case Smoothness::lipschitz: return "lipschitz";
    case Smoothness::smooth: return "smooth";
    case Smoothness::schwartz: return "schwartz";
    case Smoothness::band_limited: return "band_limited";
  }
  return "unknown";
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t k = 0; k < lo.size(); ++k) v *= hi[k] - lo[k];
  return v;
}

double Box::diameter() const {
  double s = 0.0;
  for (std::size_t k = 0; k < lo.size(); ++k) s += (hi[k] - lo[k]) * (hi[k] - lo[k]);
  return std::sqrt(s);
}

double TestFunction::at(std::initializer_list<double> x) const {
  std::vector<double> v(x);
  return evaluate(v);
}

TestFunction cube_indicator(int N) {
  check_dimension(N);
  TestFunction u;
  u.name = "cube_indicator";
  u.dimension = N;
  u.evaluate = [](Point x) { return in_closed_unit_cube(x) ? 1.0 : 0.0; };
  u.support_radius = std::sqrt(static_cast<double>(N));
  u.analytic_lp_norm = [](double) { return 1.0; };
  u.smoothness = Smoothness::indicator;
  u.breakpoints = same_breaks(N, {0.0, 1.0});
  u.sup_norm = 1.0;
  return u;
}

TestFunction gaussian(int N) {
  check_dimension(N);
  TestFunction u;
  u.name = "gaussian";
  u.dimension = N;
  u.evaluate = [](Point x) { return std::exp(-kPi * norm2(x)); };
  u.analytic_lp_norm = [N](double p) { return std::pow(p, -0.5 * N / p); };
  u.gradient = [](Point x, std::span<double> g) {
    double e = std::exp(-kPi * norm2(x));
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = -2.0 * kPi * x[k] * e;
  };
  // int (2 pi |x|)^p exp(-p pi |x|^2) dx in polar coordinates.
  u.analytic_gradient_lp_norm = [N](double p) {
    double area = N * ball_volume(N);
    double pow_p = std::pow(2.0 * kPi, p) * area * std::tgamma(0.5 * (p + N)) /
                   (2.0 * std::pow(p * kPi, 0.5 * (p + N)));
    return std::pow(pow_p, 1.0 / p);
  };
  u.smoothness = Smoothness::schwartz;
  u.envelope = GaussianEnvelope{1.0, kPi};
  u.breakpoints = same_breaks(N, {});
  u.sup_norm = 1.0;
  u.radial_profile = [](double r) { return std::exp(-kPi * r * r); };
  return u;
}

TestFunction ramp(int N) {
  check_dimension(N);
  TestFunction u;
  u.name = "ramp";
  u.dimension = N;
  u.evaluate = [](Point x) { return in_closed_unit_cube(x) ? x[0] : 0.0; };
  u.support_radius = std::sqrt(static_cast<double>(N));
  u.analytic_lp_norm = [](double p) { return std::pow(1.0 / (p + 1.0), 1.0 / p); };
  u.gradient = [](Point x, std::span<double> g) {
    bool inside = true;
    for (double v : x) inside = inside && v > 0.0 && v < 1.0;
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = (inside && k == 0) ? 1.0 : 0.0;
  };
  u.analytic_gradient_lp_norm = [](double) { return 1.0; };
  u.smoothness = Smoothness::lipschitz;
  u.breakpoints = same_breaks(N, {0.0, 1.0});
  u.natural_domain = unit_cube(N);
  u.sup_norm = 1.0;
  return u;
}

TestFunction bump(int N) {
  check_dimension(N);
  TestFunction u;
  u.name = "bump";
  u.dimension = N;
  u.evaluate = [](Point x) {
    double r2 = norm2(x);
    return r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
  };
  u.gradient = [](Point x, std::span<double> g) {
    double r2 = norm2(x);
    double f = 0.0;
    if (r2 < 1.0) {
      double d = 1.0 - r2;
      f = -2.0 * std::exp(1.0 - 1.0 / d) / (d * d);
    }
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = f * x[k];
  };
  u.support_radius = 1.0;
  u.smoothness = Smoothness::smooth;
  u.breakpoints = same_breaks(N, {});
  u.sup_norm = 1.0;
  u.radial_profile = [](double r) { return r < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r * r)) : 0.0; };
  return u;
}

double bandlimited_profile(double r) {
  const double center = 0.5 * (kBandlimitedInner + kBandlimitedOuter);
  const double half = 0.5 * (kBandlimitedOuter - kBandlimitedInner);
  double t = (r - center) / half;
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(-16.0 * t * t / (1.0 - t * t));
}

namespace {

constexpr double kBandlimitedRadius = 24.0;
constexpr int kBandlimitedNodes = 240;

std::shared_ptr<const RadialTable> bandlimited_table(int N) {
  static std::mutex mu;
  static std::shared_ptr<const RadialTable> tables[4];
  std::lock_guard<std::mutex> lock(mu);
  if (!tables[N]) {
    double h = N == 1 ? 2e-3 : 4e-3;
    RadialTable raw = inverse_radial_transform(N, bandlimited_profile, kBandlimitedInner,
                                               kBandlimitedOuter, kBandlimitedRadius, h,
                                               kBandlimitedNodes);
    tables[N] = std::make_shared<const RadialTable>(raw.scaled(bandlimited_scale(N)));
  }
  return tables[N];
}

// Defers the table build until the first evaluation.
struct LazyTable {
  int N;
  mutable std::shared_ptr<const RadialTable> table;
  mutable std::once_flag once;
  const RadialTable& get() const {
    std::call_once(once, [this] { table = bandlimited_table(N); });
    return *table;
  }
};

}  // namespace

double bandlimited_scale(int N) {
  check_dimension(N);
  return 1.0 / radial_transform_at_origin(N, bandlimited_profile, kBandlimitedInner,
                                          kBandlimitedOuter, kBandlimitedNodes);
}

TestFunction bandlimited(int N) {
  check_dimension(N);
  auto lazy = std::make_shared<LazyTable>();
  lazy->N = N;
  TestFunction u;
  u.name = "bandlimited";
  u.dimension = N;
  u.evaluate = [lazy](Point x) { return lazy->get().value(std::sqrt(norm2(x))); };
  u.gradient = [lazy](Point x, std::span<double> g) {
    double r = std::sqrt(norm2(x));
    double d = r > 0.0 ? lazy->get().derivative(r) / r : 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = d * x[k];
  };
  // Tabulated out to radius 24, where |u| is below 1e-11; zero beyond.
  u.support_radius = kBandlimitedRadius;
  u.smoothness = Smoothness::band_limited;
  u.breakpoints = same_breaks(N, {});
  u.sup_norm = 1.0;
  u.radial_profile = [lazy](double r) { return lazy->get().value(r); };
  return u;
}

TestFunction constant_one(int N) {
  check_dimension(N);
  TestFunction u;
  u.name = "constant_one";
  u.dimension = N;
  u.evaluate = [](Point) { return 1.0; };
  u.gradient = [](Point x, std::span<double> g) {
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = 0.0;
  };
  u.smoothness = Smoothness::smooth;
  u.in_lp = false;
  u.breakpoints = same_breaks(N, {});
  u.sup_norm = 1.0;
  u.radial_profile = [](double) { return 1.0; };
  return u;
}

TestFunction zero_function(int N) {
  check_dimension(N);
  TestFunction u;
  u.name = "zero";
  u.dimension = N;
  u.evaluate = [](Point) { return 0.0; };
  u.gradient = [](Point x, std::span<double> g) {
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = 0.0;
  };
  u.support_radius = 1.0;
  u.analytic_lp_norm = [](double) { return 0.0; };
  u.analytic_gradient_lp_norm = [](double) { return 0.0; };
  u.smoothness = Smoothness::smooth;
  u.breakpoints = same_breaks(N, {});
  u.sup_norm = 0.0;
  u.radial_profile = [](double) { return 0.0; };
  return u;
}

namespace {

using Factory = std::function<TestFunction(int)>;

std::mutex& registry_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::string, Factory>& registry() {
  static std::map<std::string, Factory> r{
      {"cube_indicator", cube_indicator}, {"gaussian", gaussian},
      {"ramp", ramp},                     {"bump", bump},
      {"bandlimited", bandlimited},       {"constant_one", constant_one},
      {"zero", zero_function},
  };
  return r;
}

}  // namespace

std::vector<TestFunction> catalog_standard(int N) {
  check_dimension(N);
  return {cube_indicator(N), gaussian(N), ramp(N), bump(N), bandlimited(N), constant_one(N)};
}

TestFunction catalog_lookup(std::string_view name, int N) {
  check_dimension(N);
  Factory f;
  {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(std::string(name));
    if (it == registry().end()) throw DomainError("unknown catalog function '" + std::string(name) + "'");
    f = it->second;
  }
  return f(N);
}

std::vector<std::string> catalog_names() {
  std::lock_guard<std::mutex> lock(registry_mutex());
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

void register_function(const std::string& name, std::function<TestFunction(int)> factory) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  registry()[name] = std::move(factory);
}

TestFunction scaled(const TestFunction& u, double c) {
  TestFunction v = u;
  v.name = u.name + "*" + std::to_string(c);
  auto f = u.evaluate;
  v.evaluate = [f, c](Point x) { return c * f(x); };
  if (u.analytic_lp_norm) {
    auto n = u.analytic_lp_norm;
    v.analytic_lp_norm = [n, c](double p) { return std::abs(c) * n(p); };
  }
  if (u.analytic_gradient_lp_norm) {
    auto n = u.analytic_gradient_lp_norm;
    v.analytic_gradient_lp_norm = [n, c](double p) { return std::abs(c) * n(p); };
  }
  if (u.gradient) {
    auto g = u.gradient;
    v.gradient = [g, c](Point x, std::span<double> out) {
      g(x, out);
      for (double& e : out) e *= c;
    };
  }
  if (u.radial_profile) {
    auto rp = u.radial_profile;
    v.radial_profile = [rp, c](double r) { return c * rp(r); };
  }
  if (u.envelope) v.envelope->amplitude *= std::abs(c);
  v.sup_norm = std::abs(c) * u.sup_norm;
  if (c == 0.0) v.support_radius = u.support_radius.value_or(1.0);
  return v;
}

TestFunction dilated(const TestFunction& u, double r) {
  if (!(r > 0.0)) throw DomainError("dilation factor must be positive");
  TestFunction v = u;
  v.name = u.name + "(x/" + std::to_string(r) + ")";
  const int N = u.dimension;
  auto f = u.evaluate;
  v.evaluate = [f, r, N](Point x) {
    double y[3];
    for (int k = 0; k < N; ++k) y[k] = x[k] / r;
    return f(std::span<const double>(y, N));
  };
  if (u.support_radius) v.support_radius = *u.support_radius * r;
  if (u.analytic_lp_norm) {
    auto n = u.analytic_lp_norm;
    v.analytic_lp_norm = [n, r, N](double p) { return std::pow(r, N / p) * n(p); };
  }
  if (u.analytic_gradient_lp_norm) {
    auto n = u.analytic_gradient_lp_norm;
    v.analytic_gradient_lp_norm = [n, r, N](double p) { return std::pow(r, N / p - 1.0) * n(p); };
  }
  if (u.gradient) {
    auto g = u.gradient;
    v.gradient = [g, r, N](Point x, std::span<double> out) {
      double y[3];
      for (int k = 0; k < N; ++k) y[k] = x[k] / r;
      g(std::span<const double>(y, N), out);
      for (double& e : out) e /= r;
    };
  }
  if (u.envelope) v.envelope->rate = u.envelope->rate / (r * r);
  if (u.radial_profile) {
    auto rp = u.radial_profile;
    v.radial_profile = [rp, r](double t) { return rp(t / r); };
  }
  for (auto& axis : v.breakpoints)
    for (double& b : axis) b *= r;
  if (u.natural_domain) {
    for (double& b : v.natural_domain->lo) b *= r;
    for (double& b : v.natural_domain->hi) b *= r;
  }
  return v;
}

TestFunction translated(const TestFunction& u, std::span<const double> shift) {
  const int N = u.dimension;
  if (static_cast<int>(shift.size()) != N) throw DomainError("translation vector has wrong dimension");
  TestFunction v = u;
  v.name = u.name + "(shifted)";
  v.radial_profile = nullptr;
  std::vector<double> z(shift.begin(), shift.end());
  auto f = u.evaluate;
  v.evaluate = [f, z, N](Point x) {
    double y[3];
    for (int k = 0; k < N; ++k) y[k] = x[k] - z[k];
    return f(std::span<const double>(y, N));
  };
  if (u.gradient) {
    auto g = u.gradient;
    v.gradient = [g, z, N](Point x, std::span<double> out) {
      double y[3];
      for (int k = 0; k < N; ++k) y[k] = x[k] - z[k];
      g(std::span<const double>(y, N), out);
    };
  }
  const double zn = std::sqrt(norm2(z));
  if (u.support_radius) v.support_radius = *u.support_radius + zn;
  // |x - z|^2 >= |x|^2 / 2 - |z|^2
  if (u.envelope)
    v.envelope = GaussianEnvelope{u.envelope->amplitude * std::exp(u.envelope->rate * zn * zn),
                                  0.5 * u.envelope->rate};
  for (int k = 0; k < N && k < static_cast<int>(v.breakpoints.size()); ++k)
    for (double& b : v.breakpoints[k]) b += z[k];
  if (u.natural_domain)
    for (int k = 0; k < N; ++k) {
      v.natural_domain->lo[k] += z[k];
      v.natural_domain->hi[k] += z[k];
    }
  return v;
}

TruncationPair truncate(const TestFunction& u, double R) {
  if (!(R > 0.0)) throw DomainError("truncation radius must be positive");
  const bool untouched = u.support_radius && *u.support_radius <= R;
  auto f = u.evaluate;
  const double R2 = R * R;

  TruncationPair tp;
  tp.radius = R;
  tp.inner = u;
  tp.inner.name = u.name + "_inner";
  tp.inner.evaluate = [f, R2](Point x) { return norm2(x) < R2 ? f(x) : 0.0; };
  tp.inner.support_radius = R;
  tp.inner.in_lp = true;
  tp.inner.envelope.reset();
  tp.inner.natural_domain.reset();
  tp.inner.analytic_gradient_lp_norm = nullptr;
  if (!untouched) {
    tp.inner.analytic_lp_norm = nullptr;
    tp.inner.smoothness = Smoothness::indicator;
  }

  tp.outer = u;
  tp.outer.name = u.name + "_outer";
  tp.outer.evaluate = [f, R2](Point x) { return norm2(x) < R2 ? 0.0 : f(x); };
  tp.outer.analytic_lp_norm = nullptr;
  tp.outer.analytic_gradient_lp_norm = nullptr;
  tp.outer.natural_domain.reset();
  if (untouched) {
    tp.outer.evaluate = [](Point) { return 0.0; };
    tp.outer.analytic_lp_norm = [](double) { return 0.0; };
    tp.outer.sup_norm = 0.0;
  } else {
    tp.outer.smoothness = Smoothness::indicator;
  }
  if (u.radial_profile) {
    auto rp = u.radial_profile;
    tp.inner.radial_profile = [rp, R](double r) { return r < R ? rp(r) : 0.0; };
    tp.outer.radial_profile = [rp, R, untouched](double r) { return (untouched || r < R) ? 0.0 : rp(r); };
  }
  for (auto* part : {&tp.inner, &tp.outer})
    for (auto& axis : part->breakpoints) {
      axis.push_back(-R);
      axis.push_back(R);
    }
  return tp;
}

double upper_gamma_half(int N, double z) {
  switch (N) {
    case 1: return std::erfc(std::sqrt(z));
    case 2: return std::exp(-z);
    case 3: return std::erfc(std::sqrt(z)) + 2.0 * std::sqrt(z / kPi) * std::exp(-z);
    default: throw UnsupportedDimension("upper_gamma_half: N must be 1, 2 or 3");
  }
}

double gaussian_tail_mass(int N, double rate, double R) {
  return std::pow(kPi / rate, 0.5 * N) * upper_gamma_half(N, rate * R * R);
}

double integration_halfwidth(const TestFunction& u, double p, double tail_mass) {
  if (!u.in_lp) throw NotInLpError(u.name + " is not in L^p");
  if (u.support_radius) return *u.support_radius;
  if (!u.envelope) throw DomainError(u.name + ": no support radius or decay envelope");
  const double A = std::pow(u.envelope->amplitude, p);
  const double rate = p * u.envelope->rate;
  const int N = u.dimension;
  double lo = 0.0, hi = 1.0;
  while (A * gaussian_tail_mass(N, rate, hi) > tail_mass) hi *= 2.0;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (A * gaussian_tail_mass(N, rate, mid) > tail_mass ? lo : hi) = mid;
  }
  return hi;
}

namespace {

QuadOptions norm_options(int N, const QuadOptions& opt) {
  QuadOptions o = opt;
  if (N == 2) o.max_panels = std::min(o.max_panels, 300);
  if (N == 3) {
    o.rel_tol = std::max(o.rel_tol, 1e-7);
    o.abs_tol = std::max(o.abs_tol, 1e-12);
    o.max_panels = std::min(o.max_panels, 100);
  }
  return o;
}

}  // namespace

QuadResult lp_norm_quadrature(const TestFunction& u, double p, const QuadOptions& opt) {
  if (!(p >= 1.0)) throw DomainError("p must be >= 1");
  if (!u.in_lp) throw NotInLpError(u.name + " is not in L^p (e.g. u identically 1)");
  const int N = u.dimension;
  const double L = integration_halfwidth(u, p);
  if (u.radial_profile && N > 1) {
    auto rp = u.radial_profile;
    const double area = N * ball_volume(N);
    std::vector<double> rb;
    for (const auto& axis : u.breakpoints)
      for (double b : axis) rb.push_back(std::abs(b));
    QuadResult q = integrate(
        [&](double r) { return area * std::pow(r, N - 1) * std::pow(std::abs(rp(r)), p); }, 0.0,
        L * std::sqrt(static_cast<double>(N)), rb, opt);
    return q;
  }
  std::vector<double> lo(N, -L), hi(N, L);
  auto f = u.evaluate;
  QuadResult q = integrate_box([&](Point x) { return std::pow(std::abs(f(x)), p); }, lo, hi,
                               u.breakpoints, norm_options(N, opt));
  return q;
}

double lp_norm(const TestFunction& u, double p, NormMethod method) {
  if (!u.in_lp) throw NotInLpError(u.name + " is not in L^p (e.g. u identically 1)");
  if (method == NormMethod::analytic) {
    if (!u.analytic_lp_norm) throw DomainError(u.name + ": no analytic L^p oracle");
    return u.analytic_lp_norm(p);
  }
  return std::pow(std::max(0.0, lp_norm_quadrature(u, p).value), 1.0 / p);
}

QuadResult gradient_lp_norm_pow_quadrature(const TestFunction& u, double p, const QuadOptions& opt) {
  if (!u.gradient) throw DomainError(u.name + ": no gradient available");
  const int N = u.dimension;
  std::vector<double> lo, hi;
  std::vector<std::vector<double>> breaks = u.breakpoints;
  if (u.natural_domain) {
    lo = u.natural_domain->lo;
    hi = u.natural_domain->hi;
  } else {
    if (!u.in_lp) throw NotInLpError(u.name + " is not in L^p");
    const double L = integration_halfwidth(u, p) + 1.0;
    lo.assign(N, -L);
    hi.assign(N, L);
  }
  auto g = u.gradient;
  return integrate_box(
      [&](Point x) {
        double gv[3];
        g(x, std::span<double>(gv, N));
        double s = 0.0;
        for (int k = 0; k < N; ++k) s += gv[k] * gv[k];
        return std::pow(s, 0.5 * p);
      },
      lo, hi, breaks, norm_options(N, opt));
}

double gradient_lp_norm(const TestFunction& u, double p) {
  if (u.analytic_gradient_lp_norm) return u.analytic_gradient_lp_norm(p);
  return std::pow(std::max(0.0, gradient_lp_norm_pow_quadrature(u, p).value), 1.0 / p);
}

double max_gradient_norm(const TestFunction& u, int samples_per_axis) {
  if (!u.gradient) throw DomainError(u.name + ": no gradient available");
  const int N = u.dimension;
  if (samples_per_axis <= 0) samples_per_axis = N == 1 ? 4001 : (N == 2 ? 201 : 41);
  double L = u.support_radius ? *u.support_radius : integration_halfwidth(u, 1.0);
  std::vector<int> idx(N, 0);
  double best = 0.0;
  double x[3], g[3];
  for (;;) {
    for (int k = 0; k < N; ++k) x[k] = -L + 2.0 * L * idx[k] / (samples_per_axis - 1);
    u.gradient(std::span<const double>(x, N), std::span<double>(g, N));
    double s = 0.0;
    for (int k = 0; k < N; ++k) s += g[k] * g[k];
    best = std::max(best, std::sqrt(s));
    int k = 0;
    while (k < N && ++idx[k] == samples_per_axis) idx[k++] = 0;
    if (k == N) break;
  }
  return best;
}

}  // namespace lplab
