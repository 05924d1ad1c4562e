#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "lplab/errors.hpp"
#include "lplab/norms.hpp"
#include "lplab/quadrature.hpp"

namespace lplab {

namespace {

// Power law D(h) ~ c |h|^alpha of the translation difference near h = 0.
double small_h_exponent(const TestFunction& u, double p, const GagliardoDomain& dom) {
  if (u.smoothness == Smoothness::indicator) return 1.0;
  if (dom.all_space && u.natural_domain) return 1.0;
  return p;
}

struct Dir {
  std::array<double, 3> w;
  double weight;
};

std::vector<Dir> half_sphere(int N, int count, bool radial) {
  const double pi = std::numbers::pi;
  std::vector<Dir> d;
  if (N == 1) {
    d.push_back({{1.0, 0.0, 0.0}, 2.0});  // D(-h) = D(h)
    return d;
  }
  const double area = N * unit_ball_volume(N);
  if (radial) {
    d.push_back({{1.0, 0.0, 0.0}, area});
    return d;
  }
  if (N == 2) {
    for (int k = 0; k < count; ++k) {
      double t = pi * (k + 0.5) / count;
      d.push_back({{std::cos(t), std::sin(t), 0.0}, 2.0 * pi / count});
    }
    return d;
  }
  const int nt = std::max(2, count / 2);
  const GaussRule& g = gauss_legendre(nt);
  for (int i = 0; i < nt; ++i) {
    double ct = 0.5 * (g.nodes[i] + 1.0), st = std::sqrt(1.0 - ct * ct);
    for (int k = 0; k < count; ++k) {
      double ph = 2.0 * pi * (k + 0.5) / count;
      d.push_back({{st * std::cos(ph), st * std::sin(ph), ct}, 2.0 * 0.5 * g.weights[i] * 2.0 * pi / count});
    }
  }
  return d;
}

class TranslationDifference {
 public:
  TranslationDifference(const TestFunction& u, double p, const GagliardoDomain& dom, double R,
                        double rel_tol)
      : u_(u), p_(p), dom_(dom), R_(R), N_(u.dimension) {
    opt_.rel_tol = rel_tol;
    opt_.abs_tol = 1e-300;
    if (N_ == 2) {
      opt_.rel_tol = std::max(rel_tol, 1e-6);
      opt_.max_panels = 300;
    } else if (N_ == 3) {
      opt_.rel_tol = std::max(rel_tol, 1e-6);
      opt_.max_panels = 60;
    }
  }

  // D(h) = int |u(x + h) - u(x)|^p over {x : x, x + h in the domain}.
  double operator()(std::span<const double> h) const {
    std::vector<double> lo(N_), hi(N_);
    std::vector<std::vector<double>> br(N_);
    for (int k = 0; k < N_; ++k) {
      if (dom_.all_space) {
        lo[k] = std::min(-R_, -R_ - h[k]);
        hi[k] = std::max(R_, R_ - h[k]);
      } else {
        lo[k] = std::max(dom_.box.lo[k], dom_.box.lo[k] - h[k]);
        hi[k] = std::min(dom_.box.hi[k], dom_.box.hi[k] - h[k]);
        if (!(hi[k] > lo[k])) return 0.0;
      }
      if (k < static_cast<int>(u_.breakpoints.size()))
        for (double b : u_.breakpoints[k]) {
          br[k].push_back(b);
          br[k].push_back(b - h[k]);
        }
    }
    std::vector<double> y(N_);
    auto f = [&](std::span<const double> x) {
      for (int k = 0; k < N_; ++k) y[k] = x[k] + h[k];
      return std::pow(std::abs(u_(y) - u_(x)), p_);
    };
    if (N_ == 1) {
      std::vector<double> x1(1);
      return integrate(
                 [&](double t) {
                   x1[0] = t;
                   return f(x1);
                 },
                 lo[0], hi[0], br[0], opt_)
          .value;
    }
    return integrate_box(f, lo, hi, br, opt_).value;
  }

 private:
  const TestFunction& u_;
  double p_;
  const GagliardoDomain& dom_;
  double R_;
  int N_;
  QuadOptions opt_;
};

}  // namespace

std::vector<SeminormEstimate> gagliardo_seminorms(const TestFunction& u, std::span<const double> s_values,
                                                  double p, const GagliardoDomain& domain,
                                                  const GagliardoOptions& opt) {
  if (!(p >= 1.0)) throw DomainError("p must be >= 1");
  for (double s : s_values)
    if (!(s > 0.0 && s < 1.0)) throw DomainError("Gagliardo seminorm needs 0 < s < 1");
  const int N = u.dimension;
  if (!domain.all_space && static_cast<int>(domain.box.lo.size()) != N)
    throw DomainError("box domain has wrong dimension");

  double R = 0.0, norm_pow = 0.0;
  if (domain.all_space) {
    if (!u.in_lp) throw NotInLpError(u.name + " is not in L^p");
    R = integration_halfwidth(u, p, 1e-14);
    norm_pow = lp_norm_pow(u, p);
  }
  const double alpha = small_h_exponent(u, p, domain);
  for (double s : s_values)
    if (alpha <= s * p)
      throw SingularityError("diagonal singularity not integrable: |h|^" + std::to_string(alpha) +
                             " against |h|^{-N-" + std::to_string(s * p) + "}");

  const double r_max = domain.all_space ? 2.0 * R * (N == 1 ? 1.0 : std::sqrt(1.0 * N)) : domain.box.diameter();
  // Smooth or Lipschitz D(h) is a clean power law well before 1e-3; the
  // small-h model takes over below that and its exponent fit bounds the error.
  double r_min = opt.h_min;
  if (r_min <= 0.0) r_min = (N == 1 || alpha != p) ? 1e-6 : 1e-3;
  std::vector<double> edges;
  for (double r = r_min; r < r_max; r *= 2.0) edges.push_back(r);
  edges.push_back(r_max);
  if (N == 1) {
    std::vector<double> b = u.breakpoints.empty() ? std::vector<double>{} : u.breakpoints[0];
    if (!domain.all_space) {
      b.push_back(domain.box.lo[0]);
      b.push_back(domain.box.hi[0]);
    }
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        double d = std::abs(b[i] - b[j]);
        if (d > r_min && d < r_max) edges.push_back(d);
      }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-14 * std::max(1.0, b); }),
              edges.end());

  const bool radial = u.radial_profile && domain.all_space;
  const auto dirs = half_sphere(N, opt.directions, radial);
  const TranslationDifference D(u, p, domain, R, opt.rel_tol);
  const GaussRule& g_hi = gauss_legendre(opt.gauss_points);
  const GaussRule& g_lo = gauss_legendre(std::max(2, opt.gauss_points / 2 + 2));

  const std::size_t S = s_values.size();
  std::vector<double> hi_sum(S, 0.0), lo_sum(S, 0.0), small(S, 0.0), model_err(S, 0.0);
  std::vector<double> h(N);
  auto D_at = [&](const Dir& d, double r) {
    for (int k = 0; k < N; ++k) h[k] = r * d.w[k];
    return D(h);
  };
  for (const Dir& d : dirs) {
    const double d0 = D_at(d, r_min), d1 = D_at(d, 2.0 * r_min);
    const double alpha_fit = (d0 > 0.0 && d1 > 0.0) ? std::log2(d1 / d0) : alpha;
    for (std::size_t i = 0; i < S; ++i) {
      const double sp = s_values[i] * p;
      const double c = d0 / std::pow(r_min, alpha);
      const double part = d.weight * c * std::pow(r_min, alpha - sp) / (alpha - sp);
      small[i] += part;
      const double fit = alpha_fit > sp ? d.weight * d0 * std::pow(r_min, -sp) / (alpha_fit - sp) : 2.0 * part;
      model_err[i] += std::abs(fit - part);
    }
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      const double a = edges[e], b = edges[e + 1];
      const double c = 0.5 * (a + b), w = 0.5 * (b - a);
      for (int pass = 0; pass < 2; ++pass) {
        const GaussRule& g = pass == 0 ? g_hi : g_lo;
        auto& sum = pass == 0 ? hi_sum : lo_sum;
        for (std::size_t k = 0; k < g.nodes.size(); ++k) {
          const double r = c + w * g.nodes[k];
          const double dv = D_at(d, r) * d.weight * w * g.weights[k];
          for (std::size_t i = 0; i < S; ++i) sum[i] += dv * std::pow(r, -1.0 - s_values[i] * p);
        }
      }
    }
  }

  std::vector<SeminormEstimate> out(S);
  const double area = N * unit_ball_volume(N);
  for (std::size_t i = 0; i < S; ++i) {
    const double sp = s_values[i] * p;
    double tail = domain.all_space ? 2.0 * norm_pow * area * std::pow(r_max, -sp) / sp : 0.0;
    SeminormEstimate& est = out[i];
    est.s = s_values[i];
    est.pow_value = hi_sum[i] + small[i] + tail;
    est.value = std::pow(std::max(0.0, est.pow_value), 1.0 / p);
    est.error = std::abs(hi_sum[i] - lo_sum[i]) + model_err[i];
    est.small_h_part = small[i];
  }
  return out;
}

SeminormEstimate gagliardo_seminorm(const TestFunction& u, double s, double p, const GagliardoDomain& domain,
                                    const GagliardoOptions& opt) {
  double sv[1] = {s};
  return gagliardo_seminorms(u, sv, p, domain, opt).front();
}

}  // namespace lplab
