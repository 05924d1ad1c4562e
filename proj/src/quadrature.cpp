#include "lplab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "lplab/errors.hpp"

namespace lplab {

namespace {

GaussRule build_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[n - 1 - i] = x;
    r.nodes[i] = -x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

double gl_apply(const Integrand1& f, double a, double b, const GaussRule& r) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a), s = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(c + h * r.nodes[i]);
  return s * h;
}

std::vector<double> segment_points(double a, double b, std::span<const double> breaks) {
  std::vector<double> pts{a};
  std::vector<double> inner;
  for (double t : breaks)
    if (t > a && t < b) inner.push_back(t);
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  pts.insert(pts.end(), inner.begin(), inner.end());
  pts.push_back(b);
  return pts;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: order must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
  return *slot;
}

QuadResult integrate(const Integrand1& f, double a, double b,
                     std::span<const double> breaks, const QuadOptions& opt) {
  QuadResult out;
  if (!(b > a)) return out;
  const GaussRule& rule = gauss_legendre(opt.order);
  auto pts = segment_points(a, b, breaks);

  // Global adaptive bisection: always split the panel with the largest
  // error estimate |whole - (left + right)|.
  struct Panel {
    double a, b, whole, left, right, err;
    int depth;
  };
  auto make = [&](double pa, double pb, double whole, int depth) {
    double m = 0.5 * (pa + pb);
    double l = gl_apply(f, pa, m, rule), r = gl_apply(f, m, pb, rule);
    return Panel{pa, pb, whole, l, r, std::abs(l + r - whole), depth};
  };
  auto worse = [](const Panel& x, const Panel& y) { return x.err < y.err; };
  std::vector<Panel> heap;
  double total = 0.0, total_err = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    Panel p = make(pts[k], pts[k + 1], gl_apply(f, pts[k], pts[k + 1], rule), 0);
    total += p.left + p.right;
    total_err += p.err;
    heap.push_back(p);
  }
  std::make_heap(heap.begin(), heap.end(), worse);
  std::vector<Panel> finished;
  const std::size_t max_panels = static_cast<std::size_t>(opt.max_panels);
  while (!heap.empty() && total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) &&
         heap.size() + finished.size() < max_panels) {
    std::pop_heap(heap.begin(), heap.end(), worse);
    Panel p = heap.back();
    heap.pop_back();
    if (p.depth >= opt.max_depth) {
      finished.push_back(p);
      continue;
    }
    double m = 0.5 * (p.a + p.b);
    Panel l = make(p.a, m, p.left, p.depth + 1);
    Panel r = make(m, p.b, p.right, p.depth + 1);
    total += (l.left + l.right + r.left + r.right) - (p.left + p.right);
    total_err += l.err + r.err - p.err;
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(r);
    std::push_heap(heap.begin(), heap.end(), worse);
  }
  // Recompute sums from scratch to avoid drift from incremental updates.
  for (const auto* set : {&heap, &finished})
    for (const Panel& p : *set) {
      out.value += p.left + p.right;
      out.error += p.err;
    }
  return out;
}

QuadResult integrate_box(const IntegrandN& f, std::span<const double> lo,
                         std::span<const double> hi,
                         const std::vector<std::vector<double>>& breaks,
                         const QuadOptions& opt) {
  const std::size_t n = lo.size();
  std::vector<double> point(n, 0.0);
  double inner_error = 0.0;

  std::function<double(std::size_t)> level = [&](std::size_t axis) -> double {
    std::span<const double> br;
    if (axis < breaks.size()) br = breaks[axis];
    if (axis + 1 == n) {
      QuadResult q = integrate(
          [&](double t) {
            point[axis] = t;
            return f(point);
          },
          lo[axis], hi[axis], br, opt);
      inner_error = std::max(inner_error, q.error);
      return q.value;
    }
    QuadOptions outer = opt;
    QuadResult q = integrate(
        [&](double t) {
          point[axis] = t;
          return level(axis + 1);
        },
        lo[axis], hi[axis], br, outer);
    inner_error = std::max(inner_error, q.error);
    return q.value;
  };

  QuadResult out;
  if (n == 0) {
    out.value = f(point);
    return out;
  }
  double vol = 1.0;
  for (std::size_t k = 0; k < n; ++k) vol *= std::max(0.0, hi[k] - lo[k]);
  if (vol == 0.0) return out;
  out.value = level(0);
  out.error = inner_error * std::max(1.0, vol);
  return out;
}

NodeSet composite_gauss(double a, double b, std::span<const double> breaks,
                        int total_nodes, int order) {
  NodeSet ns;
  if (!(b > a)) return ns;
  const GaussRule& rule = gauss_legendre(order);
  auto pts = segment_points(a, b, breaks);
  const int panels_total = std::max(1, total_nodes / order);
  const double width = b - a;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    double sa = pts[k], sb = pts[k + 1];
    int panels = std::max(1, static_cast<int>(std::lround(panels_total * (sb - sa) / width)));
    double h = (sb - sa) / panels;
    for (int q = 0; q < panels; ++q) {
      double c = sa + (q + 0.5) * h;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        ns.x.push_back(c + 0.5 * h * rule.nodes[i]);
        ns.w.push_back(0.5 * h * rule.weights[i]);
      }
    }
  }
  return ns;
}

}  // namespace lplab
