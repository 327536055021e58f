#include "arcmarkov/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "arcmarkov/errors.hpp"

namespace arcmarkov {

namespace {

GaussRule make_rule(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
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
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;
    r.w[i] = w;
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre order must be >= 1");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
  return it->second;
}

double gl_integrate(const RealFn& f, double a, double b, int n) {
  const GaussRule& g = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += g.w[i] * f(mid + half * g.x[i]);
  return s * half;
}

double gl_composite(const RealFn& f, double a, double b, int panels, int n) {
  double s = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) s += gl_integrate(f, a + p * h, a + (p + 1) * h, n);
  return s;
}

namespace {

struct Panel {
  double value, abs_value;
};

Panel eval_panel(const RealFn& f, const GaussRule& g, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0, sa = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    const double v = f(mid + half * g.x[i]);
    s += g.w[i] * v;
    sa += g.w[i] * std::abs(v);
  }
  return {s * half, sa * half};
}

void recurse(const RealFn& f, const GaussRule& g, double a, double b, const Panel& whole,
             double tol, int depth, QuadResult& out) {
  const double m = 0.5 * (a + b);
  const Panel left = eval_panel(f, g, a, m), right = eval_panel(f, g, m, b);
  const double refined = left.value + right.value;
  const double err = std::abs(refined - whole.value);
  if (err <= tol * std::max(1.0, whole.abs_value) || depth <= 0) {
    out.value += refined;
    out.abs_value += left.abs_value + right.abs_value;
    out.error += err;
    out.panels += 2;
    return;
  }
  recurse(f, g, a, m, left, tol, depth - 1, out);
  recurse(f, g, m, b, right, tol, depth - 1, out);
}

}  // namespace

QuadResult adaptive_gl(const RealFn& f, double a, double b, double tol, int n, int max_depth) {
  const GaussRule& g = gauss_legendre(n);
  QuadResult out;
  if (a == b) return out;
  recurse(f, g, a, b, eval_panel(f, g, a, b), tol, max_depth, out);
  return out;
}

}  // namespace arcmarkov
