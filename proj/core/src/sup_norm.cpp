#include "arcmarkov/sup_norm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "arcmarkov/roots.hpp"

namespace arcmarkov {

SupResult sup_norm_fn(const std::function<double(double)>& f,
                      const std::function<double(double)>& df, double lo, double hi,
                      int samples) {
  samples = std::max(samples, 3);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  std::vector<double> xs(samples), vs(samples);
  for (int i = 0; i < samples; ++i) {
    xs[i] = (i == 0) ? lo
            : (i == samples - 1)
                ? hi
                : mid - half * std::cos(std::numbers::pi * i / (samples - 1));
    vs[i] = std::abs(f(xs[i]));
  }
  SupResult best{vs[0], xs[0]};
  for (int i = 1; i < samples; ++i)
    if (vs[i] > best.value) best = {vs[i], xs[i]};
  if (samples < 3 || best.value == 0.0) return best;

  // Local maxima close to the sampled maximum are refined; anything lower
  // cannot overtake it at this sampling density.
  const double threshold = 0.99 * best.value;
  for (int i = 1; i + 1 < samples; ++i) {
    if (vs[i] < threshold || vs[i] < vs[i - 1] || vs[i] < vs[i + 1]) continue;
    const double a = xs[i - 1], b = xs[i + 1];
    const double da = df(a), db = df(b);
    if ((da > 0.0) == (db > 0.0) || da == 0.0 || db == 0.0) continue;
    const double x = find_root(df, a, b, da, db);
    const double v = std::abs(f(x));
    if (v > best.value) best = {v, x};
  }
  return best;
}

SupResult sup_norm(const TrigPoly& p, double lo, double hi) {
  const TrigPoly dp = p.derivative();
  const int samples = std::max(4096, 32 * p.degree());
  return sup_norm_fn([&](double t) { return p(t); }, [&](double t) { return dp(t); }, lo, hi,
                     samples);
}

SupResult sup_norm(const TrigPoly& p, const IntervalSet& E) {
  SupResult best{};
  bool first = true;
  for (const auto& I : E.intervals()) {
    const SupResult r = sup_norm(p, I.lo, I.hi);
    if (first || r.value > best.value) best = r;
    first = false;
  }
  return best;
}

SupResult sup_norm(const ChebSeries& p, double lo, double hi) {
  // max over theta of the equivalent cosine polynomial on the mapped interval
  const TrigPoly c = p.to_cosine_poly();
  const double th_hi = p.theta_of(lo), th_lo = p.theta_of(hi);
  const double mid = 0.5 * (p.lo() + p.hi()), half = 0.5 * (p.hi() - p.lo());
  SupResult r = sup_norm(c, th_lo, th_hi);
  r.argmax = mid + half * std::cos(r.argmax);
  return r;
}

}  // namespace arcmarkov
