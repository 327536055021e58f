#include "arcmarkov/tset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "arcmarkov/composition.hpp"
#include "arcmarkov/errors.hpp"
#include "arcmarkov/roots.hpp"

namespace arcmarkov::tset {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void not_admissible(const std::string& why) {
  throw Error(ErrorCode::NotAdmissible, "polynomial is not admissible: " + why);
}
}  // namespace

TSetDescriptor analyze_admissible(const TrigPoly& U, const Tolerances& tol) {
  if (U.half_shift()) not_admissible("half-integer frequencies");
  const int N = U.degree();
  if (N < 1) not_admissible("degree must be at least 1");

  const TrigPoly dU = U.derivative();
  auto f = [&](double t) { return U(t); };
  auto df = [&](double t) { return dU(t); };

  // Critical points on one period; the grid start is offset so that grid
  // nodes avoid the symmetric points of typical inputs.
  const double offset = -kPi + 0.1234567891 * kTwoPi / (64.0 * N);
  std::vector<double> crit;
  for (const auto& [lo, hi] : sign_change_brackets(df, offset, offset + kTwoPi, 64 * N)) {
    double c = find_root(df, lo, hi);
    if (c >= kPi) c -= kTwoPi;
    crit.push_back(c);
  }
  std::sort(crit.begin(), crit.end());
  if (static_cast<int>(crit.size()) != 2 * N)
    not_admissible("expected " + std::to_string(2 * N) + " critical points, found " +
                   std::to_string(crit.size()));

  const int nc = static_cast<int>(crit.size());
  std::vector<double> vals(nc);
  for (int i = 0; i < nc; ++i) vals[i] = U(crit[i]);
  bool some_outside = false;
  for (int i = 0; i < nc; ++i) {
    const double prev = vals[(i + nc - 1) % nc], next = vals[(i + 1) % nc];
    const bool is_max = vals[i] > prev && vals[i] > next;
    const bool is_min = vals[i] < prev && vals[i] < next;
    if (!is_max && !is_min) not_admissible("critical values do not alternate");
    if (is_max && vals[i] < 1.0 - tol.touch_tol) not_admissible("a local maximum is below 1");
    if (is_min && vals[i] > -1.0 + tol.touch_tol) not_admissible("a local minimum is above -1");
    if (std::abs(vals[i]) > 1.0 + tol.touch_tol) some_outside = true;
  }
  if (!some_outside) not_admissible("{|U| <= 1} is the whole circle");

  TSetDescriptor d;
  d.U = U;
  d.N = N;
  d.critical_points = crit;
  for (int i = 0; i < nc; ++i) {
    const double c0 = crit[i];
    const double c1 = (i + 1 < nc) ? crit[i + 1] : crit[0] + kTwoPi;
    const double v0 = vals[i], v1 = vals[(i + 1) % nc];
    auto level_point = [&](double level) {
      if (std::abs(v0 - level) <= tol.touch_tol) return c0;
      if (std::abs(v1 - level) <= tol.touch_tol) return c1;
      return find_root([&](double t) { return f(t) - level; }, c0, c1);
    };
    double p = level_point(1.0), q = level_point(-1.0);
    double lo = std::min(p, q), hi = std::max(p, q);
    if (lo >= kPi) {
      lo -= kTwoPi;
      hi -= kTwoPi;
    }
    if (hi >= kPi || lo <= -kPi) not_admissible("a branch crosses the point t = pi");
    d.branches.push_back({lo, hi});
    d.branch_sign.push_back(v1 > v0 ? 1 : -1);
  }
  std::vector<std::size_t> order(d.branches.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return d.branches[x].lo < d.branches[y].lo; });
  std::vector<Interval> br;
  std::vector<int> sg;
  for (std::size_t i : order) {
    br.push_back(d.branches[i]);
    sg.push_back(d.branch_sign[i]);
  }
  d.branches = std::move(br);
  d.branch_sign = std::move(sg);

  // Components: branches sharing an endpoint (touching critical values).
  std::vector<Interval> comps;
  for (const auto& b : d.branches) {
    if (!comps.empty() && std::abs(b.lo - comps.back().hi) <= 1e-12)
      comps.back().hi = b.hi;
    else
      comps.push_back(b);
  }
  if (comps.size() > 1 && std::abs(comps.front().lo + kTwoPi - comps.back().hi) <= 1e-12)
    not_admissible("a component wraps through t = pi");
  try {
    d.e_set = IntervalSet(comps);
  } catch (const Error& e) {
    not_admissible(e.what());
  }

  for (const auto& b : d.branches) {
    for (double x : {b.lo, b.hi}) {
      bool seen = false;
      for (double y : d.extremal_points)
        if (std::abs(x - y) <= 1e-12) seen = true;
      if (!seen) d.extremal_points.push_back(x);
    }
  }
  std::sort(d.extremal_points.begin(), d.extremal_points.end());
  return d;
}

int branch_of(const TSetDescriptor& d, double t, double tol) {
  for (std::size_t j = 0; j < d.branches.size(); ++j)
    if (t >= d.branches[j].lo - tol && t <= d.branches[j].hi + tol) return static_cast<int>(j);
  return -1;
}

double level_inverse(const TSetDescriptor& d, int j, double y) {
  if (j < 0 || j >= static_cast<int>(d.branches.size()))
    throw Error(ErrorCode::OutOfRange, "branch index out of range");
  y = std::clamp(y, -1.0, 1.0);
  const Interval& B = d.branches[j];
  auto h = [&](double s) { return d.U(s) - y; };
  // U equals -sign at the left end and +sign at the right end of the branch
  const double sgn = static_cast<double>(d.branch_sign[j]);
  const double hlo = -sgn - y, hhi = sgn - y;
  if (hlo == 0.0) return B.lo;
  if (hhi == 0.0) return B.hi;
  double s = find_root(h, B.lo, B.hi, hlo, hhi);
  const TrigPoly dU = d.U.derivative();
  for (int it = 0; it < 3; ++it) {
    const double du = dU(s);
    if (du == 0.0) break;
    const double cand = std::clamp(s - h(s) / du, B.lo, B.hi);
    if (std::abs(h(cand)) >= std::abs(h(s))) break;
    s = cand;
  }
  return s;
}

double branch_inverse(const TSetDescriptor& d, int j, double t) {
  if (branch_of(d, t) < 0) throw Error(ErrorCode::OutOfRange, "point is outside the T-set");
  if (j >= 0 && j < static_cast<int>(d.branches.size()) && t >= d.branches[j].lo &&
      t <= d.branches[j].hi)
    return t;
  return level_inverse(d, j, d.U(t));
}

TrigPoly extremal_sequence(const TSetDescriptor& d, int l) {
  if (l < 0) throw Error(ErrorCode::InvalidArgument, "Chebyshev index must be >= 0");
  TrigPoly t0 = TrigPoly::constant(1.0), t1 = d.U;
  if (l == 0) return t0;
  const TrigPoly twoU = d.U * 2.0;
  for (int j = 2; j <= l; ++j) {
    TrigPoly t2 = twoU * t1 - t0;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

EndpointIdentity endpoint_derivative_identity(const TSetDescriptor& d,
                                              const equilibrium::EquilibriumMeasure& eq,
                                              double a) {
  EndpointIdentity r;
  r.u_prime_abs = std::abs(d.U.derivative()(a));
  r.omega = equilibrium::omega_endpoint(eq, a).omega;
  r.rhs = 8.0 * kPi * kPi * d.N * d.N * r.omega * r.omega;
  r.rel_discrepancy = std::abs(r.u_prime_abs - r.rhs) / r.rhs;
  return r;
}

Symmetrized::Symmetrized(const TSetDescriptor& d, TrigPoly V)
    : d_(d), V_(std::move(V)), cache_(std::make_shared<Cache>()) {}

double Symmetrized::at_level(double y) const {
  double s = 0.0;
  for (int j = 0; j < static_cast<int>(d_.branches.size()); ++j) s += V_(level_inverse(d_, j, y));
  return s;
}

double Symmetrized::operator()(double t) const {
  if (branch_of(d_, t) < 0) throw Error(ErrorCode::OutOfRange, "point is outside the T-set");
  return at_level(d_.U(t));
}

const ChebSeries& Symmetrized::as_polynomial() const {
  std::call_once(cache_->once, [this] {
    // T* has trig degree <= deg V, hence degree <= deg V / N in U.
    const int n = V_.degree() / d_.N + 8;
    cache_->poly =
        ChebSeries::interpolate([this](double y) { return at_level(y); }, -1.0, 1.0, n);
  });
  return cache_->poly;
}

double Symmetrized::derivative(double t, int k) const {
  return composition::compose_derivative(as_polynomial(), d_.U, t, k);
}

Symmetrized symmetrize(const TSetDescriptor& d, const TrigPoly& V) { return Symmetrized(d, V); }

TrigPoly single_interval_U(double theta0) {
  if (!(theta0 > 0.0 && theta0 < kPi))
    throw Error(ErrorCode::InvalidArgument, "theta0 must lie in (0, pi)");
  const double c = std::cos(theta0);
  return TrigPoly({-(1.0 + c) / (1.0 - c), 2.0 / (1.0 - c)}, {0.0});
}

TrigPoly two_interval_U() { return TrigPoly({7.0 / 12.0, 1.0, 1.5}, {0.0, 0.0}); }

}  // namespace arcmarkov::tset
