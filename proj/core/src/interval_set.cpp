#include "arcmarkov/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "arcmarkov/errors.hpp"

namespace arcmarkov {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEndpointTol = 1e-12;
}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> intervals) : iv_(std::move(intervals)) {
  for (std::size_t i = 0; i < iv_.size(); ++i) {
    const auto& I = iv_[i];
    if (!std::isfinite(I.lo) || !std::isfinite(I.hi) || !(I.lo < I.hi))
      throw Error(ErrorCode::InvalidArgument, "interval must satisfy lo < hi");
    if (!(I.lo > -kPi) || !(I.hi < kPi))
      throw Error(ErrorCode::InvalidArgument, "interval must lie in (-pi, pi)");
    if (i > 0 && !(iv_[i - 1].hi < I.lo))
      throw Error(ErrorCode::InvalidArgument, "intervals must be disjoint and increasing");
  }
}

double IntervalSet::measure() const {
  double m = 0.0;
  for (const auto& I : iv_) m += I.length();
  return m;
}

int IntervalSet::component_of(double t, double tol) const {
  for (std::size_t i = 0; i < iv_.size(); ++i)
    if (t >= iv_[i].lo - tol && t <= iv_[i].hi + tol) return static_cast<int>(i);
  return -1;
}

bool IntervalSet::contains(double t, double tol) const { return component_of(t, tol) >= 0; }

bool IntervalSet::subset_of(const IntervalSet& other, double tol) const {
  for (const auto& I : iv_) {
    bool inside = false;
    for (const auto& J : other.iv_)
      if (I.lo >= J.lo - tol && I.hi <= J.hi + tol) inside = true;
    if (!inside) return false;
  }
  return true;
}

double IntervalSet::distance_to_boundary(double t) const {
  double d = INFINITY;
  for (const auto& I : iv_) d = std::min({d, std::abs(t - I.lo), std::abs(t - I.hi)});
  return d;
}

int IntervalSet::right_endpoint_index(double a) const {
  for (std::size_t i = 0; i < iv_.size(); ++i)
    if (std::abs(iv_[i].hi - a) <= kEndpointTol * (1.0 + std::abs(a))) return static_cast<int>(i);
  return -1;
}

double IntervalSet::max_rho(double a) const {
  const int i = right_endpoint_index(a);
  if (i < 0) return 0.0;
  const double next_lo = (static_cast<std::size_t>(i) + 1 < iv_.size())
                             ? iv_[i + 1].lo
                             : iv_.front().lo + 2.0 * kPi;
  return 0.5 * std::min(iv_[i].length(), next_lo - a);
}

bool IntervalSet::satisfies_interval_condition(double a, double rho) const {
  if (!(rho > 0.0)) return false;
  return rho <= max_rho(a);
}

}  // namespace arcmarkov
