#pragma once

#include <vector>

namespace arcmarkov {

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
};

// Ordered finite union of disjoint closed intervals inside (-pi, pi).
class IntervalSet {
 public:
  IntervalSet() = default;
  // Throws InvalidArgument unless the intervals are nondegenerate, strictly
  // increasing, pairwise disjoint and inside (-pi, pi).
  explicit IntervalSet(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return iv_; }
  std::size_t size() const { return iv_.size(); }
  bool empty() const { return iv_.empty(); }
  double measure() const;

  bool contains(double t, double tol = 0.0) const;
  // Index of the component containing t, or -1.
  int component_of(double t, double tol = 0.0) const;
  bool subset_of(const IntervalSet& other, double tol = 0.0) const;
  // Distance from t to the nearest endpoint of any component.
  double distance_to_boundary(double t) const;

  // [a - 2 rho, a] inside the set and (a, a + 2 rho) disjoint from it, with
  // the complement measured around the circle.
  bool satisfies_interval_condition(double a, double rho) const;
  // Largest rho for which the interval condition holds at a; 0 if a is not
  // a right endpoint.
  double max_rho(double a) const;

 private:
  std::vector<Interval> iv_;
  int right_endpoint_index(double a) const;
};

}  // namespace arcmarkov
