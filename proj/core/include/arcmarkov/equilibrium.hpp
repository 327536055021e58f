#pragma once

#include <functional>
#include <vector>

#include "arcmarkov/config.hpp"
#include "arcmarkov/interval_set.hpp"

namespace arcmarkov::equilibrium {

// Arcs {e^{it} : a_{2j-1} <= t <= a_{2j}}, -pi < a_1 < ... < a_{2m} < pi.
class ArcSystem {
 public:
  explicit ArcSystem(std::vector<double> endpoints);
  static ArcSystem from_intervals(const IntervalSet& E);

  int m() const { return static_cast<int>(a_.size() / 2); }
  const std::vector<double>& endpoints() const { return a_; }
  Interval arc(int j) const { return {a_[2 * j], a_[2 * j + 1]}; }
  // Gap after arc j; the last one wraps to a_1 + 2 pi.
  Interval gap(int j) const;
  IntervalSet as_interval_set() const;
  // Index of the arc whose open interior contains t, or -1.
  int open_arc_of(double t) const;
  // Index into endpoints() of a, or -1.
  int endpoint_index(double a, double tol = 1e-12) const;

 private:
  std::vector<double> a_;
};

class EquilibriumMeasure {
 public:
  EquilibriumMeasure(ArcSystem arcs, std::vector<double> tau, std::vector<double> residuals);

  const ArcSystem& arcs() const { return arcs_; }
  // tau[j] lies in gap(j).
  const std::vector<double>& tau() const { return tau_; }
  // |gap integral| / gap integral of |integrand|, per gap.
  const std::vector<double>& residuals() const { return residuals_; }
  double max_residual() const;

  // Density w.r.t. arc length; OutsideInterior unless t is inside an open arc.
  double density(double t) const;
  // Same formula without the domain check (finite off the endpoints).
  double density_formula(double t) const;

  double arc_mass(int j) const;
  double total_mass() const;

 private:
  ArcSystem arcs_;
  std::vector<double> tau_, residuals_;
};

EquilibriumMeasure solve_tau(const ArcSystem& arcs,
                             const Tolerances& tol = default_tolerances());

struct EndpointFactor {
  double omega = 0.0;        // closed form
  double markov_M = 0.0;     // 4 pi^2 omega^2
  double omega_limit = 0.0;  // Richardson-extrapolated limit definition
  double limit_rel_diff = 0.0;
};

// a must be one of the arc endpoints (OutOfRange otherwise).
EndpointFactor omega_endpoint(const EquilibriumMeasure& eq, double a);

// Integral over [p, q] of F(t) / sqrt(prod_l |sin((t - a_l)/2)|), where p and q
// are endpoints of the system (q possibly shifted by 2 pi). Both endpoint
// singularities are removed by t = c - h cos(theta).
struct SingularIntegral {
  double value = 0.0;
  double abs_value = 0.0;
};
SingularIntegral integrate_weighted(const ArcSystem& arcs, int p_index, int q_index,
                                    double shift_q, const std::function<double(double)>& F,
                                    double tol);

}  // namespace arcmarkov::equilibrium
