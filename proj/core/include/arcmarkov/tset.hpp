#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "arcmarkov/cheb_series.hpp"
#include "arcmarkov/config.hpp"
#include "arcmarkov/equilibrium.hpp"
#include "arcmarkov/interval_set.hpp"
#include "arcmarkov/trig_poly.hpp"

namespace arcmarkov::tset {

struct TSetDescriptor {
  TrigPoly U;
  int N = 0;
  // 2N closed intervals sorted by left endpoint; U is strictly monotone on
  // each and maps it onto [-1, 1].
  std::vector<Interval> branches;
  std::vector<int> branch_sign;  // sign of U' inside each branch
  // Distinct branch endpoints, i.e. the points where |U| = 1 on the set.
  std::vector<double> extremal_points;
  IntervalSet e_set;
  std::vector<double> critical_points;
};

// Throws NotAdmissible when {|U| <= 1} is not 2N monotone branches inside
// (-pi, pi) with a nonempty complement.
TSetDescriptor analyze_admissible(const TrigPoly& U,
                                  const Tolerances& tol = default_tolerances());

// Index of the branch containing t (first match), or -1.
int branch_of(const TSetDescriptor& d, double t, double tol = 1e-12);

// The point of branch j (0-based) where U takes the value U(t). OutOfRange if
// t is not in the set or j is not a branch index.
double branch_inverse(const TSetDescriptor& d, int j, double t);
// Point of branch j where U equals y in [-1, 1].
double level_inverse(const TSetDescriptor& d, int j, double y);

// T_l(U(t)) with exact coefficients (degree l*N).
TrigPoly extremal_sequence(const TSetDescriptor& d, int l);

struct EndpointIdentity {
  double u_prime_abs = 0.0;  // |U'(a)|
  double omega = 0.0;
  double rhs = 0.0;  // 8 pi^2 N^2 Omega^2
  double rel_discrepancy = 0.0;
};
EndpointIdentity endpoint_derivative_identity(const TSetDescriptor& d,
                                              const equilibrium::EquilibriumMeasure& eq,
                                              double a);

// t -> sum over all 2N branches of V(t_j(t)), t_j(t) the point of branch j at
// the level U(t). Sums over both monotonicity classes, so V = P(U) gives
// 2N P(U).
class Symmetrized {
 public:
  Symmetrized(const TSetDescriptor& d, TrigPoly V);

  double operator()(double t) const;
  double at_level(double y) const;
  // The symmetrized function as a polynomial P* in y = U on [-1, 1].
  const ChebSeries& as_polynomial() const;
  double derivative(double t, int k) const;
  const TrigPoly& V() const { return V_; }

 private:
  TSetDescriptor d_;
  TrigPoly V_;
  struct Cache {
    std::once_flag once;
    ChebSeries poly;
  };
  std::shared_ptr<Cache> cache_;
};

Symmetrized symmetrize(const TSetDescriptor& d, const TrigPoly& V);

// Standard examples.
// (2 cos t - (1 + cos th)) / (1 - cos th): T-set [-th, th], N = 1.
TrigPoly single_interval_U(double theta0);
// 1.5 cos 2t + cos t + 7/12: N = 2, two symmetric intervals, minimum value
// exactly -1 inside each.
TrigPoly two_interval_U();

}  // namespace arcmarkov::tset
