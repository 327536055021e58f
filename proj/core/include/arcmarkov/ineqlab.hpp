#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "arcmarkov/alg_poly.hpp"
#include "arcmarkov/config.hpp"
#include "arcmarkov/equilibrium.hpp"
#include "arcmarkov/interval_set.hpp"
#include "arcmarkov/trig_poly.hpp"
#include "arcmarkov/tset.hpp"

namespace arcmarkov::ineqlab {

struct InequalityReport {
  std::string bound;
  std::string set;
  double point = 0.0;  // a or t0
  double rho = 0.0;    // segment [a - rho, a] for endpoint bounds
  int n = 0;
  int k = 0;
  double measured = 0.0;
  double theoretical = 0.0;
  double ratio = 0.0;
  // Endpoint bounds: worst ratio over the whole segment (reported, not
  // asserted).
  double segment_ratio = 0.0;
  std::string source;
};

struct ConvergenceRow {
  int l = 0;
  int n = 0;
  double ratio = 0.0;
};

struct ConvergenceTable {
  std::string bound;
  int k = 0;
  std::vector<ConvergenceRow> rows;
  bool monotone_after_second() const;
  double final_ratio() const { return rows.empty() ? 0.0 : rows.back().ratio; }
};

// n^{2k} coefficient of the sharp endpoint bound: 8^k pi^{2k} Omega^{2k} / (2k-1)!!.
double markov_factor(double omega, int k);
// n^k coefficient of the sharp interior bound: (2 pi w)^k.
double bernstein_factor(double density, int k);
// Finite-degree allowance c / sqrt(n), c = tol.slack_c.
double slack(int n, const Tolerances& tol = default_tolerances());

std::string describe(const IntervalSet& E);
equilibrium::EquilibriumMeasure solve_for(const IntervalSet& E);

// sup_I |T^(k)| against n^{2k} ||T||_I; k = 0 compares ||T|| with itself.
InequalityReport rough_markov_check(const TrigPoly& T, const IntervalSet& I, int k);

// |T^(k)(a)| against n^{2k} markov_factor(Omega(a), k) ||T||_E. Throws
// IntervalConditionViolated unless E satisfies the condition at (a, rho).
InequalityReport markov_endpoint_check(const TrigPoly& T, const IntervalSet& E, double a,
                                       double rho, int k,
                                       const equilibrium::EquilibriumMeasure& eq);

// Ratios for T_l(U) at the endpoint a, n = l N, derivatives through the
// exact composition.
ConvergenceTable markov_sharpness_scan(const tset::TSetDescriptor& d, double a, int k,
                                       const std::vector<int>& l_list,
                                       const equilibrium::EquilibriumMeasure& eq);

// |T^(k)(t0)| against n^k (2 pi w(t0))^k ||T||_E. NotInterior when t0 is
// within tol.interior_margin of the boundary or outside E.
InequalityReport bernstein_interior_check(const TrigPoly& T, const IntervalSet& E, double t0,
                                          int k, const equilibrium::EquilibriumMeasure& eq,
                                          const Tolerances& tol = default_tolerances());

// P(e^{it}) = e^{int/2} (S1(t) + i S2(t)) with real trig polynomials S1, S2
// (half-integer frequencies when n is odd).
struct CircleSplit {
  TrigPoly re, im;
};
CircleSplit split_on_circle(const ComplexAlgPoly& P);
// sup over E of |P(e^{it})|.
double circle_sup(const ComplexAlgPoly& P, const IntervalSet& E);

enum class AlgMode { Endpoint, Interior };
// Endpoint: sup over the arc t in [point - rho, point] of |P^(k)(e^{it})|
// against n^{2k} Omega^{2k} 2^k pi^{2k} / (2k-1)!! ||P||_E (ratio at the
// endpoint itself in `ratio`). Interior: |P^(k)(e^{i point})| against
// (n^k / 2^k) (1 + 2 pi w)^k ||P||_E.
InequalityReport algebraic_circle_check(const ComplexAlgPoly& P, const IntervalSet& E,
                                        AlgMode mode, double point, double rho, int k,
                                        const equilibrium::EquilibriumMeasure& eq,
                                        const Tolerances& tol = default_tolerances());

// deg L = ceil(c sqrt(n)); see the README for the calibration.
constexpr double kPeakingDegreeC = 24.0;

struct SymmetrizationReport {
  int n = 0;
  int k = 0;
  int peaking_degree = 0;
  double rho0 = 0.0;
  double norm_T = 0.0;
  double norm_Tstar = 0.0;
  double inflation = 0.0;             // ||T*|| / ||T|| - 1
  double discrepancy_at_a = 0.0;      // |T*^(k)(a) - T^(k)(a)| / (n^{2k} ||T||)
  double discrepancy_segment = 0.0;   // same, sup over [a - rho0, a]
  double level_constancy = 0.0;       // relative spread of T* on U-level sets
};

SymmetrizationReport symmetrization_experiment(const tset::TSetDescriptor& d,
                                               const TrigPoly& T, double a, int k, int order,
                                               double degree_c = kPeakingDegreeC);

// Standard normal coefficients, seeded.
TrigPoly random_trig_poly(int n, std::uint64_t seed);

}  // namespace arcmarkov::ineqlab
