#include "arcmarkov/ineqlab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include "arcmarkov/cheb_series.hpp"
#include "arcmarkov/composition.hpp"
#include "arcmarkov/errors.hpp"
#include "arcmarkov/fastdecay.hpp"
#include "arcmarkov/sup_norm.hpp"

namespace arcmarkov::ineqlab {

namespace {

constexpr double kPi = std::numbers::pi;

double odd_double_factorial(int k) {
  double r = 1.0;
  for (int j = 3; j <= 2 * k - 1; j += 2) r *= j;
  return r;
}

InequalityReport base_report(const char* bound, const IntervalSet& E, double point, int n,
                             int k, const char* source) {
  InequalityReport r;
  r.bound = bound;
  r.set = describe(E);
  r.point = point;
  r.n = n;
  r.k = k;
  r.source = source;
  return r;
}

void finish(InequalityReport& r) {
  r.ratio = r.theoretical > 0.0 ? r.measured / r.theoretical : 0.0;
}

}  // namespace

bool ConvergenceTable::monotone_after_second() const {
  for (std::size_t i = 2; i < rows.size(); ++i)
    if (rows[i].ratio < rows[i - 1].ratio) return false;
  return true;
}

double markov_factor(double omega, int k) {
  return std::pow(8.0 * kPi * kPi * omega * omega, k) / odd_double_factorial(k);
}

double bernstein_factor(double density, int k) { return std::pow(2.0 * kPi * density, k); }

double slack(int n, const Tolerances& tol) { return tol.slack_c / std::sqrt(static_cast<double>(n)); }

std::string describe(const IntervalSet& E) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < E.size(); ++i) {
    if (i) os << " U ";
    os << "[" << E.intervals()[i].lo << "," << E.intervals()[i].hi << "]";
  }
  return os.str();
}

equilibrium::EquilibriumMeasure solve_for(const IntervalSet& E) {
  return equilibrium::solve_tau(equilibrium::ArcSystem::from_intervals(E));
}

InequalityReport rough_markov_check(const TrigPoly& T, const IntervalSet& I, int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "derivative order must be >= 0");
  const int n = T.degree();
  InequalityReport r = base_report("rough_markov", I, 0.0, n, k, "input");
  const double norm = sup_norm(T, I).value;
  r.measured = k == 0 ? norm : sup_norm(T.derivative(k), I).value;
  r.theoretical = std::pow(static_cast<double>(n), 2 * k) * norm;
  finish(r);
  return r;
}

InequalityReport markov_endpoint_check(const TrigPoly& T, const IntervalSet& E, double a,
                                       double rho, int k,
                                       const equilibrium::EquilibriumMeasure& eq) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "derivative order must be >= 1");
  if (!E.satisfies_interval_condition(a, rho))
    throw Error(ErrorCode::IntervalConditionViolated, "interval condition fails at the point");
  const int n = T.degree();
  InequalityReport r = base_report("markov_endpoint", E, a, n, k, "input");
  r.rho = rho;
  const TrigPoly dk = T.derivative(k);
  const double omega = equilibrium::omega_endpoint(eq, a).omega;
  r.theoretical = std::pow(static_cast<double>(n), 2 * k) * markov_factor(omega, k) *
                  sup_norm(T, E).value;
  r.measured = std::abs(dk(a));
  finish(r);
  if (r.theoretical > 0.0) r.segment_ratio = sup_norm(dk, a - rho, a).value / r.theoretical;
  return r;
}

ConvergenceTable markov_sharpness_scan(const tset::TSetDescriptor& d, double a, int k,
                                       const std::vector<int>& l_list,
                                       const equilibrium::EquilibriumMeasure& eq) {
  if (d.e_set.max_rho(a) <= 0.0)
    throw Error(ErrorCode::IntervalConditionViolated, "interval condition fails at the point");
  ConvergenceTable t;
  t.bound = "markov_sharpness";
  t.k = k;
  const double factor = markov_factor(equilibrium::omega_endpoint(eq, a).omega, k);
  int prev = 0;
  for (int l : l_list) {
    if (l <= prev) throw Error(ErrorCode::InvalidArgument, "l list must increase");
    prev = l;
    const int n = l * d.N;
    const double v =
        std::abs(composition::compose_derivative(ChebSeries::chebyshev_t(l), d.U, a, k));
    // ||T_l(U)||_E = 1
    t.rows.push_back({l, n, v / (std::pow(static_cast<double>(n), 2 * k) * factor)});
  }
  return t;
}

InequalityReport bernstein_interior_check(const TrigPoly& T, const IntervalSet& E, double t0,
                                          int k, const equilibrium::EquilibriumMeasure& eq,
                                          const Tolerances& tol) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "derivative order must be >= 1");
  if (!E.contains(t0) || E.distance_to_boundary(t0) < tol.interior_margin)
    throw Error(ErrorCode::NotInterior, "point is not in the interior of the set");
  const int n = T.degree();
  InequalityReport r = base_report("bernstein_interior", E, t0, n, k, "input");
  r.theoretical = std::pow(static_cast<double>(n), k) * bernstein_factor(eq.density(t0), k) *
                  sup_norm(T, E).value;
  r.measured = std::abs(T.derivative(k)(t0));
  finish(r);
  return r;
}

CircleSplit split_on_circle(const ComplexAlgPoly& P) {
  const int n = P.degree();
  const bool half = n % 2 == 1;
  const int top = half ? (n - 1) / 2 : n / 2;  // highest index in TrigPoly arrays
  std::vector<double> ra(top + 1, 0.0), rb(top + 1, 0.0), ia(top + 1, 0.0), ib(top + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    const std::complex<double> c = P[j];
    // frequency f = j - n/2; doubled to stay integral
    const int f2 = 2 * j - n;
    const int idx = half ? (std::abs(f2) - 1) / 2 : std::abs(f2) / 2;
    const double sgn = f2 < 0 ? -1.0 : 1.0;  // sin(-x) = -sin(x)
    // c e^{ift} = (Re c cos ft - Im c sin ft) + i (Im c cos ft + Re c sin ft)
    ra[idx] += c.real();
    rb[idx] += -c.imag() * sgn;
    ia[idx] += c.imag();
    ib[idx] += c.real() * sgn;
  }
  if (!half) {
    rb[0] = 0.0;
    ib[0] = 0.0;
  }
  return {TrigPoly::from_arrays(ra, rb, half), TrigPoly::from_arrays(ia, ib, half)};
}

double circle_sup(const ComplexAlgPoly& P, const IntervalSet& E) {
  const CircleSplit s = split_on_circle(P);
  const TrigPoly dre = s.re.derivative(), dim = s.im.derivative();
  auto mod = [&](double t) { return std::hypot(s.re(t), s.im(t)); };
  auto dmod = [&](double t) {
    const double m = mod(t);
    return m > 0.0 ? (s.re(t) * dre(t) + s.im(t) * dim(t)) / m : 0.0;
  };
  double best = 0.0;
  const int samples = std::max(4096, 32 * P.degree());
  for (const auto& I : E.intervals())
    best = std::max(best, sup_norm_fn(mod, dmod, I.lo, I.hi, samples).value);
  return best;
}

InequalityReport algebraic_circle_check(const ComplexAlgPoly& P, const IntervalSet& E,
                                        AlgMode mode, double point, double rho, int k,
                                        const equilibrium::EquilibriumMeasure& eq,
                                        const Tolerances& tol) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "derivative order must be >= 1");
  const int n = P.degree();
  const ComplexAlgPoly dk = P.derivative(k);
  auto at = [&](double t) { return std::abs(dk(std::polar(1.0, t))); };
  const double norm = circle_sup(P, E);
  const double nd = static_cast<double>(n);
  if (mode == AlgMode::Endpoint) {
    if (!E.satisfies_interval_condition(point, rho))
      throw Error(ErrorCode::IntervalConditionViolated, "interval condition fails at the point");
    InequalityReport r = base_report("markov_algebraic", E, point, n, k, "input");
    r.rho = rho;
    const double omega = equilibrium::omega_endpoint(eq, point).omega;
    r.theoretical = std::pow(nd, 2 * k) *
                    std::pow(2.0 * kPi * kPi * omega * omega, k) / odd_double_factorial(k) * norm;
    r.measured = at(point);
    finish(r);
    double seg = 0.0;
    const int samples = std::max(2048, 16 * n);
    for (int i = 0; i <= samples; ++i) seg = std::max(seg, at(point - rho * i / samples));
    r.segment_ratio = r.theoretical > 0.0 ? seg / r.theoretical : 0.0;
    return r;
  }
  if (!E.contains(point) || E.distance_to_boundary(point) < tol.interior_margin)
    throw Error(ErrorCode::NotInterior, "point is not in the interior of the set");
  InequalityReport r = base_report("bernstein_algebraic", E, point, n, k, "input");
  r.theoretical =
      std::pow(nd / 2.0, k) * std::pow(1.0 + 2.0 * kPi * eq.density(point), k) * norm;
  r.measured = at(point);
  finish(r);
  return r;
}

SymmetrizationReport symmetrization_experiment(const tset::TSetDescriptor& d,
                                               const TrigPoly& T, double a, int k, int order,
                                               double degree_c) {
  SymmetrizationReport r;
  r.n = T.degree();
  r.k = k;
  r.rho0 = fastdecay::peaking_rho0(d, a);
  r.peaking_degree = static_cast<int>(std::ceil(degree_c * std::sqrt(static_cast<double>(r.n))));
  const fastdecay::TrigResult L =
      fastdecay::extremal_peaking_factor(d, a, r.rho0, order, r.peaking_degree, false);
  const TrigPoly V = L.Q * T;
  const tset::Symmetrized Ts = tset::symmetrize(d, V);
  const ChebSeries& P = Ts.as_polynomial();

  r.norm_T = sup_norm(T, d.e_set).value;
  r.norm_Tstar = sup_norm(P, -1.0, 1.0).value;
  r.inflation = r.norm_Tstar / r.norm_T - 1.0;

  const TrigPoly dT = T.derivative(k);
  const double scale = std::pow(static_cast<double>(r.n), 2 * k) * r.norm_T;
  r.discrepancy_at_a = std::abs(Ts.derivative(a, k) - dT(a)) / scale;
  constexpr int kSegment = 200;
  for (int i = 0; i <= kSegment; ++i) {
    const double t = a - r.rho0 * i / kSegment;
    r.discrepancy_segment =
        std::max(r.discrepancy_segment, std::abs(Ts.derivative(t, k) - dT(t)) / scale);
  }

  // The same level reached on different branches must give the same value,
  // and the polynomial form must reproduce the branch sum.
  constexpr int kLevels = 101;
  for (int i = 0; i < kLevels; ++i) {
    const double y = -1.0 + 2.0 * i / (kLevels - 1);
    const double direct = Ts.at_level(y);
    double spread = std::abs(P(y) - direct);
    for (int j = 0; j < static_cast<int>(d.branches.size()); ++j) {
      const double t = tset::level_inverse(d, j, y);
      spread = std::max(spread, std::abs(Ts(t) - direct));
    }
    r.level_constancy = std::max(r.level_constancy, spread / r.norm_Tstar);
  }
  return r;
}

TrigPoly random_trig_poly(int n, std::uint64_t seed) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "degree must be >= 0");
  boost::random::mt19937_64 gen(seed);
  boost::random::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> a(n + 1), b(n + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    a[j] = g(gen);
    if (j > 0) b[j] = g(gen);
  }
  return TrigPoly::from_arrays(std::move(a), std::move(b), false);
}

}  // namespace arcmarkov::ineqlab
