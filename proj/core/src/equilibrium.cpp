#include "arcmarkov/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "arcmarkov/errors.hpp"
#include "arcmarkov/quadrature.hpp"
#include "arcmarkov/roots.hpp"
#include "arcmarkov/trig_poly.hpp"

namespace arcmarkov::equilibrium {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// x / sin(x/2) for 0 <= x < 2 pi, continuous at 0.
double ratio_sin(double x) {
  if (x < 1e-8) return 2.0;
  return x / std::sin(0.5 * x);
}
}  // namespace

ArcSystem::ArcSystem(std::vector<double> endpoints) : a_(std::move(endpoints)) {
  if (a_.empty() || a_.size() % 2 != 0)
    throw Error(ErrorCode::InvalidArgument, "arc system needs 2m endpoints, m >= 1");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!std::isfinite(a_[i]) || !(a_[i] > -kPi) || !(a_[i] < kPi))
      throw Error(ErrorCode::InvalidArgument, "arc endpoints must lie in (-pi, pi)");
    if (i > 0 && !(a_[i - 1] < a_[i]))
      throw Error(ErrorCode::InvalidArgument, "arc endpoints must be strictly increasing");
  }
}

ArcSystem ArcSystem::from_intervals(const IntervalSet& E) {
  std::vector<double> a;
  for (const auto& I : E.intervals()) {
    a.push_back(I.lo);
    a.push_back(I.hi);
  }
  return ArcSystem(std::move(a));
}

Interval ArcSystem::gap(int j) const {
  const int n = static_cast<int>(a_.size());
  const double lo = a_[2 * j + 1];
  const double hi = (2 * j + 2 < n) ? a_[2 * j + 2] : a_[0] + kTwoPi;
  return {lo, hi};
}

IntervalSet ArcSystem::as_interval_set() const {
  std::vector<Interval> iv;
  for (int j = 0; j < m(); ++j) iv.push_back(arc(j));
  return IntervalSet(std::move(iv));
}

int ArcSystem::open_arc_of(double t) const {
  for (int j = 0; j < m(); ++j)
    if (t > a_[2 * j] && t < a_[2 * j + 1]) return j;
  return -1;
}

int ArcSystem::endpoint_index(double a, double tol) const {
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (std::abs(a_[i] - a) <= tol * (1.0 + std::abs(a))) return static_cast<int>(i);
  return -1;
}

SingularIntegral integrate_weighted(const ArcSystem& arcs, int p_index, int q_index,
                                    double shift_q, const std::function<double(double)>& F,
                                    double tol) {
  const auto& a = arcs.endpoints();
  const double p = a[p_index], q = a[q_index] + shift_q;
  const double c = 0.5 * (p + q), h = 0.5 * (q - p);
  auto integrand = [&](double theta) {
    const double s = std::sin(0.5 * theta), co = std::cos(0.5 * theta);
    const double x1 = 2.0 * h * s * s;  // t - p
    const double x2 = 2.0 * h * co * co;  // q - t
    const double t = c - h * std::cos(theta);
    double others = 1.0;
    for (std::size_t l = 0; l < a.size(); ++l) {
      if (static_cast<int>(l) == p_index || static_cast<int>(l) == q_index) continue;
      others *= std::abs(std::sin(0.5 * (t - a[l])));
    }
    return F(t) * std::sqrt(ratio_sin(x1) * ratio_sin(x2) / others);
  };
  const QuadResult r = adaptive_gl(integrand, 0.0, kPi, tol, 64);
  return {r.value, r.abs_value};
}

EquilibriumMeasure::EquilibriumMeasure(ArcSystem arcs, std::vector<double> tau,
                                       std::vector<double> residuals)
    : arcs_(std::move(arcs)), tau_(std::move(tau)), residuals_(std::move(residuals)) {}

double EquilibriumMeasure::max_residual() const {
  double r = 0.0;
  for (double v : residuals_) r = std::max(r, v);
  return r;
}

double EquilibriumMeasure::density_formula(double t) const {
  double num = 1.0, den = 1.0;
  for (double tj : tau_) num *= std::abs(std::sin(0.5 * (t - tj)));
  for (double aj : arcs_.endpoints()) den *= std::abs(std::sin(0.5 * (t - aj)));
  return num / std::sqrt(den) / kTwoPi;
}

double EquilibriumMeasure::density(double t) const {
  if (arcs_.open_arc_of(t) < 0)
    throw Error(ErrorCode::OutsideInterior,
                "density requested outside the open arcs at t=" + std::to_string(t));
  return density_formula(t);
}

double EquilibriumMeasure::arc_mass(int j) const {
  auto F = [&](double t) {
    double num = 1.0;
    for (double tj : tau_) num *= std::abs(std::sin(0.5 * (t - tj)));
    return num / kTwoPi;
  };
  return integrate_weighted(arcs_, 2 * j, 2 * j + 1, 0.0, F, 1e-14).value;
}

double EquilibriumMeasure::total_mass() const {
  double s = 0.0;
  for (int j = 0; j < arcs_.m(); ++j) s += arc_mass(j);
  return s;
}

namespace {

// Gap integral of prod_l sin((t - tau_l)/2) against the singular weight,
// plus the same integral of its absolute value.
struct GapEval {
  std::vector<double> value, abs_value;
};

GapEval gap_integrals(const ArcSystem& arcs, const std::vector<double>& tau, double tol) {
  const int m = arcs.m();
  GapEval out{std::vector<double>(m), std::vector<double>(m)};
  auto F = [&](double t) {
    double prod = 1.0;
    for (double tl : tau) prod *= std::sin(0.5 * (t - tl));
    return prod;
  };
  for (int j = 0; j < m; ++j) {
    const bool wrap = (j == m - 1);
    const auto r = integrate_weighted(arcs, 2 * j + 1, wrap ? 0 : 2 * j + 2,
                                      wrap ? kTwoPi : 0.0, F, tol);
    out.value[j] = r.value;
    out.abs_value[j] = r.abs_value;
  }
  return out;
}

std::vector<double> normalized_residuals(const GapEval& g) {
  std::vector<double> r(g.value.size());
  for (std::size_t j = 0; j < r.size(); ++j)
    r[j] = g.abs_value[j] > 0.0 ? std::abs(g.value[j]) / g.abs_value[j] : INFINITY;
  return r;
}

// The product of m factors sin((t - tau)/2) spans the m+1 functions returned
// here (integer frequencies 0..m/2 for even m, half-integers for odd m).
TrigPoly basis_function(int m, int b) {
  if (m % 2 == 0) {
    if (b == 0) return TrigPoly::constant(1.0);
    const int i = (b + 1) / 2;
    return (b % 2 == 1) ? TrigPoly::cos_term(i) : TrigPoly::sin_term(i);
  }
  const int i = b / 2;
  return (b % 2 == 0) ? TrigPoly::cos_term(i, 1.0, true) : TrigPoly::sin_term(i, 1.0, true);
}

double max_abs(const std::vector<double>& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

}  // namespace

EquilibriumMeasure solve_tau(const ArcSystem& arcs, const Tolerances& tol) {
  const int m = arcs.m();
  for (int j = 0; j < m; ++j) {
    if (arcs.gap(j).length() < tol.min_gap)
      throw Error(ErrorCode::DegenerateGap, "gap " + std::to_string(j) + " narrower than " +
                                                std::to_string(tol.min_gap));
    if (arcs.arc(j).length() < tol.min_gap)
      throw Error(ErrorCode::DegenerateGap, "arc " + std::to_string(j) + " is degenerate");
  }
  const double qtol = 1e-14;

  // Gap moments of the basis: the tau-polynomial is the null vector.
  std::vector<TrigPoly> basis;
  for (int b = 0; b <= m; ++b) basis.push_back(basis_function(m, b));
  Eigen::MatrixXd M(m, m + 1);
  for (int j = 0; j < m; ++j) {
    const bool wrap = (j == m - 1);
    double row_scale = 0.0;
    for (int b = 0; b <= m; ++b) {
      const auto r = integrate_weighted(arcs, 2 * j + 1, wrap ? 0 : 2 * j + 2,
                                        wrap ? kTwoPi : 0.0, basis[b], qtol);
      M(j, b) = r.value;
      row_scale = std::max(row_scale, r.abs_value);
    }
    M.row(j) /= row_scale;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  Eigen::VectorXd c = svd.matrixV().col(m);
  TrigPoly g = basis[0] * c(0);
  for (int b = 1; b <= m; ++b) g += basis[b] * c(b);

  std::vector<double> tau(m);
  for (int j = 0; j < m; ++j) {
    const Interval G = arcs.gap(j);
    const auto brackets =
        sign_change_brackets([&](double t) { return g(t); }, G.lo, G.hi, 256);
    if (brackets.size() != 1)
      throw Error(ErrorCode::NoConvergence,
                  "gap " + std::to_string(j) + ": expected one zero of the tau-polynomial, found " +
                      std::to_string(brackets.size()));
    tau[j] = find_root([&](double t) { return g(t); }, brackets[0].first, brackets[0].second);
  }

  GapEval ge = gap_integrals(arcs, tau, qtol);
  std::vector<double> res = normalized_residuals(ge);

  // Newton polish with the analytic Jacobian, kept inside the gaps.
  for (int it = 0; it < 20 && max_abs(res) > 0.01 * tol.tau_residual_tol; ++it) {
    Eigen::MatrixXd J(m, m);
    Eigen::VectorXd f(m);
    for (int j = 0; j < m; ++j) f(j) = ge.value[j];
    for (int i = 0; i < m; ++i) {
      auto dF = [&](double t) {
        double prod = -0.5 * std::cos(0.5 * (t - tau[i]));
        for (int l = 0; l < m; ++l)
          if (l != i) prod *= std::sin(0.5 * (t - tau[l]));
        return prod;
      };
      for (int j = 0; j < m; ++j) {
        const bool wrap = (j == m - 1);
        J(j, i) = integrate_weighted(arcs, 2 * j + 1, wrap ? 0 : 2 * j + 2,
                                     wrap ? kTwoPi : 0.0, dF, qtol)
                      .value;
      }
    }
    Eigen::VectorXd step = J.fullPivLu().solve(-f);
    std::vector<double> trial = tau;
    for (int i = 0; i < m; ++i) {
      const Interval G = arcs.gap(i);
      const double margin = 0.1 * (G.hi - G.lo);
      trial[i] = std::clamp(tau[i] + step(i), G.lo + std::min(margin, 0.1 * (tau[i] - G.lo)),
                            G.hi - std::min(margin, 0.1 * (G.hi - tau[i])));
    }
    GapEval gt = gap_integrals(arcs, trial, qtol);
    std::vector<double> rt = normalized_residuals(gt);
    if (max_abs(rt) >= max_abs(res)) break;
    tau = std::move(trial);
    ge = std::move(gt);
    res = std::move(rt);
  }

  if (max_abs(res) > tol.tau_residual_tol) {
    std::string msg = "tau solve residuals above tolerance:";
    for (double r : res) msg += " " + std::to_string(r);
    throw Error(ErrorCode::NoConvergence, msg);
  }
  return EquilibriumMeasure(arcs, std::move(tau), std::move(res));
}

EndpointFactor omega_endpoint(const EquilibriumMeasure& eq, double a) {
  const ArcSystem& arcs = eq.arcs();
  const int k = arcs.endpoint_index(a);
  if (k < 0) throw Error(ErrorCode::OutOfRange, "point is not an endpoint of the arc system");
  const auto& ends = arcs.endpoints();
  const double ak = ends[k];

  double num = 1.0, den = 1.0;
  for (double tj : eq.tau()) num *= std::abs(std::sin(0.5 * (ak - tj)));
  for (std::size_t l = 0; l < ends.size(); ++l)
    if (static_cast<int>(l) != k) den *= std::abs(std::sin(0.5 * (ak - ends[l])));
  EndpointFactor out;
  out.omega = std::numbers::sqrt2 * num / std::sqrt(den) / kTwoPi;
  out.markov_M = 4.0 * kPi * kPi * out.omega * out.omega;

  // Limit of sqrt(|e^{it} - e^{ia}|) * density(t) from inside the arc. The
  // product is analytic in the distance d, so Richardson in d with ratio 4.
  const int arc = k / 2;
  const double dir = (k % 2 == 0) ? 1.0 : -1.0;
  const double rho = 0.5 * arcs.arc(arc).length();
  constexpr int kLevels = 8;
  double table[kLevels][kLevels];
  for (int i = 0; i < kLevels; ++i) {
    const double d = rho / 4.0 * std::pow(4.0, -(i + 1));
    const double t = ak + dir * d;
    table[i][0] = std::sqrt(2.0 * std::sin(0.5 * d)) * eq.density_formula(t);
    for (int j = 1; j <= i; ++j) {
      const double f = std::pow(4.0, j);
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (f - 1.0);
    }
  }
  out.omega_limit = table[kLevels - 1][kLevels - 1];
  out.limit_rel_diff = std::abs(out.omega_limit - out.omega) / out.omega;
  return out;
}

}  // namespace arcmarkov::equilibrium
