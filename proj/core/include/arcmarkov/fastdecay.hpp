#pragma once

#include <string>
#include <vector>

#include "arcmarkov/cheb_series.hpp"
#include "arcmarkov/config.hpp"
#include "arcmarkov/trig_poly.hpp"
#include "arcmarkov/tset.hpp"

namespace arcmarkov::fastdecay {

struct PrescribedZero {
  double at = 0.0;
  int multiplicity = 1;
};

// frame_lo < zeros < a_prime < a < x0 < b < b_prime < zeros < frame_hi.
struct AlgebraicSpec {
  double frame_lo = -1.0, frame_hi = 1.0;
  double a_prime = 0.0, a = 0.0, x0 = 0.0, b = 0.0, b_prime = 0.0;
  int k0 = 1;
  std::vector<PrescribedZero> zeros;
  int m = 0;
};

// -pi < alpha_prime < alpha < t0 < beta < beta_prime < pi, zeros in
// (-pi, pi) outside [alpha_prime, beta_prime]; at least one zero.
struct TrigSpec {
  double t0 = 0.0, alpha = 0.0, beta = 0.0, alpha_prime = 0.0, beta_prime = 0.0;
  int k0 = 1;
  std::vector<PrescribedZero> zeros;
  int m = 0;
};

struct PropertyCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct PropertyReport {
  std::vector<PropertyCheck> items;
  bool all_pass() const;
  const PropertyCheck& at(const std::string& name) const;
  std::string first_failure() const;
};

struct Parameters {
  int mu = 0;
  double lambda = 0.0;
  std::vector<double> tau;
  double C1 = 0.0;
  double miranda_residual = 0.0;
};

struct Decay {
  double eps_low = 0.0;   // max of Q / min(1, |Z|) off the buffer window
  double eps_high = 0.0;  // max |Q - 1| on the plateau
  double delta_hat = 0.0; // -log(max(eps_low, eps_high)) / m
};

struct AlgebraicResult {
  AlgebraicSpec spec;
  ChebSeries S, Q;  // Q = S^2 on [frame_lo, frame_hi]
  Parameters params;
  Decay decay;
  PropertyReport report;
};

struct TrigResult {
  TrigSpec spec;
  TrigPoly S, Q;
  Parameters params;
  Decay decay;
  PropertyReport report;
};

// Degree of Q for mu = 0; the build needs m >= constant + 4 (algebraic) or
// constant + 2 (trig).
int degree_constant(const AlgebraicSpec& spec);
int degree_constant(const TrigSpec& spec);

void validate(const AlgebraicSpec& spec);
void validate(const TrigSpec& spec);

// Both throw DegreeTooSmall when the Miranda face signs or a property check
// fail (the construction only works for large degree), carrying the failing
// item in the message. With `require_properties` false the property report
// is returned as is.
AlgebraicResult build_fd_algebraic(const AlgebraicSpec& spec, bool require_properties = true,
                                   const Tolerances& tol = default_tolerances());
TrigResult build_fd_trig(const TrigSpec& spec, bool require_properties = true,
                         const Tolerances& tol = default_tolerances());

// Re-derives every property from Q (and S for the squaring identity).
PropertyReport check_algebraic(const AlgebraicSpec& spec, const ChebSeries& S,
                               const ChebSeries& Q, Decay* decay = nullptr);
PropertyReport check_trig(const TrigSpec& spec, const TrigPoly& S, const TrigPoly& Q,
                          Decay* decay = nullptr);

// 1/4 min(branch length, following gap, max_rho(a), pi/4), further capped so
// that [a - 2 rho0, a + 2 rho0] stays inside (-pi, pi).
double peaking_rho0(const tset::TSetDescriptor& d, double a);

// Peak at a, plateau [a - rho0, a + rho0], buffer [a - 2 rho0, a + 2 rho0],
// zeros of multiplicity `order` at the other extremal points of U, and
// flatness of the same order at a. With `require_properties` false only the
// Miranda solve has to succeed; the report says which asymptotic properties
// already hold at this degree.
TrigResult extremal_peaking_factor(const tset::TSetDescriptor& d, double a, double rho0,
                                   int order, int m, bool require_properties = true);

struct DecayFit {
  std::vector<int> m;
  std::vector<double> log_eps;
  double slope = 0.0;
  double delta_hat = 0.0;     // -slope
  double rel_residual = 0.0;  // sqrt(1 - R^2)
  bool monotone = false;      // log_eps strictly decreasing
};

DecayFit fit_decay_rate(const std::vector<int>& m, const std::vector<double>& eps);
DecayFit decay_ladder(AlgebraicSpec spec, const std::vector<int>& ms);
DecayFit decay_ladder(TrigSpec spec, const std::vector<int>& ms);

}  // namespace arcmarkov::fastdecay
