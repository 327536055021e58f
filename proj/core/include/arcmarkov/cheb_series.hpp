#pragma once

#include <functional>
#include <vector>

#include "arcmarkov/alg_poly.hpp"
#include "arcmarkov/trig_poly.hpp"

namespace arcmarkov {

// Algebraic polynomial in the Chebyshev basis of [lo, hi]:
//   p(x) = sum_j c_j T_j(y),  y = (2x - lo - hi) / (hi - lo).
// Used wherever monomial coefficients would be ill-conditioned (high degree,
// Chebyshev compositions, fast-decreasing constructions).
class ChebSeries {
 public:
  ChebSeries() : lo_(-1.0), hi_(1.0), c_{0.0} {}
  ChebSeries(double lo, double hi, std::vector<double> coeffs);

  static ChebSeries constant(double lo, double hi, double v);
  static ChebSeries identity(double lo, double hi);
  // x - r
  static ChebSeries linear_root(double lo, double hi, double r);
  // T_l on [-1, 1].
  static ChebSeries chebyshev_t(int l);
  // Interpolant of f at n first-kind Chebyshev nodes (degree n-1).
  static ChebSeries interpolate(const std::function<double(double)>& f, double lo,
                                double hi, int n);
  static ChebSeries from_monomial(const AlgPoly& p, double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int degree() const;
  const std::vector<double>& coeffs() const { return c_; }

  double operator()(double x) const;
  ChebSeries derivative(int k = 1) const;
  ChebSeries antiderivative(double base) const;
  // j-th derivative at x for j = 0..k.
  std::vector<double> derivatives_at(double x, int k) const;

  ChebSeries operator+(const ChebSeries& q) const;
  ChebSeries operator-(const ChebSeries& q) const;
  ChebSeries operator*(const ChebSeries& q) const;
  ChebSeries operator*(double s) const;
  ChebSeries pow(int e) const;

  double abs_coeff_sum() const;
  // p(mid + half*cos(theta)) as a cosine polynomial in theta.
  TrigPoly to_cosine_poly() const;
  // theta corresponding to x under the map above.
  double theta_of(double x) const;
  AlgPoly to_monomial() const;

 private:
  double lo_, hi_;
  std::vector<double> c_;
  void check_domain(const ChebSeries& q) const;
};

inline ChebSeries operator*(double s, const ChebSeries& p) { return p * s; }

}  // namespace arcmarkov
