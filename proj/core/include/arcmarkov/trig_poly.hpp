#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace arcmarkov {

// Real trigonometric polynomial
//   p(t) = sum_j A_j cos((j+s)t) + B_j sin((j+s)t),  s = 0 or 1/2.
// Both coefficient arrays are indexed by j and have the same length; for
// integer frequencies B_0 is always zero.
class TrigPoly {
 public:
  TrigPoly() : a_{0.0}, b_{0.0} {}

  // cos_coeffs = A_0..A_n. sin_coeffs = B_1..B_n for integer frequencies,
  // B_0..B_n (frequencies 1/2, 3/2, ...) when half_shift is set.
  TrigPoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
           bool half_shift = false);

  // Same-length arrays indexed by j, no offset for the sine part.
  static TrigPoly from_arrays(std::vector<double> a, std::vector<double> b,
                              bool half_shift);

  static TrigPoly constant(double c);
  // Integer-frequency interpolant of degree n from 2n+1 equispaced samples.
  // Exact for trig polynomials of degree <= n, with absolute error at the
  // level of eps * max|f| (products of many factors lose far more when
  // multiplied out coefficientwise).
  static TrigPoly interpolate(const std::function<double(double)>& f, int n);
  static TrigPoly cos_term(int j, double coeff = 1.0, bool half_shift = false);
  static TrigPoly sin_term(int j, double coeff = 1.0, bool half_shift = false);
  // sin((t - c)/2) and cos((t - c)/2), both half-integer.
  static TrigPoly half_sin_shifted(double c);
  static TrigPoly half_cos_shifted(double c);

  bool half_shift() const { return half_; }
  // Highest index with a nonzero coefficient (0 for the zero polynomial).
  int degree() const;
  double frequency(int j) const { return j + (half_ ? 0.5 : 0.0); }
  double top_frequency() const { return frequency(degree()); }

  const std::vector<double>& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }
  // Sine coefficients in serialized form (see the constructor).
  std::vector<double> sin_coeffs() const;
  std::vector<double> cos_coeffs() const { return a_; }

  double operator()(double t) const;
  void eval_many(const std::vector<double>& ts, std::vector<double>& out) const;

  TrigPoly derivative(int k = 1) const;
  // F with F' = p and F(base) = 0. Integer frequencies only; throws
  // NonzeroMean if |A_0| > mean_tol * max|coeff|.
  TrigPoly antiderivative(double base, double mean_tol) const;
  TrigPoly antiderivative(double base) const;

  // Coefficient-level operations; sums of mixed parity throw InvalidArgument.
  TrigPoly operator+(const TrigPoly& q) const;
  TrigPoly operator-(const TrigPoly& q) const;
  TrigPoly operator*(const TrigPoly& q) const;
  TrigPoly operator*(double c) const;
  TrigPoly& operator+=(const TrigPoly& q);
  TrigPoly pow(int e) const;

  double max_abs_coeff() const;
  double abs_coeff_sum() const;
  TrigPoly with_constant_zeroed() const;
  TrigPoly trimmed() const;

 private:
  std::vector<double> a_, b_;
  bool half_ = false;
  void normalize();
};

inline TrigPoly operator*(double c, const TrigPoly& p) { return p * c; }

double trig_eval(const TrigPoly& p, double t);
TrigPoly trig_derivative(const TrigPoly& p);
TrigPoly trig_product(const TrigPoly& p, const TrigPoly& q);
TrigPoly trig_antiderivative(const TrigPoly& p, double base = 0.0);

}  // namespace arcmarkov
