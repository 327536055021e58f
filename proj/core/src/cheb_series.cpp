#include "arcmarkov/cheb_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "arcmarkov/errors.hpp"

namespace arcmarkov {

ChebSeries::ChebSeries(double lo, double hi, std::vector<double> coeffs)
    : lo_(lo), hi_(hi), c_(std::move(coeffs)) {
  if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "ChebSeries needs lo < hi");
  if (c_.empty()) c_.push_back(0.0);
}

ChebSeries ChebSeries::constant(double lo, double hi, double v) { return {lo, hi, {v}}; }

ChebSeries ChebSeries::identity(double lo, double hi) {
  return {lo, hi, {0.5 * (lo + hi), 0.5 * (hi - lo)}};
}

ChebSeries ChebSeries::linear_root(double lo, double hi, double r) {
  return {lo, hi, {0.5 * (lo + hi) - r, 0.5 * (hi - lo)}};
}

ChebSeries ChebSeries::chebyshev_t(int l) {
  std::vector<double> c(l + 1, 0.0);
  c[l] = 1.0;
  return {-1.0, 1.0, std::move(c)};
}

ChebSeries ChebSeries::interpolate(const std::function<double(double)>& f, double lo,
                                   double hi, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "interpolate needs n >= 1");
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  std::vector<double> fv(n);
  for (int k = 0; k < n; ++k)
    fv[k] = f(mid + half * std::cos(std::numbers::pi * (k + 0.5) / n));
  // cos(pi*(2k+1)*j/(2n)) taken from a table of length 4n
  std::vector<double> table(4 * n);
  for (int i = 0; i < 4 * n; ++i) table[i] = std::cos(std::numbers::pi * i / (2.0 * n));
  std::vector<double> c(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    const long step = 2L * j % (4L * n);
    long pos = j % (4L * n);
    for (int k = 0; k < n; ++k) {
      s += fv[k] * table[pos];
      pos += step;
      if (pos >= 4L * n) pos -= 4L * n;
    }
    c[j] = 2.0 * s / n;
  }
  c[0] *= 0.5;
  return {lo, hi, std::move(c)};
}

ChebSeries ChebSeries::from_monomial(const AlgPoly& p, double lo, double hi) {
  ChebSeries x = identity(lo, hi);
  ChebSeries r = constant(lo, hi, 0.0);
  for (int j = p.degree(); j >= 0; --j) r = r * x + constant(lo, hi, p[j]);
  return r;
}

int ChebSeries::degree() const {
  for (int j = static_cast<int>(c_.size()) - 1; j > 0; --j)
    if (c_[j] != 0.0) return j;
  return 0;
}

double ChebSeries::operator()(double x) const {
  const double y = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  const int n = degree();
  double b1 = 0.0, b2 = 0.0;
  for (int j = n; j >= 1; --j) {
    double b0 = 2.0 * y * b1 - b2 + c_[j];
    b2 = b1;
    b1 = b0;
  }
  return y * b1 - b2 + c_[0];
}

ChebSeries ChebSeries::derivative(int k) const {
  std::vector<double> c(c_.begin(), c_.begin() + degree() + 1);
  const double scale = 2.0 / (hi_ - lo_);
  for (int it = 0; it < k; ++it) {
    const int n = static_cast<int>(c.size()) - 1;
    if (n == 0) return {lo_, hi_, {0.0}};
    std::vector<double> d(n, 0.0);
    for (int j = n; j >= 1; --j) {
      const double next = (j + 1 < n) ? d[j + 1] : 0.0;
      d[j - 1] = next + 2.0 * j * c[j];
    }
    d[0] *= 0.5;
    for (auto& v : d) v *= scale;
    c = std::move(d);
  }
  return {lo_, hi_, std::move(c)};
}

ChebSeries ChebSeries::antiderivative(double base) const {
  const int n = degree();
  std::vector<double> c(n + 2, 0.0);
  auto at = [&](int j) { return j <= n ? c_[j] : 0.0; };
  const double half = 0.5 * (hi_ - lo_);
  c[1] = (at(0) - 0.5 * at(2)) * half;
  for (int j = 2; j <= n + 1; ++j) c[j] = (at(j - 1) - at(j + 1)) / (2.0 * j) * half;
  ChebSeries f(lo_, hi_, std::move(c));
  f.c_[0] = -f(base);
  return f;
}

std::vector<double> ChebSeries::derivatives_at(double x, int k) const {
  std::vector<double> out;
  out.reserve(k + 1);
  ChebSeries d = *this;
  out.push_back(d(x));
  for (int j = 1; j <= k; ++j) {
    d = d.derivative();
    out.push_back(d(x));
  }
  return out;
}

void ChebSeries::check_domain(const ChebSeries& q) const {
  if (lo_ != q.lo_ || hi_ != q.hi_)
    throw Error(ErrorCode::InvalidArgument, "ChebSeries on different intervals");
}

ChebSeries ChebSeries::operator+(const ChebSeries& q) const {
  check_domain(q);
  std::vector<double> c(std::max(c_.size(), q.c_.size()), 0.0);
  for (std::size_t j = 0; j < c_.size(); ++j) c[j] += c_[j];
  for (std::size_t j = 0; j < q.c_.size(); ++j) c[j] += q.c_[j];
  return {lo_, hi_, std::move(c)};
}

ChebSeries ChebSeries::operator-(const ChebSeries& q) const { return *this + q * -1.0; }

ChebSeries ChebSeries::operator*(double s) const {
  std::vector<double> c = c_;
  for (auto& v : c) v *= s;
  return {lo_, hi_, std::move(c)};
}

ChebSeries ChebSeries::operator*(const ChebSeries& q) const {
  check_domain(q);
  const int n = degree(), m = q.degree();
  std::vector<double> c(n + m + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    const double ci = 0.5 * c_[i];
    if (ci == 0.0) continue;
    for (int j = 0; j <= m; ++j) {
      const double v = ci * q.c_[j];
      c[i + j] += v;
      c[i > j ? i - j : j - i] += v;
    }
  }
  return {lo_, hi_, std::move(c)};
}

ChebSeries ChebSeries::pow(int e) const {
  if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
  ChebSeries result = constant(lo_, hi_, 1.0);
  ChebSeries base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

double ChebSeries::abs_coeff_sum() const {
  double s = 0.0;
  for (double v : c_) s += std::abs(v);
  return s;
}

TrigPoly ChebSeries::to_cosine_poly() const {
  std::vector<double> c(c_.begin(), c_.begin() + degree() + 1);
  std::vector<double> b(c.size(), 0.0);
  return TrigPoly::from_arrays(std::move(c), std::move(b), false);
}

double ChebSeries::theta_of(double x) const {
  double y = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  return std::acos(std::clamp(y, -1.0, 1.0));
}

AlgPoly ChebSeries::to_monomial() const {
  const double mid = 0.5 * (lo_ + hi_), half = 0.5 * (hi_ - lo_);
  AlgPoly y({-mid / half, 1.0 / half});
  AlgPoly t0({1.0}), t1 = y;
  AlgPoly r = t0 * c_[0];
  const int n = degree();
  if (n >= 1) r = r + t1 * c_[1];
  for (int j = 2; j <= n; ++j) {
    AlgPoly t2 = y * t1 * 2.0 - t0;
    r = r + t2 * c_[j];
    t0 = t1;
    t1 = t2;
  }
  return r;
}

}  // namespace arcmarkov
