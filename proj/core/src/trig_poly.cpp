#include "arcmarkov/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "arcmarkov/config.hpp"
#include "arcmarkov/errors.hpp"

namespace arcmarkov {

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

TrigPoly::TrigPoly(std::vector<double> cos_coeffs, std::vector<double> sin_coeffs,
                   bool half_shift)
    : half_(half_shift) {
  std::size_t n = cos_coeffs.size();
  std::size_t nb = sin_coeffs.size() + (half_shift ? 0 : 1);
  n = std::max({n, nb, std::size_t{1}});
  a_.assign(n, 0.0);
  b_.assign(n, 0.0);
  std::copy(cos_coeffs.begin(), cos_coeffs.end(), a_.begin());
  std::copy(sin_coeffs.begin(), sin_coeffs.end(), b_.begin() + (half_shift ? 0 : 1));
  normalize();
}

TrigPoly TrigPoly::from_arrays(std::vector<double> a, std::vector<double> b,
                               bool half_shift) {
  TrigPoly p;
  std::size_t n = std::max({a.size(), b.size(), std::size_t{1}});
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  p.a_ = std::move(a);
  p.b_ = std::move(b);
  p.half_ = half_shift;
  p.normalize();
  return p;
}

void TrigPoly::normalize() {
  if (!half_) b_[0] = 0.0;
  for (double v : a_)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
  for (double v : b_)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
}

TrigPoly TrigPoly::constant(double c) { return from_arrays({c}, {0.0}, false); }

TrigPoly TrigPoly::interpolate(const std::function<double(double)>& f, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "interpolation degree must be >= 0");
  const int M = 2 * n + 1;
  std::vector<double> t(M), v(M);
  for (int i = 0; i < M; ++i) {
    t[i] = -kPi + 2.0 * kPi * i / M;
    v[i] = f(t[i]);
  }
  std::vector<double> a(n + 1, 0.0), b(n + 1, 0.0);
  for (int i = 0; i < M; ++i) a[0] += v[i];
  a[0] /= M;
  for (int j = 1; j <= n; ++j) {
    double sc = 0.0, ss = 0.0;
    for (int i = 0; i < M; ++i) {
      // j t_i = -pi j + 2 pi (j i mod M) / M
      const double ang = 2.0 * kPi * static_cast<double>((static_cast<long long>(j) * i) % M) / M;
      sc += v[i] * std::cos(ang);
      ss += v[i] * std::sin(ang);
    }
    const double sgn = j % 2 == 0 ? 1.0 : -1.0;
    a[j] = 2.0 * sgn * sc / M;
    b[j] = 2.0 * sgn * ss / M;
  }
  return from_arrays(std::move(a), std::move(b), false);
}

TrigPoly TrigPoly::cos_term(int j, double coeff, bool half_shift) {
  std::vector<double> a(j + 1, 0.0), b(j + 1, 0.0);
  a[j] = coeff;
  return from_arrays(std::move(a), std::move(b), half_shift);
}

TrigPoly TrigPoly::sin_term(int j, double coeff, bool half_shift) {
  if (j == 0 && !half_shift) return constant(0.0);
  std::vector<double> a(j + 1, 0.0), b(j + 1, 0.0);
  b[j] = coeff;
  return from_arrays(std::move(a), std::move(b), half_shift);
}

TrigPoly TrigPoly::half_sin_shifted(double c) {
  // sin(t/2 - c/2) = sin(t/2)cos(c/2) - cos(t/2)sin(c/2)
  return from_arrays({-std::sin(c / 2)}, {std::cos(c / 2)}, true);
}

TrigPoly TrigPoly::half_cos_shifted(double c) {
  // cos(t/2 - c/2) = cos(t/2)cos(c/2) + sin(t/2)sin(c/2)
  return from_arrays({std::cos(c / 2)}, {std::sin(c / 2)}, true);
}

int TrigPoly::degree() const {
  for (int j = static_cast<int>(a_.size()) - 1; j > 0; --j)
    if (a_[j] != 0.0 || b_[j] != 0.0) return j;
  return 0;
}

std::vector<double> TrigPoly::sin_coeffs() const {
  int n = degree();
  if (half_) return {b_.begin(), b_.begin() + n + 1};
  return {b_.begin() + 1, b_.begin() + n + 1};
}

double TrigPoly::operator()(double t) const {
  const int n = degree();
  const double s0 = half_ ? 0.5 : 0.0;
  const double cr = std::cos(t), sr = std::sin(t);
  double sum = 0.0;
  double cj = 0.0, sj = 0.0;
  for (int j = 0; j <= n; ++j) {
    if ((j & 15) == 0) {
      // resync against drift of the rotation recurrence
      double arg = (j + s0) * t;
      cj = std::cos(arg);
      sj = std::sin(arg);
    } else {
      double c2 = cj * cr - sj * sr;
      sj = sj * cr + cj * sr;
      cj = c2;
    }
    sum += a_[j] * cj + b_[j] * sj;
  }
  return sum;
}

void TrigPoly::eval_many(const std::vector<double>& ts, std::vector<double>& out) const {
  out.resize(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) out[i] = (*this)(ts[i]);
}

TrigPoly TrigPoly::derivative(int k) const {
  TrigPoly p = *this;
  for (int it = 0; it < k; ++it) {
    for (std::size_t j = 0; j < p.a_.size(); ++j) {
      double w = p.frequency(static_cast<int>(j));
      double na = w * p.b_[j];
      double nb = -w * p.a_[j];
      p.a_[j] = na;
      p.b_[j] = nb;
    }
    if (!p.half_) p.b_[0] = 0.0;
  }
  return p;
}

TrigPoly TrigPoly::antiderivative(double base, double mean_tol) const {
  if (half_)
    throw Error(ErrorCode::InvalidArgument,
                "antiderivative requires integer frequencies");
  double scale = std::max(max_abs_coeff(), 1e-300);
  if (std::abs(a_[0]) > mean_tol * scale)
    throw Error(ErrorCode::NonzeroMean,
                "constant term " + std::to_string(a_[0]) + " has no periodic antiderivative");
  TrigPoly f = *this;
  f.a_[0] = 0.0;
  for (std::size_t j = 1; j < a_.size(); ++j) {
    double w = static_cast<double>(j);
    f.a_[j] = -b_[j] / w;
    f.b_[j] = a_[j] / w;
  }
  f.a_[0] = -f(base);
  return f;
}

TrigPoly TrigPoly::antiderivative(double base) const {
  return antiderivative(base, default_tolerances().mean_tol);
}

namespace {

void check_parity(const TrigPoly& p, const TrigPoly& q) {
  if (p.half_shift() != q.half_shift())
    throw Error(ErrorCode::InvalidArgument, "sum of mixed-parity trig polynomials");
}

}  // namespace

TrigPoly TrigPoly::operator+(const TrigPoly& q) const {
  TrigPoly r = *this;
  r += q;
  return r;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& q) {
  check_parity(*this, q);
  if (q.a_.size() > a_.size()) {
    a_.resize(q.a_.size(), 0.0);
    b_.resize(q.b_.size(), 0.0);
  }
  for (std::size_t j = 0; j < q.a_.size(); ++j) {
    a_[j] += q.a_[j];
    b_[j] += q.b_[j];
  }
  return *this;
}

TrigPoly TrigPoly::operator-(const TrigPoly& q) const { return *this + q * -1.0; }

TrigPoly TrigPoly::operator*(double c) const {
  TrigPoly r = *this;
  for (auto& v : r.a_) v *= c;
  for (auto& v : r.b_) v *= c;
  return r;
}

TrigPoly TrigPoly::operator*(const TrigPoly& q) const {
  // Work with doubled frequencies F = 2j + s so both parities share one grid.
  const int sp = half_ ? 1 : 0, sq = q.half_ ? 1 : 0;
  const bool half = (sp ^ sq) != 0;
  const int np = degree(), nq = q.degree();
  const int nr = np + nq + (sp & sq);
  std::vector<double> ra(nr + 1, 0.0), rb(nr + 1, 0.0);
  auto index_of = [half](int f2) { return half ? (f2 - 1) / 2 : f2 / 2; };
  for (int i = 0; i <= np; ++i) {
    const double ai = a_[i], bi = b_[i];
    if (ai == 0.0 && bi == 0.0) continue;
    const int fi = 2 * i + sp;
    for (int j = 0; j <= nq; ++j) {
      const double aj = q.a_[j], bj = q.b_[j];
      if (aj == 0.0 && bj == 0.0) continue;
      const int fj = 2 * j + sq;
      const int sum = index_of(fi + fj);
      const int d = fi - fj;
      const int diff = index_of(d < 0 ? -d : d);
      const double sgn = d < 0 ? -1.0 : 1.0;
      // cos x cos y, sin x sin y, sin x cos y, cos x sin y with x=fi, y=fj
      ra[sum] += 0.5 * (ai * aj - bi * bj);
      ra[diff] += 0.5 * (ai * aj + bi * bj);
      rb[sum] += 0.5 * (bi * aj + ai * bj);
      if (d != 0) rb[diff] += 0.5 * sgn * (bi * aj - ai * bj);
    }
  }
  return from_arrays(std::move(ra), std::move(rb), half);
}

TrigPoly TrigPoly::pow(int e) const {
  if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
  TrigPoly result = constant(1.0);
  TrigPoly base = *this;
  bool result_set = false;
  while (e > 0) {
    if (e & 1) {
      result = result_set ? result * base : base;
      result_set = true;
    }
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

double TrigPoly::max_abs_coeff() const {
  double m = 0.0;
  for (std::size_t j = 0; j < a_.size(); ++j)
    m = std::max({m, std::abs(a_[j]), std::abs(b_[j])});
  return m;
}

double TrigPoly::abs_coeff_sum() const {
  double s = 0.0;
  for (std::size_t j = 0; j < a_.size(); ++j) s += std::abs(a_[j]) + std::abs(b_[j]);
  return s;
}

TrigPoly TrigPoly::with_constant_zeroed() const {
  TrigPoly r = *this;
  if (!half_) r.a_[0] = 0.0;
  return r;
}

TrigPoly TrigPoly::trimmed() const {
  int n = degree();
  return from_arrays({a_.begin(), a_.begin() + n + 1}, {b_.begin(), b_.begin() + n + 1}, half_);
}

double trig_eval(const TrigPoly& p, double t) { return p(t); }
TrigPoly trig_derivative(const TrigPoly& p) { return p.derivative(1); }
TrigPoly trig_product(const TrigPoly& p, const TrigPoly& q) { return p * q; }
TrigPoly trig_antiderivative(const TrigPoly& p, double base) { return p.antiderivative(base); }

}  // namespace arcmarkov
