#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace arcmarkov {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {
template <class T>
bool is_zero(const T& v) {
  return v == T(0);
}
}  // namespace detail

// Polynomial c_0 + c_1 x + ... + c_d x^d in monomial form. Instantiated for
// double (AlgPoly), exact rationals (ExactAlgPoly) and complex<double>.
template <class T>
class Polynomial {
 public:
  Polynomial() : c_{T(0)} {}
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(T(0));
  }
  static Polynomial constant(const T& v) { return Polynomial({v}); }
  static Polynomial x() { return Polynomial({T(0), T(1)}); }
  // (x - r)
  static Polynomial linear_root(const T& r) { return Polynomial({T(0) - r, T(1)}); }

  int degree() const {
    for (int j = static_cast<int>(c_.size()) - 1; j > 0; --j)
      if (!detail::is_zero(c_[j])) return j;
    return 0;
  }
  const std::vector<T>& coeffs() const { return c_; }
  const T& operator[](std::size_t j) const { return c_[j]; }

  template <class X>
  auto operator()(const X& x) const {
    using R = decltype(T(0) * x);
    R acc = R(0);
    for (int j = degree(); j >= 0; --j) acc = acc * x + c_[j];
    return acc;
  }

  Polynomial derivative(int k = 1) const {
    std::vector<T> c = c_;
    for (int it = 0; it < k; ++it) {
      if (c.size() <= 1) return Polynomial();
      std::vector<T> d(c.size() - 1);
      for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = c[j] * T(static_cast<long>(j));
      c = std::move(d);
    }
    return Polynomial(std::move(c));
  }

  // F' = p with F(base) = 0.
  Polynomial antiderivative(const T& base = T(0)) const {
    std::vector<T> c(c_.size() + 1, T(0));
    for (std::size_t j = 0; j < c_.size(); ++j) c[j + 1] = c_[j] / T(static_cast<long>(j + 1));
    Polynomial f(std::move(c));
    f.c_[0] = T(0) - f(base);
    return f;
  }

  Polynomial operator+(const Polynomial& q) const {
    std::vector<T> c(std::max(c_.size(), q.c_.size()), T(0));
    for (std::size_t j = 0; j < c_.size(); ++j) c[j] += c_[j];
    for (std::size_t j = 0; j < q.c_.size(); ++j) c[j] += q.c_[j];
    return Polynomial(std::move(c));
  }
  Polynomial operator-(const Polynomial& q) const { return *this + q * T(-1); }
  Polynomial operator*(const T& s) const {
    std::vector<T> c = c_;
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
  }
  Polynomial operator*(const Polynomial& q) const {
    const int n = degree(), m = q.degree();
    std::vector<T> c(n + m + 1, T(0));
    for (int i = 0; i <= n; ++i) {
      if (detail::is_zero(c_[i])) continue;
      for (int j = 0; j <= m; ++j) c[i + j] += c_[i] * q.c_[j];
    }
    return Polynomial(std::move(c));
  }
  Polynomial pow(int e) const {
    Polynomial r = constant(T(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }
  // p(q(x)) by Horner in the polynomial ring.
  Polynomial compose(const Polynomial& q) const {
    Polynomial r;
    for (int j = degree(); j >= 0; --j) r = r * q + constant(c_[j]);
    return r;
  }

  bool operator==(const Polynomial& q) const {
    const int n = degree();
    if (n != q.degree()) return false;
    for (int j = 0; j <= n; ++j)
      if (!(c_[j] == q.c_[j])) return false;
    return true;
  }

 private:
  std::vector<T> c_;
};

using AlgPoly = Polynomial<double>;
using ExactAlgPoly = Polynomial<Rational>;
using ComplexAlgPoly = Polynomial<std::complex<double>>;

AlgPoly to_double(const ExactAlgPoly& p);

}  // namespace arcmarkov
