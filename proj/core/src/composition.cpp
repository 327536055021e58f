#include "arcmarkov/composition.hpp"

#include <array>
#include <mutex>
#include <string>

#include "arcmarkov/errors.hpp"

namespace arcmarkov::composition {

int PartitionTerm::order() const {
  int s = 0;
  for (int v : m) s += v;
  return s;
}

namespace {

BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void enumerate(int k, int j, int remaining, std::vector<int>& m,
               std::vector<PartitionTerm>& out) {
  if (j > k) {
    if (remaining != 0) return;
    BigInt denom = 1;
    for (int i = 1; i <= k; ++i) {
      denom *= factorial(m[i - 1]);
      BigInt fj = factorial(i);
      for (int r = 0; r < m[i - 1]; ++r) denom *= fj;
    }
    BigInt num = factorial(k);
    if (num % denom != 0)
      throw Error(ErrorCode::InvalidArgument, "non-integer partition coefficient");
    out.push_back({m, num / denom});
    return;
  }
  for (int c = 0; c * j <= remaining; ++c) {
    m[j - 1] = c;
    enumerate(k, j + 1, remaining - c * j, m, out);
  }
  m[j - 1] = 0;
}

}  // namespace

const std::vector<PartitionTerm>& enumerate_partitions(int k) {
  if (k < 1 || k > kMaxPartitionOrder)
    throw Error(ErrorCode::OutOfRange,
                "partition order must be in [1, " + std::to_string(kMaxPartitionOrder) + "]");
  static std::mutex mu;
  static std::array<std::vector<PartitionTerm>, kMaxPartitionOrder + 1> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[k];
  if (slot.empty()) {
    std::vector<int> m(k, 0);
    enumerate(k, 1, k, m, slot);
  }
  return slot;
}

double faa_di_bruno(std::span<const double> outer, std::span<const double> inner, int k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "faa_di_bruno needs k >= 1");
  if (static_cast<int>(outer.size()) < k || static_cast<int>(inner.size()) < k)
    throw Error(ErrorCode::InvalidArgument, "faa_di_bruno: derivative lists shorter than k");
  double total = 0.0;
  for (const auto& term : enumerate_partitions(k)) {
    double prod = static_cast<double>(term.coeff) * outer[term.order() - 1];
    for (int j = 1; j <= k; ++j)
      for (int r = 0; r < term.m[j - 1]; ++r) prod *= inner[j - 1];
    total += prod;
  }
  return total;
}

ExactAlgPoly chebyshev_exact(int l) {
  if (l < 0) throw Error(ErrorCode::InvalidArgument, "Chebyshev index must be >= 0");
  ExactAlgPoly t0 = ExactAlgPoly::constant(1), t1 = ExactAlgPoly::x();
  if (l == 0) return t0;
  const ExactAlgPoly two_x({Rational(0), Rational(2)});
  for (int j = 2; j <= l; ++j) {
    ExactAlgPoly t2 = two_x * t1 - t0;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  return t1;
}

AlgPoly chebyshev(int l) { return to_double(chebyshev_exact(l)); }

BigInt double_factorial(int n) {
  BigInt r = 1;
  for (int i = n; i > 1; i -= 2) r *= i;
  return r;
}

Rational chebyshev_endpoint_derivative(int l, int k) {
  if (l < 0 || k < 1) throw Error(ErrorCode::InvalidArgument, "need l >= 0 and k >= 1");
  BigInt num = 1;
  const BigInt l2 = BigInt(l) * l;
  for (int j = 0; j < k; ++j) num *= l2 - BigInt(j) * j;
  return Rational(num, double_factorial(2 * k - 1));
}

Rational chebyshev_derivative_at_one(int l, int k) {
  return chebyshev_exact(l).derivative(k)(Rational(1));
}

namespace {

// outer[j] = P^(j)(U(t)) for j = 0..k
double compose_from_outer(const std::vector<double>& outer, const TrigPoly& U, double t,
                          int k) {
  if (k == 0) return outer[0];
  std::vector<double> inner(k);
  TrigPoly d = U;
  for (int j = 0; j < k; ++j) {
    d = d.derivative();
    inner[j] = d(t);
  }
  return faa_di_bruno(std::span<const double>(outer).subspan(1), inner, k);
}

void check_order(int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "derivative order must be >= 0");
}

}  // namespace

double compose_derivative(const AlgPoly& P, const TrigPoly& U, double t, int k) {
  check_order(k);
  const double u = U(t);
  std::vector<double> outer;
  AlgPoly d = P;
  outer.push_back(d(u));
  for (int j = 1; j <= k; ++j) {
    d = d.derivative();
    outer.push_back(d(u));
  }
  return compose_from_outer(outer, U, t, k);
}

double compose_derivative(const ChebSeries& P, const TrigPoly& U, double t, int k) {
  check_order(k);
  return compose_from_outer(P.derivatives_at(U(t), k), U, t, k);
}

}  // namespace arcmarkov::composition
