#pragma once

#include <span>
#include <vector>

#include "arcmarkov/alg_poly.hpp"
#include "arcmarkov/cheb_series.hpp"
#include "arcmarkov/trig_poly.hpp"

namespace arcmarkov::composition {

constexpr int kMaxPartitionOrder = 12;

// One term of the Faa di Bruno expansion: multiplicities m_1..m_k with
// sum j*m_j = k, coefficient k! / prod(m_j! (j!)^{m_j}).
struct PartitionTerm {
  std::vector<int> m;  // m[j-1] = m_j
  BigInt coeff;
  int order() const;   // m_1 + ... + m_k, the outer derivative used
};

// All terms for k in [1, 12]; OutOfRange beyond that.
const std::vector<PartitionTerm>& enumerate_partitions(int k);

// d^k/dx^k f(g(x)) from outer = f'(g)..f^(k)(g) and inner = g'..g^(k).
double faa_di_bruno(std::span<const double> outer, std::span<const double> inner, int k);

ExactAlgPoly chebyshev_exact(int l);
AlgPoly chebyshev(int l);

// l^2 (l^2 - 1) ... (l^2 - (k-1)^2) / (2k-1)!!; zero when k > l.
Rational chebyshev_endpoint_derivative(int l, int k);
// Independent route: k-fold exact differentiation of chebyshev_exact(l) at 1.
Rational chebyshev_derivative_at_one(int l, int k);
BigInt double_factorial(int n);

// d^k/dt^k P(U(t)) with exact coefficient-level derivatives of both factors.
double compose_derivative(const AlgPoly& P, const TrigPoly& U, double t, int k);
double compose_derivative(const ChebSeries& P, const TrigPoly& U, double t, int k);

}  // namespace arcmarkov::composition
