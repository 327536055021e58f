#pragma once

#include <functional>
#include <vector>

namespace arcmarkov {

// Gauss-Legendre nodes and weights on [-1, 1]; computed once per order and
// cached for the lifetime of the process.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

using RealFn = std::function<double(double)>;

double gl_integrate(const RealFn& f, double a, double b, int n);
double gl_composite(const RealFn& f, double a, double b, int panels, int n);

struct QuadResult {
  double value = 0.0;
  double abs_value = 0.0;  // integral of |f| on the same nodes
  double error = 0.0;      // estimated absolute error
  int panels = 0;
};

// Panel-splitting Gauss-Legendre: a panel is accepted when the n-point value
// agrees with the sum over its two halves to tol * max(1, |panel integral|).
QuadResult adaptive_gl(const RealFn& f, double a, double b, double tol, int n = 64,
                       int max_depth = 40);

}  // namespace arcmarkov
