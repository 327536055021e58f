#include "arcmarkov/roots.hpp"

#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "arcmarkov/errors.hpp"

namespace arcmarkov {

double find_root(const std::function<double(double)>& f, double lo, double hi, double flo,
                 double fhi) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw Error(ErrorCode::InvalidArgument, "find_root: no sign change in bracket");
  std::uintmax_t max_iter = 200;
  boost::math::tools::eps_tolerance<double> tol(52);
  auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, max_iter);
  const double a = r.first, b = r.second;
  // pick the endpoint of the final bracket with the smaller residual
  const double fa = f(a), fb = f(b);
  return std::abs(fa) <= std::abs(fb) ? a : b;
}

double find_root(const std::function<double(double)>& f, double lo, double hi) {
  return find_root(f, lo, hi, f(lo), f(hi));
}

std::vector<std::pair<double, double>> sign_change_brackets(
    const std::function<double(double)>& f, double lo, double hi, int n) {
  std::vector<std::pair<double, double>> out;
  double x0 = lo, f0 = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double x1 = (i == n) ? hi : lo + (hi - lo) * i / n;
    const double f1 = f(x1);
    if ((f0 < 0.0 && f1 >= 0.0) || (f0 > 0.0 && f1 <= 0.0)) out.emplace_back(x0, x1);
    x0 = x1;
    f0 = f1;
  }
  return out;
}

}  // namespace arcmarkov
