#include "arcmarkov/miranda.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "arcmarkov/errors.hpp"
#include "arcmarkov/roots.hpp"

namespace arcmarkov {

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void validate(const MirandaProblem& p) {
  const std::size_t d = p.lo.size();
  if (d == 0 || p.hi.size() != d || p.sign_pattern.size() != d)
    throw Error(ErrorCode::InvalidArgument, "Miranda box and sign pattern sizes differ");
  for (std::size_t i = 0; i < d; ++i) {
    if (!(p.lo[i] < p.hi[i])) throw Error(ErrorCode::InvalidArgument, "empty Miranda box");
    if (p.sign_pattern[i] != 1 && p.sign_pattern[i] != -1)
      throw Error(ErrorCode::InvalidArgument, "sign pattern entries must be +1 or -1");
  }
}

std::vector<double> center(const MirandaProblem& p) {
  std::vector<double> x(p.lo.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.5 * (p.lo[i] + p.hi[i]);
  return x;
}

struct NewtonOutcome {
  std::vector<double> x, f;
  int iterations = 0;
};

NewtonOutcome newton(const MirandaProblem& p, std::vector<double> x, double tol, int max_iter) {
  const int d = static_cast<int>(x.size());
  std::vector<double> fx = p.f(x);
  NewtonOutcome out;
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it;
    if (max_abs(fx) < tol * 1e-3) break;
    Eigen::MatrixXd J(d, d);
    for (int j = 0; j < d; ++j) {
      const double h = 1e-7 * (p.hi[j] - p.lo[j]);
      std::vector<double> xh = x;
      // step away from the nearer face so the probe stays inside the box
      xh[j] += (x[j] + h <= p.hi[j]) ? h : -h;
      const double hh = xh[j] - x[j];
      const std::vector<double> fh = p.f(xh);
      for (int i = 0; i < d; ++i) J(i, j) = (fh[i] - fx[i]) / hh;
    }
    Eigen::VectorXd rhs(d);
    for (int i = 0; i < d; ++i) rhs[i] = -fx[i];
    const Eigen::VectorXd dx = J.colPivHouseholderQr().solve(rhs);
    if (!dx.allFinite()) break;

    const double f0 = max_abs(fx);
    bool accepted = false;
    for (double step = 1.0; step > 1e-6; step *= 0.5) {
      std::vector<double> xn(d);
      for (int i = 0; i < d; ++i) xn[i] = std::clamp(x[i] + step * dx[i], p.lo[i], p.hi[i]);
      std::vector<double> fn = p.f(xn);
      if (max_abs(fn) < f0) {
        x = std::move(xn);
        fx = std::move(fn);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.x = std::move(x);
  out.f = std::move(fx);
  return out;
}

// One nonlinear Gauss-Seidel sweep: x_i <- root of f_i(x_1..x_i..x_d) in
// [lo_i, hi_i]. The Miranda face signs guarantee the bracket.
void sweep(const MirandaProblem& p, std::vector<double>& x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto fi = [&](double v) {
      std::vector<double> y = x;
      y[i] = v;
      return p.f(y)[i];
    };
    const double flo = fi(p.lo[i]), fhi = fi(p.hi[i]);
    if (flo == 0.0) {
      x[i] = p.lo[i];
    } else if (fhi == 0.0) {
      x[i] = p.hi[i];
    } else if ((flo < 0.0) != (fhi < 0.0)) {
      x[i] = find_root(fi, p.lo[i], p.hi[i], flo, fhi);
    }
  }
}

}  // namespace

void check_miranda_faces(const MirandaProblem& p, int per_dim) {
  validate(p);
  const int d = static_cast<int>(p.lo.size());
  per_dim = std::max(per_dim, 2);
  long total = 1;
  for (int i = 0; i + 1 < d; ++i) total *= per_dim;
  for (int i = 0; i < d; ++i) {
    for (int side = 0; side < 2; ++side) {
      const double want = (side == 0 ? -1.0 : 1.0) * p.sign_pattern[i];
      for (long s = 0; s < total; ++s) {
        std::vector<double> x(d);
        long r = s;
        for (int j = 0; j < d; ++j) {
          if (j == i) {
            x[j] = side == 0 ? p.lo[j] : p.hi[j];
            continue;
          }
          const int q = static_cast<int>(r % per_dim);
          r /= per_dim;
          x[j] = p.lo[j] + (p.hi[j] - p.lo[j]) * q / (per_dim - 1);
        }
        const double v = p.f(x)[i];
        if (v * want < 0.0)
          throw Error(ErrorCode::SignPatternViolated,
                      "component " + std::to_string(i) + " has the wrong sign on its " +
                          (side == 0 ? "lower" : "upper") + " face");
      }
    }
  }
}

MirandaResult miranda_solve(const MirandaProblem& p, double tol) {
  check_miranda_faces(p);
  MirandaResult r;
  NewtonOutcome n = newton(p, center(p), tol, 60);
  r.newton_iterations = n.iterations;
  std::vector<double> x = n.x;
  std::vector<double> fx = n.f;
  for (int s = 0; s < 200 && max_abs(fx) >= tol; ++s) {
    sweep(p, x);
    ++r.sweeps;
    n = newton(p, x, tol, 30);
    r.newton_iterations += n.iterations;
    x = n.x;
    fx = n.f;
  }
  r.max_residual = max_abs(fx);
  if (r.max_residual >= tol)
    throw Error(ErrorCode::NoConvergence,
                "Miranda solve stopped at residual " + std::to_string(r.max_residual));
  r.x = std::move(x);
  r.f = std::move(fx);
  return r;
}

}  // namespace arcmarkov
