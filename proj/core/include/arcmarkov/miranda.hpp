#pragma once

#include <functional>
#include <vector>

namespace arcmarkov {

using VecFn = std::function<std::vector<double>(const std::vector<double>&)>;

// sign_pattern[i] = +1: f_i <= 0 on the face x_i = lo_i and >= 0 on x_i = hi_i;
// -1 reverses both.
struct MirandaProblem {
  VecFn f;
  std::vector<double> lo, hi;
  std::vector<int> sign_pattern;
};

struct MirandaResult {
  std::vector<double> x;
  std::vector<double> f;
  double max_residual = 0.0;
  int newton_iterations = 0;
  int sweeps = 0;  // coordinate sweeps used by the fallback (0 if unused)
};

// Samples each face on a grid with `per_dim` points per free coordinate
// (corners included) and throws SignPatternViolated on the first sample with
// the wrong sign.
void check_miranda_faces(const MirandaProblem& p, int per_dim = 3);

// Damped Newton with a forward-difference Jacobian, kept inside the box. If
// Newton stalls, coordinate sweeps solve f_i = 0 in x_i alone; the face
// signs bracket each one-dimensional root. Newton then restarts from there.
MirandaResult miranda_solve(const MirandaProblem& p, double tol = 1e-9);

}  // namespace arcmarkov
