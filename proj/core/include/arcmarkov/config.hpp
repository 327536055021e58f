#pragma once

namespace arcmarkov {

// Numeric knobs. Defaults can be overridden process-wide through environment
// variables named ARCMARKOV_<FIELD> in upper case (e.g. ARCMARKOV_SUP_REL_TOL),
// or per call by passing a modified copy.
struct Tolerances {
  double sup_rel_tol = 1e-10;        // sup-norm refinement
  double mean_tol = 1e-10;           // |A_0| allowed before NonzeroMean, relative
  double tau_residual_tol = 1e-10;   // normalized gap integrals
  double min_gap = 1e-9;             // narrower gaps are DegenerateGap
  double quad_tol = 1e-12;           // adaptive panel tolerance
  double branch_tol = 1e-13;         // branch inverse / root polish
  double touch_tol = 1e-9;           // |U| within this of 1 counts as touching
  double miranda_tol = 1e-9;         // max |f_i| at a Miranda solution
  double interior_margin = 1e-3;     // distance to endpoints for interior checks
  double slack_c = 0.5;              // markov/bernstein envelope slack(n) = c/sqrt(n)
};

// Process defaults, with environment overrides applied once.
const Tolerances& default_tolerances();

}  // namespace arcmarkov
