#include "arcmarkov/config.hpp"
#include "arcmarkov/errors.hpp"

#include <cstdlib>
#include <string>

namespace arcmarkov {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonzeroMean: return "NonzeroMean";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateGap: return "DegenerateGap";
    case ErrorCode::OutsideInterior: return "OutsideInterior";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SignPatternViolated: return "SignPatternViolated";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::IntervalConditionViolated: return "IntervalConditionViolated";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace {

void override_from_env(const char* name, double& field) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  char* end = nullptr;
  double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0))
    throw Error(ErrorCode::ConfigError,
                std::string("bad value for ") + name + ": " + raw);
  field = v;
}

Tolerances load() {
  Tolerances t;
  override_from_env("ARCMARKOV_SUP_REL_TOL", t.sup_rel_tol);
  override_from_env("ARCMARKOV_MEAN_TOL", t.mean_tol);
  override_from_env("ARCMARKOV_TAU_RESIDUAL_TOL", t.tau_residual_tol);
  override_from_env("ARCMARKOV_MIN_GAP", t.min_gap);
  override_from_env("ARCMARKOV_QUAD_TOL", t.quad_tol);
  override_from_env("ARCMARKOV_BRANCH_TOL", t.branch_tol);
  override_from_env("ARCMARKOV_TOUCH_TOL", t.touch_tol);
  override_from_env("ARCMARKOV_MIRANDA_TOL", t.miranda_tol);
  override_from_env("ARCMARKOV_INTERIOR_MARGIN", t.interior_margin);
  override_from_env("ARCMARKOV_SLACK_C", t.slack_c);
  return t;
}

}  // namespace

const Tolerances& default_tolerances() {
  static const Tolerances t = load();
  return t;
}

}  // namespace arcmarkov
