#include <cmath>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "arcmarkov/errors.hpp"
#include "arcmarkov/fastdecay.hpp"
#include "arcmarkov/json_io.hpp"

using namespace arcmarkov;
using namespace arcmarkov::fastdecay;

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(ARCMARKOV_TEST_DATA_DIR) + "/" + name);
  return json::parse(in);
}

}  // namespace

TEST(FastDecaySpec, Validation) {
  auto s = load("fd_trig_1.json").get<TrigSpec>();
  EXPECT_NO_THROW(validate(s));
  s.alpha = 0.1;  // alpha must sit left of t0
  EXPECT_THROW(validate(s), Error);

  auto a = load("fd_algebraic_1.json").get<AlgebraicSpec>();
  EXPECT_NO_THROW(validate(a));
  a.zeros.push_back({0.5, 1});  // inside [a', b']
  EXPECT_THROW(validate(a), Error);
}

TEST(FastDecaySpec, SmallDegreeIsRejected) {
  auto s = load("fd_trig_1.json").get<TrigSpec>();
  s.m = degree_constant(s) + 1;
  try {
    build_fd_trig(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == ErrorCode::DegreeTooSmall || e.code() == ErrorCode::InvalidArgument);
  }
}

TEST(FastDecayTrig, Properties) {
  const auto s = load("fd_trig_1.json").get<TrigSpec>();
  const auto r = build_fd_trig(s);
  EXPECT_TRUE(r.report.all_pass()) << r.report.first_failure();
  EXPECT_LE(r.Q.degree(), s.m);
  EXPECT_NEAR(r.Q(s.t0), 1.0, 1e-10);
  EXPECT_NEAR(r.Q.derivative()(s.t0), 0.0, 1e-8 * r.Q.abs_coeff_sum() * s.m);
  for (const auto& z : s.zeros) {
    TrigPoly d = r.Q;
    for (int k = 0; k <= z.multiplicity; ++k) {
      EXPECT_NEAR(d(z.at), 0.0, 1e-9 * std::pow(s.m, k)) << "zero " << z.at << " order " << k;
      d = d.derivative();
    }
  }
  // 0 <= Q < 1 away from t0
  for (int i = 0; i < 4000; ++i) {
    const double t = -M_PI + 2 * M_PI * i / 4000;
    EXPECT_GE(r.Q(t), -1e-12);
    if (std::abs(t - s.t0) > 1e-3) EXPECT_LT(r.Q(t), 1.0);
  }
  EXPECT_GT(r.decay.delta_hat, 0.0);
}

TEST(FastDecayTrig, ReportIsReproduced) {
  const auto s = load("fd_trig_4.json").get<TrigSpec>();
  const auto r = build_fd_trig(s);
  const auto again = check_trig(s, r.S, r.Q);
  EXPECT_EQ(again.all_pass(), r.report.all_pass());
  EXPECT_DOUBLE_EQ(again.at("zeros").measured, r.report.at("zeros").measured);
  EXPECT_THROW(again.at("no-such-item"), Error);
}

TEST(FastDecayAlgebraic, Properties) {
  const auto s = load("fd_algebraic_2.json").get<AlgebraicSpec>();
  const auto r = build_fd_algebraic(s);
  EXPECT_TRUE(r.report.all_pass()) << r.report.first_failure();
  EXPECT_NEAR(r.Q(s.x0), 1.0, 1e-10);
  for (const auto& z : s.zeros) {
    const auto dv = r.Q.derivatives_at(z.at, z.multiplicity);
    for (double v : dv) EXPECT_NEAR(v, 0.0, 1e-9 * std::pow(s.m, 2 * z.multiplicity));
  }
  const ChebSeries sq = r.S * r.S;
  for (double x : {-0.95, -0.2, 0.0, 0.45, 0.99}) EXPECT_NEAR(sq(x), r.Q(x), 1e-11);
}

TEST(DecayFit, LinearData) {
  const auto f = fit_decay_rate({100, 200, 300}, {std::exp(-0.5 - 30.0), std::exp(-0.5 - 60.0),
                                                  std::exp(-0.5 - 90.0)});
  EXPECT_NEAR(f.delta_hat, 0.3, 1e-12);
  EXPECT_LT(f.rel_residual, 1e-6);
  EXPECT_TRUE(f.monotone);
  EXPECT_THROW(fit_decay_rate({1}, {0.5}), Error);
}

TEST(PeakingFactor, TwoIntervalSet) {
  const auto d = tset::analyze_admissible(tset::two_interval_U());
  const double a = d.e_set.intervals()[0].hi;
  const double rho0 = peaking_rho0(d, a);
  EXPECT_GT(rho0, 0.0);
  const int order = 2;
  const auto L = extremal_peaking_factor(d, a, rho0, order, 200, false);
  EXPECT_NEAR(L.Q(a), 1.0, 1e-10);
  for (double e : d.extremal_points) {
    if (std::abs(e - a) < 1e-9) continue;
    TrigPoly q = L.Q;
    for (int j = 0; j <= order; ++j) {
      EXPECT_NEAR(q(e), 0.0, 1e-9 * std::pow(200.0, j)) << "point " << e << " order " << j;
      q = q.derivative();
    }
  }
  double sup = 0.0;
  for (const auto& iv : d.e_set.intervals())
    for (int i = 0; i <= 2000; ++i) sup = std::max(sup, L.Q(iv.lo + iv.length() * i / 2000));
  EXPECT_LE(sup, 1.0 + 1e-12);
}
