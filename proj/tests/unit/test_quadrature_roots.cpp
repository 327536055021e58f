#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "arcmarkov/quadrature.hpp"
#include "arcmarkov/roots.hpp"

constexpr double kPi = std::numbers::pi;

TEST(GaussLegendre, ExactForPolynomials) {
  for (int n : {1, 2, 5, 20, 64}) {
    const auto& r = arcmarkov::gauss_legendre(n);
    double s = 0.0;
    for (double w : r.w) s += w;
    EXPECT_NEAR(s, 2.0, 1e-14);
    const int d = 2 * n - 1;
    double moment = 0.0;
    for (int i = 0; i < n; ++i) moment += r.w[i] * std::pow(r.x[i], d - (d % 2));
    EXPECT_NEAR(moment, 2.0 / (d - (d % 2) + 1), 1e-13);
  }
}

TEST(GaussLegendre, Composite) {
  const double v = arcmarkov::gl_composite([](double t) { return std::cos(t); }, 0, kPi / 2, 4, 10);
  EXPECT_NEAR(v, 1.0, 1e-15);
  EXPECT_NEAR(arcmarkov::gl_integrate([](double t) { return std::exp(t); }, 0, 1, 20),
              std::exp(1.0) - 1.0, 1e-15);
}

TEST(AdaptiveGL, HandlesPeakedIntegrand) {
  const auto r = arcmarkov::adaptive_gl([](double t) { return 1.0 / (1e-4 + t * t); }, -1, 1, 1e-12);
  EXPECT_NEAR(r.value, 2.0 / 1e-2 * std::atan(1.0 / 1e-2), 1e-8);
  EXPECT_GT(r.panels, 1);
}

TEST(Roots, FindRoot) {
  const double r = arcmarkov::find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0);
  EXPECT_NEAR(r, 0.7390851332151607, 1e-15);
  const auto br = arcmarkov::sign_change_brackets([](double x) { return std::sin(3 * x); }, 0.1, 3.0, 64);
  EXPECT_EQ(br.size(), 2u);
}
