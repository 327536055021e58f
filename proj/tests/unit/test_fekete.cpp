#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "arcmarkov/fekete.hpp"
#include "arcmarkov/quadrature.hpp"

using namespace arcmarkov::equilibrium;
constexpr double kPi = std::numbers::pi;

TEST(Fekete, SingleArcHistogram) {
  const double th = kPi / 2;
  const ArcSystem arcs({-th, th});
  const auto eq = solve_tau(arcs);
  const auto fk = equilibrium_oracle(arcs, 500);
  const int bins = 40;
  std::vector<double> edges(bins + 1);
  for (int i = 0; i <= bins; ++i) edges[i] = -th + 2 * th * i / bins;
  const auto h = fk.histogram(edges);
  const double w = edges[1] - edges[0];
  // inner bins by quadrature; the two singular end bins share the remainder
  std::vector<double> exact(bins);
  double inner = 0.0;
  for (int i = 1; i + 1 < bins; ++i) {
    exact[i] = arcmarkov::gl_integrate([&](double t) { return eq.density_formula(t); }, edges[i],
                                       edges[i + 1], 40);
    inner += exact[i];
  }
  exact[0] = exact[bins - 1] = (1.0 - inner) / 2;
  double l1 = 0.0;
  for (int i = 0; i < bins; ++i) l1 += std::abs(h[i] * w - exact[i]);
  EXPECT_LT(l1, 0.05);
}

TEST(Fekete, SymmetricTwoArcMass) {
  const auto fk = equilibrium_oracle(ArcSystem({-2.4, -0.7, 0.7, 2.4}), 300);
  EXPECT_NEAR(fk.arc_mass(0), 0.5, 0.02);
  EXPECT_NEAR(fk.arc_mass(1), 0.5, 0.02);
}

TEST(Fekete, GenericTwoArcPointwise) {
  const ArcSystem arcs({-2.0, -0.5, 0.3, 1.9});
  const auto eq = solve_tau(arcs);
  const auto fk = equilibrium_oracle(arcs, 500);
  EXPECT_NEAR(fk.arc_mass(0), eq.arc_mass(0), 0.01);
  for (double t : {-1.6, -1.25, -0.9, 0.7, 1.1, 1.5}) {
    const double want = eq.density(t);
    EXPECT_NEAR(fk.density(t, 4), want, 0.07 * want) << "t=" << t;
  }
}
