#include <cmath>

#include <gtest/gtest.h>

#include "arcmarkov/errors.hpp"
#include "arcmarkov/miranda.hpp"

using namespace arcmarkov;

TEST(Miranda, OneDimensional) {
  const double c = 0.37;
  MirandaProblem p{[&](const std::vector<double>& x) { return std::vector<double>{x[0] - c}; },
                   {c - 1},
                   {c + 1},
                   {1}};
  check_miranda_faces(p);
  const auto r = miranda_solve(p);
  EXPECT_NEAR(r.x[0], c, 1e-12);
}

TEST(Miranda, LinearSystem) {
  MirandaProblem p{[](const std::vector<double>& x) {
                     return std::vector<double>{x[0] + x[1] - 1, x[0] - x[1]};
                   },
                   {0.0, 0.0},
                   {1.0, 1.0},
                   {1, -1}};
  check_miranda_faces(p, 5);
  const auto r = miranda_solve(p);
  EXPECT_NEAR(r.x[0], 0.5, 1e-12);
  EXPECT_NEAR(r.x[1], 0.5, 1e-12);
  EXPECT_LT(r.max_residual, 1e-9);
}

TEST(Miranda, WrongPatternIsReported) {
  MirandaProblem p{[](const std::vector<double>& x) {
                     return std::vector<double>{x[0] + x[1] - 1, x[0] - x[1]};
                   },
                   {0.0, 0.0},
                   {1.0, 1.0},
                   {1, 1}};
  try {
    check_miranda_faces(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SignPatternViolated);
  }
}

// Strongly coupled nonlinear map where the face signs still hold.
TEST(Miranda, NonlinearCoupled) {
  MirandaProblem p{[](const std::vector<double>& x) {
                     return std::vector<double>{std::sinh(3 * x[0]) + 0.4 * std::sin(x[1] + x[2]),
                                                x[1] * x[1] * x[1] + x[1] - 0.3 * x[0] - 0.2,
                                                std::tanh(2 * x[2]) - 0.1 * x[0] * x[1]};
                   },
                   {-1, -1, -1},
                   {1, 1, 1},
                   {1, 1, 1}};
  check_miranda_faces(p, 7);
  const auto r = miranda_solve(p, 1e-12);
  EXPECT_LT(r.max_residual, 1e-12);
  for (double v : r.x) EXPECT_LE(std::abs(v), 1.0);
}
