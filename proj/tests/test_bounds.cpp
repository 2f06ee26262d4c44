#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sfd/bounds.hpp"
#include "sfd/metrics.hpp"
#include "sfd/pointgen.hpp"

using namespace sfd;

TEST(UnitBallVolume, Values) {
  EXPECT_DOUBLE_EQ(unit_ball_volume(1), 2.0);
  EXPECT_DOUBLE_EQ(unit_ball_volume(2), std::numbers::pi);
  EXPECT_NEAR(unit_ball_volume(5), 5.2638, 5e-4);
  for (std::size_t d = 1; d <= 30; ++d) {
    const double gamma_form = std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1);
    EXPECT_NEAR(unit_ball_volume(d), gamma_form, 1e-13 * gamma_form) << d;
  }
}

TEST(IntegerRoot, ExactPowersAndNeighbours) {
  for (std::size_t d = 1; d <= 12; ++d) {
    for (std::uint64_t m = 1; m <= 30; ++m) {
      if (std::pow(double(m), double(d)) > 1e18) break;
      std::uint64_t n = 1;
      for (std::size_t i = 0; i < d; ++i) n *= m;
      EXPECT_EQ(integer_root(n, d), m) << n << " " << d;
      if (n > 1) EXPECT_EQ(integer_root(n - 1, d), m - 1) << n - 1 << " " << d;
    }
  }
  EXPECT_EQ(integer_root(0, 3), 0u);
  EXPECT_EQ(integer_root(~std::uint64_t{0}, 2), 4294967295u);
  EXPECT_THROW(integer_root(5, 0), std::invalid_argument);
}

TEST(RLower, Values) {
  EXPECT_NEAR(r_lower(1, 2), 1 / std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(r_lower(100, 2), 1 / std::sqrt(100 * std::numbers::pi), 1e-15);
  for (std::size_t d = 1; d <= 20; ++d)
    for (std::uint64_t n = 1; n < 500; ++n) EXPECT_LT(r_lower(n + 1, d), r_lower(n, d));
  // n^{1/d} r_lower(n, d) does not depend on n.
  for (std::size_t d : {2u, 5u, 10u})
    for (std::uint64_t n : {7u, 100u, 12345u})
      EXPECT_NEAR(std::pow(double(n), 1.0 / d) * r_lower(n, d), r_lower(1, d), 1e-14);
  EXPECT_THROW(r_lower(0, 2), std::invalid_argument);
}

TEST(RUpper, Values) {
  for (std::size_t d = 1; d <= 20; ++d) EXPECT_EQ(r_upper(1, d), std::sqrt(double(d)) / 2);
  EXPECT_NEAR(r_upper(20, 2), std::sqrt(2.0) / 8, 1e-16);
  // Drops only at n = (k+1)^d.
  for (std::size_t d : {2u, 3u}) {
    for (std::uint64_t n = 1; n < 2000; ++n) {
      const bool jump = integer_root(n + 1, d) != integer_root(n, d);
      const auto k = integer_root(n + 1, d);
      EXPECT_EQ(r_upper(n + 1, d) < r_upper(n, d), jump);
      if (jump) EXPECT_EQ(std::pow(double(k), double(d)), double(n + 1));
    }
  }
  EXPECT_THROW(r_upper(1, 0), std::invalid_argument);
}

TEST(RLowerUpper, StrictlyOrderedAboveOneDimension) {
  for (std::size_t d = 2; d <= 20; ++d)
    for (std::uint64_t n = 1; n <= 10000; ++n) ASSERT_LT(r_lower(n, d), r_upper(n, d)) << n << " " << d;
  // In one dimension both equal 1/(2n).
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    EXPECT_NEAR(r_lower(n, 1), 0.5 / double(n), 1e-15 / double(n));
    EXPECT_EQ(r_upper(n, 1), 0.5 / double(n));
  }
}

TEST(BetaStar, Values) {
  EXPECT_NEAR(beta_star(100, 10), 5.54, 0.005);
  for (std::size_t d : {2u, 5u, 10u}) {
    double prev = 0;
    for (std::uint64_t n = 10; n <= 1000; n += 10) {
      const double b = beta_star(n, d);
      EXPECT_GT(b, prev);
      prev = b;
    }
  }
  EXPECT_NEAR(beta_two_sqrt_2d(10), 8.944, 1e-3);
  EXPECT_THROW(beta_star(1, 1), std::domain_error);
}

TEST(LdsBound, Values) {
  EXPECT_NEAR(lds_cr_upper(1024, 2, 0, 2), 2 * std::sqrt(2.0) / 32, 1e-15);
  EXPECT_NEAR(lds_cr_upper(1000000, 10, sobol_t(10), 2),
              std::sqrt(10.0) * std::pow(2.0, 1 + 2.3) / std::pow(1e6, 0.1), 1e-9);
  EXPECT_THROW(lds_cr_upper(10, 2, 0, 1), std::invalid_argument);
  EXPECT_THROW(lds_cr_upper(0, 2, 0, 2), std::invalid_argument);
}

TEST(FaureBase, FirstPrimeAtLeastD) {
  EXPECT_EQ(faure_base(1), 2u);
  EXPECT_EQ(faure_base(2), 2u);
  EXPECT_EQ(faure_base(4), 5u);
  EXPECT_EQ(faure_base(10), 11u);
  EXPECT_EQ(faure_base(13), 13u);
  EXPECT_EQ(faure_base(24), 29u);
}

TEST(ReferenceDesigns, TwoPointOptimal) {
  const auto z = two_point_optimal(2);
  EXPECT_EQ(z.points, PointSet::from_points({{0.5, 0.25}, {0.5, 0.75}}));
  EXPECT_NEAR(z.covering_radius, 0.5590169943749474, 1e-15);
  EXPECT_NEAR(covering_radius(z.points, grid(201, 2)), z.covering_radius, 0.01);
  for (std::size_t d : {1u, 3u}) {
    const auto r = two_point_optimal(d);
    EXPECT_NEAR(covering_radius(r.points, grid(d == 1 ? 1001 : 41, d)), r.covering_radius, 0.01);
  }
}

TEST(ReferenceDesigns, ThreePoint) {
  const auto r = three_point_reference(2);
  EXPECT_NEAR(r.covering_radius, 0.5 * std::sqrt(2 - 8.0 / 9), 1e-15);
  EXPECT_EQ(r.points.point(0), (Point{0.5, 0.5}));
  EXPECT_NEAR(covering_radius(r.points, grid(241, 2)), r.covering_radius, 0.01);
}

TEST(ReferenceDesigns, CenterPlusAnyPointIsWorse) {
  // With the center in the design some vertex stays at distance sqrt(d)/2.
  const auto g = grid(21, 2);
  const double opt = two_point_optimal(2).covering_radius;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto X = PointSet::from_points({{0.5, 0.5}, g.point(i)});
    EXPECT_NEAR(covering_radius(X, g), std::sqrt(2.0) / 2, 1e-15);
    EXPECT_GT(covering_radius(X, g), opt);
  }
  EXPECT_THROW(two_point_optimal(0), std::invalid_argument);
  EXPECT_THROW(three_point_reference(0), std::invalid_argument);
}
