#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sfd/bounds.hpp"
#include "sfd/coffeehouse.hpp"
#include "sfd/domain.hpp"
#include "sfd/metrics.hpp"
#include "sfd/pointgen.hpp"

using namespace sfd;

namespace {

PointSet random_points(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::uniform_real_distribution<double> u(0, 1);
  PointSet p(d);
  Point x(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& v : x) v = u(rng);
    p.push_back(x);
  }
  return p;
}

PointSet line(std::initializer_list<double> xs) {
  PointSet p(1);
  for (double x : xs) p.push_back(Point{x});
  return p;
}

}  // namespace

TEST(CoveringRadius, Examples) {
  EXPECT_DOUBLE_EQ(covering_radius(line({0.5}), line({0, 0.25, 0.75, 1})), 0.5);
  const auto center = PointSet::from_points({{0.5, 0.5}});
  EXPECT_NEAR(covering_radius(center, grid(101, 2)), std::sqrt(2.0) / 2, 1e-15);
  const auto s = sobol(64, 3);
  EXPECT_EQ(covering_radius(s, s), 0.0);
}

TEST(CoveringRadius, Errors) {
  EXPECT_THROW(covering_radius(PointSet(2), grid(3, 2)), std::invalid_argument);
  EXPECT_THROW(covering_radius(grid(3, 2), PointSet(2)), std::invalid_argument);
  EXPECT_THROW(covering_radius(grid(3, 1), grid(3, 2)), std::invalid_argument);
}

TEST(CoveringRadius, AnalyticReferenceDesigns) {
  const auto z2 = two_point_optimal(2);
  EXPECT_NEAR(covering_radius(z2.points, grid(401, 2)), 0.5 * std::sqrt(1.25), 0.005);
  const auto center = PointSet::from_points({{0.5, 0.5}});
  EXPECT_NEAR(covering_radius(center, grid(401, 2)), std::sqrt(2.0) / 2, 0.005);
}

TEST(PackingRadius, Examples) {
  EXPECT_DOUBLE_EQ(packing_radius(PointSet::from_points({{0, 0}, {1, 1}})), std::sqrt(2.0) / 2);
  EXPECT_DOUBLE_EQ(packing_radius(line({0, 0.25, 1})), 0.125);
  EXPECT_EQ(packing_radius(line({0.3, 0.7, 0.3})), 0.0);
  EXPECT_THROW(packing_radius(line({0.3})), std::invalid_argument);
}

TEST(MeshRatio, Examples) {
  const auto two = PointSet::from_points({{0.25, 0.5}, {0.75, 0.5}});
  EXPECT_NEAR(mesh_ratio(two, grid(201, 2)), std::sqrt(0.3125) / 0.25, 1e-12);
  EXPECT_NEAR(mesh_ratio(line({0.25, 0.75}), grid(101, 1)), 1.0, 1e-12);
  EXPECT_THROW(mesh_ratio(line({0.5, 0.5}), grid(11, 1)), std::domain_error);
}

TEST(MeshRatio, CoffeeHouseDesignsWithinOneAndTwo) {
  const auto dom = Domain::hypercube(2);
  const auto cand = grid(41, 2);
  const auto res = coffeehouse_construct(cand, dom, kBetaInfinity, 40);
  const auto X = cand.subset(res.indices);
  for (std::size_t n = 2; n <= 40; ++n) {
    const double rho = mesh_ratio(X.prefix(n), cand);
    EXPECT_GE(rho, 1.0 - 1e-12) << n;
    EXPECT_LE(rho, 2.0 + 1e-12) << n;
  }
}

TEST(CoveringQuantile, Examples) {
  EXPECT_DOUBLE_EQ(covering_quantile(line({0.5}), line({0, 0.25, 0.5, 0.75, 1}), 0.6), 0.25);
  const auto design = sobol(10, 2);
  const auto eval = grid(51, 2);
  EXPECT_EQ(covering_quantile(design, eval, 1.0), covering_radius(design, eval));
  EXPECT_LE(covering_quantile(design, eval, 0.99), covering_radius(design, eval));
  EXPECT_THROW(covering_quantile(design, eval, 0.0), std::invalid_argument);
  EXPECT_THROW(covering_quantile(design, eval, 1.5), std::invalid_argument);
}

TEST(CoveringQuantile, OrderStatisticDefinition) {
  std::mt19937_64 rng(5);
  const auto design = random_points(rng, 7, 3);
  const auto eval = random_points(rng, 333, 3);
  auto d = nearest_distances(design, eval);
  std::sort(d.begin(), d.end());
  for (double a : {0.001, 0.1, 0.5, 0.9, 0.99, 1.0}) {
    const auto k = static_cast<std::size_t>(std::ceil(a * 333));
    EXPECT_EQ(covering_quantile(design, eval, a), d[k - 1]) << a;
  }
  EXPECT_EQ(empirical_quantile({3, 1, 2}, 0.5), 2.0);
  EXPECT_THROW(empirical_quantile({}, 0.5), std::invalid_argument);
}

TEST(QuantizationError, Examples) {
  const auto s = sobol(16, 2);
  EXPECT_EQ(quantization_error(s, s, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(quantization_error(line({0.5}), line({0, 1}), 1.0), 0.5);
  EXPECT_THROW(quantization_error(s, s, -1.0), std::invalid_argument);
}

TEST(QuantizationError, PowerMeanBelowCoveringRadius) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto design = random_points(rng, 1 + rng() % 10, 1 + rng() % 4);
    const auto eval = random_points(rng, 50, design.dim());
    const double cr = covering_radius(design, eval);
    for (double q : {-0.5, 0.0, 1.0, 10.0, 200.0}) {
      const double e = quantization_error(design, eval, q);
      EXPECT_LE(e, cr * (1 + 1e-12));
      // Direct formula with no rescaling.
      if (q <= 10.0) {
        double s = 0;
        for (double v : nearest_distances(design, eval)) s += std::pow(v, q + 1);
        EXPECT_NEAR(e, std::pow(s / 50, 1 / (q + 1)), 1e-12);
      }
    }
  }
}

TEST(MetricProperties, AddingPointsNeverIncreasesCoverage) {
  std::mt19937_64 rng(3);
  const auto eval = random_points(rng, 400, 2);
  const auto design = random_points(rng, 30, 2);
  for (std::size_t n = 1; n < 30; ++n) {
    EXPECT_LE(covering_radius(design.prefix(n + 1), eval), covering_radius(design.prefix(n), eval));
    EXPECT_LE(covering_quantile(design.prefix(n + 1), eval, 0.9), covering_quantile(design.prefix(n), eval, 0.9));
    if (n >= 2) EXPECT_GE(packing_radius(design.prefix(n)), packing_radius(design.prefix(n + 1)));
  }
}

TEST(MetricProperties, QuantileNondecreasingInAlpha) {
  std::mt19937_64 rng(4);
  const auto eval = random_points(rng, 500, 3);
  const auto design = random_points(rng, 12, 3);
  double prev = 0;
  for (int i = 1; i <= 100; ++i) {
    const double q = covering_quantile(design, eval, i / 100.0);
    EXPECT_GE(q, prev);
    prev = q;
  }
}

TEST(MetricProperties, SubsetOfEvaluationSetUnderestimates) {
  std::mt19937_64 rng(6);
  const auto eval = random_points(rng, 600, 3);
  const auto design = random_points(rng, 15, 3);
  EXPECT_LE(covering_radius(design, eval.prefix(200)), covering_radius(design, eval));
}

TEST(Trajectory, MatchesDirectMetrics) {
  const auto design = sobol(40, 3, 9);
  const auto ref = union_of(sobol(1000, 3, 3), vertices(3));
  const std::vector<double> gamma(40, 0.25);
  const auto t = evaluate_trajectory(design, ref, {0.99, 0.5}, 5, 40, gamma);
  ASSERT_EQ(t.records.size(), 36u);
  ASSERT_EQ(t.alphas, (std::vector<double>{0.99, 0.5}));
  std::size_t prev = 0;
  for (const auto& r : t.records) {
    EXPECT_GT(r.n, prev);
    prev = r.n;
    const auto X = design.prefix(r.n);
    EXPECT_EQ(r.cr, covering_radius(X, ref));
    EXPECT_EQ(r.q_alpha[0], covering_quantile(X, ref, 0.99));
    EXPECT_EQ(r.q_alpha[1], covering_quantile(X, ref, 0.5));
    ASSERT_TRUE(r.pr.has_value());
    EXPECT_DOUBLE_EQ(*r.pr, packing_radius(X));
    EXPECT_DOUBLE_EQ(*r.rho, r.cr / *r.pr);
    EXPECT_DOUBLE_EQ(r.cr_over_rlower, r.cr / r_lower(r.n, 3));
    EXPECT_DOUBLE_EQ(r.n1d_cr, std::cbrt(double(r.n)) * r.cr);
    EXPECT_DOUBLE_EQ(r.n1d_q_alpha[1], std::cbrt(double(r.n)) * r.q_alpha[1]);
    EXPECT_EQ(r.gamma, 0.25);
    EXPECT_FALSE(r.seconds.has_value());
    EXPECT_GE(r.cr, 0.0);
  }
}

TEST(Trajectory, SinglePointHasNoPackingRadius) {
  const auto t = evaluate_trajectory(sobol(3, 2), grid(11, 2), {0.99}, 1, 3);
  EXPECT_FALSE(t.records[0].pr.has_value());
  EXPECT_FALSE(t.records[0].rho.has_value());
  EXPECT_FALSE(t.records[0].gamma.has_value());
  EXPECT_TRUE(t.records[1].pr.has_value());
}

TEST(Trajectory, CoincidentPointsLeaveRhoUndefined) {
  const auto t = evaluate_trajectory(line({0.5, 0.5}), grid(11, 1), {1.0}, 2, 2);
  EXPECT_EQ(*t.records[0].pr, 0.0);
  EXPECT_FALSE(t.records[0].rho.has_value());
  EXPECT_EQ(t.records[0].q_alpha[0], t.records[0].cr);
}

TEST(Trajectory, Errors) {
  EXPECT_THROW(evaluate_trajectory(sobol(3, 2), grid(3, 2), {0.9}, 0, 3), std::invalid_argument);
  EXPECT_THROW(evaluate_trajectory(sobol(3, 2), grid(3, 2), {0.9}, 2, 4), std::invalid_argument);
  EXPECT_THROW(evaluate_trajectory(sobol(3, 2), grid(3, 2), {0.0}, 1, 3), std::invalid_argument);
  EXPECT_THROW(evaluate_trajectory(sobol(3, 2), grid(3, 3), {0.9}, 1, 3), std::invalid_argument);
}
