#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "sfd/domain.hpp"
#include "sfd/point_set.hpp"

using namespace sfd;

TEST(PointSet, StoresRowsInOrder) {
  PointSet p(2, "manual");
  p.push_back(Point{0.1, 0.2});
  p.push_back(Point{0.3, 0.4});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.dim(), 2u);
  EXPECT_EQ(p.point(1), (Point{0.3, 0.4}));
  EXPECT_EQ(p[0][1], 0.2);
  EXPECT_EQ(p.provenance(), "manual");
}

TEST(PointSet, RejectsMalformedInput) {
  EXPECT_THROW(PointSet(0), std::invalid_argument);
  EXPECT_THROW(PointSet(2, std::vector<double>{1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(PointSet::from_points({}), std::invalid_argument);
  PointSet p(2);
  EXPECT_THROW(p.push_back(Point{1.0}), std::invalid_argument);
}

TEST(PointSet, PrefixAndSubset) {
  const auto p = PointSet::from_points({{0}, {1}, {2}, {3}});
  EXPECT_EQ(p.prefix(2), PointSet::from_points({{0}, {1}}));
  EXPECT_EQ(p.prefix(0).size(), 0u);
  const std::vector<std::size_t> idx{3, 0};
  EXPECT_EQ(p.subset(idx), PointSet::from_points({{3}, {0}}));
  EXPECT_THROW(p.prefix(5), std::out_of_range);
  const std::vector<std::size_t> bad{4};
  EXPECT_THROW(p.subset(bad), std::out_of_range);
}

TEST(PointSet, Distances) {
  const Point a{0, 0}, b{3, 4};
  EXPECT_EQ(squared_distance(a, b), 25.0);
  EXPECT_EQ(distance(a, b), 5.0);
}

TEST(Domain, ContainsIncludesBoundary) {
  const auto c2 = Domain::hypercube(2);
  EXPECT_TRUE(c2.contains(Point{0.5, 0.5}));
  EXPECT_TRUE(c2.contains(Point{0, 1}));
  EXPECT_FALSE(c2.contains(Point{1.0000001, 0.5}));
  const auto ann = Domain::annulus({0, 0}, 0.5, 1.0);
  EXPECT_FALSE(ann.contains(Point{0.3, 0}));
  EXPECT_TRUE(ann.contains(Point{0.5, 0}));
  EXPECT_TRUE(ann.contains(Point{1, 0}));
  EXPECT_FALSE(ann.contains(Point{1, 0.1}));
  EXPECT_THROW(c2.contains(Point{0.5}), std::invalid_argument);
}

TEST(Domain, DistanceToBoundary) {
  const auto c2 = Domain::hypercube(2);
  EXPECT_DOUBLE_EQ(c2.dist_to_boundary(Point{0.5, 0.5}), 0.5);
  EXPECT_DOUBLE_EQ(c2.dist_to_boundary(Point{0.25, 0.5}), 0.25);
  EXPECT_EQ(c2.dist_to_boundary(Point{0, 0.3}), 0.0);
  const auto ann = Domain::annulus({0, 0}, 0.5, 1.0);
  EXPECT_NEAR(ann.dist_to_boundary(Point{0.7, 0}), 0.2, 1e-15);
  EXPECT_NEAR(ann.dist_to_boundary(Point{0.9, 0}), 0.1, 1e-15);
  const auto ball = Domain::ball({1, 1, 1}, 2.0);
  EXPECT_DOUBLE_EQ(ball.dist_to_boundary(Point{1, 1, 1}), 2.0);
  const auto box = Domain::box({0, 0}, {2, 1});
  EXPECT_DOUBLE_EQ(box.dist_to_boundary(Point{1, 0.5}), 0.5);
  EXPECT_THROW(c2.dist_to_boundary(Point{2, 2}), std::domain_error);
  EXPECT_THROW(ann.dist_to_boundary(Point{0.1, 0}), std::domain_error);
}

TEST(Domain, Diameter) {
  for (std::size_t d : {1u, 2u, 5u, 10u}) EXPECT_DOUBLE_EQ(Domain::hypercube(d).diameter(), std::sqrt(double(d)));
  EXPECT_DOUBLE_EQ(Domain::ball({0, 0}, 1.5).diameter(), 3.0);
  EXPECT_DOUBLE_EQ(Domain::annulus({0, 0}, 0.5, 1.0).diameter(), 2.0);
  EXPECT_DOUBLE_EQ(Domain::box({0, 0}, {3, 4}).diameter(), 5.0);
}

TEST(Domain, Center) {
  EXPECT_EQ(Domain::hypercube(3).center(), (Point{0.5, 0.5, 0.5}));
  EXPECT_EQ(Domain::ball({1, 2}, 0.5).center(), (Point{1, 2}));
  EXPECT_EQ(Domain::annulus({0, 0}, 0.5, 1.0).center(), (Point{0.75, 0}));
  EXPECT_EQ(Domain::box({0, -1}, {2, 1}).center(), (Point{1, 0}));
}

TEST(Domain, BoundingBoxAndConvexity) {
  const auto ann = Domain::annulus({0, 0}, 0.5, 1.0);
  EXPECT_EQ(ann.lower(), (std::vector<double>{-1, -1}));
  EXPECT_EQ(ann.upper(), (std::vector<double>{1, 1}));
  EXPECT_FALSE(ann.convex());
  EXPECT_TRUE(Domain::hypercube(4).convex());
  EXPECT_TRUE(Domain::ball({0}, 1).convex());
}

TEST(Domain, RejectsDegenerateParameters) {
  EXPECT_THROW(Domain::hypercube(0), std::invalid_argument);
  EXPECT_THROW(Domain::box({0, 0}, {1}), std::invalid_argument);
  EXPECT_THROW(Domain::box({0, 1}, {1, 1}), std::invalid_argument);
  EXPECT_THROW(Domain::ball({0, 0}, 0.0), std::invalid_argument);
  EXPECT_THROW(Domain::annulus({0, 0}, 1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(Domain::annulus({0, 0}, 0.0, 0.5), std::invalid_argument);
}

TEST(Domain, KindNames) {
  EXPECT_EQ(to_string(DomainKind::hypercube), "hypercube");
  EXPECT_EQ(to_string(DomainKind::annulus), "annulus");
}
