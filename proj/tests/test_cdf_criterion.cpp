#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "sfd/cdf_criterion.hpp"
#include "sfd/greedy.hpp"
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

double nearest(const PointSet& X_Q, std::size_t j, const PointSet& X_C, const std::vector<std::size_t>& design) {
  double dj = std::numeric_limits<double>::infinity();
  for (auto k : design) dj = std::min(dj, distance(X_Q[j], X_C[k]));
  return dj;
}

// int_b^B r^q F(r) dr for the empirical distance distribution, written as a
// sum of per-point integrals int_{max(d_j, b)}^B r^q dr.
double integral_oracle(const PointSet& X_Q, const PointSet& X_C, const std::vector<std::size_t>& design, double q,
                       double B, double b = 0.0) {
  if (design.empty()) return 0.0;
  const double p = q + 1;
  double s = 0;
  for (std::size_t j = 0; j < X_Q.size(); ++j) {
    const double dj = nearest(X_Q, j, X_C, design);
    if (dj < B) s += (std::pow(B, p) - std::pow(std::max(dj, b), p)) / p;
  }
  return s / double(X_Q.size());
}

}  // namespace

TEST(CdfCriterion, InitialState) {
  const auto X = line({0.3});
  CdfCriterion f(X, X, {2.0, 1.0});
  EXPECT_EQ(f.p0(0, 0), 0.0);
  EXPECT_EQ(f.value(), 0.0);

  CdfCriterion g(line({0, 1}), line({0}), {0.0, 1.0});
  EXPECT_EQ(g.p0(0, 0), 0.0);
  EXPECT_EQ(g.p0(1, 0), 1.0);
  EXPECT_EQ(g.m(0), 1.0);
  EXPECT_EQ(g.m(1), 1.0);
  EXPECT_EQ(g.value(), 0.0);
  EXPECT_EQ(g.ground_size(), 1u);
  EXPECT_EQ(g.eval_size(), 2u);
}

TEST(CdfCriterion, HandValues) {
  CdfCriterion g(line({0, 1}), line({0}), {0.0, 1.0});
  g.commit(0);
  EXPECT_DOUBLE_EQ(g.value(), 0.5);

  const auto Xq = grid(10001, 1);
  const auto Xc = line({0.5});
  CdfCriterion f(Xq, Xc, {0.0, 1.0});
  f.commit(0);
  EXPECT_NEAR(f.value(), 0.75, 1e-3);
}

TEST(CdfCriterion, DesignCoveringEvaluationSetReachesMaximum) {
  const auto X = sobol(20, 2);
  for (double q : {0.0, 3.0, 10.0}) {
    CdfCriterion f(X.prefix(10), X, {q, 1.5});
    for (std::size_t k = 0; k < 10; ++k) f.commit(k);
    EXPECT_NEAR(f.value(), std::pow(1.5, q + 1) / (q + 1), 1e-12 * std::pow(1.5, q + 1));
  }
}

TEST(CdfCriterion, MatchesIntegralDefinition) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + rng() % 4;
    const auto Xc = random_points(rng, 12, d);
    const auto Xq = random_points(rng, 30, d);
    const double q = std::vector<double>{-0.5, 0.0, 2.0, 10.0}[trial % 4];
    // B below the diameter exercises truncation of distances.
    const double B = std::sqrt(double(d)) * (trial % 2 ? 1.2 : 0.4);
    for (bool trunc : {true, false}) {
      CdfCriterion f(Xq, Xc, {q, B, 0.0, trunc});
      std::vector<std::size_t> design;
      for (std::size_t k : {3u, 7u, 0u, 11u, 5u}) {
        f.commit(k);
        design.push_back(k);
        const double expected = integral_oracle(Xq, Xc, design, q, B);
        EXPECT_NEAR(f.value(), expected, 1e-11 * std::pow(B, q + 1)) << trial;
      }
    }
  }
}

TEST(CdfCriterion, LowerLimitIsDifferenceOfIntegrals) {
  std::mt19937_64 rng(23);
  const auto Xc = random_points(rng, 10, 2);
  const auto Xq = random_points(rng, 40, 2);
  const double B = std::sqrt(2.0), b = 0.1, q = 2.0;
  CdfCriterion f(Xq, Xc, {q, B, b});
  std::vector<std::size_t> design;
  for (std::size_t k = 0; k < 6; ++k) {
    f.commit(k);
    design.push_back(k);
    EXPECT_NEAR(f.value(), integral_oracle(Xq, Xc, design, q, B, b), 1e-12);
    // The same value as the difference of two b = 0 integrals with limits B and b.
    EXPECT_NEAR(f.value(), integral_oracle(Xq, Xc, design, q, B) - integral_oracle(Xq, Xc, design, q, b), 1e-12);
  }
  // Submodular and monotone with the lower limit too.
  CdfCriterion small(random_points(rng, 12, 2), random_points(rng, 7, 2), {q, B, 0.2});
  EXPECT_TRUE(check_submodular(small).ok);
}

TEST(CdfCriterion, DeltaProperties) {
  std::mt19937_64 rng(29);
  const auto Xc = random_points(rng, 15, 3);
  const auto Xq = random_points(rng, 50, 3);
  CdfCriterion f(Xq, Xc, {10.0, std::sqrt(3.0)});
  // From the empty set the delta is the singleton value.
  for (std::size_t k = 0; k < 15; ++k) {
    CdfCriterion g(Xq, Xc, {10.0, std::sqrt(3.0)});
    const double dk = g.delta(k);
    g.commit(k);
    EXPECT_NEAR(dk, g.value(), 1e-12 * g.value());
  }
  for (std::size_t k : {4u, 9u, 2u}) {
    for (std::size_t i = 0; i < 15; ++i) EXPECT_GE(f.delta(i), 0.0);
    const double before = f.value(), dk = f.delta(k);
    f.commit(k);
    EXPECT_NEAR(f.value(), before + dk, 1e-12 * f.value());
    EXPECT_EQ(f.delta(k), 0.0);
  }
  EXPECT_EQ(f.design(), (std::vector<std::size_t>{4, 9, 2}));
  EXPECT_THROW(f.delta(15), std::out_of_range);
  EXPECT_THROW(f.commit(15), std::out_of_range);
}

TEST(CdfCriterion, RecursionInvariants) {
  std::mt19937_64 rng(31);
  const auto Xc = random_points(rng, 9, 2);
  const auto Xq = random_points(rng, 25, 2);
  const double q = 4.0, B = 0.8;
  CdfCriterion f(Xq, Xc, {q, B});
  std::vector<std::size_t> design;
  std::vector<double> prev_m(25, std::numeric_limits<double>::infinity());
  std::vector<double> prev_s(9, std::numeric_limits<double>::infinity());
  double prev_value = 0;
  for (std::size_t k : {8u, 1u, 4u, 6u, 0u, 2u, 3u, 5u, 7u}) {
    f.commit(k);
    design.push_back(k);
    for (std::size_t j = 0; j < 25; ++j) {
      const double direct = std::pow(std::min(nearest(Xq, j, Xc, design), B), q + 1);
      EXPECT_NEAR(f.m(j), direct, 1e-12 * std::max(direct, 1e-300) + 1e-300);
      EXPECT_LE(f.m(j), prev_m[j]);
      prev_m[j] = f.m(j);
      for (std::size_t c = 0; c < 9; ++c) EXPECT_EQ(f.p(j, c), std::min(f.m(j), f.p0(j, c)));
    }
    for (std::size_t c = 0; c < 9; ++c) {
      double s = 0;
      for (std::size_t j = 0; j < 25; ++j) s += f.p(j, c);
      EXPECT_NEAR(f.column_sum(c), s, 1e-12 * s);
      EXPECT_LE(f.column_sum(c), prev_s[c]);
      prev_s[c] = f.column_sum(c);
    }
    EXPECT_GE(f.value(), prev_value);
    prev_value = f.value();
  }
  // Exhausted: m is the column-wise minimum of P0.
  for (std::size_t j = 0; j < 25; ++j) {
    double mn = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < 9; ++c) mn = std::min(mn, f.p0(j, c));
    EXPECT_EQ(f.m(j), mn);
  }
}

TEST(CdfCriterion, TruncationSplit) {
  std::mt19937_64 rng(37);
  const auto Xc = random_points(rng, 20, 2);
  const auto Xq = random_points(rng, 60, 2);
  const double q = 10, B = std::sqrt(2.0);
  CdfCriterion t(Xq, Xc, {q, B, 0.0, true}), u(Xq, Xc, {q, B, 0.0, false});
  for (std::size_t k = 0; k < 8; ++k) {
    t.commit(k);
    u.commit(k);
    EXPECT_NEAR(t.value(), u.value(), 1e-12 * u.value());
    EXPECT_NEAR(t.truncation_offset() + t.truncated_value(), t.value(), 1e-12 * t.value());
    // The truncated part is the integral with upper limit CR_n.
    const double cr = t.current_cr();
    std::vector<std::size_t> design(k + 1);
    for (std::size_t i = 0; i <= k; ++i) design[i] = i;
    EXPECT_NEAR(cr, covering_radius(Xc.subset(design), Xq), 1e-12);
    EXPECT_NEAR(t.truncated_value(), integral_oracle(Xq, Xc, design, q, cr), 1e-10 * std::pow(cr, q + 1));
    EXPECT_NEAR(t.truncation_offset(), (std::pow(B, q + 1) - std::pow(cr, q + 1)) / (q + 1), 1e-12 * t.value());
  }
}

TEST(CdfCriterion, Submodular) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    const auto Xc = random_points(rng, 6, 2);
    const auto Xq = random_points(rng, 16, 2);
    CdfCriterion f(Xq, Xc, {double(trial % 3) * 5, std::sqrt(2.0)});
    const auto rep = check_submodular(f, 1e-12);
    EXPECT_TRUE(rep.ok) << (rep.violation ? rep.violation->describe() : "");
  }
}

TEST(CdfCriterion, LargeBDoesNotChangeChoice) {
  std::mt19937_64 rng(43);
  const auto Xc = random_points(rng, 200, 3);
  const auto Xq = random_points(rng, 400, 3);
  const double diam = std::sqrt(3.0);
  for (double q : {0.0, 5.0, 10.0}) {
    CdfCriterion a(Xq, Xc, {q, diam}), b(Xq, Xc, {q, 2 * diam});
    EXPECT_EQ(greedy(a, 15).indices, greedy(b, 15).indices) << q;
  }
}

TEST(CdfCriterion, LargeExponentStaysFinite) {
  std::mt19937_64 rng(47);
  const auto Xc = random_points(rng, 30, 5);
  const auto Xq = random_points(rng, 60, 5);
  CdfCriterion f(Xq, Xc, {200.0, 0.5});
  const auto g = greedy(f, 10);
  for (const auto& s : g.trace) EXPECT_TRUE(std::isfinite(s.value));
}

TEST(CdfCriterion, FreshResetsDesign) {
  const auto X = sobol(8, 2);
  CdfCriterion f(X, X, {1.0, 1.0});
  f.commit(3);
  const auto g = f.fresh();
  EXPECT_EQ(g->value(), 0.0);
  EXPECT_NEAR(g->delta(3), f.value(), 1e-15);
}

TEST(CdfCriterion, RejectsInvalidConfiguration) {
  const auto X = sobol(4, 2);
  EXPECT_THROW(CdfCriterion(PointSet(2), X, {}), std::invalid_argument);
  EXPECT_THROW(CdfCriterion(X, PointSet(2), {}), std::invalid_argument);
  EXPECT_THROW(CdfCriterion(sobol(4, 3), X, {}), std::invalid_argument);
  EXPECT_THROW(CdfCriterion(X, X, {-1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(CdfCriterion(X, X, {1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(CdfCriterion(X, X, {1.0, 1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(CdfCriterion(X, X, {1.0, 1.0, -0.1}), std::invalid_argument);
  EXPECT_THROW(CdfCriterion(X, X, {1.0, 1.0, 0.0, true, 15}), std::length_error);
  EXPECT_NO_THROW(CdfCriterion(X, X, {1.0, 1.0, 0.0, true, 16}));
  CdfCriterion f(X, X, {});
  EXPECT_THROW(f.p0(4, 0), std::out_of_range);
  EXPECT_THROW(f.p(0, 4), std::out_of_range);
  EXPECT_THROW(f.column_sum(4), std::out_of_range);
}
