#pragma once

#include <cstddef>
#include <cstdint>

#include "sfd/point_set.hpp"

namespace sfd {

// Volume of the unit ball in R^d, pi^{d/2} / Gamma(d/2 + 1), via the exact
// recurrence V_d = (2 pi / d) V_{d-2}.
double unit_ball_volume(std::size_t d);

// floor(n^{1/d}) by integer search.
std::uint64_t integer_root(std::uint64_t n, std::size_t d);

// Covering lower bound (n V_d)^{-1/d}: no n-point design covers a
// unit-volume region with a smaller radius.
double r_lower(std::uint64_t n, std::size_t d);

// Covering upper bound for [0,1]^d from the m^d sub-cube covering,
// sqrt(d) / (2 floor(n^{1/d})).
double r_upper(std::uint64_t n, std::size_t d);

// Boundary-penalty weight placing the second coffee-house point at distance
// r_lower(n_max, d) from a cube vertex: d / (2 r_lower) - sqrt(d).
// Throws std::domain_error when the result is not positive.
double beta_star(std::uint64_t n_max, std::size_t d);

// The 2 sqrt(2 d) boundary weight used by an earlier boundary-aware
// coffee-house variant.
double beta_two_sqrt_2d(std::size_t d);

// Upper bound on the covering radius of the first N points of a (t,d)-sequence
// in the given base: sqrt(d) base^{1 + t/d} / N^{1/d}.
double lds_cr_upper(std::uint64_t N, std::size_t d, int t, unsigned base);

// Smallest prime >= d (the base of the Faure sequence; t = 0).
unsigned faure_base(std::size_t d);

struct ReferenceDesign {
  PointSet points;
  double covering_radius = 0.0;
};

// CR-optimal two-point design of [0,1]^d: {z, 1 - z} with z = (1/2, ..., 1/2, 1/4),
// covering radius sqrt(d - 3/4) / 2.
ReferenceDesign two_point_optimal(std::size_t d);

// Best three-point extension of the cube center: {1/2, x, 1 - x} with
// x = (1/2, ..., 1/2, 1/6), covering radius sqrt(d - 8/9) / 2.
ReferenceDesign three_point_reference(std::size_t d);

}  // namespace sfd
