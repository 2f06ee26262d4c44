#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "sfd/domain.hpp"
#include "sfd/greedy.hpp"
#include "sfd/point_set.hpp"

namespace sfd {

// beta = kBetaInfinity turns the boundary penalty off (pure farthest-point).
inline constexpr double kBetaInfinity = std::numeric_limits<double>::infinity();

// min{ d(x, design), beta * d(x, boundary) }. d(x, {}) is +inf, so an empty
// design gives beta * d(x, boundary), or +inf when beta is infinite.
double d_beta(std::span<const double> x, const PointSet& design, const Domain& domain, double beta);

struct Spacing {
  double value = 0.0;
  std::size_t witness = 0;  // candidate attaining the max, lowest index on ties
};

// beta-spacing: max of d_beta over the candidate set.
Spacing s_beta(const PointSet& design, const PointSet& candidates, const Domain& domain, double beta);

// (1/2) min over i != j of min{ ||z_i - z_j||, beta * d(z_i, boundary) };
// the packing radius when beta is infinite. Needs two or more points.
double p_beta(const PointSet& design, const Domain& domain, double beta);

// s_beta / p_beta; throws std::domain_error when p_beta is 0.
double rho_beta(const PointSet& design, const PointSet& candidates, const Domain& domain, double beta);

// Greedy maximization of d_beta over the candidates. The first point is the
// most interior candidate for finite beta and the candidate closest to the
// domain center for beta = inf. In the trace, delta and value both hold the
// spacing d_beta(x_k, X_{k-1}) of the point taken at step k; evaluations
// counts the unselected candidates scanned.
//
// Finite beta needs a convex domain; on the annulus only beta = inf is
// accepted.
GreedyResult coffeehouse_construct(const PointSet& candidates, const Domain& domain, double beta, std::size_t n,
                                   const StepCallback& on_step = {});

}  // namespace sfd
