#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sfd/point_set.hpp"

namespace sfd {

// Distance from every evaluation point to its nearest design point.
std::vector<double> nearest_distances(const PointSet& design, const PointSet& eval_set);

// max over the evaluation set of the distance to the design. This is the
// finite-set approximation of the covering radius and never exceeds the
// true value.
double covering_radius(const PointSet& design, const PointSet& eval_set);

// Half the smallest pairwise distance; 0 when two points coincide.
double packing_radius(const PointSet& design);

// covering_radius / packing_radius. Throws std::domain_error when the design
// has coincident points.
double mesh_ratio(const PointSet& design, const PointSet& eval_set);

// The ceil(alpha * N)-th smallest of the N distances (alpha in (0, 1]).
double covering_quantile(const PointSet& design, const PointSet& eval_set, double alpha);
double empirical_quantile(std::vector<double> values, double alpha);

// L^{q+1}-mean of the distances to the design, q > -1.
double quantization_error(const PointSet& design, const PointSet& eval_set, double q);

struct TrajectoryRecord {
  std::size_t n = 0;
  double cr = 0.0;
  std::vector<double> q_alpha;  // one per requested alpha
  std::optional<double> pr;
  std::optional<double> rho;
  double cr_over_rlower = 0.0;
  double n1d_cr = 0.0;
  std::vector<double> n1d_q_alpha;
  std::optional<double> gamma;
  std::optional<double> seconds;
};

struct Trajectory {
  std::size_t dim = 0;
  std::vector<double> alphas;
  std::vector<TrajectoryRecord> records;
};

// Per-prefix metrics of an ordered design against a reference set, for
// n in [n_min, n_max]. Distances are updated incrementally as points are
// appended, so the cost is O(n_max * N) plus one selection per n.
class TrajectoryEvaluator {
 public:
  TrajectoryEvaluator(const PointSet& reference, std::vector<double> alphas);

  void add_point(std::span<const double> p);
  std::size_t size() const { return design_.size(); }
  TrajectoryRecord record() const;

 private:
  const PointSet& reference_;
  std::vector<double> alphas_;
  PointSet design_;
  std::vector<double> nearest_;
  double min_pair_ = 0.0;
};

// gamma[i] and seconds[i], when given, belong to prefix size i + 1.
Trajectory evaluate_trajectory(const PointSet& design, const PointSet& reference,
                               std::vector<double> alphas, std::size_t n_min, std::size_t n_max,
                               std::span<const double> gamma = {}, std::span<const double> seconds = {});

}  // namespace sfd
