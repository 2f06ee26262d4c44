#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "sfd/greedy.hpp"
#include "sfd/point_set.hpp"

namespace sfd {

// Relaxed covering radius over a finite evaluation set,
//
//   Psi_q(Z) = [ (1/Q) sum_j ( (1/n) sum_i ||z_i - x_j||^{-q} )^{-1} ]^{1/q},
//
// a harmonic-type average that tends to the covering radius as q grows.
// Throws std::invalid_argument when a design point coincides with an
// evaluation point.
double psi_q(const PointSet& design, const PointSet& eval_set, double q);

// Throws std::invalid_argument when some candidate equals some evaluation point.
void require_disjoint(const PointSet& candidates, const PointSet& eval_set);

// Shared C x Q table of ||c_k - x_j||^{-q}, with distances floored at 1e-14.
class InverseDistanceTable {
 public:
  InverseDistanceTable(const PointSet& candidates, const PointSet& eval_set, double q);

  std::size_t candidates() const { return C_; }
  std::size_t evals() const { return Q_; }
  double q() const { return q_; }
  const double* row(std::size_t k) const { return w_.data() + k * Q_; }

 private:
  std::size_t C_ = 0;
  std::size_t Q_ = 0;
  double q_ = 0.0;
  std::vector<double> w_;
};

// The greedy-RD set function. With h(Z) = (1/Q) sum_j 1/a_j(Z) and
// a_j(Z) = sum_{z in Z} ||z - x_j||^{-q} (so h(Z) = (1/n) Psi_q^q(Z)),
//
//   f({}) = 0,   f(Z) = U - h(Z)  otherwise,
//
// where U = 2 max_k h({c_k}). h is nonincreasing and supermodular, so f is
// nondecreasing and submodular on the whole power set including the empty
// set; the constant U changes no greedy choice.
class RdOracle final : public SetFunctionOracle {
 public:
  RdOracle(const PointSet& candidates, const PointSet& eval_set, double q);

  std::size_t ground_size() const override { return table_->candidates(); }
  double value() const override;
  double delta(std::size_t k) const override;
  void commit(std::size_t k) override;
  std::unique_ptr<SetFunctionOracle> fresh() const override;
  bool submodular() const override { return true; }

  // h(Z); +inf for the empty set.
  double objective() const;
  double offset() const { return offset_; }
  const std::vector<std::size_t>& design() const { return design_; }

 private:
  double single(std::size_t k) const;  // h({c_k})

  std::shared_ptr<const InverseDistanceTable> table_;
  double offset_ = 0.0;
  std::vector<double> a_;
  std::vector<std::size_t> design_;
};

// Greedy (or lazy-greedy) minimization of Psi_q over the candidates.
GreedyResult rd_construct(const PointSet& candidates, const PointSet& eval_set, double q, std::size_t n,
                          bool lazy = true, const StepCallback& on_step = {});

struct VdStep {
  std::size_t index = 0;       // design point emitted at this step
  std::size_t support = 0;     // candidate that received the step weight
  bool repeated = false;       // support was already selected, so index != support
  double score = 0.0;          // directional score of the emitted point
  double weight_sum = 0.0;     // total weight after the update
  double objective = 0.0;      // (1/Q) sum_j 1/a_j under the current measure
};

struct VdResult {
  std::vector<std::size_t> indices;
  std::vector<VdStep> trace;
  std::vector<double> weights;  // final measure over the candidates
};

// Vertex-direction construction: z_1 minimizes sum_j ||z - x_j||^q; then
// z_{k+1} maximizes sum_j ||z - x_j||^{-q} / a_j^2 with a_j the xi-weighted
// sum, and xi <- k/(k+1) xi + delta_z/(k+1). When the maximizer is already
// in the design its weight still grows, and the emitted point is the best
// unselected candidate instead (flagged as repeated).
VdResult vd_construct(const PointSet& candidates, const PointSet& eval_set, double q, std::size_t n,
                      const std::function<void(const VdStep&)>& on_step = {});

}  // namespace sfd
