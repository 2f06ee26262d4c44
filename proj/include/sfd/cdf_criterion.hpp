#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "sfd/greedy.hpp"
#include "sfd/point_set.hpp"

namespace sfd {

struct CriterionConfig {
  double q = 10.0;             // distance exponent, q > -1
  double B = 1.0;              // upper integration limit (typically the domain diameter)
  double b = 0.0;              // lower integration limit, 0 <= b < B
  bool truncate_to_cr = true;  // report the value as C_n + I_{min(B, CR_n), q}
  std::size_t max_entries = std::size_t{1} << 27;  // cap on Q * C
};

// Empirical integrated covering measure
//
//   I(X) = int_b^B r^q F_X(r) dr
//        = (B^{q+1} - b^{q+1}) / (q+1)
//          - 1/(Q (q+1)) sum_j [min(d_j, B)^{q+1} - min(d_j, b)^{q+1}],
//
// where F_X is the distribution of distances d_j from the Q evaluation
// points to X, with I({}) = 0. The state keeps the Q x C base matrix
// P0[j,k] = min(||x_j - c_k||, B)^{q+1} and the current column
// m[j] = min(d_j, B)^{q+1}; the matrix of the recursion,
// P[j,k] = min(m[j], P0[j,k]), is not stored but read through p().
//
// Internally every power is taken of distances divided by B, so entries lie
// in [0, 1] for any q; accessors return unscaled quantities.
class CdfCriterion final : public SetFunctionOracle {
 public:
  CdfCriterion(const PointSet& eval_set, const PointSet& candidates, CriterionConfig cfg);

  std::size_t ground_size() const override { return C_; }
  std::size_t eval_size() const { return Q_; }
  const CriterionConfig& config() const { return cfg_; }

  double value() const override;
  double delta(std::size_t k) const override;
  void commit(std::size_t k) override;
  std::unique_ptr<SetFunctionOracle> fresh() const override;
  bool submodular() const override { return true; }

  // min(d(x_j, X), B)^{q+1}
  double m(std::size_t j) const;
  // min(||x_j - c_k||, B)^{q+1}
  double p0(std::size_t j, std::size_t k) const;
  // min(d(x_j, X + {c_k}), B)^{q+1}
  double p(std::size_t j, std::size_t k) const;
  // sum_j p(j, k)
  double column_sum(std::size_t k) const;

  // Covering radius over the evaluation set, truncated at B.
  double current_cr() const;
  // I_{min(B, CR_n), q} and the constant C_n that restores the untruncated value.
  double truncated_value() const;
  double truncation_offset() const;

  const std::vector<std::size_t>& design() const { return design_; }

 private:
  double scaled_excess(double u) const;

  std::size_t Q_ = 0;
  std::size_t C_ = 0;
  CriterionConfig cfg_;
  double scale_ = 1.0;     // B^{q+1}
  double b_scaled_ = 0.0;  // (b/B)^{q+1}
  std::shared_ptr<const std::vector<double>> p0_;  // column-major, (min(d, B) / B)^{q+1}
  std::vector<double> m_;
  std::vector<std::size_t> design_;
};

}  // namespace sfd
