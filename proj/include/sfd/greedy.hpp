#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sfd {

// Incremental view of a set function f over the ground set {0, ..., C-1}.
// The oracle holds the current set X; value() is f(X), delta(k) is
// f(X + {k}) - f(X) without changing X, and commit(k) replaces X by X + {k}.
// delta must be safe to call concurrently; commit must not overlap any delta.
class SetFunctionOracle {
 public:
  virtual ~SetFunctionOracle() = default;

  virtual std::size_t ground_size() const = 0;
  virtual double value() const = 0;
  virtual double delta(std::size_t k) const = 0;
  virtual void commit(std::size_t k) = 0;

  // A new oracle for the same function with X = {}.
  virtual std::unique_ptr<SetFunctionOracle> fresh() const = 0;

  // Declares f nondecreasing and submodular, which licenses lazy evaluation.
  virtual bool submodular() const { return false; }
};

// Set function given as a plain callable on index sets; delta is computed by
// two evaluations. Intended for tests and small brute-force studies.
class CallableOracle final : public SetFunctionOracle {
 public:
  using Function = std::function<double(std::span<const std::size_t>)>;

  CallableOracle(std::size_t ground_size, Function f, bool submodular = false);

  std::size_t ground_size() const override { return ground_size_; }
  double value() const override;
  double delta(std::size_t k) const override;
  void commit(std::size_t k) override;
  std::unique_ptr<SetFunctionOracle> fresh() const override;
  bool submodular() const override { return submodular_; }

 private:
  std::size_t ground_size_;
  std::shared_ptr<const Function> f_;
  bool submodular_;
  std::vector<std::size_t> set_;
};

struct GreedyStep {
  std::size_t index = 0;        // candidate committed at this step
  double delta = 0.0;           // its marginal gain
  double value = 0.0;           // cumulative value after the step
  std::size_t evaluations = 0;  // delta evaluations spent in this step (m_k)
  double gamma = 0.0;           // evaluations / C
  bool repeated = false;        // set by constructions that can re-select a support point
};

struct GreedyResult {
  std::vector<std::size_t> indices;
  std::vector<GreedyStep> trace;

  // Mean effective candidate fraction over the run.
  double mean_gamma() const;
};

using StepCallback = std::function<void(const GreedyStep&)>;

// Plain greedy maximization: every step scans all unselected candidates and
// commits the largest delta, lowest index on ties. on_step sees each step as
// soon as it is committed, so a caller can persist a partial trace before an
// oracle error propagates.
GreedyResult greedy(SetFunctionOracle& oracle, std::size_t k, const StepCallback& on_step = {});

// Lazy greedy with stale upper bounds kept in a max-heap ordered by
// (bound desc, index asc). A candidate is committed once its freshly
// evaluated delta sits on top of the heap, which reproduces the plain greedy
// choice including its tie rule. Requires oracle.submodular().
GreedyResult lazy_greedy(SetFunctionOracle& oracle, std::size_t k, const StepCallback& on_step = {});

// Guaranteed greedy efficiency 1 - (1 - 1/k)^k for nondecreasing submodular f.
double efficiency_bound(std::size_t k);

struct BruteForceResult {
  std::vector<std::size_t> indices;
  double value = 0.0;
};

// Exhaustive maximizer over all k-subsets (lexicographically first on ties),
// each evaluated on a fresh oracle.
BruteForceResult brute_force_best(const SetFunctionOracle& oracle, std::size_t k,
                                  std::uint64_t max_subsets = 1'000'000);

struct SubmodularityViolation {
  enum class Kind { decreasing, diminishing_returns };
  Kind kind = Kind::diminishing_returns;
  std::uint32_t smaller = 0;  // bitmask of A (or of the set for `decreasing`)
  std::uint32_t larger = 0;   // bitmask of B, A subset of B
  std::size_t element = 0;    // x outside B
  double gain_smaller = 0.0;  // f(A + x) - f(A)
  double gain_larger = 0.0;   // f(B + x) - f(B)

  std::string describe() const;
};

struct SubmodularityReport {
  bool ok = true;
  std::optional<SubmodularityViolation> violation;  // first one found
  std::uint64_t checks = 0;
};

// Exhaustive check of monotonicity and diminishing returns over all A subset
// of B and x outside B, for ground sets of at most 12 elements. Gains come
// from oracle deltas at each subset; the tolerance is relative to the largest
// gain magnitude (absolute when that is below 1).
SubmodularityReport check_submodular(const SetFunctionOracle& oracle, double tol = 1e-10,
                                     std::size_t max_ground = 12);

}  // namespace sfd
