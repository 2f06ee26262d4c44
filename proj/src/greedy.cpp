#include "sfd/greedy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace sfd {

CallableOracle::CallableOracle(std::size_t ground_size, Function f, bool submodular)
    : ground_size_(ground_size), f_(std::make_shared<const Function>(std::move(f))), submodular_(submodular) {}

double CallableOracle::value() const { return (*f_)(set_); }

double CallableOracle::delta(std::size_t k) const {
  if (k >= ground_size_) throw std::out_of_range("CallableOracle::delta: index out of range");
  std::vector<std::size_t> grown = set_;
  grown.push_back(k);
  return (*f_)(grown) - (*f_)(set_);
}

void CallableOracle::commit(std::size_t k) {
  if (k >= ground_size_) throw std::out_of_range("CallableOracle::commit: index out of range");
  set_.push_back(k);
}

std::unique_ptr<SetFunctionOracle> CallableOracle::fresh() const {
  auto copy = std::make_unique<CallableOracle>(*this);
  copy->set_.clear();
  return copy;
}

double GreedyResult::mean_gamma() const {
  if (trace.empty()) return 0.0;
  double s = 0.0;
  for (const auto& step : trace) s += step.gamma;
  return s / static_cast<double>(trace.size());
}

namespace {

void check_size(const SetFunctionOracle& oracle, std::size_t k) {
  if (k == 0) throw std::invalid_argument("greedy: target size must be at least 1");
  if (k > oracle.ground_size())
    throw std::invalid_argument("greedy: target size " + std::to_string(k) + " exceeds candidate count " +
                                std::to_string(oracle.ground_size()));
}

double checked_delta(const SetFunctionOracle& oracle, std::size_t i) {
  const double d = oracle.delta(i);
  if (std::isnan(d)) throw std::runtime_error("greedy: oracle returned NaN for candidate " + std::to_string(i));
  return d;
}

}  // namespace

GreedyResult greedy(SetFunctionOracle& oracle, std::size_t k, const StepCallback& on_step) {
  check_size(oracle, k);
  const std::size_t C = oracle.ground_size();
  std::vector<char> selected(C, 0);
  GreedyResult out;
  double value = oracle.value();
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = C;
    double best_delta = 0.0;
    std::size_t evals = 0;
    for (std::size_t i = 0; i < C; ++i) {
      if (selected[i]) continue;
      const double d = checked_delta(oracle, i);
      ++evals;
      if (best == C || d > best_delta) {
        best = i;
        best_delta = d;
      }
    }
    oracle.commit(best);
    selected[best] = 1;
    value += best_delta;
    out.indices.push_back(best);
    out.trace.push_back({best, best_delta, value, evals, static_cast<double>(evals) / static_cast<double>(C)});
    if (on_step) on_step(out.trace.back());
  }
  return out;
}

GreedyResult lazy_greedy(SetFunctionOracle& oracle, std::size_t k, const StepCallback& on_step) {
  check_size(oracle, k);
  if (!oracle.submodular()) throw std::invalid_argument("lazy_greedy: oracle is not declared submodular");
  const std::size_t C = oracle.ground_size();

  struct Entry {
    double bound;
    std::size_t index;
    std::size_t stamp;  // step at which bound was evaluated
  };
  auto below = [](const Entry& a, const Entry& b) {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.index > b.index;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(below)> heap(below);

  GreedyResult out;
  double value = oracle.value();
  for (std::size_t i = 0; i < C; ++i) heap.push({checked_delta(oracle, i), i, 0});
  std::size_t evals = C;

  for (std::size_t step = 0; step < k; ++step) {
    while (heap.top().stamp != step) {
      Entry e = heap.top();
      heap.pop();
      e.bound = checked_delta(oracle, e.index);
      e.stamp = step;
      ++evals;
      heap.push(e);
    }
    const Entry top = heap.top();
    heap.pop();
    oracle.commit(top.index);
    value += top.bound;
    out.indices.push_back(top.index);
    out.trace.push_back({top.index, top.bound, value, evals, static_cast<double>(evals) / static_cast<double>(C)});
    if (on_step) on_step(out.trace.back());
    evals = 0;
  }
  return out;
}

double efficiency_bound(std::size_t k) {
  if (k == 0) throw std::invalid_argument("efficiency_bound: k must be at least 1");
  const double kk = static_cast<double>(k);
  return 1.0 - std::pow(1.0 - 1.0 / kk, kk);
}

BruteForceResult brute_force_best(const SetFunctionOracle& oracle, std::size_t k, std::uint64_t max_subsets) {
  const std::size_t C = oracle.ground_size();
  if (k == 0 || k > C) throw std::invalid_argument("brute_force_best: need 1 <= k <= C");
  // C choose k, stopping as soon as the cap is exceeded.
  std::uint64_t count = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    count = count * (C - k + i) / i;
    if (count > max_subsets)
      throw std::length_error("brute_force_best: more than " + std::to_string(max_subsets) + " subsets");
  }

  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  BruteForceResult best;
  bool have = false;
  while (true) {
    auto f = oracle.fresh();
    for (auto i : idx) f->commit(i);
    const double v = f->value();
    if (!have || v > best.value) {
      best.value = v;
      best.indices = idx;
      have = true;
    }
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == C - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

std::string SubmodularityViolation::describe() const {
  auto set_string = [](std::uint32_t mask) {
    std::ostringstream s;
    s << '{';
    bool first = true;
    for (unsigned i = 0; i < 32; ++i) {
      if (mask & (1u << i)) {
        s << (first ? "" : ",") << i;
        first = false;
      }
    }
    s << '}';
    return s.str();
  };
  std::ostringstream os;
  if (kind == Kind::decreasing) {
    os << "f decreases when adding " << element << " to " << set_string(smaller) << " (gain " << gain_smaller << ")";
  } else {
    os << "diminishing returns fails for x=" << element << ", A=" << set_string(smaller)
       << ", B=" << set_string(larger) << ": gain at A " << gain_smaller << " < gain at B " << gain_larger;
  }
  return os.str();
}

SubmodularityReport check_submodular(const SetFunctionOracle& oracle, double tol, std::size_t max_ground) {
  const std::size_t C = oracle.ground_size();
  if (C > max_ground || C > 20)
    throw std::length_error("check_submodular: ground set of " + std::to_string(C) + " exceeds cap " +
                            std::to_string(max_ground));
  const std::uint32_t full = (std::uint32_t{1} << C) - 1;
  std::vector<double> gain((full + 1) * C, 0.0);
  double scale = 0.0;
  for (std::uint32_t s = 0; s <= full; ++s) {
    auto f = oracle.fresh();
    for (std::size_t i = 0; i < C; ++i)
      if (s & (1u << i)) f->commit(i);
    for (std::size_t x = 0; x < C; ++x) {
      if (s & (1u << x)) continue;
      const double g = f->delta(x);
      gain[s * C + x] = g;
      scale = std::max(scale, std::abs(g));
    }
  }
  const double eps = tol * std::max(1.0, scale);

  SubmodularityReport report;
  auto fail = [&](SubmodularityViolation v) {
    if (report.ok) {
      report.ok = false;
      report.violation = v;
    }
  };
  for (std::uint32_t b = 0; b <= full; ++b) {
    for (std::size_t x = 0; x < C; ++x) {
      if (b & (1u << x)) continue;
      const double gb = gain[b * C + x];
      ++report.checks;
      if (gb < -eps) fail({SubmodularityViolation::Kind::decreasing, b, b, x, gb, gb});
      // Enumerate every submask a of b, including b itself and the empty set.
      for (std::uint32_t a = b;; a = (a - 1) & b) {
        const double ga = gain[a * C + x];
        ++report.checks;
        if (ga < gb - eps) fail({SubmodularityViolation::Kind::diminishing_returns, a, b, x, ga, gb});
        if (a == 0) break;
      }
    }
  }
  return report;
}

}  // namespace sfd
