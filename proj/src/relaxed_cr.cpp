#include "sfd/relaxed_cr.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>

namespace sfd {

namespace {

constexpr double kDistanceFloor = 1e-14;
constexpr std::size_t kMaxEntries = std::size_t{1} << 27;

void check_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw std::invalid_argument("relaxed criterion: q must be positive");
}

std::string_view row_bytes(const PointSet& s, std::size_t i) {
  return {reinterpret_cast<const char*>(s[i].data()), s.dim() * sizeof(double)};
}

}  // namespace

double psi_q(const PointSet& design, const PointSet& eval_set, double q) {
  check_q(q);
  if (design.empty()) throw std::invalid_argument("psi_q: empty design");
  if (eval_set.empty()) throw std::invalid_argument("psi_q: empty evaluation set");
  if (design.dim() != eval_set.dim()) throw std::invalid_argument("psi_q: dimension mismatch");
  const std::size_t n = design.size();
  const std::size_t Q = eval_set.size();

  // Per evaluation point, ((1/n) sum_i d_i^{-q})^{-1} = m^q * n / sum_i (d_i/m)^{-q}
  // with m the smallest distance; kept as (m, t) to dodge overflow at large q.
  std::vector<double> m(Q), t(Q);
  std::vector<double> d(n);
  for (std::size_t j = 0; j < Q; ++j) {
    for (std::size_t i = 0; i < n; ++i) d[i] = distance(design[i], eval_set[j]);
    const double mj = *std::min_element(d.begin(), d.end());
    if (mj == 0.0)
      throw std::invalid_argument("psi_q: evaluation point " + std::to_string(j) + " coincides with a design point");
    double s = 0.0;
    for (double v : d) s += std::pow(v / mj, -q);
    m[j] = mj;
    t[j] = static_cast<double>(n) / s;
  }
  const double top = *std::max_element(m.begin(), m.end());
  double acc = 0.0;
  for (std::size_t j = 0; j < Q; ++j) acc += std::pow(m[j] / top, q) * t[j];
  return top * std::pow(acc / static_cast<double>(Q), 1.0 / q);
}

void require_disjoint(const PointSet& candidates, const PointSet& eval_set) {
  if (candidates.dim() != eval_set.dim()) throw std::invalid_argument("candidate/evaluation dimension mismatch");
  std::unordered_set<std::string_view> evals;
  evals.reserve(eval_set.size());
  for (std::size_t j = 0; j < eval_set.size(); ++j) evals.insert(row_bytes(eval_set, j));
  for (std::size_t k = 0; k < candidates.size(); ++k)
    if (evals.count(row_bytes(candidates, k)))
      throw std::invalid_argument("candidate " + std::to_string(k) +
                                  " is also an evaluation point; the relaxed criterion needs disjoint sets");
}

InverseDistanceTable::InverseDistanceTable(const PointSet& candidates, const PointSet& eval_set, double q)
    : C_(candidates.size()), Q_(eval_set.size()), q_(q) {
  check_q(q);
  if (C_ == 0) throw std::invalid_argument("relaxed criterion: empty candidate set");
  if (Q_ == 0) throw std::invalid_argument("relaxed criterion: empty evaluation set");
  if (candidates.dim() != eval_set.dim()) throw std::invalid_argument("relaxed criterion: dimension mismatch");
  if (Q_ > kMaxEntries / C_)
    throw std::length_error("relaxed criterion: C x Q = " + std::to_string(C_) + " x " + std::to_string(Q_) +
                            " exceeds the cap of " + std::to_string(kMaxEntries) + " entries");
  w_.resize(C_ * Q_);
  for (std::size_t k = 0; k < C_; ++k) {
    for (std::size_t j = 0; j < Q_; ++j) {
      const double dist = distance(candidates[k], eval_set[j]);
      if (dist == 0.0)
        throw std::invalid_argument("candidate " + std::to_string(k) + " coincides with evaluation point " +
                                    std::to_string(j) + "; the relaxed criterion needs disjoint sets");
      w_[k * Q_ + j] = std::pow(std::max(dist, kDistanceFloor), -q);
    }
  }
}

RdOracle::RdOracle(const PointSet& candidates, const PointSet& eval_set, double q)
    : table_(std::make_shared<const InverseDistanceTable>(candidates, eval_set, q)) {
  double worst = 0.0;
  for (std::size_t k = 0; k < table_->candidates(); ++k) worst = std::max(worst, single(k));
  offset_ = 2.0 * worst;
}

double RdOracle::single(std::size_t k) const {
  const double* w = table_->row(k);
  double s = 0.0;
  for (std::size_t j = 0; j < table_->evals(); ++j) s += 1.0 / w[j];
  return s / static_cast<double>(table_->evals());
}

double RdOracle::objective() const {
  if (design_.empty()) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (double a : a_) s += 1.0 / a;
  return s / static_cast<double>(a_.size());
}

double RdOracle::value() const { return design_.empty() ? 0.0 : offset_ - objective(); }

double RdOracle::delta(std::size_t k) const {
  if (k >= table_->candidates()) throw std::out_of_range("RdOracle::delta: candidate index out of range");
  if (design_.empty()) return offset_ - single(k);
  const double* w = table_->row(k);
  double s = 0.0;
  // 1/a - 1/(a + w), written so each factor shrinks monotonically as a grows.
  for (std::size_t j = 0; j < a_.size(); ++j) s += (1.0 / a_[j]) * (w[j] / (a_[j] + w[j]));
  return s / static_cast<double>(a_.size());
}

void RdOracle::commit(std::size_t k) {
  if (k >= table_->candidates()) throw std::out_of_range("RdOracle::commit: candidate index out of range");
  const double* w = table_->row(k);
  if (design_.empty()) {
    a_.assign(w, w + table_->evals());
  } else {
    for (std::size_t j = 0; j < a_.size(); ++j) a_[j] += w[j];
  }
  design_.push_back(k);
}

std::unique_ptr<SetFunctionOracle> RdOracle::fresh() const {
  auto copy = std::make_unique<RdOracle>(*this);
  copy->a_.clear();
  copy->design_.clear();
  return copy;
}

GreedyResult rd_construct(const PointSet& candidates, const PointSet& eval_set, double q, std::size_t n, bool lazy,
                          const StepCallback& on_step) {
  RdOracle oracle(candidates, eval_set, q);
  return lazy ? lazy_greedy(oracle, n, on_step) : greedy(oracle, n, on_step);
}

VdResult vd_construct(const PointSet& candidates, const PointSet& eval_set, double q, std::size_t n,
                      const std::function<void(const VdStep&)>& on_step) {
  const InverseDistanceTable table(candidates, eval_set, q);
  const std::size_t C = table.candidates();
  const std::size_t Q = table.evals();
  if (n == 0 || n > C)
    throw std::invalid_argument("vd: target size " + std::to_string(n) + " must lie in [1, " + std::to_string(C) +
                                "]");

  VdResult out;
  out.weights.assign(C, 0.0);
  std::vector<char> selected(C, 0);
  std::vector<double> a(Q, 0.0);

  auto objective = [&] {
    double s = 0.0;
    for (double v : a) s += 1.0 / v;
    return s / static_cast<double>(Q);
  };
  auto emit = [&](VdStep step) {
    selected[step.index] = 1;
    out.indices.push_back(step.index);
    double ws = 0.0;
    for (double w : out.weights) ws += w;
    step.weight_sum = ws;
    step.objective = objective();
    out.trace.push_back(step);
    if (on_step) on_step(out.trace.back());
  };

  // First point: smallest q-th distance moment, i.e. smallest sum_j 1/w.
  std::size_t first = 0;
  double first_moment = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < C; ++k) {
    const double* w = table.row(k);
    double s = 0.0;
    for (std::size_t j = 0; j < Q; ++j) s += 1.0 / w[j];
    if (s < first_moment) {
      first_moment = s;
      first = k;
    }
  }
  out.weights[first] = 1.0;
  std::copy(table.row(first), table.row(first) + Q, a.begin());
  emit({first, first, false, first_moment / static_cast<double>(Q), 0.0, 0.0});

  std::vector<double> score(C);
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t c = 0; c < C; ++c) {
      const double* w = table.row(c);
      double s = 0.0;
      for (std::size_t j = 0; j < Q; ++j) s += w[j] / a[j] / a[j];
      score[c] = s;
    }
    std::size_t support = 0;
    for (std::size_t c = 1; c < C; ++c)
      if (score[c] > score[support]) support = c;
    std::size_t emitted = support;
    if (selected[support]) {
      emitted = C;
      for (std::size_t c = 0; c < C; ++c)
        if (!selected[c] && (emitted == C || score[c] > score[emitted])) emitted = c;
    }

    const double kk = static_cast<double>(k);
    const double keep = kk / (kk + 1.0);
    const double step = 1.0 / (kk + 1.0);
    for (double& w : out.weights) w *= keep;
    out.weights[support] += step;
    const double* w = table.row(support);
    for (std::size_t j = 0; j < Q; ++j) a[j] = keep * a[j] + step * w[j];

    emit({emitted, support, emitted != support, score[emitted], 0.0, 0.0});
  }
  return out;
}

}  // namespace sfd
