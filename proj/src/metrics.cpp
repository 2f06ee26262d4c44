#include "sfd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sfd/bounds.hpp"

namespace sfd {

namespace {

void require_same_dim(const PointSet& a, const PointSet& b, const char* what) {
  if (a.dim() != b.dim()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

void require_nonempty(const PointSet& design, const PointSet& eval_set, const char* what) {
  if (design.empty()) throw std::invalid_argument(std::string(what) + ": empty design");
  if (eval_set.empty()) throw std::invalid_argument(std::string(what) + ": empty evaluation set");
  require_same_dim(design, eval_set, what);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("quantile level must lie in (0, 1]");
}

}  // namespace

std::vector<double> nearest_distances(const PointSet& design, const PointSet& eval_set) {
  require_nonempty(design, eval_set, "nearest_distances");
  std::vector<double> out(eval_set.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < design.size(); ++i) {
    const auto z = design[i];
    for (std::size_t j = 0; j < eval_set.size(); ++j) out[j] = std::min(out[j], squared_distance(eval_set[j], z));
  }
  for (auto& v : out) v = std::sqrt(v);
  return out;
}

double covering_radius(const PointSet& design, const PointSet& eval_set) {
  const auto d = nearest_distances(design, eval_set);
  return *std::max_element(d.begin(), d.end());
}

double packing_radius(const PointSet& design) {
  if (design.size() < 2) throw std::invalid_argument("packing_radius: need at least two points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < design.size(); ++i)
    for (std::size_t j = i + 1; j < design.size(); ++j) best = std::min(best, squared_distance(design[i], design[j]));
  return 0.5 * std::sqrt(best);
}

double mesh_ratio(const PointSet& design, const PointSet& eval_set) {
  const double pr = packing_radius(design);
  if (pr == 0.0) throw std::domain_error("mesh_ratio: design has coincident points");
  return covering_radius(design, eval_set) / pr;
}

double empirical_quantile(std::vector<double> values, double alpha) {
  check_alpha(alpha);
  if (values.empty()) throw std::invalid_argument("empirical_quantile: no values");
  const double n = static_cast<double>(values.size());
  // The relative guard absorbs representation error in alpha (e.g. 0.6 * 5).
  auto k = static_cast<std::size_t>(std::ceil(alpha * n * (1.0 - 1e-12)));
  k = std::clamp<std::size_t>(k, 1, values.size());
  auto kth = values.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(values.begin(), kth, values.end());
  return *kth;
}

double covering_quantile(const PointSet& design, const PointSet& eval_set, double alpha) {
  check_alpha(alpha);
  return empirical_quantile(nearest_distances(design, eval_set), alpha);
}

double quantization_error(const PointSet& design, const PointSet& eval_set, double q) {
  if (!(q > -1.0)) throw std::invalid_argument("quantization_error: q must exceed -1");
  const auto d = nearest_distances(design, eval_set);
  const double p = q + 1.0;
  // Scale by the maximum so large exponents neither overflow nor underflow.
  const double dmax = *std::max_element(d.begin(), d.end());
  if (dmax == 0.0) return 0.0;
  double s = 0.0;
  for (double v : d) s += std::pow(v / dmax, p);
  return dmax * std::pow(s / static_cast<double>(d.size()), 1.0 / p);
}

TrajectoryEvaluator::TrajectoryEvaluator(const PointSet& reference, std::vector<double> alphas)
    : reference_(reference),
      alphas_(std::move(alphas)),
      design_(reference.dim()),
      nearest_(reference.size(), std::numeric_limits<double>::infinity()),
      min_pair_(std::numeric_limits<double>::infinity()) {
  if (reference.empty()) throw std::invalid_argument("TrajectoryEvaluator: empty reference set");
  for (double a : alphas_) check_alpha(a);
}

void TrajectoryEvaluator::add_point(std::span<const double> p) {
  for (std::size_t i = 0; i < design_.size(); ++i) min_pair_ = std::min(min_pair_, squared_distance(design_[i], p));
  design_.push_back(p);
  for (std::size_t j = 0; j < reference_.size(); ++j)
    nearest_[j] = std::min(nearest_[j], squared_distance(reference_[j], p));
}

TrajectoryRecord TrajectoryEvaluator::record() const {
  if (design_.empty()) throw std::logic_error("TrajectoryEvaluator: no design points yet");
  TrajectoryRecord r;
  r.n = design_.size();
  std::vector<double> dist(nearest_.size());
  std::transform(nearest_.begin(), nearest_.end(), dist.begin(), [](double s) { return std::sqrt(s); });
  r.cr = *std::max_element(dist.begin(), dist.end());
  const double dim = static_cast<double>(design_.dim());
  const double scale = std::pow(static_cast<double>(r.n), 1.0 / dim);
  for (double a : alphas_) {
    const double qa = a == 1.0 ? r.cr : empirical_quantile(dist, a);
    r.q_alpha.push_back(qa);
    r.n1d_q_alpha.push_back(scale * qa);
  }
  if (r.n >= 2) {
    r.pr = 0.5 * std::sqrt(min_pair_);
    if (*r.pr > 0.0) r.rho = r.cr / *r.pr;
  }
  r.cr_over_rlower = r.cr / r_lower(r.n, design_.dim());
  r.n1d_cr = scale * r.cr;
  return r;
}

Trajectory evaluate_trajectory(const PointSet& design, const PointSet& reference,
                               std::vector<double> alphas, std::size_t n_min, std::size_t n_max,
                               std::span<const double> gamma, std::span<const double> seconds) {
  if (n_min == 0 || n_min > n_max) throw std::invalid_argument("evaluate_trajectory: need 1 <= n_min <= n_max");
  if (n_max > design.size()) throw std::invalid_argument("evaluate_trajectory: n_max exceeds design size");
  require_same_dim(design, reference, "evaluate_trajectory");
  Trajectory t;
  t.dim = design.dim();
  t.alphas = alphas;
  TrajectoryEvaluator ev(reference, std::move(alphas));
  for (std::size_t i = 0; i < n_max; ++i) {
    ev.add_point(design[i]);
    if (i + 1 < n_min) continue;
    auto rec = ev.record();
    if (i < gamma.size()) rec.gamma = gamma[i];
    if (i < seconds.size()) rec.seconds = seconds[i];
    t.records.push_back(std::move(rec));
  }
  return t;
}

}  // namespace sfd
