#include "sfd/coffeehouse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sfd {

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive or infinite");
}

// beta * d(x, boundary), with the infinite case kept out of inf * 0.
double boundary_term(std::span<const double> x, const Domain& domain, double beta) {
  if (std::isinf(beta)) {
    if (!domain.contains(x)) throw std::domain_error("point lies outside the domain");
    return kBetaInfinity;
  }
  return beta * domain.dist_to_boundary(x);
}

}  // namespace

double d_beta(std::span<const double> x, const PointSet& design, const Domain& domain, double beta) {
  check_beta(beta);
  if (x.size() != domain.dim()) throw std::invalid_argument("d_beta: dimension mismatch");
  double v = boundary_term(x, domain, beta);
  for (std::size_t i = 0; i < design.size(); ++i) v = std::min(v, distance(x, design[i]));
  return v;
}

Spacing s_beta(const PointSet& design, const PointSet& candidates, const Domain& domain, double beta) {
  if (candidates.empty()) throw std::invalid_argument("s_beta: empty candidate set");
  Spacing best{-1.0, 0};
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const double v = d_beta(candidates[k], design, domain, beta);
    if (v > best.value) best = {v, k};
  }
  return best;
}

double p_beta(const PointSet& design, const Domain& domain, double beta) {
  check_beta(beta);
  if (design.size() < 2) throw std::invalid_argument("p_beta: need at least two points");
  double v = kBetaInfinity;
  for (std::size_t i = 0; i < design.size(); ++i) {
    v = std::min(v, boundary_term(design[i], domain, beta));
    for (std::size_t j = i + 1; j < design.size(); ++j) v = std::min(v, distance(design[i], design[j]));
  }
  return 0.5 * v;
}

double rho_beta(const PointSet& design, const PointSet& candidates, const Domain& domain, double beta) {
  const double p = p_beta(design, domain, beta);
  if (p == 0.0) throw std::domain_error("rho_beta: p_beta is zero");
  return s_beta(design, candidates, domain, beta).value / p;
}

GreedyResult coffeehouse_construct(const PointSet& candidates, const Domain& domain, double beta, std::size_t n,
                                   const StepCallback& on_step) {
  check_beta(beta);
  const std::size_t C = candidates.size();
  if (C == 0) throw std::invalid_argument("coffeehouse: empty candidate set");
  if (candidates.dim() != domain.dim()) throw std::invalid_argument("coffeehouse: dimension mismatch");
  if (n == 0 || n > C)
    throw std::invalid_argument("coffeehouse: target size " + std::to_string(n) + " must lie in [1, " +
                                std::to_string(C) + "]");
  const bool infinite = std::isinf(beta);
  if (!infinite && !domain.convex())
    throw std::invalid_argument("coffeehouse: finite beta requires a convex domain; use beta = infinity");

  std::vector<double> bound(C);
  for (std::size_t k = 0; k < C; ++k) bound[k] = boundary_term(candidates[k], domain, beta);
  std::vector<double> nearest(C, kBetaInfinity);
  std::vector<char> selected(C, 0);

  GreedyResult out;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = C;
    double best_v = 0.0;
    if (step == 0 && infinite) {
      // Every candidate ties at +inf; take the one nearest the center.
      const Point c = domain.center();
      double best_d = kBetaInfinity;
      for (std::size_t k = 0; k < C; ++k) {
        const double dc = distance(candidates[k], c);
        if (dc < best_d) {
          best_d = dc;
          best = k;
        }
      }
      best_v = kBetaInfinity;
    } else {
      for (std::size_t k = 0; k < C; ++k) {
        if (selected[k]) continue;
        const double v = std::min(nearest[k], bound[k]);
        if (best == C || v > best_v) {
          best = k;
          best_v = v;
        }
      }
    }
    selected[best] = 1;
    const auto z = candidates[best];
    for (std::size_t k = 0; k < C; ++k) nearest[k] = std::min(nearest[k], distance(candidates[k], z));
    out.indices.push_back(best);
    const std::size_t scanned = C - step;
    out.trace.push_back({best, best_v, best_v, scanned, static_cast<double>(scanned) / static_cast<double>(C)});
    if (on_step) on_step(out.trace.back());
  }
  return out;
}

}  // namespace sfd
