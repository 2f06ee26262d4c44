#include "sfd/cdf_criterion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sfd {

CdfCriterion::CdfCriterion(const PointSet& eval_set, const PointSet& candidates, CriterionConfig cfg)
    : Q_(eval_set.size()), C_(candidates.size()), cfg_(cfg) {
  if (Q_ == 0) throw std::invalid_argument("CdfCriterion: empty evaluation set");
  if (C_ == 0) throw std::invalid_argument("CdfCriterion: empty candidate set");
  if (eval_set.dim() != candidates.dim()) throw std::invalid_argument("CdfCriterion: dimension mismatch");
  if (!(cfg.q > -1.0) || !std::isfinite(cfg.q)) throw std::invalid_argument("CdfCriterion: q must exceed -1");
  if (!(cfg.B > 0.0) || !std::isfinite(cfg.B)) throw std::invalid_argument("CdfCriterion: B must be positive");
  if (!(cfg.b >= 0.0 && cfg.b < cfg.B)) throw std::invalid_argument("CdfCriterion: need 0 <= b < B");
  if (Q_ > cfg.max_entries / C_)
    throw std::length_error("CdfCriterion: Q x C = " + std::to_string(Q_) + " x " + std::to_string(C_) +
                            " exceeds the cap of " + std::to_string(cfg.max_entries) + " matrix entries");

  const double p = cfg.q + 1.0;
  scale_ = std::pow(cfg.B, p);
  b_scaled_ = std::pow(cfg.b / cfg.B, p);

  auto p0 = std::make_shared<std::vector<double>>(Q_ * C_);
  const double inv_b = 1.0 / cfg.B;
  for (std::size_t k = 0; k < C_; ++k) {
    const auto c = candidates[k];
    double* col = p0->data() + k * Q_;
    for (std::size_t j = 0; j < Q_; ++j) col[j] = std::pow(std::min(distance(eval_set[j], c) * inv_b, 1.0), p);
  }
  p0_ = std::move(p0);
  m_.assign(Q_, 1.0);
}

double CdfCriterion::scaled_excess(double u) const { return std::max(u - b_scaled_, 0.0); }

double CdfCriterion::value() const {
  if (cfg_.truncate_to_cr) return truncation_offset() + truncated_value();
  double s = 0.0;
  for (double u : m_) s += scaled_excess(u);
  return scale_ / (cfg_.q + 1.0) * ((1.0 - b_scaled_) - s / static_cast<double>(Q_));
}

double CdfCriterion::truncated_value() const {
  const double cr = *std::max_element(m_.begin(), m_.end());
  double s = 0.0;
  for (double u : m_) s += scaled_excess(u);
  return scale_ / (cfg_.q + 1.0) * (scaled_excess(cr) - s / static_cast<double>(Q_));
}

double CdfCriterion::truncation_offset() const {
  const double cr = *std::max_element(m_.begin(), m_.end());
  return scale_ / (cfg_.q + 1.0) * (1.0 - std::max(cr, b_scaled_));
}

double CdfCriterion::delta(std::size_t k) const {
  if (k >= C_) throw std::out_of_range("CdfCriterion::delta: candidate index out of range");
  const double* col = p0_->data() + k * Q_;
  double s = 0.0;
  if (b_scaled_ == 0.0) {
    for (std::size_t j = 0; j < Q_; ++j) s += m_[j] > col[j] ? m_[j] - col[j] : 0.0;
  } else {
    for (std::size_t j = 0; j < Q_; ++j)
      if (m_[j] > col[j]) s += scaled_excess(m_[j]) - scaled_excess(col[j]);
  }
  return scale_ / (static_cast<double>(Q_) * (cfg_.q + 1.0)) * s;
}

void CdfCriterion::commit(std::size_t k) {
  if (k >= C_) throw std::out_of_range("CdfCriterion::commit: candidate index out of range");
  const double* col = p0_->data() + k * Q_;
  for (std::size_t j = 0; j < Q_; ++j) m_[j] = std::min(m_[j], col[j]);
  design_.push_back(k);
}

std::unique_ptr<SetFunctionOracle> CdfCriterion::fresh() const {
  auto copy = std::make_unique<CdfCriterion>(*this);
  copy->m_.assign(Q_, 1.0);
  copy->design_.clear();
  return copy;
}

double CdfCriterion::m(std::size_t j) const { return m_.at(j) * scale_; }

double CdfCriterion::p0(std::size_t j, std::size_t k) const {
  if (j >= Q_ || k >= C_) throw std::out_of_range("CdfCriterion::p0: index out of range");
  return (*p0_)[k * Q_ + j] * scale_;
}

double CdfCriterion::p(std::size_t j, std::size_t k) const {
  if (j >= Q_ || k >= C_) throw std::out_of_range("CdfCriterion::p: index out of range");
  return std::min(m_[j], (*p0_)[k * Q_ + j]) * scale_;
}

double CdfCriterion::column_sum(std::size_t k) const {
  if (k >= C_) throw std::out_of_range("CdfCriterion::column_sum: index out of range");
  const double* col = p0_->data() + k * Q_;
  double s = 0.0;
  for (std::size_t j = 0; j < Q_; ++j) s += std::min(m_[j], col[j]);
  return s * scale_;
}

double CdfCriterion::current_cr() const {
  const double cr = *std::max_element(m_.begin(), m_.end());
  return cfg_.B * std::pow(cr, 1.0 / (cfg_.q + 1.0));
}

}  // namespace sfd
