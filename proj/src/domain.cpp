#include "sfd/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sfd {

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::hypercube: return "hypercube";
    case DomainKind::box: return "box";
    case DomainKind::ball: return "ball";
    case DomainKind::annulus: return "annulus";
  }
  return "unknown";
}

Domain Domain::hypercube(std::size_t d) {
  if (d == 0) throw std::invalid_argument("hypercube: dimension must be positive");
  Domain dom;
  dom.kind_ = DomainKind::hypercube;
  dom.lower_.assign(d, 0.0);
  dom.upper_.assign(d, 1.0);
  return dom;
}

Domain Domain::box(std::vector<double> lower, std::vector<double> upper) {
  if (lower.empty()) throw std::invalid_argument("box: dimension must be positive");
  if (lower.size() != upper.size())
    throw std::invalid_argument("box: lower and upper bounds differ in dimension");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i]))
      throw std::invalid_argument("box: lower bound must be < upper bound in coordinate " +
                                  std::to_string(i));
  }
  Domain dom;
  dom.kind_ = DomainKind::box;
  dom.lower_ = std::move(lower);
  dom.upper_ = std::move(upper);
  return dom;
}

Domain Domain::ball(std::vector<double> center, double radius) {
  if (center.empty()) throw std::invalid_argument("ball: dimension must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("ball: radius must be positive");
  Domain dom;
  dom.kind_ = DomainKind::ball;
  dom.r_out_ = radius;
  for (double c : center) {
    dom.lower_.push_back(c - radius);
    dom.upper_.push_back(c + radius);
  }
  dom.center_ = std::move(center);
  return dom;
}

Domain Domain::annulus(std::vector<double> center, double r_in, double r_out) {
  if (center.empty()) throw std::invalid_argument("annulus: dimension must be positive");
  if (!(r_in > 0.0) || !(r_in < r_out) || !std::isfinite(r_out))
    throw std::invalid_argument("annulus: radii must satisfy 0 < r_in < r_out");
  Domain dom = ball(std::move(center), r_out);
  dom.kind_ = DomainKind::annulus;
  dom.r_in_ = r_in;
  return dom;
}

void Domain::check_dim(std::span<const double> x) const {
  if (x.size() != dim())
    throw std::invalid_argument("domain has dimension " + std::to_string(dim()) +
                                ", point has " + std::to_string(x.size()));
}

bool Domain::contains(std::span<const double> x) const {
  check_dim(x);
  switch (kind_) {
    case DomainKind::hypercube:
    case DomainKind::box:
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
      }
      return true;
    case DomainKind::ball: return squared_distance(x, center_) <= r_out_ * r_out_;
    case DomainKind::annulus: {
      const double s = squared_distance(x, center_);
      return s >= r_in_ * r_in_ && s <= r_out_ * r_out_;
    }
  }
  return false;
}

double Domain::dist_to_boundary(std::span<const double> x) const {
  if (!contains(x)) throw std::domain_error("dist_to_boundary: point lies outside the domain");
  switch (kind_) {
    case DomainKind::hypercube:
    case DomainKind::box: {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < x.size(); ++i)
        best = std::min({best, x[i] - lower_[i], upper_[i] - x[i]});
      return best;
    }
    case DomainKind::ball: return std::max(0.0, r_out_ - distance(x, center_));
    case DomainKind::annulus: {
      const double r = distance(x, center_);
      return std::max(0.0, std::min(r - r_in_, r_out_ - r));
    }
  }
  return 0.0;
}

double Domain::diameter() const {
  switch (kind_) {
    case DomainKind::hypercube:
    case DomainKind::box: return distance(lower_, upper_);
    case DomainKind::ball:
    case DomainKind::annulus: return 2.0 * r_out_;
  }
  return 0.0;
}

Point Domain::center() const {
  switch (kind_) {
    case DomainKind::hypercube:
    case DomainKind::box: {
      Point c(dim());
      for (std::size_t i = 0; i < dim(); ++i) c[i] = 0.5 * (lower_[i] + upper_[i]);
      return c;
    }
    case DomainKind::ball: return center_;
    case DomainKind::annulus: {
      Point c = center_;
      c[0] += 0.5 * (r_in_ + r_out_);
      return c;
    }
  }
  return {};
}

}  // namespace sfd
