#include "sfd/point_set.hpp"

#include <cmath>
#include <stdexcept>

namespace sfd {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

PointSet::PointSet(std::size_t dim, std::string provenance)
    : dim_(dim), provenance_(std::move(provenance)) {
  if (dim == 0) throw std::invalid_argument("PointSet: dimension must be positive");
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords, std::string provenance)
    : dim_(dim), coords_(std::move(coords)), provenance_(std::move(provenance)) {
  if (dim == 0) throw std::invalid_argument("PointSet: dimension must be positive");
  if (coords_.size() % dim != 0)
    throw std::invalid_argument("PointSet: coordinate count is not a multiple of the dimension");
}

PointSet PointSet::from_points(const std::vector<Point>& points, std::string provenance) {
  if (points.empty()) throw std::invalid_argument("PointSet::from_points: no points");
  PointSet out(points.front().size(), std::move(provenance));
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p);
  return out;
}

Point PointSet::point(std::size_t i) const {
  auto p = (*this)[i];
  return {p.begin(), p.end()};
}

void PointSet::push_back(std::span<const double> p) {
  if (p.size() != dim_)
    throw std::invalid_argument("PointSet::push_back: expected " + std::to_string(dim_) +
                                " coordinates, got " + std::to_string(p.size()));
  coords_.insert(coords_.end(), p.begin(), p.end());
}

PointSet PointSet::prefix(std::size_t n) const {
  if (n > size()) throw std::out_of_range("PointSet::prefix: n exceeds size");
  return PointSet(dim_, std::vector<double>(coords_.begin(), coords_.begin() + n * dim_),
                  provenance_);
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  PointSet out(dim_, provenance_);
  out.reserve(indices.size());
  for (auto i : indices) {
    if (i >= size()) throw std::out_of_range("PointSet::subset: index out of range");
    out.push_back((*this)[i]);
  }
  return out;
}

}  // namespace sfd
