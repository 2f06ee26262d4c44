#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace sfd {

using Point = std::vector<double>;

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

// Ordered list of points in R^d stored row-major. The provenance tag records
// where the points came from ("sobol", "grid(50)", "file(path)", ...).
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim, std::string provenance = {});
  PointSet(std::size_t dim, std::vector<double> coords, std::string provenance = {});

  static PointSet from_points(const std::vector<Point>& points, std::string provenance = {});

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  Point point(std::size_t i) const;

  const std::vector<double>& coords() const { return coords_; }
  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  void push_back(std::span<const double> p);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  PointSet prefix(std::size_t n) const;
  PointSet subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.dim_ == b.dim_ && a.coords_ == b.coords_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::string provenance_;
};

// A design is an ordered selection of points; every prefix is itself a design.
// candidate_indices refers back to the candidate set the points were taken
// from (empty when the design did not come from a candidate set).
struct Design {
  PointSet points;
  std::vector<std::size_t> candidate_indices;
};

}  // namespace sfd
