#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sfd/point_set.hpp"

namespace sfd {

enum class DomainKind { hypercube, box, ball, annulus };

std::string to_string(DomainKind kind);

// Compact design region X. All sets are closed: boundary points are members.
// The annulus is the spherical shell r_in <= ||x - c|| <= r_out in R^d.
class Domain {
 public:
  static Domain hypercube(std::size_t d);
  static Domain box(std::vector<double> lower, std::vector<double> upper);
  static Domain ball(std::vector<double> center, double radius);
  static Domain annulus(std::vector<double> center, double r_in, double r_out);

  DomainKind kind() const { return kind_; }
  std::size_t dim() const { return lower_.size(); }
  bool convex() const { return kind_ != DomainKind::annulus; }

  bool contains(std::span<const double> x) const;

  // Euclidean distance to the boundary; throws std::domain_error when x is
  // outside the domain.
  double dist_to_boundary(std::span<const double> x) const;

  double diameter() const;

  // Chebyshev center for convex kinds. For the annulus, the point of the
  // medial sphere on the +x axis: c + ((r_in + r_out)/2, 0, ..., 0).
  Point center() const;

  // Axis-aligned bounding box.
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

  // Kind-specific parameters (empty where not applicable).
  const std::vector<double>& ball_center() const { return center_; }
  double radius() const { return r_out_; }
  double inner_radius() const { return r_in_; }

 private:
  Domain() = default;
  void check_dim(std::span<const double> x) const;

  DomainKind kind_ = DomainKind::hypercube;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> center_;
  double r_in_ = 0.0;
  double r_out_ = 0.0;
};

}  // namespace sfd
