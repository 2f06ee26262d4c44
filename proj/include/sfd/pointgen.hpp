#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "sfd/domain.hpp"
#include "sfd/point_set.hpp"

namespace sfd {

// Largest dimension covered by the shipped Sobol direction-number table.
std::size_t sobol_max_dim();

// First n points of the Halton sequence in bases 2, 3, 5, ..., starting at
// index 1, so the first point is (1/2, 1/3, ...).
PointSet halton(std::size_t n, std::size_t d);

// First n points of the Sobol sequence (Gray-code order, index 0 skipped so
// the first point is the cube center). With a seed, every coordinate is
// digitally scrambled by XOR with a per-dimension mask derived from the seed.
PointSet sobol(std::size_t n, std::size_t d, std::optional<std::uint64_t> scramble_seed = {});

// t-parameter of the Sobol (t, d)-sequence for 2 <= d <= 13.
int sobol_t(std::size_t d);

// Regular grid {0, 1/(m-1), ..., 1}^d in lexicographic order (last coordinate
// fastest).
PointSet grid(std::size_t m, std::size_t d, std::size_t max_points = std::size_t{1} << 24);

// The 2^d vertices of [0,1]^d in binary-counting order (first coordinate is
// the most significant bit).
PointSet vertices(std::size_t d, std::size_t max_dim = 20);

// Affinely maps points of [0,1]^d onto the bounding box of the domain and
// keeps those inside it, in order.
PointSet clip_rescale(const PointSet& raw, const Domain& domain);
// As above, truncated to count points; throws when raw runs out first.
PointSet clip_rescale(const PointSet& raw, const Domain& domain, std::size_t count);

// Concatenation of a then b with bitwise-exact duplicates removed (first
// occurrence kept).
PointSet union_of(const PointSet& a, const PointSet& b);

// Keeps the points whose distance to the domain boundary is at least margin.
PointSet erode(const PointSet& points, const Domain& domain, double margin);

// Comma-separated design file: one point per row, no header unless
// skip_header is set.
PointSet load_design(const std::filesystem::path& path, bool skip_header = false);

}  // namespace sfd
