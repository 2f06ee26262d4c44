#include "sfd/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sfd {

double unit_ball_volume(std::size_t d) {
  double v = (d % 2 == 0) ? 1.0 : 2.0;
  for (std::size_t k = (d % 2 == 0) ? 2 : 3; k <= d; k += 2) v *= 2.0 * std::numbers::pi / static_cast<double>(k);
  return v;
}

std::uint64_t integer_root(std::uint64_t n, std::size_t d) {
  if (d == 0) throw std::invalid_argument("integer_root: d must be positive");
  if (d == 1 || n < 2) return n;
  // (m+1)^d <= n, evaluated without overflow.
  auto fits = [n, d](std::uint64_t m) {
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < d; ++i) {
      if (p > n / m) return false;
      p *= m;
    }
    return p <= n;
  };
  std::uint64_t lo = 1, hi = 2;
  while (fits(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

double r_lower(std::uint64_t n, std::size_t d) {
  if (n == 0 || d == 0) throw std::invalid_argument("r_lower: n and d must be positive");
  return std::pow(static_cast<double>(n) * unit_ball_volume(d), -1.0 / static_cast<double>(d));
}

double r_upper(std::uint64_t n, std::size_t d) {
  if (n == 0 || d == 0) throw std::invalid_argument("r_upper: n and d must be positive");
  return std::sqrt(static_cast<double>(d)) / (2.0 * static_cast<double>(integer_root(n, d)));
}

double beta_star(std::uint64_t n_max, std::size_t d) {
  const double b = static_cast<double>(d) / (2.0 * r_lower(n_max, d)) - std::sqrt(static_cast<double>(d));
  if (!(b > 0.0))
    throw std::domain_error("beta_star: non-positive value for n_max=" + std::to_string(n_max) +
                            ", d=" + std::to_string(d));
  return b;
}

double beta_two_sqrt_2d(std::size_t d) { return 2.0 * std::sqrt(2.0 * static_cast<double>(d)); }

double lds_cr_upper(std::uint64_t N, std::size_t d, int t, unsigned base) {
  if (N == 0 || d == 0) throw std::invalid_argument("lds_cr_upper: N and d must be positive");
  if (base < 2) throw std::invalid_argument("lds_cr_upper: base must be >= 2");
  const double dd = static_cast<double>(d);
  return std::sqrt(dd) * std::pow(static_cast<double>(base), 1.0 + t / dd) /
         std::pow(static_cast<double>(N), 1.0 / dd);
}

unsigned faure_base(std::size_t d) {
  for (unsigned c = d < 2 ? 2u : static_cast<unsigned>(d);; ++c) {
    bool prime = true;
    for (unsigned p = 2; p * p <= c; ++p) {
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) return c;
  }
}

ReferenceDesign two_point_optimal(std::size_t d) {
  if (d == 0) throw std::invalid_argument("two_point_optimal: d must be positive");
  Point z(d, 0.5);
  z.back() = 0.25;
  Point w(d, 0.5);
  w.back() = 0.75;
  return {PointSet::from_points({z, w}, "two-point-optimal"),
          0.5 * std::sqrt(static_cast<double>(d) - 0.75)};
}

ReferenceDesign three_point_reference(std::size_t d) {
  if (d == 0) throw std::invalid_argument("three_point_reference: d must be positive");
  Point c(d, 0.5);
  Point x(d, 0.5);
  x.back() = 1.0 / 6.0;
  Point y(d, 0.5);
  y.back() = 5.0 / 6.0;
  return {PointSet::from_points({c, x, y}, "three-point-reference"),
          0.5 * std::sqrt(static_cast<double>(d) - 8.0 / 9.0)};
}

}  // namespace sfd
