#include "sfd/pointgen.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace sfd {

namespace detail {
extern const std::string_view kSobolDirectionTable;
}

namespace {

constexpr int kSobolBits = 32;

struct SobolDirections {
  // v[dim][bit]: direction integers, scaled so that bit 0 is the 1/2 digit.
  std::vector<std::array<std::uint32_t, kSobolBits>> v;
};

// Table rows: "d s a m_1 ... m_s" (Joe-Kuo layout); dimension 1 is implicit
// (all m_i = 1, i.e. the van der Corput sequence).
SobolDirections parse_sobol_table() {
  SobolDirections out;
  std::array<std::uint32_t, kSobolBits> first{};
  for (int i = 0; i < kSobolBits; ++i) first[i] = std::uint32_t{1} << (kSobolBits - 1 - i);
  out.v.push_back(first);

  std::istringstream in{std::string(detail::kSobolDirectionTable)};
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    unsigned dim = 0, s = 0, a = 0;
    row >> dim >> s >> a;
    if (!row || s == 0 || dim != out.v.size() + 1)
      throw std::logic_error("corrupt Sobol direction table near dimension " + std::to_string(dim));
    std::vector<std::uint32_t> m(s);
    for (auto& mi : m) row >> mi;
    if (!row) throw std::logic_error("corrupt Sobol direction table at dimension " + std::to_string(dim));

    std::array<std::uint32_t, kSobolBits> v{};
    for (unsigned i = 0; i < s && i < kSobolBits; ++i) v[i] = m[i] << (kSobolBits - 1 - i);
    for (unsigned i = s; i < kSobolBits; ++i) {
      v[i] = v[i - s] ^ (v[i - s] >> s);
      for (unsigned k = 1; k < s; ++k) v[i] ^= ((a >> (s - 1 - k)) & 1u) * v[i - k];
    }
    out.v.push_back(v);
  }
  return out;
}

const SobolDirections& sobol_directions() {
  static const SobolDirections table = parse_sobol_table();
  return table;
}

std::vector<unsigned> first_primes(std::size_t count) {
  std::vector<unsigned> primes;
  for (unsigned c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (unsigned p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

double radical_inverse(std::uint64_t i, unsigned base) {
  const double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += static_cast<double>(i % base) * f;
    i /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

std::size_t sobol_max_dim() { return sobol_directions().v.size(); }

PointSet halton(std::size_t n, std::size_t d) {
  if (n == 0 || d == 0) throw std::invalid_argument("halton: n and d must be positive");
  const auto bases = first_primes(d);
  std::vector<double> coords;
  coords.reserve(n * d);
  for (std::uint64_t i = 1; i <= n; ++i)
    for (unsigned b : bases) coords.push_back(radical_inverse(i, b));
  return PointSet(d, std::move(coords), "halton");
}

PointSet sobol(std::size_t n, std::size_t d, std::optional<std::uint64_t> scramble_seed) {
  if (n == 0 || d == 0) throw std::invalid_argument("sobol: n and d must be positive");
  const auto& dirs = sobol_directions();
  if (d > dirs.v.size())
    throw std::invalid_argument("sobol: dimension " + std::to_string(d) +
                                " exceeds the shipped direction-number table (max " +
                                std::to_string(dirs.v.size()) + ")");
  if (n >= (std::uint64_t{1} << kSobolBits))
    throw std::invalid_argument("sobol: n exceeds 2^32 - 1");

  std::vector<std::uint32_t> mask(d, 0);
  if (scramble_seed) {
    std::mt19937_64 rng(*scramble_seed);
    for (auto& m : mask) m = static_cast<std::uint32_t>(rng() >> 32);
  }

  constexpr double kScale = 1.0 / 4294967296.0;
  std::vector<std::uint32_t> x(d, 0);
  std::vector<double> coords;
  coords.reserve(n * d);
  for (std::uint64_t i = 1; i <= n; ++i) {
    // Gray-code step: flip the direction of the lowest zero bit of i - 1.
    const int c = std::countr_one(i - 1);
    for (std::size_t j = 0; j < d; ++j) {
      x[j] ^= dirs.v[j][c];
      coords.push_back(static_cast<double>(x[j] ^ mask[j]) * kScale);
    }
  }
  std::string tag = scramble_seed ? "sobol-scrambled(" + std::to_string(*scramble_seed) + ")" : "sobol";
  return PointSet(d, std::move(coords), std::move(tag));
}

int sobol_t(std::size_t d) {
  static constexpr std::array<int, 12> table = {0, 1, 3, 5, 8, 11, 15, 19, 23, 27, 31, 35};
  if (d < 2 || d > 13) throw std::out_of_range("sobol_t: tabulated only for 2 <= d <= 13");
  return table[d - 2];
}

PointSet grid(std::size_t m, std::size_t d, std::size_t max_points) {
  if (m < 2) throw std::invalid_argument("grid: need at least 2 points per axis");
  if (d == 0) throw std::invalid_argument("grid: dimension must be positive");
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > max_points / m)
      throw std::length_error("grid: m^d exceeds the size cap of " + std::to_string(max_points));
    total *= m;
  }
  std::vector<double> coords;
  coords.reserve(total * d);
  std::vector<std::size_t> digits(d, 0);
  const double step = 1.0 / static_cast<double>(m - 1);
  for (std::size_t k = 0; k < total; ++k) {
    for (std::size_t j = 0; j < d; ++j)
      coords.push_back(digits[j] == m - 1 ? 1.0 : static_cast<double>(digits[j]) * step);
    for (std::size_t j = d; j-- > 0;) {
      if (++digits[j] < m) break;
      digits[j] = 0;
    }
  }
  return PointSet(d, std::move(coords), "grid(" + std::to_string(m) + ")");
}

PointSet vertices(std::size_t d, std::size_t max_dim) {
  if (d == 0) throw std::invalid_argument("vertices: dimension must be positive");
  if (d > max_dim || d >= 63)
    throw std::length_error("vertices: dimension " + std::to_string(d) + " exceeds cap " +
                            std::to_string(max_dim));
  const std::uint64_t total = std::uint64_t{1} << d;
  std::vector<double> coords;
  coords.reserve(total * d);
  for (std::uint64_t k = 0; k < total; ++k)
    for (std::size_t j = 0; j < d; ++j) coords.push_back(static_cast<double>((k >> (d - 1 - j)) & 1u));
  return PointSet(d, std::move(coords), "vertices");
}

namespace {

PointSet clip_impl(const PointSet& raw, const Domain& domain, std::size_t count, bool strict) {
  if (raw.dim() != domain.dim())
    throw std::invalid_argument("clip_rescale: point set and domain differ in dimension");
  const auto& lo = domain.lower();
  const auto& hi = domain.upper();
  PointSet out(raw.dim(), "clipped(" + raw.provenance() + ")");
  std::vector<double> y(raw.dim());
  for (std::size_t i = 0; i < raw.size() && out.size() < count; ++i) {
    auto u = raw[i];
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = lo[j] + u[j] * (hi[j] - lo[j]);
    if (domain.contains(y)) out.push_back(y);
  }
  if (strict && out.size() < count)
    throw std::runtime_error("clip_rescale: raw stream exhausted after " + std::to_string(out.size()) +
                             " of " + std::to_string(count) + " points");
  return out;
}

}  // namespace

PointSet clip_rescale(const PointSet& raw, const Domain& domain) {
  return clip_impl(raw, domain, raw.size(), false);
}

PointSet clip_rescale(const PointSet& raw, const Domain& domain, std::size_t count) {
  return clip_impl(raw, domain, count, true);
}

PointSet union_of(const PointSet& a, const PointSet& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.dim() != b.dim()) throw std::invalid_argument("union: point sets differ in dimension");
  const std::size_t d = a.dim();
  auto hash_point = [d](std::span<const double> p) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t j = 0; j < d; ++j) {
      std::uint64_t bits;
      std::memcpy(&bits, &p[j], sizeof bits);
      h = (h ^ bits) * 1099511628211ull;
      h ^= h >> 29;
    }
    return h;
  };
  PointSet out(d, a.provenance() + "+" + b.provenance());
  out.reserve(a.size() + b.size());
  std::unordered_multimap<std::uint64_t, std::size_t> seen;
  seen.reserve(a.size() + b.size());
  auto add = [&](std::span<const double> p) {
    const auto h = hash_point(p);
    auto [it, end] = seen.equal_range(h);
    for (; it != end; ++it)
      if (std::memcmp(out[it->second].data(), p.data(), d * sizeof(double)) == 0) return;
    seen.emplace(h, out.size());
    out.push_back(p);
  };
  for (std::size_t i = 0; i < a.size(); ++i) add(a[i]);
  for (std::size_t i = 0; i < b.size(); ++i) add(b[i]);
  return out;
}

PointSet erode(const PointSet& points, const Domain& domain, double margin) {
  PointSet out(points.dim(), "eroded(" + points.provenance() + ")");
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto p = points[i];
    if (domain.contains(p) && domain.dist_to_boundary(p) >= margin) out.push_back(p);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

PointSet load_design(const std::filesystem::path& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_design: cannot open " + path.string());
  std::vector<double> coords;
  std::size_t dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_header && lineno == 1) continue;
    const auto row = trim(line);
    if (row.empty()) continue;
    std::size_t fields = 0;
    std::size_t pos = 0;
    while (true) {
      const auto comma = row.find(',', pos);
      const auto field = trim(row.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": cannot parse '" +
                                 std::string(field) + "' as a number");
      coords.push_back(v);
      ++fields;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (dim == 0) {
      dim = fields;
    } else if (fields != dim) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(dim) + " fields, found " + std::to_string(fields));
    }
  }
  if (dim == 0) throw std::runtime_error("load_design: " + path.string() + " contains no points");
  return PointSet(dim, std::move(coords), "file(" + path.string() + ")");
}

}  // namespace sfd
