#include "sfd/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "sfd/bounds.hpp"
#include "sfd/cdf_criterion.hpp"
#include "sfd/coffeehouse.hpp"
#include "sfd/csv.hpp"
#include "sfd/pointgen.hpp"
#include "sfd/relaxed_cr.hpp"

namespace sfd {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string version_string() { return "0.1.0"; }

std::string to_string(ConstructorType t) {
  switch (t) {
    case ConstructorType::cdf: return "cdf";
    case ConstructorType::coffeehouse: return "coffeehouse";
    case ConstructorType::vd: return "vd";
    case ConstructorType::rd: return "rd";
    case ConstructorType::lds_prefix: return "lds-prefix";
  }
  return "?";
}

namespace {

// ---- JSON field access with path-qualified errors ----

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ConfigError(path + ": " + msg); }

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
      fail(path + "." + it.key(), "unknown field");
  }
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

std::size_t as_count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    fail(path, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

std::uint64_t as_u64(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    fail(path, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_vector(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// ---- domain ----

DomainSpec parse_domain(const json& v) {
  const std::string path = "domain";
  if (!v.is_object()) fail(path, "expected an object");
  const std::string kind = as_string(require(v, "kind", path), path + ".kind");
  DomainSpec s;
  if (kind == "hypercube") {
    check_keys(v, path, {"kind", "d"});
    s.kind = DomainKind::hypercube;
    s.d = as_count(require(v, "d", path), path + ".d");
  } else if (kind == "box") {
    check_keys(v, path, {"kind", "lower", "upper"});
    s.kind = DomainKind::box;
    s.lower = as_vector(require(v, "lower", path), path + ".lower");
    s.upper = as_vector(require(v, "upper", path), path + ".upper");
    s.d = s.lower.size();
  } else if (kind == "ball") {
    check_keys(v, path, {"kind", "center", "radius"});
    s.kind = DomainKind::ball;
    s.center = as_vector(require(v, "center", path), path + ".center");
    s.radius = as_number(require(v, "radius", path), path + ".radius");
    s.d = s.center.size();
  } else if (kind == "annulus") {
    check_keys(v, path, {"kind", "center", "r_in", "r_out"});
    s.kind = DomainKind::annulus;
    s.center = as_vector(require(v, "center", path), path + ".center");
    s.inner_radius = as_number(require(v, "r_in", path), path + ".r_in");
    s.radius = as_number(require(v, "r_out", path), path + ".r_out");
    s.d = s.center.size();
  } else {
    fail(path + ".kind", "unknown domain kind '" + kind + "' (hypercube, box, ball, annulus)");
  }
  if (s.d == 0) fail(path, "dimension must be at least 1");
  try {
    (void)make_domain(s);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return s;
}

ojson domain_json(const DomainSpec& s) {
  ojson j;
  j["kind"] = to_string(s.kind);
  switch (s.kind) {
    case DomainKind::hypercube: j["d"] = s.d; break;
    case DomainKind::box:
      j["lower"] = s.lower;
      j["upper"] = s.upper;
      break;
    case DomainKind::ball:
      j["center"] = s.center;
      j["radius"] = s.radius;
      break;
    case DomainKind::annulus:
      j["center"] = s.center;
      j["r_in"] = s.inner_radius;
      j["r_out"] = s.radius;
      break;
  }
  return j;
}

// ---- point sets ----

PointSetSpec parse_point_set(const json& v, const std::string& path, bool allow_same) {
  PointSetSpec s;
  if (allow_same && v.is_string() && v.get<std::string>() == "candidates") {
    s.same_as_candidates = true;
    return s;
  }
  check_keys(v, path, {"generator", "size", "m", "scramble", "scramble_seed", "augment_vertices", "file", "header",
                       "erode"});
  s.generator = as_string(require(v, "generator", path), path + ".generator");
  if (s.generator == "halton" || s.generator == "sobol") {
    s.size = as_count(require(v, "size", path), path + ".size");
    if (s.size == 0) fail(path + ".size", "must be at least 1");
  } else if (s.generator == "grid") {
    s.m = as_count(require(v, "m", path), path + ".m");
    if (s.m < 2) fail(path + ".m", "must be at least 2");
  } else if (s.generator == "file") {
    s.file = as_string(require(v, "file", path), path + ".file");
    if (s.file.empty()) fail(path + ".file", "empty path");
  } else if (s.generator != "vertices") {
    fail(path + ".generator", "unknown generator '" + s.generator + "' (halton, sobol, grid, vertices, file)");
  }
  if (v.contains("scramble")) s.scramble = as_bool(v["scramble"], path + ".scramble");
  if (v.contains("scramble_seed")) {
    s.scramble_seed = as_u64(v["scramble_seed"], path + ".scramble_seed");
    s.scramble = true;
  }
  if (s.scramble && s.generator != "sobol") fail(path + ".scramble", "only the sobol generator can be scrambled");
  if (v.contains("augment_vertices")) s.augment_vertices = as_bool(v["augment_vertices"], path + ".augment_vertices");
  if (v.contains("header")) s.header = as_bool(v["header"], path + ".header");
  if (v.contains("erode")) {
    const auto& e = v["erode"];
    if (e.is_string()) {
      s.erode_rule = e.get<std::string>();
      if (s.erode_rule != "half-r-lower") fail(path + ".erode", "expected a number or \"half-r-lower\"");
    } else {
      s.erode = as_number(e, path + ".erode");
      if (*s.erode < 0.0) fail(path + ".erode", "must be nonnegative");
    }
  }
  return s;
}

ojson point_set_json(const PointSetSpec& s) {
  if (s.same_as_candidates) return "candidates";
  ojson j;
  j["generator"] = s.generator;
  if (s.generator == "halton" || s.generator == "sobol") j["size"] = s.size;
  if (s.generator == "grid") j["m"] = s.m;
  if (s.generator == "file") {
    j["file"] = s.file;
    j["header"] = s.header;
  }
  if (s.scramble) j["scramble"] = true;
  if (s.scramble_seed) j["scramble_seed"] = *s.scramble_seed;
  if (s.augment_vertices) j["augment_vertices"] = true;
  if (!s.erode_rule.empty()) j["erode"] = s.erode_rule;
  else if (s.erode) j["erode"] = *s.erode;
  return j;
}

bool same_spec(const PointSetSpec& a, const PointSetSpec& b) { return point_set_json(a) == point_set_json(b); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t set_seed(const PointSetSpec& s, std::uint64_t run_seed, SetRole role) {
  return s.scramble_seed ? *s.scramble_seed : splitmix64(run_seed ^ splitmix64(static_cast<std::uint64_t>(role)));
}

// [0,1]^d points mapped onto the domain's bounding box, filtered by
// membership and the erosion margin.
PointSet embed(const PointSet& raw, const Domain& domain, double margin, std::size_t limit) {
  PointSet out(domain.dim(), "clipped(" + raw.provenance() + ")");
  const auto& lo = domain.lower();
  const auto& hi = domain.upper();
  Point x(domain.dim());
  for (std::size_t i = 0; i < raw.size() && out.size() < limit; ++i) {
    const auto r = raw[i];
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = lo[k] + (hi[k] - lo[k]) * r[k];
    if (!domain.contains(x)) continue;
    if (margin > 0.0 && domain.dist_to_boundary(x) < margin) continue;
    out.push_back(x);
  }
  return out;
}

// ---- constructor ----

ConstructorSpec parse_constructor(const json& v, const DomainSpec& dom, std::size_t n_min, std::size_t n_max) {
  const std::string path = "constructor";
  if (!v.is_object()) fail(path, "expected an object");
  const std::string type = as_string(require(v, "type", path), path + ".type");
  ConstructorSpec c;
  const Domain domain = make_domain(dom);
  const auto d = dom.d;
  auto hypercube_only = [&](const std::string& field, const std::string& rule) {
    if (dom.kind != DomainKind::hypercube)
      fail(path + "." + field, "\"" + rule + "\" is defined for the unit hypercube only");
  };

  if (type == "cdf") {
    check_keys(v, path, {"type", "q", "B", "b", "truncate", "B_from", "b_from"});
    c.type = ConstructorType::cdf;
    c.q = v.contains("q") ? as_number(v["q"], path + ".q") : 10.0;
    if (!(c.q > -1.0)) fail(path + ".q", "must exceed -1");
    const json Bv = v.contains("B") ? v["B"] : json("diameter");
    if (Bv.is_string()) {
      c.B_rule = Bv.get<std::string>();
      if (c.B_rule == "diameter") c.B = domain.diameter();
      else if (c.B_rule == "half-diameter") c.B = 0.5 * domain.diameter();
      else if (c.B_rule == "r-upper") {
        hypercube_only("B", c.B_rule);
        c.B = r_upper(n_min, d);
      } else fail(path + ".B", "expected a number, \"diameter\", \"half-diameter\" or \"r-upper\"");
    } else {
      c.B = as_number(Bv, path + ".B");
      if (v.contains("B_from")) c.B_rule = as_string(v["B_from"], path + ".B_from");
    }
    const json bv = v.contains("b") ? v["b"] : json(0.0);
    if (bv.is_string()) {
      c.b_rule = bv.get<std::string>();
      if (c.b_rule != "r-lower") fail(path + ".b", "expected a number or \"r-lower\"");
      c.b = r_lower(n_max, d);
    } else {
      c.b = as_number(bv, path + ".b");
      if (v.contains("b_from")) c.b_rule = as_string(v["b_from"], path + ".b_from");
    }
    if (!(c.B > 0.0)) fail(path + ".B", "must be positive");
    if (!(c.b >= 0.0 && c.b < c.B)) fail(path + ".b", "need 0 <= b < B");
    if (v.contains("truncate")) c.truncate = as_bool(v["truncate"], path + ".truncate");
  } else if (type == "coffeehouse") {
    check_keys(v, path, {"type", "beta", "beta_n", "beta_from"});
    c.type = ConstructorType::coffeehouse;
    if (v.contains("beta_n")) {
      c.beta_n = as_count(v["beta_n"], path + ".beta_n");
      if (*c.beta_n == 0) fail(path + ".beta_n", "must be at least 1");
    }
    const json bv = v.contains("beta") ? v["beta"] : json("infinity");
    if (bv.is_string()) {
      const std::string rule = bv.get<std::string>();
      if (rule == "infinity") {
        c.beta = kBetaInfinity;
      } else if (rule == "beta-star") {
        hypercube_only("beta", rule);
        try {
          c.beta = beta_star(c.beta_n.value_or(n_max), d);
        } catch (const std::domain_error& e) {
          fail(path + ".beta", e.what());
        }
        c.beta_rule = rule;
      } else if (rule == "2sqrt2d") {
        c.beta = beta_two_sqrt_2d(d);
        c.beta_rule = rule;
      } else {
        fail(path + ".beta", "expected a number, \"infinity\", \"beta-star\" or \"2sqrt2d\"");
      }
    } else {
      c.beta = as_number(bv, path + ".beta");
      if (!(c.beta > 0.0)) fail(path + ".beta", "must be positive");
      if (v.contains("beta_from")) c.beta_rule = as_string(v["beta_from"], path + ".beta_from");
    }
    if (!std::isinf(c.beta) && !domain.convex())
      fail(path + ".beta", "finite beta needs a convex domain; use \"infinity\" (optionally with eroded candidates)");
  } else if (type == "vd" || type == "rd") {
    check_keys(v, path, {"type", "q"});
    c.type = type == "vd" ? ConstructorType::vd : ConstructorType::rd;
    c.q = v.contains("q") ? as_number(v["q"], path + ".q") : static_cast<double>(d);
    if (!(c.q > 0.0)) fail(path + ".q", "must be positive");
  } else if (type == "lds-prefix") {
    check_keys(v, path, {"type", "generator"});
    c.type = ConstructorType::lds_prefix;
    c.generator = as_string(require(v, "generator", path), path + ".generator");
    if (c.generator != "halton" && c.generator != "sobol")
      fail(path + ".generator", "expected \"halton\" or \"sobol\"");
  } else {
    fail(path + ".type", "unknown constructor '" + type + "' (cdf, coffeehouse, vd, rd, lds-prefix)");
  }
  return c;
}

ojson constructor_json(const ConstructorSpec& c) {
  ojson j;
  j["type"] = to_string(c.type);
  switch (c.type) {
    case ConstructorType::cdf:
      j["q"] = c.q;
      j["B"] = c.B;
      if (!c.B_rule.empty()) j["B_from"] = c.B_rule;
      j["b"] = c.b;
      if (!c.b_rule.empty()) j["b_from"] = c.b_rule;
      j["truncate"] = c.truncate;
      break;
    case ConstructorType::coffeehouse:
      if (std::isinf(c.beta)) j["beta"] = "infinity";
      else j["beta"] = c.beta;
      if (!c.beta_rule.empty()) j["beta_from"] = c.beta_rule;
      if (c.beta_n) j["beta_n"] = *c.beta_n;
      break;
    case ConstructorType::vd:
    case ConstructorType::rd: j["q"] = c.q; break;
    case ConstructorType::lds_prefix: j["generator"] = c.generator; break;
  }
  return j;
}

bool needs_candidates(ConstructorType t) { return t != ConstructorType::lds_prefix; }
bool needs_evaluation(ConstructorType t) {
  return t == ConstructorType::cdf || t == ConstructorType::vd || t == ConstructorType::rd;
}

std::string display(const std::filesystem::path& p) { return p.string(); }

}  // namespace

Domain make_domain(const DomainSpec& s) {
  switch (s.kind) {
    case DomainKind::hypercube: return Domain::hypercube(s.d);
    case DomainKind::box: return Domain::box(s.lower, s.upper);
    case DomainKind::ball: return Domain::ball(s.center, s.radius);
    case DomainKind::annulus: return Domain::annulus(s.center, s.inner_radius, s.radius);
  }
  throw std::invalid_argument("unknown domain kind");
}

RunConfig parse_config(const json& input, const ConfigOverrides& ov) {
  json doc = input;
  if (doc.is_object() && doc.contains("manifest")) {
    if (!doc.contains("config")) fail("manifest", "has no echoed config");
    doc = json(doc["config"]);
  }
  if (!doc.is_object()) fail("$", "the configuration must be a JSON object");
  if (doc.contains("paper_scale")) {
    json patch = doc["paper_scale"];
    doc.erase("paper_scale");
    if (!patch.is_object()) fail("paper_scale", "expected an object (a JSON merge patch)");
    if (ov.paper_scale) doc.merge_patch(patch);
  }
  check_keys(doc, "$", {"schema", "name", "domain", "constructor", "candidates", "evaluation", "reference", "n_min",
                        "n_max", "alpha", "seed", "lazy", "output"});
  const json& schema = require(doc, "schema", "$");
  if (!schema.is_number_integer() || schema.get<int>() != kConfigSchema)
    fail("$.schema", "unsupported schema version (expected " + std::to_string(kConfigSchema) + ")");

  RunConfig cfg;
  cfg.name = as_string(require(doc, "name", "$"), "$.name");
  if (cfg.name.empty() || !std::all_of(cfg.name.begin(), cfg.name.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
      }))
    fail("$.name", "must be a nonempty string of letters, digits, '_', '-' or '.'");

  cfg.domain = parse_domain(require(doc, "domain", "$"));
  cfg.n_max = as_count(require(doc, "n_max", "$"), "$.n_max");
  cfg.n_min = doc.contains("n_min") ? as_count(doc["n_min"], "$.n_min") : 1;
  if (cfg.n_min == 0) fail("$.n_min", "must be at least 1");
  if (cfg.n_max < cfg.n_min) fail("$.n_max", "must be at least n_min");
  cfg.constructor = parse_constructor(require(doc, "constructor", "$"), cfg.domain, cfg.n_min, cfg.n_max);

  const auto type = cfg.constructor.type;
  if (needs_candidates(type)) {
    cfg.candidates = parse_point_set(require(doc, "candidates", "$"), "$.candidates", false);
  } else if (doc.contains("candidates")) {
    fail("$.candidates", "not used by the " + to_string(type) + " constructor");
  }
  if (needs_evaluation(type)) {
    cfg.evaluation = parse_point_set(require(doc, "evaluation", "$"), "$.evaluation", true);
    if ((type == ConstructorType::vd || type == ConstructorType::rd) && cfg.evaluation.same_as_candidates)
      fail("$.evaluation", "vd and rd need an evaluation set disjoint from the candidates");
  } else if (doc.contains("evaluation")) {
    fail("$.evaluation", "not used by the " + to_string(type) + " constructor");
  }
  cfg.reference = parse_point_set(require(doc, "reference", "$"), "$.reference", true);
  if (cfg.reference.same_as_candidates && !needs_candidates(type))
    fail("$.reference", "there is no candidate set to reuse");

  for (const auto* spec : {&cfg.candidates, &cfg.evaluation, &cfg.reference}) {
    if (spec->generator == "vertices" || spec->augment_vertices) {
      if (cfg.domain.kind != DomainKind::hypercube && cfg.domain.kind != DomainKind::box)
        fail("$", "vertex sets are defined for hypercube and box domains only");
    }
  }

  if (doc.contains("alpha")) {
    const auto& a = doc["alpha"];
    cfg.alpha = a.is_array() ? as_vector(a, "$.alpha") : std::vector<double>{as_number(a, "$.alpha")};
    for (std::size_t i = 0; i < cfg.alpha.size(); ++i)
      if (!(cfg.alpha[i] > 0.0 && cfg.alpha[i] <= 1.0)) fail("$.alpha[" + std::to_string(i) + "]", "must lie in (0, 1]");
  }
  cfg.seed = doc.contains("seed") ? as_u64(doc["seed"], "$.seed") : 0;
  cfg.lazy = doc.contains("lazy") ? as_bool(doc["lazy"], "$.lazy") : true;
  cfg.output = doc.contains("output") ? as_string(doc["output"], "$.output") : std::string();

  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.lazy) cfg.lazy = *ov.lazy;
  if (ov.output) cfg.output = *ov.output;
  cfg.timing = ov.timing;
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError(display(path) + ": cannot open configuration file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(display(path) + ": " + e.what());
  }
  RunConfig cfg = parse_config(doc, overrides);
  // Relative data files are resolved against the directory of the config.
  const auto base = path.parent_path();
  for (auto* spec : {&cfg.candidates, &cfg.evaluation, &cfg.reference}) {
    if (spec->generator == "file" && std::filesystem::path(spec->file).is_relative() && !base.empty()) {
      const auto candidate = base / spec->file;
      if (std::filesystem::exists(candidate)) spec->file = candidate.lexically_normal().string();
    }
  }
  return cfg;
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  ojson j;
  j["schema"] = kConfigSchema;
  j["name"] = cfg.name;
  j["domain"] = domain_json(cfg.domain);
  j["constructor"] = constructor_json(cfg.constructor);
  if (needs_candidates(cfg.constructor.type)) j["candidates"] = point_set_json(cfg.candidates);
  if (needs_evaluation(cfg.constructor.type)) j["evaluation"] = point_set_json(cfg.evaluation);
  j["reference"] = point_set_json(cfg.reference);
  j["n_min"] = cfg.n_min;
  j["n_max"] = cfg.n_max;
  j["alpha"] = cfg.alpha;
  j["seed"] = cfg.seed;
  j["lazy"] = cfg.lazy;
  if (!cfg.output.empty()) j["output"] = cfg.output;
  return j;
}

PointSet build_point_set(const PointSetSpec& s, const Domain& domain, std::uint64_t run_seed, SetRole role) {
  const std::size_t d = domain.dim();
  const double margin = s.erode.value_or(0.0);
  PointSet out;
  if (s.generator == "halton" || s.generator == "sobol") {
    if (s.generator == "sobol" && d > sobol_max_dim())
      throw ConfigError("sobol: dimension " + std::to_string(d) + " exceeds the shipped table (" +
                        std::to_string(sobol_max_dim()) + ")");
    const bool direct = domain.kind() == DomainKind::hypercube && margin == 0.0;
    std::optional<std::uint64_t> seed;
    if (s.scramble) seed = set_seed(s, run_seed, role);
    // Sequences are prefix-stable, so drawing more raw points only extends the stream.
    std::size_t raw = s.size;
    constexpr std::size_t kMaxRaw = std::size_t{1} << 26;
    while (true) {
      const PointSet pts = s.generator == "halton" ? halton(raw, d) : sobol(raw, d, seed);
      if (direct) {
        out = pts;
        break;
      }
      out = embed(pts, domain, margin, s.size);
      if (out.size() == s.size) break;
      if (raw >= kMaxRaw)
        throw ConfigError(s.generator + ": fewer than " + std::to_string(s.size) + " of " + std::to_string(raw) +
                          " raw points fall inside the domain");
      raw *= 2;
    }
  } else if (s.generator == "grid") {
    out = embed(grid(s.m, d), domain, margin, std::numeric_limits<std::size_t>::max());
    out.set_provenance("grid(" + std::to_string(s.m) + ")");
  } else if (s.generator == "vertices") {
    out = embed(vertices(d), domain, margin, std::numeric_limits<std::size_t>::max());
    out.set_provenance("vertices");
  } else if (s.generator == "file") {
    out = load_design(s.file, s.header);
    if (out.dim() != d)
      throw ConfigError(s.file + ": points have dimension " + std::to_string(out.dim()) + ", domain has " +
                        std::to_string(d));
    for (std::size_t i = 0; i < out.size(); ++i)
      if (!domain.contains(out[i]))
        throw ConfigError(s.file + ": row " + std::to_string(i + 1) + " lies outside the domain");
    if (margin > 0.0) out = erode(out, domain, margin);
  } else {
    throw ConfigError("unknown generator '" + s.generator + "'");
  }
  if (s.augment_vertices) {
    PointSet v = embed(vertices(d), domain, margin, std::numeric_limits<std::size_t>::max());
    const std::string prov = out.provenance() + "+vertices";
    out = union_of(out, v);
    out.set_provenance(prov);
  }
  if (out.empty()) throw ConfigError("point set '" + s.generator + "' is empty inside the domain");
  return out;
}

namespace {

PointSetSpec resolved_spec(PointSetSpec s, const RunConfig& cfg) {
  if (s.erode_rule == "half-r-lower") s.erode = 0.5 * r_lower(cfg.n_max, cfg.domain.d);
  return s;
}

}  // namespace

RunResult run_experiment(const RunConfig& cfg, const TraceSink& sink) {
  const Domain domain = make_domain(cfg.domain);
  const auto type = cfg.constructor.type;
  const auto& con = cfg.constructor;

  PointSet candidates;
  if (needs_candidates(type)) candidates = build_point_set(resolved_spec(cfg.candidates, cfg), domain, cfg.seed,
                                                           SetRole::candidates);
  PointSet evaluation;
  if (needs_evaluation(type)) {
    evaluation = cfg.evaluation.same_as_candidates
                     ? candidates
                     : build_point_set(resolved_spec(cfg.evaluation, cfg), domain, cfg.seed, SetRole::evaluation);
  }
  const PointSet reference = cfg.reference.same_as_candidates
                                 ? candidates
                                 : build_point_set(resolved_spec(cfg.reference, cfg), domain, cfg.seed,
                                                   SetRole::reference);

  if (needs_candidates(type) && cfg.n_max > candidates.size())
    throw ConfigError("$.n_max: " + std::to_string(cfg.n_max) + " exceeds the " + std::to_string(candidates.size()) +
                      " candidates");
  if (type == ConstructorType::vd || type == ConstructorType::rd) {
    try {
      require_disjoint(candidates, evaluation);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("$.evaluation: ") + e.what());
    }
  }

  RunResult res;
  std::vector<double> step_seconds;
  std::vector<double> gamma;
  const auto start = std::chrono::steady_clock::now();
  auto record = [&](const GreedyStep& step, std::string extra, bool engine) {
    step_seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    if (engine) gamma.push_back(step.gamma);
    res.trace.push_back({step, std::move(extra)});
    if (sink) sink(res.trace.back(), res.trace.size());
  };

  std::vector<std::size_t> indices;
  switch (type) {
    case ConstructorType::cdf: {
      CdfCriterion oracle(evaluation, candidates, {con.q, con.B, con.b, con.truncate});
      const StepCallback cb = [&](const GreedyStep& s) {
        record(s, "\"cr_eval\":" + format_double(oracle.current_cr()), true);
      };
      indices = (cfg.lazy ? lazy_greedy(oracle, cfg.n_max, cb) : greedy(oracle, cfg.n_max, cb)).indices;
      break;
    }
    case ConstructorType::coffeehouse: {
      const StepCallback cb = [&](const GreedyStep& s) { record(s, {}, false); };
      indices = coffeehouse_construct(candidates, domain, con.beta, cfg.n_max, cb).indices;
      break;
    }
    case ConstructorType::rd: {
      RdOracle oracle(candidates, evaluation, con.q);
      const StepCallback cb = [&](const GreedyStep& s) {
        record(s, "\"objective\":" + format_double(oracle.objective()), true);
      };
      indices = (cfg.lazy ? lazy_greedy(oracle, cfg.n_max, cb) : greedy(oracle, cfg.n_max, cb)).indices;
      break;
    }
    case ConstructorType::vd: {
      const std::size_t C = candidates.size();
      auto cb = [&](const VdStep& s) {
        GreedyStep g{s.index, s.score, s.objective, C, 1.0, s.repeated};
        record(g, "\"support\":" + std::to_string(s.support) + ",\"weight_sum\":" + format_double(s.weight_sum),
               false);
      };
      indices = vd_construct(candidates, evaluation, con.q, cfg.n_max, cb).indices;
      break;
    }
    case ConstructorType::lds_prefix: {
      PointSetSpec s;
      s.generator = con.generator;
      s.size = cfg.n_max;
      candidates = build_point_set(s, domain, cfg.seed, SetRole::candidates);
      indices.resize(cfg.n_max);
      // No search here; the trace records the spacing of each new point.
      for (std::size_t i = 0; i < cfg.n_max; ++i) {
        indices[i] = i;
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < i; ++j) nearest = std::min(nearest, distance(candidates[i], candidates[j]));
        record({i, nearest, nearest, 0, 0.0, false}, {}, false);
      }
      break;
    }
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  res.design.points = candidates.subset(indices);
  res.design.points.set_provenance(to_string(type));
  res.design.candidate_indices = indices;
  std::vector<double> secs;
  if (cfg.timing) secs = step_seconds;
  res.trajectory = evaluate_trajectory(res.design.points, reference, cfg.alpha, cfg.n_min, cfg.n_max, gamma, secs);
  return res;
}

RunResult write_run(const RunConfig& cfg, std::filesystem::path out_dir) {
  if (out_dir.empty()) out_dir = cfg.output.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.output);
  std::filesystem::create_directories(out_dir);
  auto open = [&](const std::string& suffix) {
    const auto p = out_dir / (cfg.name + suffix);
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error(display(p) + ": cannot open for writing");
    return f;
  };

  const auto wall_start = std::chrono::steady_clock::now();
  std::ofstream trace = open(".trace.jsonl");
  RunResult res = run_experiment(cfg, [&](const TraceRecord& r, std::size_t n) {
    trace << trace_line(r.step, n, r.extra) << '\n';
    trace.flush();
  });
  trace.close();

  {
    auto f = open(".design.csv");
    write_points_csv(f, res.design.points);
  }
  {
    auto f = open(".trajectory.csv");
    write_trajectory_csv(f, res.trajectory, cfg.timing);
  }
  {
    auto f = open(".trajectory.jsonl");
    write_trajectory_jsonl(f, res.trajectory, cfg.timing);
  }
  ojson manifest;
  manifest["manifest"] = 1;
  manifest["version"] = version_string();
  manifest["config"] = to_json(cfg);
  manifest["design_size"] = res.design.points.size();
  manifest["outputs"] = {cfg.name + ".design.csv", cfg.name + ".trajectory.csv", cfg.name + ".trajectory.jsonl",
                         cfg.name + ".trace.jsonl"};
  manifest["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  auto f = open(".manifest.json");
  f << manifest.dump(2) << '\n';
  if (!f) throw std::runtime_error("failed writing the manifest");
  return res;
}

void check_comparable(const std::vector<RunConfig>& configs) {
  if (configs.empty()) throw ConfigError("compare: no configurations given");
  const RunConfig& a = configs.front();
  std::map<std::string, int> names;
  for (const auto& c : configs) {
    if (names[c.name]++) throw ConfigError("compare: run name '" + c.name + "' appears twice");
    auto mismatch = [&](const std::string& what) {
      throw ConfigError("compare: '" + c.name + "' and '" + a.name + "' differ in " + what);
    };
    if (c.domain.d != a.domain.d) mismatch("dimension");
    if (domain_json(c.domain) != domain_json(a.domain)) mismatch("domain");
    if (c.n_min != a.n_min || c.n_max != a.n_max) mismatch("n range");
    if (c.alpha != a.alpha) mismatch("alpha list");
    if (c.reference.same_as_candidates || a.reference.same_as_candidates) {
      if (!(c.reference.same_as_candidates && a.reference.same_as_candidates && same_spec(c.candidates, a.candidates)))
        mismatch("reference set");
    } else {
      if (!same_spec(c.reference, a.reference)) mismatch("reference set");
      if (c.reference.scramble &&
          set_seed(c.reference, c.seed, SetRole::reference) != set_seed(a.reference, a.seed, SetRole::reference))
        mismatch("reference scramble seed");
    }
  }
}

void write_comparison_csv(std::ostream& os, const std::vector<RunConfig>& configs,
                          const std::vector<RunResult>& results) {
  check_comparable(configs);
  if (results.size() != configs.size()) throw std::invalid_argument("compare: one result per configuration needed");
  const bool timing = std::any_of(configs.begin(), configs.end(), [](const RunConfig& c) { return c.timing; });

  // Render every trajectory through the CSV writer and splice rows side by side.
  std::vector<std::vector<std::string>> rows(configs.size());
  std::vector<std::string> header{"n"};
  for (std::size_t r = 0; r < configs.size(); ++r) {
    std::ostringstream s;
    write_trajectory_csv(s, results[r].trajectory, timing);
    std::istringstream in(s.str());
    std::string line;
    std::getline(in, line);
    const auto cols = trajectory_columns(configs[r].alpha, timing);
    for (std::size_t i = 1; i < cols.size(); ++i) header.push_back(configs[r].name + "." + cols[i]);
    while (std::getline(in, line)) rows[r].push_back(line.substr(line.find(',') + 1));
  }
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  const auto& recs = results.front().trajectory.records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    os << recs[i].n;
    for (const auto& r : rows) os << ',' << r.at(i);
    os << '\n';
  }
}

RunConfig order_config(const RunConfig& cfg, const std::filesystem::path& design_file, bool header) {
  if (cfg.constructor.type != ConstructorType::cdf && cfg.constructor.type != ConstructorType::coffeehouse)
    throw ConfigError("order: constructor must be cdf or coffeehouse, not " + to_string(cfg.constructor.type));
  RunConfig out = cfg;
  out.candidates = {};
  out.candidates.generator = "file";
  out.candidates.file = design_file.string();
  out.candidates.header = header;
  PointSet pts;
  try {
    pts = load_design(design_file, header);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("order: ") + e.what());
  }
  if (pts.dim() != cfg.domain.d)
    throw ConfigError("order: file points have dimension " + std::to_string(pts.dim()) + ", domain has " +
                      std::to_string(cfg.domain.d));
  if (cfg.n_max > pts.size())
    throw ConfigError("order: n_max = " + std::to_string(cfg.n_max) + " exceeds the " + std::to_string(pts.size()) +
                      " points of " + design_file.string());
  return out;
}

}  // namespace sfd
