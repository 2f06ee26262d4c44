#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfd/domain.hpp"
#include "sfd/greedy.hpp"
#include "sfd/metrics.hpp"
#include "sfd/point_set.hpp"

namespace sfd {

// Invalid or inconsistent run configuration. The message names the offending
// field by its JSON path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kConfigSchema = 1;
std::string version_string();

struct DomainSpec {
  DomainKind kind = DomainKind::hypercube;
  std::size_t d = 0;
  std::vector<double> lower, upper;  // box
  std::vector<double> center;        // ball, annulus
  double radius = 0.0;               // ball radius, annulus outer radius
  double inner_radius = 0.0;         // annulus
};

struct PointSetSpec {
  std::string generator;  // halton | sobol | grid | vertices | file
  std::size_t size = 0;   // points kept after clipping (halton, sobol)
  std::size_t m = 0;      // points per axis (grid)
  bool scramble = false;
  std::optional<std::uint64_t> scramble_seed;  // defaults to one derived from the run seed
  bool augment_vertices = false;               // union with the vertices of the bounding box
  std::string file;
  bool header = false;
  std::optional<double> erode;  // keep points at least this far from the boundary
  std::string erode_rule;       // "half-r-lower" when given symbolically
  bool same_as_candidates = false;
};

enum class ConstructorType { cdf, coffeehouse, vd, rd, lds_prefix };
std::string to_string(ConstructorType t);

struct ConstructorSpec {
  ConstructorType type = ConstructorType::cdf;
  double q = 10.0;
  double B = 0.0;
  double b = 0.0;
  bool truncate = true;
  double beta = 0.0;  // +inf for "infinity"
  std::string B_rule, b_rule, beta_rule;  // symbolic forms, echoed next to the numbers
  std::optional<std::size_t> beta_n;      // n used by "beta-star" (default n_max)
  std::string generator;                  // lds-prefix: halton | sobol
};

struct RunConfig {
  std::string name;
  DomainSpec domain;
  ConstructorSpec constructor;
  PointSetSpec candidates;
  PointSetSpec evaluation;
  PointSetSpec reference;
  std::size_t n_min = 1;
  std::size_t n_max = 1;
  std::vector<double> alpha{0.99};
  std::uint64_t seed = 0;
  bool lazy = true;
  bool timing = false;
  std::string output;  // output directory
};

// Command-line overrides applied on top of the document.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<bool> lazy;
  std::optional<std::string> output;
  bool paper_scale = false;
  bool timing = false;
};

// Parses and validates a configuration document. A manifest written by
// write_run is also accepted; its echoed config is used. Symbolic parameters
// ("diameter", "beta-star", ...) are resolved to numbers here.
RunConfig parse_config(const nlohmann::json& doc, const ConfigOverrides& overrides = {});
RunConfig load_config(const std::filesystem::path& path, const ConfigOverrides& overrides = {});

// The resolved configuration as a document that parse_config maps back to
// the same RunConfig.
nlohmann::ordered_json to_json(const RunConfig& cfg);

Domain make_domain(const DomainSpec& spec);

enum class SetRole : std::uint64_t { candidates = 1, evaluation = 2, reference = 3 };

// Builds one of the three point sets of a run. Sequence generators are
// rescaled to the domain's bounding box and clipped, drawing raw points
// until `size` of them fall inside.
PointSet build_point_set(const PointSetSpec& spec, const Domain& domain, std::uint64_t run_seed, SetRole role);

struct TraceRecord {
  GreedyStep step;
  std::string extra;  // constructor-specific JSON members
};

struct RunResult {
  Design design;
  Trajectory trajectory;
  std::vector<TraceRecord> trace;
  double seconds = 0.0;  // construction wall time
};

using TraceSink = std::function<void(const TraceRecord&, std::size_t n)>;

// Builds the point sets, runs the constructor and evaluates the trajectory
// against the reference set. Nothing is written to disk.
RunResult run_experiment(const RunConfig& cfg, const TraceSink& sink = {});

// Runs cfg and writes <name>.design.csv, .trajectory.csv, .trajectory.jsonl,
// .trace.jsonl and .manifest.json into out_dir (cfg.output when empty). The
// trace file is flushed step by step, so it survives a failing run.
RunResult write_run(const RunConfig& cfg, std::filesystem::path out_dir = {});

// Wide table keyed by n with one column group per run. All runs must share
// the domain, n range, reference set and alpha list.
void check_comparable(const std::vector<RunConfig>& configs);
void write_comparison_csv(std::ostream& os, const std::vector<RunConfig>& configs,
                          const std::vector<RunResult>& results);

// Orders the points of a design file by the configured greedy rule (cdf or
// coffeehouse), using the file as candidate set.
RunConfig order_config(const RunConfig& cfg, const std::filesystem::path& design_file, bool header);

}  // namespace sfd
