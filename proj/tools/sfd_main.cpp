// sfd: command-line driver for nested space-filling design experiments.
//
//   sfd generate  --generator sobol --n 1024 --d 5 [--scramble-seed S]
//   sfd generate  --config run.json --set reference
//   sfd run       --config run.json [--out DIR] [--seed S] [--lazy|--no-lazy] [--paper-scale] [--timing]
//   sfd compare   --config a.json --config b.json ... [--out DIR] [--name NAME]
//   sfd order     --config run.json --design lhs.csv [--header] [--out DIR]
//   sfd bounds    [--d 2,5,10] [--n 10,100,1000]
//
// Exit status: 0 success, 2 configuration error, 3 runtime error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sfd/bounds.hpp"
#include "sfd/csv.hpp"
#include "sfd/experiment.hpp"
#include "sfd/pointgen.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigFailure = 2;
constexpr int kRuntimeFailure = 3;

struct Common {
  std::vector<std::string> configs;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool lazy = false;
  bool no_lazy = false;
  bool paper_scale = false;
  bool timing = false;

  sfd::ConfigOverrides overrides() const {
    sfd::ConfigOverrides o;
    o.seed = seed;
    if (lazy) o.lazy = true;
    if (no_lazy) o.lazy = false;
    if (!out.empty()) o.output = out;
    o.paper_scale = paper_scale;
    o.timing = timing;
    return o;
  }
};

void add_run_flags(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "Output directory");
  app->add_option("--seed", c.seed, "Run seed (overrides the config)");
  auto* lazy = app->add_flag("--lazy", c.lazy, "Use lazy greedy evaluation");
  app->add_flag("--no-lazy", c.no_lazy, "Use plain greedy evaluation")->excludes(lazy);
  app->add_flag("--paper-scale", c.paper_scale, "Apply the config's paper_scale sizes");
  app->add_flag("--timing", c.timing, "Add per-step wall-clock seconds to trajectories");
}

void print_summary(const sfd::RunConfig& cfg, const sfd::RunResult& res) {
  const auto& last = res.trajectory.records.back();
  std::cerr << cfg.name << ": " << res.design.points.size() << " points, CR(n=" << last.n
            << ") = " << sfd::format_double(last.cr) << '\n';
}

int cmd_generate(const std::string& generator, std::size_t n, std::size_t d, std::size_t m,
                 std::optional<std::uint64_t> scramble, const Common& c, const std::string& set,
                 const std::string& file) {
  sfd::PointSet pts;
  if (!c.configs.empty()) {
    const auto cfg = sfd::load_config(c.configs.front(), c.overrides());
    const auto domain = sfd::make_domain(cfg.domain);
    const sfd::PointSetSpec* spec = nullptr;
    sfd::SetRole role{};
    if (set == "candidates") spec = &cfg.candidates, role = sfd::SetRole::candidates;
    else if (set == "evaluation") spec = &cfg.evaluation, role = sfd::SetRole::evaluation;
    else if (set == "reference") spec = &cfg.reference, role = sfd::SetRole::reference;
    else throw sfd::ConfigError("--set: expected candidates, evaluation or reference");
    if (spec->generator.empty()) throw sfd::ConfigError("--set " + set + ": not defined by this config");
    pts = sfd::build_point_set(*spec, domain, cfg.seed, role);
  } else {
    if (d == 0) throw sfd::ConfigError("--d: dimension required");
    if (generator == "halton") pts = sfd::halton(n, d);
    else if (generator == "sobol") pts = sfd::sobol(n, d, scramble);
    else if (generator == "grid") pts = sfd::grid(m, d);
    else if (generator == "vertices") pts = sfd::vertices(d);
    else throw sfd::ConfigError("--generator: expected halton, sobol, grid or vertices");
  }
  if (file.empty() || file == "-") {
    sfd::write_points_csv(std::cout, pts);
  } else {
    std::ofstream f(file, std::ios::binary);
    if (!f) throw std::runtime_error(file + ": cannot open for writing");
    sfd::write_points_csv(f, pts);
  }
  return kOk;
}

int cmd_run(const Common& c) {
  if (c.configs.size() != 1) throw sfd::ConfigError("run: exactly one --config expected");
  const auto cfg = sfd::load_config(c.configs.front(), c.overrides());
  const auto res = sfd::write_run(cfg);
  print_summary(cfg, res);
  return kOk;
}

int cmd_compare(const Common& c, const std::string& name) {
  if (c.configs.empty()) throw sfd::ConfigError("compare: at least one --config expected");
  std::vector<sfd::RunConfig> cfgs;
  for (const auto& p : c.configs) cfgs.push_back(sfd::load_config(p, c.overrides()));
  sfd::check_comparable(cfgs);
  const std::filesystem::path out = c.out.empty() ? std::filesystem::path(".") : std::filesystem::path(c.out);
  // Runs are independent; they execute one after another so results never
  // depend on scheduling.
  std::vector<sfd::RunResult> results;
  for (const auto& cfg : cfgs) {
    results.push_back(sfd::write_run(cfg, out));
    print_summary(cfg, results.back());
  }
  const auto path = out / (name + ".csv");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(path.string() + ": cannot open for writing");
  sfd::write_comparison_csv(f, cfgs, results);
  return kOk;
}

int cmd_order(const Common& c, const std::string& design, bool header) {
  if (c.configs.size() != 1) throw sfd::ConfigError("order: exactly one --config expected");
  const auto cfg = sfd::order_config(sfd::load_config(c.configs.front(), c.overrides()), design, header);
  const auto res = sfd::write_run(cfg);
  print_summary(cfg, res);
  return kOk;
}

int cmd_bounds(const std::vector<std::size_t>& dims, const std::vector<std::uint64_t>& sizes) {
  std::cout << "d,n,r_lower,r_upper,beta_star,beta_2sqrt2d,sobol_t,sobol_cr_upper,faure_base,faure_cr_upper\n";
  for (auto d : dims) {
    for (auto n : sizes) {
      std::cout << d << ',' << n << ',' << sfd::format_double(sfd::r_lower(n, d)) << ','
                << sfd::format_double(sfd::r_upper(n, d)) << ',';
      try {
        std::cout << sfd::format_double(sfd::beta_star(n, d));
      } catch (const std::domain_error&) {
      }
      std::cout << ',' << sfd::format_double(sfd::beta_two_sqrt_2d(d)) << ',';
      if (d >= 2 && d <= 13) {
        const int t = sfd::sobol_t(d);
        std::cout << t << ',' << sfd::format_double(sfd::lds_cr_upper(n, d, t, 2));
      } else {
        std::cout << ',';
      }
      const unsigned base = sfd::faure_base(d);
      std::cout << ',' << base << ',' << sfd::format_double(sfd::lds_cr_upper(n, d, 0, base)) << '\n';
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nested space-filling designs: greedy constructions and covering metrics"};
  app.require_subcommand(1);
  Common common;

  auto* gen = app.add_subcommand("generate", "Write a point set as CSV");
  std::string generator = "sobol", set = "candidates", gen_file;
  std::size_t gen_n = 0, gen_d = 0, gen_m = 2;
  std::optional<std::uint64_t> scramble;
  gen->add_option("--generator", generator, "halton, sobol, grid or vertices");
  gen->add_option("--n", gen_n, "Number of points (halton, sobol)");
  gen->add_option("--d", gen_d, "Dimension");
  gen->add_option("--m", gen_m, "Points per axis (grid)");
  gen->add_option("--scramble-seed", scramble, "Digital scrambling seed (sobol)");
  gen->add_option("--config", common.configs, "Take the point set from a run config instead");
  gen->add_option("--set", set, "candidates, evaluation or reference (with --config)");
  gen->add_option("--file", gen_file, "Output file (default: standard output)");
  gen->add_option("--seed", common.seed, "Run seed (with --config)");
  gen->add_flag("--paper-scale", common.paper_scale, "Apply the config's paper_scale sizes");

  auto* run = app.add_subcommand("run", "Run one experiment");
  run->add_option("--config", common.configs, "Run configuration (JSON)")->required();
  add_run_flags(run, common);

  auto* cmp = app.add_subcommand("compare", "Run several experiments and merge their trajectories");
  std::string cmp_name = "comparison";
  cmp->add_option("--config", common.configs, "Run configurations (repeatable)")->required();
  cmp->add_option("--name", cmp_name, "Base name of the merged table");
  add_run_flags(cmp, common);

  auto* ord = app.add_subcommand("order", "Order the points of a design file greedily");
  std::string design;
  bool header = false;
  ord->add_option("--config", common.configs, "Run configuration (cdf or coffeehouse)")->required();
  ord->add_option("--design", design, "CSV design file")->required();
  ord->add_flag("--header", header, "Skip one header row of the design file");
  add_run_flags(ord, common);

  auto* bnd = app.add_subcommand("bounds", "Print covering-radius bounds and boundary weights");
  std::vector<std::size_t> dims{2, 5, 10};
  std::vector<std::uint64_t> sizes{10, 100, 1000};
  bnd->add_option("--d", dims, "Dimensions")->delimiter(',');
  bnd->add_option("--n", sizes, "Design sizes")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigFailure;
  }

  try {
    if (*gen) return cmd_generate(generator, gen_n, gen_d, gen_m, scramble, common, set, gen_file);
    if (*run) return cmd_run(common);
    if (*cmp) return cmd_compare(common, cmp_name);
    if (*ord) return cmd_order(common, design, header);
    if (*bnd) return cmd_bounds(dims, sizes);
  } catch (const sfd::ConfigError& e) {
    std::cerr << "sfd: configuration error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const std::exception& e) {
    std::cerr << "sfd: error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kConfigFailure;
}
