#include "sfd/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace sfd {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return {buf, end};
}

void write_points_csv(std::ostream& os, const PointSet& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points[i];
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) os << ',';
      os << format_double(p[k]);
    }
    os << '\n';
  }
}

namespace {

std::string alpha_suffix(const std::vector<double>& alphas, std::size_t i) {
  return i == 0 ? std::string() : "_" + format_double(alphas[i]);
}

std::string opt(const std::optional<double>& v, const char* missing) {
  return v ? format_double(*v) : missing;
}

}  // namespace

std::vector<std::string> trajectory_columns(const std::vector<double>& alphas, bool timing) {
  std::vector<std::string> cols{"n", "cr"};
  if (!alphas.empty()) cols.push_back("q_alpha");
  cols.insert(cols.end(), {"pr", "rho", "cr_over_rlower", "n1d_cr"});
  if (!alphas.empty()) cols.push_back("n1d_q_alpha");
  cols.push_back("gamma");
  if (timing) cols.push_back("seconds");
  for (std::size_t i = 1; i < alphas.size(); ++i) {
    cols.push_back("q_alpha" + alpha_suffix(alphas, i));
    cols.push_back("n1d_q_alpha" + alpha_suffix(alphas, i));
  }
  return cols;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t, bool timing) {
  const auto cols = trajectory_columns(t.alphas, timing);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : t.records) {
    os << r.n << ',' << format_double(r.cr);
    if (!t.alphas.empty()) os << ',' << format_double(r.q_alpha[0]);
    os << ',' << opt(r.pr, "") << ',' << opt(r.rho, "") << ',' << format_double(r.cr_over_rlower) << ','
       << format_double(r.n1d_cr);
    if (!t.alphas.empty()) os << ',' << format_double(r.n1d_q_alpha[0]);
    os << ',' << opt(r.gamma, "");
    if (timing) os << ',' << opt(r.seconds, "");
    for (std::size_t i = 1; i < t.alphas.size(); ++i)
      os << ',' << format_double(r.q_alpha[i]) << ',' << format_double(r.n1d_q_alpha[i]);
    os << '\n';
  }
}

void write_trajectory_jsonl(std::ostream& os, const Trajectory& t, bool timing) {
  auto by_alpha = [&](const std::vector<double>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < t.alphas.size(); ++i)
      s += (i ? ",\"" : "\"") + format_double(t.alphas[i]) + "\":" + format_double(v[i]);
    return s + "}";
  };
  for (const auto& r : t.records) {
    os << "{\"n\":" << r.n << ",\"cr\":" << format_double(r.cr) << ",\"q_alpha\":" << by_alpha(r.q_alpha)
       << ",\"pr\":" << opt(r.pr, "null") << ",\"rho\":" << opt(r.rho, "null")
       << ",\"cr_over_rlower\":" << format_double(r.cr_over_rlower) << ",\"n1d_cr\":" << format_double(r.n1d_cr)
       << ",\"n1d_q_alpha\":" << by_alpha(r.n1d_q_alpha) << ",\"gamma\":" << opt(r.gamma, "null");
    if (timing) os << ",\"seconds\":" << opt(r.seconds, "null");
    os << "}\n";
  }
}

std::string trace_line(const GreedyStep& step, std::size_t n, const std::string& extra) {
  // Infinite spacings (first coffee-house point with beta = inf) have no JSON number.
  auto num = [](double v) { return std::isfinite(v) ? format_double(v) : std::string("null"); };
  std::string s = "{\"n\":" + std::to_string(n) + ",\"index\":" + std::to_string(step.index) +
                  ",\"delta\":" + num(step.delta) + ",\"value\":" + num(step.value) +
                  ",\"evaluations\":" + std::to_string(step.evaluations) + ",\"gamma\":" + num(step.gamma) +
                  ",\"repeated\":" + (step.repeated ? "true" : "false");
  if (!extra.empty()) s += "," + extra;
  return s + "}";
}

}  // namespace sfd
