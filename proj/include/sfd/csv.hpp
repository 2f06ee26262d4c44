#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sfd/greedy.hpp"
#include "sfd/metrics.hpp"
#include "sfd/point_set.hpp"

namespace sfd {

// Shortest decimal text that parses back to the same double ("inf", "-inf"
// and "nan" for non-finite values).
std::string format_double(double v);

// One point per line, coordinates separated by commas, no header.
void write_points_csv(std::ostream& os, const PointSet& points);

// Column names of the trajectory CSV. The first alpha fills q_alpha and
// n1d_q_alpha; every further alpha a adds q_alpha_<a> and n1d_q_alpha_<a>.
std::vector<std::string> trajectory_columns(const std::vector<double>& alphas, bool timing);

// Undefined optional fields are left empty in CSV and written as null in JSON.
void write_trajectory_csv(std::ostream& os, const Trajectory& t, bool timing);
void write_trajectory_jsonl(std::ostream& os, const Trajectory& t, bool timing);

// One JSON object per line for a greedy-type trace step; extra holds
// already-rendered "key":value members appended to the object.
std::string trace_line(const GreedyStep& step, std::size_t n, const std::string& extra = {});

}  // namespace sfd
