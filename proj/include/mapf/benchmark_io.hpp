/*
 * benchmark_io.hpp
 *
 * MovingAI benchmark formats and the results CSV.
 *
 * .map files: `type octile`, `height H`, `width W`, `map`, then H rows of W
 * glyphs. `.` and `G` are passable; `@`, `O`, `T` and `W` are blocked; any
 * other glyph is a parse error. Cell (x, y) is column x of row y, row 0 on
 * top.
 *
 * .scen files: a `version` line, then one row per instance:
 * bucket, map name, map width, map height, start x, start y, goal x, goal y,
 * optimal length. The first K rows become agents 0..K-1.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapf/grid.hpp"

namespace mapf {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::string map_name;
  std::vector<CellCoord> starts;
  std::vector<CellCoord> goals;
  // Optimal-length column of each row, kept as benchmark metadata.
  std::vector<double> optimal_lengths;
  size_t agent_count() const { return starts.size(); }
};

GridMap parse_map(std::istream& in, const std::string& name = "map");
GridMap parse_map_file(const std::string& path);
void write_map(std::ostream& out, const GridMap& map);
void write_map_file(const std::string& path, const GridMap& map);

// Parses the first `agent_count` rows and validates them against `map`:
// coordinates in bounds and passable, starts pairwise distinct, goals
// pairwise distinct. Errors name the offending row.
Scenario parse_scenario(std::istream& in, const GridMap& map,
                        size_t agent_count, const std::string& name = "scen");
Scenario parse_scenario_file(const std::string& path, const GridMap& map,
                             size_t agent_count);

enum class RunStatus { Ok, ParseError, Unsolved, Collision };
const char* run_status_name(RunStatus s);

struct RunRecord {
  std::string scenario;
  int agents = 0;
  Connectivity connectivity = Connectivity::Eight;
  uint32_t seed = 0;
  double pibt_time_s = 0.0;
  double total_time_s = 0.0;
  double arclength_raw = 0.0;
  double arclength_smoothed = 0.0;
  double reduction_pct = 0.0;
  int makespan = 0;
  int intersections_introduced = 0;
  int intersections_resolved = 0;
  RunStatus status = RunStatus::Ok;
};

std::string results_csv_header();
std::string results_csv_row(const RunRecord& r);
void write_results(std::ostream& out, const std::vector<RunRecord>& records);
void write_results_file(const std::string& path,
                        const std::vector<RunRecord>& records);

}  // namespace mapf
