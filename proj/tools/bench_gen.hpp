/*
 * bench_gen.hpp
 *
 * Deterministic synthetic stand-ins for the benchmark maps used by the
 * tests and the generator tool, plus scenario sampling. Everything here is
 * reproducible offline; layouts mimic the named benchmark families rather
 * than copying their exact obstacle sets.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mapf/benchmark_io.hpp"

namespace mapf::bench {

// 256 x 256 city layout: building blocks cut by a connected street grid,
// a diagonal boulevard, and open plazas.
GridMap make_berlin();

// Shelving grid: 20 columns x 40 rows of 10x2 shelves separated by unit
// aisles inside a unit border.
GridMap make_warehouse();

GridMap make_empty(int width, int height);

// Uniform random obstacles at `blocked_fraction`; passable cells outside
// the largest 4-connected component are filled in afterward, so the result
// is fully connected.
GridMap make_random(int width, int height, double blocked_fraction,
                    uint32_t seed);

struct ScenarioRow {
  CellCoord start;
  CellCoord goal;
  double optimal = 0.0;  // octile distance, kept as row metadata
};

// `count` rows with pairwise distinct starts, pairwise distinct goals, and
// every start/goal pair inside the largest 4-connected component. Throws
// std::invalid_argument when the map cannot supply that many.
std::vector<ScenarioRow> sample_scenario(const GridMap& map, size_t count,
                                         uint32_t seed);

Scenario to_scenario(const std::vector<ScenarioRow>& rows,
                     const std::string& map_name);

void write_scenario_file(const std::string& path, const std::string& map_name,
                         const GridMap& map,
                         const std::vector<ScenarioRow>& rows);

struct GeneratedBenchmark {
  std::string name;
  std::string map_path;
  std::string scen_path;
};

// Writes the four synthetic maps and one scenario file per map into `dir`
// (created if missing). Row counts are capped by `max_rows` and by half the
// map's sampling pool.
std::vector<GeneratedBenchmark> write_benchmark_suite(const std::string& dir,
                                                      size_t max_rows = 1000);

}  // namespace mapf::bench
