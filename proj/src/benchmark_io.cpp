#include "mapf/benchmark_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mapf {

namespace {

[[noreturn]] void fail(const std::string& name, size_t line,
                       const std::string& what) {
  throw ParseError(name + ":" + std::to_string(line) + ": " + what);
}

std::string next_line(std::istream& in, size_t& lineno, bool& ok) {
  std::string line;
  ok = static_cast<bool>(std::getline(in, line));
  if (ok) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  }
  return line;
}

}  // namespace

GridMap parse_map(std::istream& in, const std::string& name) {
  size_t lineno = 0;
  bool ok = false;

  std::string line = next_line(in, lineno, ok);
  if (!ok) fail(name, lineno, "empty map file");
  {
    std::istringstream ss(line);
    std::string key, value;
    ss >> key >> value;
    if (key != "type" || value != "octile")
      fail(name, lineno, "expected 'type octile', got '" + line + "'");
  }

  int width = -1, height = -1;
  for (int i = 0; i < 2; ++i) {
    line = next_line(in, lineno, ok);
    if (!ok) fail(name, lineno, "unexpected end of header");
    std::istringstream ss(line);
    std::string key;
    long value = -1;
    ss >> key >> value;
    if (key == "height")
      height = static_cast<int>(value);
    else if (key == "width")
      width = static_cast<int>(value);
    else
      fail(name, lineno, "expected height or width, got '" + line + "'");
    if (value <= 0) fail(name, lineno, key + " must be positive");
  }
  if (width < 0 || height < 0)
    fail(name, lineno, "header must define both height and width");

  line = next_line(in, lineno, ok);
  if (!ok || line != "map")
    fail(name, lineno, "expected 'map' line, got '" + line + "'");

  std::vector<uint8_t> blocked(static_cast<size_t>(width) * height, 0);
  for (int y = 0; y < height; ++y) {
    line = next_line(in, lineno, ok);
    if (!ok) fail(name, lineno, "missing map row " + std::to_string(y));
    if (line.size() != static_cast<size_t>(width))
      fail(name, lineno,
           "row " + std::to_string(y) + " has " +
               std::to_string(line.size()) + " glyphs, expected " +
               std::to_string(width));
    for (int x = 0; x < width; ++x) {
      const char g = line[static_cast<size_t>(x)];
      switch (g) {
        case '.':
        case 'G':
          break;
        case '@':
        case 'O':
        case 'T':
        case 'W':
          blocked[static_cast<size_t>(y) * width + x] = 1;
          break;
        default:
          fail(name, lineno,
               std::string("unknown terrain glyph '") + g + "'");
      }
    }
  }
  return GridMap(width, height, std::move(blocked));
}

GridMap parse_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open map file");
  return parse_map(in, path);
}

void write_map(std::ostream& out, const GridMap& map) {
  out << "type octile\n";
  out << "height " << map.height() << "\n";
  out << "width " << map.width() << "\n";
  out << "map\n";
  std::string row(static_cast<size_t>(map.width()), '.');
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x)
      row[static_cast<size_t>(x)] = map.passable({x, y}) ? '.' : '@';
    out << row << "\n";
  }
}

void write_map_file(const std::string& path, const GridMap& map) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  write_map(out, map);
}

Scenario parse_scenario(std::istream& in, const GridMap& map,
                        size_t agent_count, const std::string& name) {
  size_t lineno = 0;
  bool ok = false;
  std::string line = next_line(in, lineno, ok);
  if (!ok) fail(name, lineno, "empty scenario file");
  {
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key != "version")
      fail(name, lineno, "expected version line, got '" + line + "'");
  }

  Scenario scen;
  while (scen.starts.size() < agent_count) {
    line = next_line(in, lineno, ok);
    if (!ok)
      throw ValidationError(name + ": scenario has only " +
                            std::to_string(scen.starts.size()) +
                            " rows, need " + std::to_string(agent_count));
    if (line.empty()) continue;
    std::istringstream ss(line);
    int bucket = 0, w = 0, h = 0;
    std::string map_name;
    CellCoord s{}, g{};
    double optimal = 0.0;
    if (!(ss >> bucket >> map_name >> w >> h >> s.x >> s.y >> g.x >> g.y >>
          optimal))
      fail(name, lineno, "malformed scenario row '" + line + "'");

    const std::string row = "row " + std::to_string(scen.starts.size());
    if (w != map.width() || h != map.height())
      throw ValidationError(name + ": " + row +
                            " declares map dimensions " + std::to_string(w) +
                            "x" + std::to_string(h) + ", map is " +
                            std::to_string(map.width()) + "x" +
                            std::to_string(map.height()));
    if (!map.passable(s))
      throw ValidationError(name + ": " + row + " start (" +
                            std::to_string(s.x) + "," + std::to_string(s.y) +
                            ") is not a passable cell");
    if (!map.passable(g))
      throw ValidationError(name + ": " + row + " goal (" +
                            std::to_string(g.x) + "," + std::to_string(g.y) +
                            ") is not a passable cell");
    for (size_t i = 0; i < scen.starts.size(); ++i) {
      if (scen.starts[i] == s)
        throw ValidationError(name + ": " + row + " duplicates start of row " +
                              std::to_string(i));
      if (scen.goals[i] == g)
        throw ValidationError(name + ": " + row + " duplicates goal of row " +
                              std::to_string(i));
    }
    if (scen.map_name.empty()) scen.map_name = map_name;
    scen.starts.push_back(s);
    scen.goals.push_back(g);
    scen.optimal_lengths.push_back(optimal);
  }
  return scen;
}

Scenario parse_scenario_file(const std::string& path, const GridMap& map,
                             size_t agent_count) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open scenario file");
  return parse_scenario(in, map, agent_count, path);
}

const char* run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Ok:
      return "ok";
    case RunStatus::ParseError:
      return "parse_error";
    case RunStatus::Unsolved:
      return "unsolved";
    case RunStatus::Collision:
      return "collision";
  }
  return "unknown";
}

std::string results_csv_header() {
  return "scenario,agents,connectivity,seed,pibt_time_s,total_time_s,"
         "arclength_raw,arclength_smoothed,reduction_pct,makespan,"
         "intersections_introduced,intersections_resolved,status";
}

std::string results_csv_row(const RunRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%s,%d,%d,%u,%.6f,%.6f,%.6f,%.6f,%.6f,%d,%d,%d,%s",
                r.scenario.c_str(), r.agents, static_cast<int>(r.connectivity),
                r.seed, r.pibt_time_s, r.total_time_s, r.arclength_raw,
                r.arclength_smoothed, r.reduction_pct, r.makespan,
                r.intersections_introduced, r.intersections_resolved,
                run_status_name(r.status));
  return std::string(buf);
}

void write_results(std::ostream& out, const std::vector<RunRecord>& records) {
  out << results_csv_header() << "\n";
  for (const RunRecord& r : records) out << results_csv_row(r) << "\n";
}

void write_results_file(const std::string& path,
                        const std::vector<RunRecord>& records) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  write_results(out, records);
}

}  // namespace mapf
