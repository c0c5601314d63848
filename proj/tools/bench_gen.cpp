#include "bench_gen.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <queue>
#include <random>
#include <stdexcept>

namespace mapf::bench {

namespace {

GridMap from_blocked(int width, int height, std::vector<uint8_t> b) {
  return GridMap(width, height, std::move(b));
}

// Largest 4-connected passable component, as a membership mask.
std::vector<uint8_t> largest_component(int width, int height,
                                       const std::vector<uint8_t>& blocked) {
  const size_t cells = static_cast<size_t>(width) * height;
  std::vector<int32_t> label(cells, -1);
  int32_t next = 0;
  std::vector<size_t> sizes;
  std::vector<size_t> queue;
  for (size_t s = 0; s < cells; ++s) {
    if (blocked[s] || label[s] >= 0) continue;
    queue.clear();
    queue.push_back(s);
    label[s] = next;
    size_t size = 0;
    while (!queue.empty()) {
      const size_t c = queue.back();
      queue.pop_back();
      ++size;
      const int x = static_cast<int>(c % static_cast<size_t>(width));
      const int y = static_cast<int>(c / static_cast<size_t>(width));
      const int dx[4] = {1, -1, 0, 0};
      const int dy[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int nx = x + dx[k];
        const int ny = y + dy[k];
        if (nx < 0 || ny < 0 || nx >= width || ny >= height) continue;
        const size_t n = static_cast<size_t>(ny) * width + nx;
        if (blocked[n] || label[n] >= 0) continue;
        label[n] = next;
        queue.push_back(n);
      }
    }
    sizes.push_back(size);
    ++next;
  }
  int32_t best = -1;
  size_t best_size = 0;
  for (int32_t l = 0; l < next; ++l)
    if (sizes[static_cast<size_t>(l)] > best_size) {
      best_size = sizes[static_cast<size_t>(l)];
      best = l;
    }
  std::vector<uint8_t> in(cells, 0);
  for (size_t c = 0; c < cells; ++c) in[c] = label[c] == best ? 1 : 0;
  return in;
}

void carve_rect(std::vector<uint8_t>& blocked, int width, int height, int x0,
                int y0, int x1, int y1) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, width);
  y1 = std::min(y1, height);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x)
      blocked[static_cast<size_t>(y) * width + x] = 0;
}

}  // namespace

GridMap make_berlin() {
  const int w = 256;
  const int h = 256;
  std::vector<uint8_t> blocked(static_cast<size_t>(w) * h, 1);
  std::mt19937 rng(0x5eedbe21u);
  const auto next_in = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint32_t>(hi - lo + 1));
  };

  // Full-length streets; every vertical street crosses every horizontal
  // one, so the street grid is connected.
  int x = next_in(4, 10);
  while (x < w) {
    const int sw = next_in(3, 5);
    carve_rect(blocked, w, h, x, 0, x + sw, h);
    x += sw + next_in(8, 14);
  }
  int y = next_in(4, 10);
  while (y < h) {
    const int sw = next_in(3, 5);
    carve_rect(blocked, w, h, 0, y, w, y + sw);
    y += sw + next_in(8, 14);
  }

  // Diagonal boulevard through the center.
  for (int i = 0; i < w; ++i)
    for (int d = -1; d <= 1; ++d) {
      const int yy = i + d;
      if (yy >= 0 && yy < h)
        blocked[static_cast<size_t>(yy) * w + i] = 0;
    }

  // Plazas wider than any building block, so each one touches a street.
  for (int p = 0; p < 16; ++p) {
    const int size = next_in(24, 40);
    const int px = next_in(0, w - size);
    const int py = next_in(0, h - size);
    carve_rect(blocked, w, h, px, py, px + size, py + size);
  }
  return from_blocked(w, h, blocked);
}

GridMap make_warehouse() {
  // Horizontal aisles are two cells tall so opposing agents can pass
  // anywhere along a shelf row. Vertical aisles stay one cell wide; a
  // blocked crossing is at most shelf_h cells from an open passing lane.
  const int cols = 20, rows = 60, shelf_w = 10, shelf_h = 2;
  const int aisle_x = 1, aisle_y = 2;
  const int w = aisle_x + cols * (shelf_w + aisle_x);
  const int h = aisle_y + rows * (shelf_h + aisle_y);
  std::vector<uint8_t> blocked(static_cast<size_t>(w) * h, 0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const int x0 = aisle_x + c * (shelf_w + aisle_x);
      const int y0 = aisle_y + r * (shelf_h + aisle_y);
      for (int y = y0; y < y0 + shelf_h; ++y)
        for (int x = x0; x < x0 + shelf_w; ++x)
          blocked[static_cast<size_t>(y) * w + x] = 1;
    }
  return from_blocked(w, h, blocked);
}

GridMap make_empty(int width, int height) {
  return GridMap(
      width, height,
      std::vector<uint8_t>(static_cast<size_t>(width) * height, 0));
}

GridMap make_random(int width, int height, double blocked_fraction,
                    uint32_t seed) {
  const size_t cells = static_cast<size_t>(width) * height;
  std::vector<uint8_t> blocked(cells, 0);
  std::mt19937 rng(seed);
  const uint32_t bar =
      static_cast<uint32_t>(blocked_fraction * 4294967296.0);
  for (size_t c = 0; c < cells; ++c) blocked[c] = rng() < bar ? 1 : 0;

  const auto keep = largest_component(width, height, blocked);
  for (size_t c = 0; c < cells; ++c)
    if (!keep[c]) blocked[c] = 1;
  return from_blocked(width, height, blocked);
}

std::vector<ScenarioRow> sample_scenario(const GridMap& map, size_t count,
                                         uint32_t seed) {
  std::vector<uint8_t> blocked(static_cast<size_t>(map.width()) * map.height());
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      blocked[static_cast<size_t>(y) * map.width() + x] =
          map.passable({x, y}) ? 0 : 1;
  const auto in = largest_component(map.width(), map.height(), blocked);

  std::vector<CellCoord> pool;
  for (int y = 0; y < map.height(); ++y)
    for (int x = 0; x < map.width(); ++x)
      if (in[static_cast<size_t>(y) * map.width() + x]) pool.push_back({x, y});

  if (pool.size() < 2 * count)
    throw std::invalid_argument("map cannot supply that many agents");

  std::mt19937 rng(seed ^ 0xa5a5a5a5u);
  for (size_t i = pool.size(); i > 1; --i)
    std::swap(pool[i - 1], pool[rng() % static_cast<uint32_t>(i)]);

  std::vector<ScenarioRow> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    ScenarioRow row;
    row.start = pool[i];
    row.goal = pool[count + i];
    row.optimal = octile_distance(row.start, row.goal);
    out.push_back(row);
  }
  return out;
}

Scenario to_scenario(const std::vector<ScenarioRow>& rows,
                     const std::string& map_name) {
  Scenario s;
  s.map_name = map_name;
  s.starts.reserve(rows.size());
  s.goals.reserve(rows.size());
  s.optimal_lengths.reserve(rows.size());
  for (const ScenarioRow& r : rows) {
    s.starts.push_back(r.start);
    s.goals.push_back(r.goal);
    s.optimal_lengths.push_back(r.optimal);
  }
  return s;
}

void write_scenario_file(const std::string& path, const std::string& map_name,
                         const GridMap& map,
                         const std::vector<ScenarioRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "version 1\n";
  char buf[256];
  for (const ScenarioRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "0\t%s\t%d\t%d\t%d\t%d\t%d\t%d\t%.8f\n",
                  map_name.c_str(), map.width(), map.height(), r.start.x,
                  r.start.y, r.goal.x, r.goal.y, r.optimal);
    out << buf;
  }
}

std::vector<GeneratedBenchmark> write_benchmark_suite(const std::string& dir,
                                                      size_t max_rows) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  struct Item {
    std::string name;
    GridMap map;
    uint32_t seed;
  };
  std::vector<Item> items;
  items.push_back({"Berlin_1_256", make_berlin(), 11u});
  items.push_back({"warehouse-20-40-10-2-1", make_warehouse(), 12u});
  items.push_back({"empty-48-48", make_empty(48, 48), 13u});
  items.push_back({"random-64-64-20", make_random(64, 64, 0.20, 0xc0ffee11u),
                   14u});

  std::vector<GeneratedBenchmark> out;
  for (const Item& item : items) {
    GeneratedBenchmark g;
    g.name = item.name;
    g.map_path = (fs::path(dir) / (item.name + ".map")).string();
    g.scen_path = (fs::path(dir) / (item.name + "-random-1.scen")).string();
    write_map_file(g.map_path, item.map);

    size_t pool = 0;
    for (int y = 0; y < item.map.height(); ++y)
      for (int x = 0; x < item.map.width(); ++x)
        if (item.map.passable({x, y})) ++pool;
    const size_t rows = std::min(max_rows, pool / 2);
    write_scenario_file(g.scen_path, item.name, item.map,
                        sample_scenario(item.map, rows, item.seed));
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace mapf::bench
