// Writes the synthetic benchmark maps and scenario files.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "bench_gen.hpp"

int main(int argc, char** argv) {
  CLI::App app{"synthetic MovingAI-format benchmark generator"};
  std::string out_dir = "benchmarks";
  size_t rows = 1000;
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--rows", rows, "scenario rows per map (capped by map size)")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto written = mapf::bench::write_benchmark_suite(out_dir, rows);
    for (const auto& g : written)
      std::printf("%s\n%s\n", g.map_path.c_str(), g.scen_path.c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
