#pragma once

#include <cstdint>
#include <iterator>
#include <ostream>
#include <string>
#include <vector>

#include "sketchlab/sketch/params.hpp"

namespace sketchlab {

/// Cartesian grid of sketch parameters. Median boosting is benchmarked only
/// for the for-all estimator semantics, over subsample copies.
struct BenchGrid {
  std::vector<std::uint64_t> n;
  std::vector<std::uint32_t> d;
  std::vector<std::uint32_t> k;
  std::vector<double> epsilon;
  std::vector<double> delta;
  std::vector<Semantics> semantics{std::begin(kAllSemantics), std::end(kAllSemantics)};
  std::vector<Algo> algos{Algo::ReleaseDb, Algo::ReleaseAnswers, Algo::Subsample, Algo::MedianBoost};
  std::uint64_t trials = 20;
  std::uint64_t seed = 1;
  double density = 0.5;
  /// wall_time_ms is 0 unless set, keeping reports byte-identical per seed.
  bool timing = false;
};

struct BenchRecord {
  Algo algo = Algo::ReleaseDb;
  Semantics semantics = Semantics::ForAllIndicator;
  SketchParams params;
  std::uint64_t seed = 0;
  std::uint64_t payload_bits = 0;
  std::uint64_t bound_bits = 0;
  /// Algorithm with the smallest closed-form size for these parameters.
  Algo winner = Algo::ReleaseDb;
  double empirical_failure_rate = 0.0;
  std::uint64_t trials = 0;
  double wall_time_ms = 0.0;
  /// "ok", or "error: <reason>" for a cell that could not be built.
  std::string status = "ok";
};

/// One record per (parameters, semantics, algorithm) cell, in grid order.
/// Each parameter point gets its own random database; a failing cell is
/// recorded and the run continues.
std::vector<BenchRecord> run_bench(const BenchGrid& grid);

extern const char* const kBenchCsvHeader;
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
void write_bench_json(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace sketchlab
