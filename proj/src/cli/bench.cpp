#include <charconv>
#include "sketchlab/cli/bench.hpp"

#include <chrono>
#include <iomanip>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "sketchlab/core/error.hpp"
#include "sketchlab/core/random.hpp"
#include "sketchlab/sketch/blob.hpp"
#include "sketchlab/sketch/builders.hpp"
#include "sketchlab/sketch/montecarlo.hpp"
#include "sketchlab/sketch/sizes.hpp"

namespace sketchlab {

namespace {

SketchBuilder cell_builder(Algo algo) {
  if (algo != Algo::MedianBoost) return builder_for(algo);
  return [](const Database& db, const SketchParams& p, Semantics, std::uint64_t seed) {
    return build_median_boost(db, p, builder_for(Algo::Subsample), seed);
  };
}

bool applicable(Algo algo, Semantics semantics) {
  return algo != Algo::MedianBoost || semantics == Semantics::ForAllEstimator;
}

// Shortest text that reads back to the same double.
std::string format_double(double x) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, result.ptr);
}

void run_cell(const Database& db, BenchRecord& rec, std::uint64_t trial_root) {
  const SketchBuilder builder = cell_builder(rec.algo);
  const SketchBlob first = builder(db, rec.params, rec.semantics, derive_seed(trial_root, 0));
  rec.payload_bits = first.size_bits();
  // The serialized blob must carry exactly the measured payload.
  const SketchBlob reread = deserialize_blob(serialize_blob(first));
  if (reread.size_bits() != rec.payload_bits) throw std::logic_error("serialized payload length mismatch");
  const FailureStats stats =
      measure_failures(db, rec.params, rec.semantics, builder, rec.trials, trial_root);
  rec.empirical_failure_rate = stats.rate(rec.semantics);
}

}  // namespace

const char* const kBenchCsvHeader =
    "algo,semantics,n,d,k,eps,delta,seed,payload_bits,bound_bits,winner,"
    "empirical_failure_rate,trials,wall_time_ms,status";

std::vector<BenchRecord> run_bench(const BenchGrid& grid) {
  if (grid.n.empty() || grid.d.empty() || grid.k.empty() || grid.epsilon.empty() ||
      grid.delta.empty()) {
    throw InvalidArgument("bench grid must be nonempty in n, d, k, epsilon and delta");
  }
  if (grid.trials < 1) throw InvalidArgument("trials >= 1");
  std::vector<BenchRecord> records;
  std::uint64_t point = 0;
  for (std::uint64_t n : grid.n) {
    for (std::uint32_t d : grid.d) {
      for (std::uint32_t k : grid.k) {
        for (double eps : grid.epsilon) {
          for (double delta : grid.delta) {
            const std::uint64_t point_seed = derive_seed(grid.seed, point++);
            SketchParams params{k, eps, delta, n, d};
            std::string point_error;
            std::optional<Database> db;
            try {
              params.validate();
              db = random_database(n, d, grid.density, derive_seed(point_seed, 0));
            } catch (const std::exception& e) {
              point_error = e.what();
            }
            for (Semantics sem : grid.semantics) {
              for (Algo algo : grid.algos) {
                if (!applicable(algo, sem)) continue;
                BenchRecord rec;
                rec.algo = algo;
                rec.semantics = sem;
                rec.params = params;
                rec.seed = grid.seed;
                rec.trials = grid.trials;
                const auto start = std::chrono::steady_clock::now();
                try {
                  if (!point_error.empty()) throw InvalidArgument(point_error);
                  const SizeBound bound = best_size_bound(sem, params);
                  rec.bound_bits = bound.bits.bits;
                  rec.winner = bound.winner;
                  run_cell(*db, rec, derive_seed(point_seed, 1));
                } catch (const std::exception& e) {
                  rec.status = std::string("error: ") + e.what();
                }
                if (grid.timing) {
                  rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                                         std::chrono::steady_clock::now() - start)
                                         .count();
                }
                records.push_back(std::move(rec));
              }
            }
          }
        }
      }
    }
  }
  return records;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kBenchCsvHeader << '\n';
  for (const BenchRecord& r : records) {
    std::string status = r.status;
    for (char& ch : status) {
      if (ch == '"') ch = '\'';
    }
    out << to_string(r.algo) << ',' << to_string(r.semantics) << ',' << r.params.n << ','
        << r.params.d << ',' << r.params.k << ',' << format_double(r.params.epsilon) << ','
        << format_double(r.params.delta) << ',' << r.seed << ',' << r.payload_bits << ','
        << r.bound_bits << ',' << to_string(r.winner) << ','
        << format_double(r.empirical_failure_rate) << ',' << r.trials << ','
        << format_double(r.wall_time_ms) << ",\"" << status << "\"\n";
  }
}

void write_bench_json(std::ostream& out, const std::vector<BenchRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const BenchRecord& r : records) {
    arr.push_back({{"algo", to_string(r.algo)},
                   {"semantics", to_string(r.semantics)},
                   {"n", r.params.n},
                   {"d", r.params.d},
                   {"k", r.params.k},
                   {"eps", r.params.epsilon},
                   {"delta", r.params.delta},
                   {"seed", r.seed},
                   {"payload_bits", r.payload_bits},
                   {"bound_bits", r.bound_bits},
                   {"winner", to_string(r.winner)},
                   {"empirical_failure_rate", r.empirical_failure_rate},
                   {"trials", r.trials},
                   {"wall_time_ms", r.wall_time_ms},
                   {"status", r.status}});
  }
  out << arr.dump(2) << '\n';
}

}  // namespace sketchlab
