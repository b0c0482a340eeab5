#include "sketchlab/sketch/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "sketchlab/core/error.hpp"
#include "sketchlab/core/parallel.hpp"
#include "sketchlab/core/random.hpp"

namespace sketchlab {

bool answer_is_valid(Semantics semantics, const Answer& answer, const Frequency& truth,
                     double epsilon) {
  if (is_indicator(semantics)) {
    if (truth.above(epsilon)) return answer.bit;
    if (truth.below(epsilon / 2.0)) return !answer.bit;
    return true;
  }
  return std::abs(answer.estimate - truth.value()) <= epsilon * (1.0 + 1e-12);
}

double FailureStats::for_all_rate() const {
  return trials == 0 ? 0.0 : static_cast<double>(any_failures) / static_cast<double>(trials);
}

double FailureStats::for_each_worst_rate() const {
  if (trials == 0 || per_itemset_failures.empty()) return 0.0;
  const auto worst = *std::max_element(per_itemset_failures.begin(), per_itemset_failures.end());
  return static_cast<double>(worst) / static_cast<double>(trials);
}

double FailureStats::rate(Semantics semantics) const {
  return is_for_all(semantics) ? for_all_rate() : for_each_worst_rate();
}

FailureStats measure_failures(const Database& db, const SketchParams& params,
                              Semantics semantics, const SketchBuilder& builder,
                              std::uint64_t trials, std::uint64_t root_seed) {
  params.validate();
  const auto counts = all_k_itemset_counts(db, params.k);
  FailureStats stats;
  stats.trials = trials;
  stats.per_itemset_failures.assign(counts.size(), 0);
  std::mutex merge;
  parallel_blocks(trials, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> local(counts.size(), 0);
    std::uint64_t any = 0;
    for (std::size_t trial = begin; trial < end; ++trial) {
      const SketchBlob blob = builder(db, params, semantics, derive_seed(root_seed, trial));
      const auto answers = answer_all(blob);
      bool failed = false;
      for (std::size_t r = 0; r < counts.size(); ++r) {
        if (!answer_is_valid(semantics, answers[r], Frequency{counts[r], params.n},
                             params.epsilon)) {
          ++local[r];
          failed = true;
        }
      }
      any += failed ? 1 : 0;
    }
    std::lock_guard lock(merge);
    stats.any_failures += any;
    for (std::size_t r = 0; r < local.size(); ++r) stats.per_itemset_failures[r] += local[r];
  });
  return stats;
}

}  // namespace sketchlab
