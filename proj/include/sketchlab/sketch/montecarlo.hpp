#pragma once

#include <cstdint>
#include <vector>

#include "sketchlab/core/database.hpp"
#include "sketchlab/sketch/builders.hpp"
#include "sketchlab/sketch/query.hpp"

namespace sketchlab {

/// Whether `answer` meets the accuracy requirement for an itemset of true
/// frequency `truth`: indicators must say 1 above eps and 0 below eps/2;
/// estimators must be within eps.
bool answer_is_valid(Semantics semantics, const Answer& answer, const Frequency& truth,
                     double epsilon);

struct FailureStats {
  std::uint64_t trials = 0;
  /// Trials in which at least one k-itemset answer was invalid.
  std::uint64_t any_failures = 0;
  /// Per-itemset invalid-answer counts, indexed by colex rank.
  std::vector<std::uint64_t> per_itemset_failures;

  double for_all_rate() const;
  /// Largest per-itemset failure rate: the for-each failure probability of
  /// the worst query.
  double for_each_worst_rate() const;
  /// The rate the semantics is judged by.
  double rate(Semantics semantics) const;
};

/// Builds `trials` sketches of db with seeds derive_seed(root_seed, i) and
/// checks every k-itemset answer against the exact frequency.
FailureStats measure_failures(const Database& db, const SketchParams& params,
                              Semantics semantics, const SketchBuilder& builder,
                              std::uint64_t trials, std::uint64_t root_seed);

}  // namespace sketchlab
