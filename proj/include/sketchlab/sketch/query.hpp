#pragma once

#include <vector>

#include "sketchlab/core/database.hpp"
#include "sketchlab/core/itemset.hpp"
#include "sketchlab/sketch/blob.hpp"

namespace sketchlab {

struct Answer {
  bool is_indicator = false;
  bool bit = false;
  double estimate = 0.0;

  static Answer indicator(bool b) { return Answer{true, b, b ? 1.0 : 0.0}; }
  static Answer estimator(double f) { return Answer{false, f >= 0.5, f}; }
};

/// Answers a k-itemset query from the sketch alone. |t| must equal the
/// blob's k and t.dim() its d.
Answer query(const SketchBlob& blob, const Itemset& t);
/// As above, rejecting the query when the blob was built for other semantics.
Answer query(const SketchBlob& blob, const Itemset& t, Semantics expected);

/// Answers for every k-itemset, indexed by colex rank. Agrees with query()
/// on every itemset; used where all C(d, k) answers are needed at once.
std::vector<Answer> answer_all(const SketchBlob& blob);

/// Support counts of every k-itemset of db, indexed by colex rank.
std::vector<std::uint64_t> all_k_itemset_counts(const Database& db, std::size_t k);

}  // namespace sketchlab
