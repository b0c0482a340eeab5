#pragma once

#include <functional>

#include "sketchlab/core/database.hpp"
#include "sketchlab/core/itemset.hpp"
#include "sketchlab/sketch/blob.hpp"

namespace sketchlab {

/// Answers k-itemset indicator queries; the attacks treat it as a black box.
/// Must be callable from several threads at once.
using IndicatorOracle = std::function<bool(const Itemset&)>;

/// [f_T(db) ≥ epsilon], evaluated exactly.
IndicatorOracle exact_oracle(const Database& db, double epsilon);

/// Forwards each query to query(blob, t). The blob is captured by value.
IndicatorOracle sketch_oracle(SketchBlob blob);

}  // namespace sketchlab
