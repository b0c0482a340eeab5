#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "sketchlab/core/database.hpp"
#include "sketchlab/sketch/blob.hpp"
#include "sketchlab/sketch/params.hpp"

namespace sketchlab {

/// Verbatim copy of the database, n*d bits.
SketchBlob build_release_db(const Database& db, const SketchParams& params, Semantics semantics);

/// Precomputed answers for every k-itemset in colex order. Indicators store
/// [f >= eps]; estimators store floor(f / q) with q = 2^-ceil(log2(1/eps)),
/// clamped to the top code.
SketchBlob build_release_answers(const Database& db, const SketchParams& params,
                                 Semantics semantics);

/// sample_size(semantics, params) rows drawn uniformly with replacement.
SketchBlob build_subsample(const Database& db, const SketchParams& params, Semantics semantics,
                           std::uint64_t seed);

using SketchBuilder =
    std::function<SketchBlob(const Database&, const SketchParams&, Semantics, std::uint64_t)>;

/// Builder for a plain algorithm (not MedianBoost).
SketchBuilder builder_for(Algo algo);

/// For-all estimator from independent for-each estimator copies; queries
/// return the median. Copy j is built with seed derive_seed(seed, j).
SketchBlob build_median_boost(const Database& db, const SketchParams& params,
                              const SketchBuilder& base, std::uint64_t seed,
                              std::optional<std::uint64_t> copies = std::nullopt,
                              double factor = 10.0);

/// Exact payload size the builder of `algo` produces for these parameters.
std::uint64_t expected_payload_bits(Algo algo, Semantics semantics, const SketchParams& params);

}  // namespace sketchlab
