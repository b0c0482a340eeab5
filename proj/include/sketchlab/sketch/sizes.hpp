#pragma once

#include <cstdint>

#include "sketchlab/sketch/params.hpp"

namespace sketchlab {

struct BitBudget {
  std::uint64_t bits = 0;
  friend bool operator==(const BitBudget&, const BitBudget&) = default;
};

/// Number of sampled rows subsample uses:
///   for-each indicator  ceil(16 ln(2/delta) / eps)
///   for-each estimator  ceil(ln(2/delta) / (2 eps^2))
/// and the for-all variants with delta replaced by delta / C(d, k).
std::uint64_t sample_size(Semantics semantics, const SketchParams& params);

/// Bits per stored answer in release-answers: 1 for indicators, else
/// ceil(log2(1/eps)).
std::uint32_t answer_bits(Semantics semantics, double epsilon);

/// Largest C(d, k) release-answers will enumerate.
inline constexpr std::uint64_t kMaxAnswerItemsets = std::uint64_t{1} << 26;

BitBudget release_db_bits(const SketchParams& params);
BitBudget release_answers_bits(Semantics semantics, const SketchParams& params);
BitBudget subsample_bits(Semantics semantics, const SketchParams& params);

/// Copies used by median boosting: ceil(factor * log2(C(d, k) / delta)).
std::uint64_t median_copies(const SketchParams& params, double factor = 10.0);

struct SizeBound {
  BitBudget bits;
  Algo winner;
};

/// Minimum over the three concrete sizes this library produces (n*d, the
/// release-answers payload, the subsample payload), with the algorithm that
/// attains it. Ties go to the earlier algorithm in that list.
SizeBound best_size_bound(Semantics semantics, const SketchParams& params);

}  // namespace sketchlab
