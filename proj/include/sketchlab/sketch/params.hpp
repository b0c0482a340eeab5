#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sketchlab {

class Database;

enum class Semantics : std::uint8_t {
  ForAllIndicator = 0,
  ForEachIndicator = 1,
  ForAllEstimator = 2,
  ForEachEstimator = 3,
};

enum class Algo : std::uint8_t {
  ReleaseDb = 0,
  ReleaseAnswers = 1,
  Subsample = 2,
  MedianBoost = 3,
};

inline bool is_indicator(Semantics s) {
  return s == Semantics::ForAllIndicator || s == Semantics::ForEachIndicator;
}
inline bool is_for_all(Semantics s) {
  return s == Semantics::ForAllIndicator || s == Semantics::ForAllEstimator;
}

std::string to_string(Semantics s);
std::string to_string(Algo a);
Semantics parse_semantics(std::string_view text);
Algo parse_algo(std::string_view text);

inline constexpr Semantics kAllSemantics[] = {
    Semantics::ForAllIndicator, Semantics::ForEachIndicator, Semantics::ForAllEstimator,
    Semantics::ForEachEstimator};

/// Parameters of one sketch: itemset size, precision, failure probability and
/// the shape of the database it summarizes.
struct SketchParams {
  std::uint32_t k = 1;
  double epsilon = 0.1;
  double delta = 0.1;
  std::uint64_t n = 1;
  std::uint32_t d = 1;

  static SketchParams for_database(const Database& db, std::uint32_t k, double epsilon,
                                   double delta);

  /// Throws InvalidArgument naming the violated constraint.
  void validate() const;

  friend bool operator==(const SketchParams&, const SketchParams&) = default;
};

}  // namespace sketchlab
