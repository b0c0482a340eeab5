#include "sketchlab/sketch/params.hpp"

#include <limits>

#include "sketchlab/core/database.hpp"
#include "sketchlab/core/error.hpp"

namespace sketchlab {

std::string to_string(Semantics s) {
  switch (s) {
    case Semantics::ForAllIndicator: return "for-all-indicator";
    case Semantics::ForEachIndicator: return "for-each-indicator";
    case Semantics::ForAllEstimator: return "for-all-estimator";
    case Semantics::ForEachEstimator: return "for-each-estimator";
  }
  return "unknown";
}

std::string to_string(Algo a) {
  switch (a) {
    case Algo::ReleaseDb: return "release-db";
    case Algo::ReleaseAnswers: return "release-answers";
    case Algo::Subsample: return "subsample";
    case Algo::MedianBoost: return "median-boost";
  }
  return "unknown";
}

Semantics parse_semantics(std::string_view text) {
  for (Semantics s : kAllSemantics) {
    if (text == to_string(s)) return s;
  }
  throw InvalidArgument("unknown semantics '" + std::string(text) +
                        "' (expected for-all-indicator, for-each-indicator, "
                        "for-all-estimator or for-each-estimator)");
}

Algo parse_algo(std::string_view text) {
  for (Algo a : {Algo::ReleaseDb, Algo::ReleaseAnswers, Algo::Subsample, Algo::MedianBoost}) {
    if (text == to_string(a)) return a;
  }
  throw InvalidArgument("unknown algorithm '" + std::string(text) +
                        "' (expected release-db, release-answers, subsample or median-boost)");
}

SketchParams SketchParams::for_database(const Database& db, std::uint32_t k, double epsilon,
                                        double delta) {
  SketchParams p;
  p.k = k;
  p.epsilon = epsilon;
  p.delta = delta;
  p.n = db.n();
  p.d = static_cast<std::uint32_t>(db.d());
  p.validate();
  return p;
}

void SketchParams::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("0 < epsilon < 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("0 < delta < 1");
  if (n < 1 || d < 1) throw InvalidArgument("n >= 1 and d >= 1");
  if (k < 1 || k > d) throw InvalidArgument("1 <= k <= d");
  if (k > std::numeric_limits<std::uint16_t>::max()) throw InvalidArgument("k <= 65535");
}

}  // namespace sketchlab
