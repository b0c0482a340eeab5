#include "sketchlab/indicator/oracle.hpp"

#include <memory>

#include "sketchlab/sketch/query.hpp"

namespace sketchlab {

IndicatorOracle exact_oracle(const Database& db, double epsilon) {
  auto shared = std::make_shared<const Database>(db);
  return [shared, epsilon](const Itemset& t) { return frequency(*shared, t).at_least(epsilon); };
}

IndicatorOracle sketch_oracle(SketchBlob blob) {
  auto shared = std::make_shared<const SketchBlob>(std::move(blob));
  return [shared](const Itemset& t) { return query(*shared, t).bit; };
}

}  // namespace sketchlab
