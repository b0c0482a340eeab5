#include "sketchlab/sketch/builders.hpp"

#include <cmath>
#include <string>

#include "sketchlab/core/error.hpp"
#include "sketchlab/core/random.hpp"
#include "sketchlab/sketch/query.hpp"
#include "sketchlab/sketch/sizes.hpp"

namespace sketchlab {

namespace {

void check_shape(const Database& db, const SketchParams& params) {
  params.validate();
  if (db.n() != params.n || db.d() != params.d) {
    throw InvalidArgument("database is " + std::to_string(db.n()) + "x" + std::to_string(db.d()) +
                          " but parameters say " + std::to_string(params.n) + "x" +
                          std::to_string(params.d));
  }
}

SketchBlob blank(Algo algo, Semantics semantics, const SketchParams& params, std::uint64_t seed) {
  SketchBlob blob;
  blob.algo = algo;
  blob.semantics = semantics;
  blob.params = params;
  blob.seed = seed;
  return blob;
}

void copy_row(const Database& db, std::size_t row, BitVector& out, std::size_t offset) {
  const auto words = db.row(row);
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::size_t len = std::min<std::size_t>(64, db.d() - 64 * w);
    out.deposit(offset + 64 * w, len, words[w]);
  }
}

}  // namespace

SketchBlob build_release_db(const Database& db, const SketchParams& params, Semantics semantics) {
  check_shape(db, params);
  SketchBlob blob = blank(Algo::ReleaseDb, semantics, params, 0);
  blob.payload = BitVector(release_db_bits(params).bits);
  for (std::size_t i = 0; i < db.n(); ++i) copy_row(db, i, blob.payload, i * db.d());
  return blob;
}

SketchBlob build_release_answers(const Database& db, const SketchParams& params,
                                 Semantics semantics) {
  check_shape(db, params);
  SketchBlob blob = blank(Algo::ReleaseAnswers, semantics, params, 0);
  const std::uint32_t b = answer_bits(semantics, params.epsilon);
  blob.payload = BitVector(release_answers_bits(semantics, params).bits);
  const auto counts = all_k_itemset_counts(db, params.k);
  const std::uint64_t top = (std::uint64_t{1} << b) - 1;
  for (std::size_t r = 0; r < counts.size(); ++r) {
    if (is_indicator(semantics)) {
      blob.payload.set(r, Frequency{counts[r], params.n}.at_least(params.epsilon));
    } else {
      // floor(f * 2^b), computed exactly.
      const auto scaled = (static_cast<unsigned __int128>(counts[r]) << b) / params.n;
      const std::uint64_t code = scaled > top ? top : static_cast<std::uint64_t>(scaled);
      blob.payload.deposit(r * b, b, code);
    }
  }
  return blob;
}

SketchBlob build_subsample(const Database& db, const SketchParams& params, Semantics semantics,
                           std::uint64_t seed) {
  check_shape(db, params);
  SketchBlob blob = blank(Algo::Subsample, semantics, params, seed);
  const std::uint64_t s = sample_size(semantics, params);
  blob.payload = BitVector(subsample_bits(semantics, params).bits);
  CounterRng rng(seed);
  for (std::uint64_t i = 0; i < s; ++i) copy_row(db, rng.below(db.n()), blob.payload, i * db.d());
  return blob;
}

SketchBuilder builder_for(Algo algo) {
  switch (algo) {
    case Algo::ReleaseDb:
      return [](const Database& db, const SketchParams& p, Semantics s, std::uint64_t) {
        return build_release_db(db, p, s);
      };
    case Algo::ReleaseAnswers:
      return [](const Database& db, const SketchParams& p, Semantics s, std::uint64_t) {
        return build_release_answers(db, p, s);
      };
    case Algo::Subsample:
      return build_subsample;
    case Algo::MedianBoost:
      break;
  }
  throw InvalidArgument("median-boost has no plain builder; use build_median_boost");
}

SketchBlob build_median_boost(const Database& db, const SketchParams& params,
                              const SketchBuilder& base, std::uint64_t seed,
                              std::optional<std::uint64_t> copies, double factor) {
  check_shape(db, params);
  const std::uint64_t c = copies ? *copies : median_copies(params, factor);
  if (c == 0) throw InvalidArgument("median-boost needs at least one copy");
  SketchBlob blob = blank(Algo::MedianBoost, Semantics::ForAllEstimator, params, seed);
  for (std::uint64_t j = 0; j < c; ++j) {
    SketchBlob sub = base(db, params, Semantics::ForEachEstimator, derive_seed(seed, j));
    if (sub.algo == Algo::MedianBoost) throw InvalidArgument("median-boost cannot nest");
    blob.base_algo = sub.algo;
    blob.payload.append(sub.payload);
  }
  return blob;
}

std::uint64_t expected_payload_bits(Algo algo, Semantics semantics, const SketchParams& params) {
  switch (algo) {
    case Algo::ReleaseDb: return release_db_bits(params).bits;
    case Algo::ReleaseAnswers: return release_answers_bits(semantics, params).bits;
    case Algo::Subsample: return subsample_bits(semantics, params).bits;
    case Algo::MedianBoost: break;
  }
  throw InvalidArgument("median-boost size depends on the copy count");
}

}  // namespace sketchlab
