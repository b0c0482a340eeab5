#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "sketchlab/core/combinatorics.hpp"
#include "sketchlab/core/database.hpp"
#include "sketchlab/core/error.hpp"
#include "sketchlab/core/random.hpp"
#include "sketchlab/sketch/blob.hpp"
#include "sketchlab/sketch/builders.hpp"
#include "sketchlab/sketch/montecarlo.hpp"
#include "sketchlab/sketch/query.hpp"
#include "sketchlab/sketch/sizes.hpp"
#include "support/oracles.hpp"

namespace sketchlab {
namespace {

SketchParams params(std::uint64_t n, std::uint32_t d, std::uint32_t k, double eps, double delta) {
  SketchParams p;
  p.n = n;
  p.d = d;
  p.k = k;
  p.epsilon = eps;
  p.delta = delta;
  return p;
}

Itemset attrs(std::size_t d, std::vector<std::size_t> a) { return Itemset::from_attributes(d, a); }

oracle::Rows text_rows(const Database& db) {
  oracle::Rows rows;
  for (std::size_t i = 0; i < db.n(); ++i) rows.push_back(db.row_bits(i).to_string());
  return rows;
}

TEST(SampleSize, ClosedForms) {
  EXPECT_EQ(sample_size(Semantics::ForEachEstimator, params(10, 10, 2, 0.1, 0.05)), 185U);
  EXPECT_EQ(sample_size(Semantics::ForEachIndicator, params(10, 10, 2, 0.5, 2.0 * std::exp(-16.0))),
            512U);
  EXPECT_EQ(sample_size(Semantics::ForAllEstimator, params(10, 10, 2, 0.1, 0.05)), 375U);
}

TEST(SampleSize, MatchesOracleOverGrid) {
  for (int s = 0; s < 4; ++s) {
    for (std::uint32_t d : {6U, 10U, 20U}) {
      for (std::uint32_t k : {1U, 2U, 3U}) {
        for (double eps : {0.05, 0.1, 0.25}) {
          for (double delta : {0.01, 0.1}) {
            EXPECT_EQ(sample_size(static_cast<Semantics>(s), params(100, d, k, eps, delta)),
                      oracle::sample_rows(s, d, k, eps, delta));
          }
        }
      }
    }
  }
}

TEST(ReleaseDb, PayloadIsTheMatrix) {
  const Database db = Database::from_strings({"110", "011"});
  const SketchBlob blob =
      build_release_db(db, SketchParams::for_database(db, 1, 0.1, 0.1), Semantics::ForAllEstimator);
  EXPECT_EQ(blob.size_bits(), 6U);
  const Database one = Database::from_strings({"1"});
  EXPECT_EQ(build_release_db(one, SketchParams::for_database(one, 1, 0.1, 0.1),
                             Semantics::ForAllIndicator)
                .payload.to_string(),
            "1");
  const Database pair = Database::from_strings({"11"});
  const SketchBlob b2 = build_release_db(pair, SketchParams::for_database(pair, 2, 0.1, 0.1),
                                         Semantics::ForAllEstimator);
  EXPECT_DOUBLE_EQ(query(b2, attrs(2, {1, 2})).estimate, 1.0);
}

TEST(ReleaseDb, AnswersAreExactFrequencies) {
  const Database db = random_database(8, 8, 0.5, 17);
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const SketchBlob blob = build_release_db(db, SketchParams::for_database(db, k, 0.1, 0.1),
                                             Semantics::ForEachEstimator);
    for (const auto& s : oracle::subsets(8, k)) {
      EXPECT_DOUBLE_EQ(query(blob, attrs(8, s)).estimate, frequency(db, attrs(8, s)).value());
    }
  }
}

TEST(ReleaseAnswers, PayloadSizes) {
  const Database db = random_database(5, 4, 0.5, 2);
  const auto p = SketchParams::for_database(db, 2, 0.125, 0.1);
  EXPECT_EQ(build_release_answers(db, p, Semantics::ForAllIndicator).size_bits(), 6U);
  EXPECT_EQ(build_release_answers(db, p, Semantics::ForAllEstimator).size_bits(), 18U);
}

TEST(ReleaseAnswers, QuantizedEstimatesWithinEpsilon) {
  const Database db = random_database(6, 4, 0.5, 23);
  for (double eps : {0.3, 0.125, 0.05}) {
    const auto p = SketchParams::for_database(db, 2, eps, 0.1);
    const SketchBlob blob = build_release_answers(db, p, Semantics::ForAllEstimator);
    EXPECT_EQ(blob.size_bits(), 6U * oracle::bits_for(eps));
    for (const auto& s : oracle::subsets(4, 2)) {
      const double truth = static_cast<double>(oracle::count_rows(text_rows(db), s)) / 6.0;
      EXPECT_LE(std::abs(query(blob, attrs(4, s)).estimate - truth), eps);
    }
  }
}

TEST(ReleaseAnswers, IndicatorBitIsThreshold) {
  const Database db = Database::from_strings({"1100", "1010", "0110", "1111"});
  const auto p = SketchParams::for_database(db, 2, 0.5, 0.1);
  const SketchBlob blob = build_release_answers(db, p, Semantics::ForAllIndicator);
  EXPECT_TRUE(query(blob, attrs(4, {1, 2})).bit);   // 2/4
  EXPECT_FALSE(query(blob, attrs(4, {1, 4})).bit);  // 1/4
}

TEST(Subsample, DeterministicAndSized) {
  const Database db = random_database(300, 20, 0.5, 5);
  const auto p = SketchParams::for_database(db, 3, 0.1, 0.1);
  const SketchBlob a = build_subsample(db, p, Semantics::ForEachEstimator, 9);
  EXPECT_EQ(a, build_subsample(db, p, Semantics::ForEachEstimator, 9));
  EXPECT_NE(a.payload, build_subsample(db, p, Semantics::ForEachEstimator, 10).payload);
  EXPECT_EQ(a.size_bits(), 20U * oracle::ceil_div_log(std::log(20.0), 0.02));
}

TEST(Subsample, IdenticalRowsAndAbsentItemsets) {
  const Database db = Database::from_strings({"1010", "1010", "1010"});
  const auto p = SketchParams::for_database(db, 2, 0.2, 0.1);
  const SketchBlob est = build_subsample(db, p, Semantics::ForEachEstimator, 1);
  EXPECT_DOUBLE_EQ(query(est, attrs(4, {1, 3})).estimate, 1.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SketchBlob ind = build_subsample(db, p, Semantics::ForAllIndicator, seed);
    EXPECT_FALSE(query(ind, attrs(4, {2, 4})).bit);
  }
}

TEST(Subsample, ForEachEstimatorFailureRateBelowDelta) {
  const Database db = random_database(500, 8, 0.5, 31);
  const auto p = SketchParams::for_database(db, 2, 0.1, 0.1);
  const FailureStats stats = measure_failures(db, p, Semantics::ForEachEstimator,
                                              builder_for(Algo::Subsample), 1000, 77);
  EXPECT_LE(stats.for_each_worst_rate(), 0.1);
}

TEST(Blob, SerializeRoundTripAndSemanticsCheck) {
  const Database db = random_database(10, 6, 0.5, 8);
  const auto p = SketchParams::for_database(db, 2, 0.125, 0.1);
  const SketchBlob blob = build_release_answers(db, p, Semantics::ForEachEstimator);
  const auto bytes = serialize_blob(blob);
  EXPECT_EQ(deserialize_blob(bytes), blob);
  EXPECT_THROW(query(blob, attrs(6, {1, 2}), Semantics::ForAllIndicator), InvalidArgument);
  EXPECT_THROW(query(blob, attrs(6, {1, 2, 3})), InvalidArgument);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(deserialize_blob(truncated), InvalidArgument);
}

TEST(MedianBoost, CopyCount) {
  EXPECT_EQ(median_copies(params(10, 10, 2, 0.1, 0.1)), 89U);
  EXPECT_EQ(median_copies(params(10, 10, 2, 0.1, 0.1)),
            static_cast<std::uint64_t>(std::ceil(10.0 * std::log2(45.0 / 0.1))));
}

TEST(MedianBoost, ExactBaseGivesExactMedian) {
  const Database db = random_database(12, 8, 0.5, 2);
  const auto p = SketchParams::for_database(db, 2, 0.1, 0.1);
  const SketchBuilder exact = [](const Database& d, const SketchParams& q, Semantics s,
                                 std::uint64_t) { return build_release_db(d, q, s); };
  const SketchBlob blob = build_median_boost(db, p, exact, 4, 5);
  EXPECT_EQ(blob.size_bits(), 5U * 96U);
  for (const auto& s : oracle::subsets(8, 2)) {
    EXPECT_DOUBLE_EQ(query(blob, attrs(8, s)).estimate, frequency(db, attrs(8, s)).value());
  }
}

TEST(MedianBoost, ForAllFailureRateBelowDelta) {
  const Database db = random_database(200, 8, 0.5, 12);
  const auto p = SketchParams::for_database(db, 2, 0.1, 0.1);
  const SketchBuilder boosted = [](const Database& d, const SketchParams& q, Semantics,
                                   std::uint64_t seed) {
    return build_median_boost(d, q, builder_for(Algo::Subsample), seed, 15);
  };
  const FailureStats stats = measure_failures(db, p, Semantics::ForAllEstimator, boosted, 100, 3);
  EXPECT_LE(stats.for_all_rate(), 0.1);
}

TEST(BestSizeBound, ExamplesAndSelfConsistency) {
  const SizeBound b = best_size_bound(Semantics::ForAllIndicator, params(4, 16, 2, 0.125, 0.1));
  EXPECT_EQ(b.bits.bits, 64U);
  EXPECT_EQ(b.winner, Algo::ReleaseDb);
  const SizeBound e = best_size_bound(Semantics::ForAllEstimator, params(4, 8, 2, 0.125, 0.1));
  EXPECT_EQ(e.bits.bits, 32U);
  EXPECT_EQ(e.winner, Algo::ReleaseDb);

  // The bound is independent of n once n·d is out of the running.
  const auto big = best_size_bound(Semantics::ForEachEstimator, params(1'000'000'000, 10, 2, 0.1, 0.1));
  EXPECT_EQ(big.bits, best_size_bound(Semantics::ForEachEstimator, params(2'000'000'000, 10, 2, 0.1, 0.1)).bits);

  CounterRng rng(99);
  for (int i = 0; i < 50; ++i) {
    const auto d = static_cast<std::uint32_t>(4 + rng.below(8));
    const auto k = static_cast<std::uint32_t>(1 + rng.below(3));
    const std::uint64_t n = 1 + rng.below(60);
    const double eps = 0.05 + 0.4 * rng.uniform();
    const auto sem = static_cast<Semantics>(rng.below(4));
    const SketchParams p = params(n, d, k, eps, 0.1);
    const Database db = random_database(n, d, 0.5, rng.next());
    const SizeBound bound = best_size_bound(sem, p);
    EXPECT_EQ(builder_for(bound.winner)(db, p, sem, 1).size_bits(), bound.bits.bits);
  }
}

TEST(AllItemsetCounts, MatchesSupportCount) {
  const Database db = random_database(30, 9, 0.4, 6);
  const auto counts = all_k_itemset_counts(db, 3);
  std::uint64_t r = 0;
  for_each_k_subset(9, 3, [&](std::span<const std::size_t> m) {
    EXPECT_EQ(counts[r++], support_count(db, Itemset::from_indices(9, m)));
  });
}

TEST(Params, RejectsOutOfRange) {
  EXPECT_THROW(params(1, 4, 5, 0.1, 0.1).validate(), InvalidArgument);
  EXPECT_THROW(params(1, 4, 2, 0.0, 0.1).validate(), InvalidArgument);
  EXPECT_THROW(params(1, 4, 2, 0.1, 1.0).validate(), InvalidArgument);
}

}  // namespace
}  // namespace sketchlab
