#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "sketchlab/core/combinatorics.hpp"
#include "sketchlab/core/error.hpp"
#include "sketchlab/core/random.hpp"
#include "sketchlab/estimator/bruteforce.hpp"
#include "sketchlab/estimator/generators.hpp"
#include "sketchlab/estimator/hadamard.hpp"
#include "sketchlab/estimator/pipeline.hpp"
#include "sketchlab/estimator/zhat.hpp"
#include "sketchlab/indicator/ecc.hpp"
#include "sketchlab/sketch/builders.hpp"

namespace sketchlab {
namespace {

BitVector random_bits(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  BitVector b(n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, rng.coin());
  return b;
}

// (A y)_r computed from the factors by the defining product.
std::vector<double> codeword(const std::vector<BitMatrix>& factors, const BitVector& y) {
  std::vector<std::size_t> dims;
  std::size_t rows = 1;
  for (const auto& f : factors) {
    dims.push_back(f.n());
    rows *= f.n();
  }
  std::vector<double> out(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t rest = r;
    std::vector<std::size_t> tuple(factors.size());
    for (std::size_t t = factors.size(); t-- > 0;) {
      tuple[t] = rest % dims[t];
      rest /= dims[t];
    }
    for (std::size_t h = 0; h < y.size(); ++h) {
      bool entry = y.get(h);
      for (std::size_t t = 0; t < factors.size(); ++t) entry = entry && factors[t].get(tuple[t], h);
      out[r] += entry ? 1.0 : 0.0;
    }
  }
  return out;
}

TEST(Hadamard, SingleFactorIsItself) {
  const BitMatrix a = random_database(3, 5, 0.5, 1);
  EXPECT_EQ(hadamard_product({a}).product, a);
}

TEST(Hadamard, HandExample) {
  const auto stack = hadamard_product({Database::from_strings({"10", "11"}), Database::from_strings({"11"})});
  EXPECT_EQ(stack.product, Database::from_strings({"10", "11"}));
}

TEST(Hadamard, RandomEntriesMatchDefinition) {
  const auto factors = gen_random_factors(3, 4, 8, 5);
  const auto stack = hadamard_product(factors);
  EXPECT_EQ(stack.rows(), 64U);
  CounterRng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = rng.below(64);
    const std::size_t h = rng.below(8);
    const std::vector<std::size_t> tuple{r / 16, (r / 4) % 4, r % 4};
    EXPECT_EQ(stack.tuple(r), tuple);
    EXPECT_EQ(stack.row_of(tuple), r);
    const bool expected = factors[0].get(tuple[0], h) && factors[1].get(tuple[1], h) &&
                          factors[2].get(tuple[2], h);
    EXPECT_EQ(stack.product.get(r, h), expected);
  }
}

TEST(GenRandomFactors, DeterministicAndFair) {
  EXPECT_EQ(gen_random_factors(2, 10, 10, 3), gen_random_factors(2, 10, 10, 3));
  EXPECT_NE(gen_random_factors(2, 10, 10, 3), gen_random_factors(2, 10, 10, 4));
  const auto f = gen_random_factors(1, 100, 100, 9);
  std::size_t ones = 0;
  for (std::size_t i = 0; i < 100; ++i) ones += f[0].row_bits(i).popcount();
  EXPECT_NEAR(static_cast<double>(ones) / 1e4, 0.5, 0.02);
}

TEST(Spectral, DegenerateAndIdentityStacks) {
  const auto perm = hadamard_product({Database::from_strings({"010", "001", "100"})});
  EXPECT_NEAR(spectral_report(perm).sigma_min, 1.0, 1e-12);
  const auto zero = hadamard_product({Database(3, 3)});
  EXPECT_EQ(spectral_report(zero).sigma_min, 0.0);
  const auto wide = hadamard_product({random_database(2, 5, 0.5, 1)});
  EXPECT_TRUE(spectral_report(wide).rank_deficient);
}

TEST(Spectral, RandomStacksAreNonDegenerate) {
  int positive = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SpectralReport r = spectral_report(hadamard_product(gen_random_factors(2, 8, 4, seed)), 16, seed);
    if (r.sigma_min > 0) {
      ++positive;
      EXPECT_GT(r.section_ratio, 0.0);
      EXPECT_LE(r.section_ratio, 1.0 + 1e-12);
    }
  }
  EXPECT_GE(positive, 95);
}

TEST(Generators, D1HandExample) {
  const std::vector<BitMatrix> identity{Database::from_strings({"10", "01"})};
  EXPECT_EQ(build_D1(identity, BitVector::from_string("10")), Database::from_strings({"101", "010"}));
  const Database zero_y = build_D1(identity, BitVector(2));
  EXPECT_FALSE(zero_y.get(0, 2) || zero_y.get(1, 2));
}

TEST(Generators, D1ItemsetCountsAreCodewordEntries) {
  const auto factors = gen_random_factors(2, 2, 3, 11);
  const auto stack = hadamard_product(factors);
  for (std::uint64_t ymask = 0; ymask < 8; ++ymask) {
    const BitVector y = BitVector::from_uint(ymask, 3);
    const Database d1 = build_D1(factors, y);
    const auto expect = codeword(factors, y);
    for (std::size_t r = 0; r < stack.rows(); ++r) {
      const auto tuple = stack.tuple(r);
      EXPECT_EQ(static_cast<double>(support_count(d1, d1_itemset(2, tuple))), expect[r]);
    }
  }
}

TEST(Generators, D2SpecialColumnsReshapePayload) {
  const auto factors = gen_random_factors(1, 2, 4, 12);
  const IdentityCodec identity(8);
  const BitVector payload = random_bits(8, 4);
  const Database d2 = build_D2(factors, payload, identity);
  EXPECT_EQ(d2.d(), 4U);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(d2.get(j, 2 + i), payload.get(i * 4 + j));
  }
  BitVector flipped = payload;
  flipped.flip(5);
  const Database d2f = build_D2(factors, flipped, identity);
  std::size_t diff = 0;
  for (std::size_t r = 0; r < 4; ++r) diff += d2.row_bits(r).hamming_distance(d2f.row_bits(r));
  EXPECT_EQ(diff, 1U);
}

TEST(Generators, SpecialItemsetFrequencyIdentity) {
  const auto factors = gen_random_factors(1, 2, 4, 13);
  const auto stack = hadamard_product(factors);
  const IdentityCodec identity(8);
  const BitVector payload = random_bits(8, 5);
  const Database d2 = build_D2(factors, payload, identity);
  for (std::size_t i = 0; i < 2; ++i) {
    const Database d1 = build_D1(factors, payload.slice(i * 4, 4));
    for (std::size_t r = 0; r < stack.rows(); ++r) {
      const auto tuple = stack.tuple(r);
      EXPECT_EQ(support_count(d2, special_itemset(2, tuple, i)), support_count(d1, d1_itemset(2, tuple)));
    }
  }
}

// First draw whose codewords are pairwise distinct.
std::vector<BitMatrix> injective_factors(std::size_t ell, std::size_t n, std::uint64_t seed) {
  for (std::uint64_t draw = 0;; ++draw) {
    auto factors = gen_random_factors(2, ell, n, derive_seed(seed, draw));
    if (min_codeword_gap(hadamard_product(factors)) > 0) return factors;
  }
}

TEST(Bruteforce, NoiseFreeAndSingleColumn) {
  const auto factors = injective_factors(4, 6, 21);
  const auto stack = hadamard_product(factors);
  ASSERT_GT(min_codeword_gap(stack), 0.0);
  for (std::uint64_t ymask = 0; ymask < 64; ++ymask) {
    const BitVector y = BitVector::from_uint(ymask, 6);
    const auto counts = codeword(factors, y);
    EXPECT_EQ(bruteforce_decode(stack, counts, 0.5).y, y);
  }
  const auto single = hadamard_product({Database::from_strings({"1", "1"})});
  const std::vector<double> high{0.8, 0.9};
  const std::vector<double> low{0.2, 0.1};
  EXPECT_TRUE(bruteforce_decode(single, high, 0.5).y.get(0));
  EXPECT_FALSE(bruteforce_decode(single, low, 0.5).y.get(0));
}

TEST(Bruteforce, AdversarialNoiseBelowHalfGap) {
  const auto factors = injective_factors(4, 5, 22);
  const auto stack = hadamard_product(factors);
  const double gap = min_codeword_gap(stack);
  ASSERT_GT(gap, 0.0);
  // Total L1 noise stays below gap/2.
  const double per_entry = 0.49 * gap / static_cast<double>(stack.rows());
  CounterRng rng(3);
  for (std::uint64_t ymask = 0; ymask < 32; ++ymask) {
    const BitVector y = BitVector::from_uint(ymask, 5);
    auto counts = codeword(factors, y);
    for (double& c : counts) c += rng.coin() ? per_entry : -per_entry;
    EXPECT_EQ(bruteforce_decode(stack, counts, 1.0).y, y);
  }
}

TEST(IteratedLog, Values) {
  EXPECT_DOUBLE_EQ(iterated_log(2.0, 1), 1.0);
  EXPECT_DOUBLE_EQ(iterated_log(16.0, 1), 4.0);
  EXPECT_DOUBLE_EQ(iterated_log(16.0, 2), 2.0);
  EXPECT_NEAR(DecoderConfig::defaults(16, 1).zeta1, 4.0 / 2.0, 1e-12);
}

TEST(Zhat, SingleCoordinate) {
  for (double a : {0.0, 0.3, 0.97}) {
    const auto z = zhat_recover({0.0, a}, 1, 0.05);
    EXPECT_GE(z[0], std::max(0.0, a - 0.05) - 1e-9);
    EXPECT_LE(z[0], std::min(1.0, a + 0.05) + 1e-9);
  }
}

TEST(Zhat, AdversarialNoiseWithinFourEpsilon) {
  const std::size_t v = 4;
  const double eps = 0.05;
  CounterRng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> z(v), decoy(v);
    for (std::size_t i = 0; i < v; ++i) {
      z[i] = rng.uniform();
      decoy[i] = std::clamp(z[i] + (rng.coin() ? 1.0 : -1.0) * 4 * eps, 0.0, 1.0);
    }
    std::vector<double> answers(1U << v);
    for (std::size_t s = 0; s < answers.size(); ++s) {
      double truth = 0.0, fake = 0.0;
      for (std::size_t i = 0; i < v; ++i) {
        if (s >> i & 1U) {
          truth += z[i];
          fake += decoy[i];
        }
      }
      truth /= v;
      fake /= v;
      answers[s] = std::clamp(fake, truth - eps, truth + eps);
    }
    const auto zhat = zhat_recover(answers, v, eps);
    EXPECT_LE(zhat_violation(answers, v, eps, zhat), 1e-9);
    EXPECT_LE(zhat_violation(answers, v, eps, z), 1e-12);
    double l1 = 0.0;
    for (std::size_t i = 0; i < v; ++i) l1 += std::abs(zhat[i] - z[i]);
    EXPECT_LE(l1 / v, 4 * eps + 1e-9);
  }
}

TEST(Zhat, InfeasibleAnswersAreReported) {
  EXPECT_THROW(zhat_recover({0.0, 0.9, 0.9, 0.1}, 2, 0.01), DecodeFailure);
}

TEST(EstimatorAttack, ExactSketchRecoversMessages) {
  const EstimatorAttack attack(4, 4, 2, 3, 17);
  ASSERT_TRUE(attack.injective());
  EXPECT_EQ(attack.v(), 3U);
  const DecoderConfig config = DecoderConfig::defaults(4);
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const BitVector m = random_bits(attack.message_bits(), trial);
    const EstimatorOutcome r = run_estimator_attack(attack, m, 0.01, 0.1, builder_for(Algo::ReleaseDb), trial, config);
    ASSERT_TRUE(r.message.has_value());
    EXPECT_EQ(*r.message, m);
    EXPECT_EQ(r.blocks_recovered, 3U);
  }
}

TEST(EstimatorAttack, LiftedFrequencyIsBlockCodeword) {
  const EstimatorAttack attack(4, 4, 2, 3, 18);
  const BitVector payload = random_bits(attack.v() * attack.block_bits(), 2);
  const EstimatorInstance inst = attack.encode_payload(payload);
  EXPECT_EQ(inst.db.n(), attack.v() * attack.n());
  EXPECT_THROW(run_estimator_attack(attack, BitVector(attack.message_bits()), 0.01, 0.1,
                               builder_for(Algo::ReleaseDb), 0, DecoderConfig::defaults(4),
                               Semantics::ForAllIndicator),
               InvalidArgument);
}

TEST(EstimatorAttack, SingleBlockReducesToBruteforce) {
  // d = c·d0 = 2 with k − c = 1 gives family(2, 1): v = 1.
  const EstimatorAttack attack(1, 1, 2, 3, 19, std::make_shared<IdentityCodec>(1));
  EXPECT_EQ(attack.v(), 1U);
  const BitVector m = random_bits(attack.message_bits(), 3);
  const EstimatorOutcome r = run_estimator_attack(attack, m, 0.01, 0.1, builder_for(Algo::ReleaseDb), 0,
                                             DecoderConfig::defaults(1));
  ASSERT_TRUE(r.message.has_value());
  EXPECT_EQ(*r.message, m);
}

}  // namespace
}  // namespace sketchlab
