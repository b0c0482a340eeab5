// Acceptance suite: one PASS/FAIL line per criterion. Run with no arguments
// for all criteria or with --criterion N for one. Exit status 0 only when
// every selected criterion passes.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sketchlab/core/combinatorics.hpp"
#include "sketchlab/core/error.hpp"
#include "sketchlab/core/random.hpp"
#include "sketchlab/estimator/bruteforce.hpp"
#include "sketchlab/estimator/generators.hpp"
#include "sketchlab/estimator/hadamard.hpp"
#include "sketchlab/estimator/pipeline.hpp"
#include "sketchlab/estimator/zhat.hpp"
#include "sketchlab/indicator/amplify.hpp"
#include "sketchlab/indicator/inner_product.hpp"
#include "sketchlab/indicator/unique_rows.hpp"
#include "sketchlab/shatter/shatter.hpp"
#include "sketchlab/sketch/blob.hpp"
#include "sketchlab/sketch/builders.hpp"
#include "sketchlab/sketch/montecarlo.hpp"
#include "sketchlab/sketch/sizes.hpp"
#include "support/oracles.hpp"

namespace sketchlab {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

BitVector random_bits(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  BitVector b(n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, rng.coin());
  return b;
}

// ---- 1: shattering ---------------------------------------------------------

constexpr double kShatterSeconds = 1.0;

Verdict shattering() {
  const auto start = Clock::now();
  const std::pair<std::size_t, std::size_t> shapes[] = {{8, 1}, {8, 2}, {16, 2}, {16, 4}};
  bool ok = true;
  std::string counts;
  for (auto [d, kp] : shapes) {
    const ShatteredFamily f = build_family(d, kp);
    const ShatterReport r = verify_shatter(f);
    // Independent recheck of every string with a direct row scan.
    bool direct = true;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << f.v); ++s) {
      const Itemset t = itemset_for_string(f, s);
      for (std::size_t i = 0; i < f.v; ++i) {
        bool contained = true;
        for (std::size_t j : t.indices()) contained = contained && f.vectors.get(i, j);
        direct = direct && contained == ((s >> i & 1U) != 0);
      }
    }
    ok = ok && r.ok && direct && r.strings_checked == (std::uint64_t{1} << f.v);
    counts += fmt("%s(%zu,%zu): %llu", counts.empty() ? "" : ", ", d, kp,
                  static_cast<unsigned long long>(r.strings_checked));
  }
  const double secs = seconds_since(start);
  return {ok && secs < kShatterSeconds, fmt("%s strings checked in %.3f s", counts.c_str(), secs)};
}

// ---- 2: subsample validity -------------------------------------------------

constexpr double kSubsampleMaxRate = 0.15;
constexpr double kSubsampleSeconds = 120.0;

Verdict subsample_validity() {
  const auto start = Clock::now();
  // Column densities graded 0.25 .. 0.75 so triple frequencies straddle the
  // thresholds instead of sitting far from them.
  const std::size_t n = 10000, d = 20;
  Database db(n, d);
  CounterRng rng(2024);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      db.set(i, j, rng.uniform() < 0.25 + 0.5 * static_cast<double>(j) / (d - 1));
    }
  }
  const SketchParams p = SketchParams::for_database(db, 3, 0.1, 0.1);
  bool ok = true;
  std::string rates;
  for (Semantics s : kAllSemantics) {
    const FailureStats stats = measure_failures(db, p, s, builder_for(Algo::Subsample), 1000,
                                                derive_seed(7, static_cast<std::uint64_t>(s)));
    const double rate = stats.rate(s);
    ok = ok && rate <= kSubsampleMaxRate;
    rates += fmt("%s%s %.3f", rates.empty() ? "" : ", ", to_string(s).c_str(), rate);
  }
  const double secs = seconds_since(start);
  return {ok && secs < kSubsampleSeconds, fmt("failure rates %s (limit %.2f) in %.1f s", rates.c_str(),
                                              kSubsampleMaxRate, secs)};
}

// ---- 3: unique-rows round trip ---------------------------------------------

constexpr int kRoundTripExact = 100;
constexpr int kRoundTripSubsample = 85;
constexpr double kRoundTripSeconds = 60.0;

Verdict unique_rows_round_trip() {
  const auto start = Clock::now();
  const std::size_t d = 16, k = 2;
  const double eps = 1.0 / 8;
  int exact = 0, sampled = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const BitVector message = random_bits(64, derive_seed(3, t));
    const UniqueRowInstance inst = encode_unique_rows(message, d, k, eps, 8);
    exact += decode_unique_rows(d, k, eps, exact_oracle(inst.db, eps)) == message;
    const SketchParams p = SketchParams::for_database(inst.db, 2, eps, 0.1);
    const SketchBlob blob = build_subsample(inst.db, p, Semantics::ForAllIndicator, derive_seed(33, t));
    sampled += decode_unique_rows(d, k, eps, sketch_oracle(blob)) == message;
  }
  const double secs = seconds_since(start);
  return {exact >= kRoundTripExact && sampled >= kRoundTripSubsample && secs < kRoundTripSeconds,
          fmt("exact oracle %d/100, subsample %d/100 (need %d) in %.2f s", exact, sampled,
              kRoundTripSubsample, secs)};
}

// ---- 4: consistency decoding -----------------------------------------------

constexpr double kConsistencySeconds = 10.0;

Verdict consistency() {
  const auto start = Clock::now();
  const std::size_t v = 8;
  int exact = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const BitVector t = random_bits(v, derive_seed(4, trial));
    std::vector<bool> b(std::size_t{1} << v);
    for (std::uint64_t s = 0; s < b.size(); ++s) {
      std::size_t dot = 0;
      for (std::size_t i = 0; i < v; ++i) dot += (s >> i & 1U) && t.get(i);
      b[s] = dot * 50 >= v;  // exact indicator of <s,t>/v >= 1/50
    }
    exact += consistency_decode(b, v, 1.0 / 50) == t;
  }
  const double secs = seconds_since(start);
  return {exact == 100 && secs < kConsistencySeconds, fmt("%d/100 exact in %.3f s", exact, secs)};
}

// ---- 5: inner-product pipeline ---------------------------------------------

constexpr double kPipelineSuccess = 0.9;  // 1 - delta
constexpr double kPipelineSeconds = 60.0;

Verdict inner_product_pipeline() {
  const auto start = Clock::now();
  const SketchBuilder exact = builder_for(Algo::ReleaseDb);
  const SketchBuilder sampled = builder_for(Algo::Subsample);
  std::string detail;
  bool ok = true;
  // d = 8 at full code capacity, and d = 16 carrying 32-bit messages.
  const std::pair<std::size_t, std::size_t> shapes[] = {{8, 0}, {16, 32}};
  for (auto [d, bits] : shapes) {
    const InnerProductAttack attack(d, 2);
    const std::size_t message_bits = bits ? bits : attack.message_bits();
    int exact_ok = 0, sampled_ok = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
      const BitVector m = random_bits(message_bits, derive_seed(5 + d, t));
      const AttackOutcome a = run_inner_product_attack(attack, m, 0.1, exact, t);
      exact_ok += a.message && *a.message == m;
      const AttackOutcome b = run_inner_product_attack(attack, m, 0.1, sampled, derive_seed(55, t));
      sampled_ok += b.message && *b.message == m;
    }
    ok = ok && exact_ok == 50 && sampled_ok >= kPipelineSuccess * 50;
    detail += fmt("%sd=%zu v=%zu %zu-bit codewords %zu-bit messages: exact %d/50, subsample %d/50",
                  detail.empty() ? "" : "; ", d, attack.v(), attack.codeword_bits(), message_bits,
                  exact_ok, sampled_ok);
  }
  const double secs = seconds_since(start);
  return {ok && secs < kPipelineSeconds, detail + fmt(" in %.1f s", secs)};
}

// ---- 6: amplification identity ---------------------------------------------

Verdict amplification() {
  const std::size_t d = 8, k = 3;
  const InnerProductAttack inner(d, (k + 1) / 2);
  const std::vector<Database> blocks{inner.encode(random_bits(inner.message_bits(), 61)).db,
                                     inner.encode(random_bits(inner.message_bits(), 62)).db};
  const AmplifiedInstance inst = amplify_encode(blocks, d, k, 1.0 / 100);
  std::size_t checked = 0, mismatches = 0;
  for (std::size_t i = 0; i < inst.m; ++i) {
    for_each_k_subset(2 * d, (k + 1) / 2, [&](std::span<const std::size_t> members) {
      const Itemset tstar = Itemset::from_indices(2 * d, members);
      const Frequency lifted = frequency(inst.db, lift_query(inst, i, tstar));
      const Frequency local = frequency(blocks[i], tstar);
      // lifted.count / lifted.total == local.count / (local.total * m)
      const unsigned __int128 lhs = static_cast<unsigned __int128>(lifted.count) * local.total * inst.m;
      const unsigned __int128 rhs = static_cast<unsigned __int128>(local.count) * lifted.total;
      mismatches += lhs != rhs;
      ++checked;
    });
  }
  return {mismatches == 0 && inst.m == 2,
          fmt("m=%llu, %zu lifted queries, %zu mismatches", static_cast<unsigned long long>(inst.m),
              checked, mismatches)};
}

// ---- 7: zhat recovery ------------------------------------------------------

constexpr double kZhatSlack = 1e-9;

Verdict zhat() {
  const std::size_t v = 4;
  const double eps = 0.05;
  CounterRng rng(77);
  double worst = 0.0;
  int good = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> z(v), decoy(v);
    for (std::size_t i = 0; i < v; ++i) {
      z[i] = rng.uniform();
      decoy[i] = std::clamp(z[i] + (rng.coin() ? 4.0 : -4.0) * eps, 0.0, 1.0);
    }
    // Half the trials pull every answer toward a decoy point, half add
    // independent ±eps noise.
    std::vector<double> answers(std::size_t{1} << v);
    for (std::size_t s = 0; s < answers.size(); ++s) {
      double truth = 0.0, fake = 0.0;
      for (std::size_t i = 0; i < v; ++i) {
        if (s >> i & 1U) {
          truth += z[i] / v;
          fake += decoy[i] / v;
        }
      }
      answers[s] = trial % 2 == 0 ? std::clamp(fake, truth - eps, truth + eps)
                                  : truth + (rng.coin() ? eps : -eps);
    }
    try {
      const auto zh = zhat_recover(answers, v, eps);
      double l1 = 0.0;
      for (std::size_t i = 0; i < v; ++i) l1 += std::abs(zh[i] - z[i]);
      worst = std::max(worst, l1 / v);
      good += zhat_violation(answers, v, eps, zh) <= kZhatSlack && l1 / v <= 4 * eps + kZhatSlack;
    } catch (const DecodeFailure&) {
    }
  }
  return {good == 100, fmt("%d/100 feasible within 4*eps = %.2f, worst mean L1 %.6f", good, 4 * eps, worst)};
}

// ---- 8: estimator pipeline -------------------------------------------------

struct EstimatorRun {
  int exact = 0;
  int noisy = 0;
  double gap = 0.0;
  bool injective = false;
  std::size_t v = 0;
};

EstimatorRun run_estimator(std::size_t d0, std::size_t n, std::size_t c, std::size_t k) {
  EstimatorRun out;
  const EstimatorAttack attack(d0, n, c, k, 8);
  out.injective = attack.injective();
  out.v = attack.v();
  const DecoderConfig config = DecoderConfig::defaults(n);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const BitVector m = random_bits(attack.message_bits(), derive_seed(88, t));
    const EstimatorOutcome r = run_estimator_attack(attack, m, 0.01, 0.1, builder_for(Algo::ReleaseDb), t, config);
    out.exact += r.message && *r.message == m;
  }
  // Per-entry noise so the total L1 perturbation stays below half the gap.
  const HadamardStack& stack = attack.stack();
  out.gap = min_codeword_gap(stack);
  const double per_entry = 0.49 * out.gap / static_cast<double>(stack.rows());
  CounterRng rng(808);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const BitVector y = random_bits(n, derive_seed(89, t));
    std::vector<double> counts(stack.rows(), 0.0);
    for (std::size_t r = 0; r < stack.rows(); ++r) {
      for (std::size_t h = 0; h < n; ++h) counts[r] += stack.product.get(r, h) && y.get(h);
      counts[r] += rng.coin() ? per_entry : -per_entry;
    }
    out.noisy += bruteforce_decode(stack, counts, config.zeta1).y == y;
  }
  return out;
}

Verdict estimator_pipeline() {
  const EstimatorRun r = run_estimator(2, 8, 2, 3);
  const EstimatorRun info = run_estimator(4, 4, 2, 3);
  std::cout << fmt("  note: d0=4 n=4 c=2 k=3 (v=%zu, injective=%s, gap %.0f): exact %d/50, noisy %d/50\n",
                   info.v, info.injective ? "yes" : "no", info.gap, info.exact, info.noisy);
  return {r.exact == 50 && r.noisy == 50,
          fmt("v=%zu d0=2 n=8 c=2 k=3: hadamard stack %s, min codeword gap %.0f; exact sketch %d/50, "
              "noisy bruteforce %d/50",
              r.v, r.injective ? "injective" : "not injective (L = 2 < n = 8)", r.gap, r.exact, r.noisy)};
}

// ---- 9: spectral sanity ----------------------------------------------------

constexpr int kSpectralMinPositive = 95;

Verdict spectral() {
  int positive = 0;
  bool ratios = true;
  double min_ratio = 1.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SpectralReport r = spectral_report(hadamard_product(gen_random_factors(2, 8, 4, derive_seed(9, seed))),
                                             64, seed);
    if (r.sigma_min > 0) {
      ++positive;
      ratios = ratios && r.section_ratio > 0 && r.section_ratio <= 1.0;
      min_ratio = std::min(min_ratio, r.section_ratio);
    }
  }
  return {positive >= kSpectralMinPositive && ratios,
          fmt("sigma_min > 0 in %d/100 seeds (need %d), section ratios in (0,1]: %s, smallest %.4f",
              positive, kSpectralMinPositive, ratios ? "yes" : "no", min_ratio)};
}

// ---- 10: median boosting ---------------------------------------------------

constexpr double kBoostDelta = 0.1;

Verdict boosting() {
  const Database db = random_database(1000, 8, 0.5, 10);
  const SketchParams p = SketchParams::for_database(db, 2, 0.1, kBoostDelta);
  const FailureStats base = measure_failures(db, p, Semantics::ForEachEstimator,
                                             builder_for(Algo::Subsample), 1000, 101);
  const SketchBuilder boosted = [](const Database& d, const SketchParams& q, Semantics, std::uint64_t seed) {
    return build_median_boost(d, q, builder_for(Algo::Subsample), seed);
  };
  const FailureStats boost = measure_failures(db, p, Semantics::ForAllEstimator, boosted, 200, 102);
  const double base_rate = base.for_each_worst_rate();
  const double boost_rate = boost.for_all_rate();
  return {base_rate <= kBoostDelta && boost_rate <= kBoostDelta,
          fmt("base for-each worst per-query rate %.3f over 1000 seeds; boosted (%llu copies) for-all rate "
              "%.3f over 200 seeds, 28 itemsets each (limit %.2f)",
              base_rate, static_cast<unsigned long long>(median_copies(p)), boost_rate, kBoostDelta)};
}

// ---- 11: size accounting ---------------------------------------------------

std::uint64_t closed_form_bits(Algo algo, Semantics s, const SketchParams& p) {
  const int sem = static_cast<int>(s);
  switch (algo) {
    case Algo::ReleaseDb: return p.n * p.d;
    case Algo::ReleaseAnswers:
      return oracle::pascal(p.d, p.k) * (is_indicator(s) ? 1 : oracle::bits_for(p.epsilon));
    case Algo::Subsample: return oracle::sample_rows(sem, p.d, p.k, p.epsilon, p.delta) * p.d;
    case Algo::MedianBoost: {
      const auto copies = static_cast<std::uint64_t>(
          std::ceil(10.0 * std::log2(static_cast<double>(oracle::pascal(p.d, p.k)) / p.delta) - 1e-9));
      return copies * oracle::sample_rows(3, p.d, p.k, p.epsilon, p.delta) * p.d;
    }
  }
  return 0;
}

Verdict size_accounting() {
  CounterRng rng(11);
  const double eps_choices[] = {0.5, 0.3, 0.25, 0.125, 0.1, 0.05};
  const double delta_choices[] = {0.01, 0.1, 0.2};
  int cells = 0, matches = 0;
  while (cells < 50) {
    SketchParams p;
    p.d = static_cast<std::uint32_t>(3 + rng.below(12));
    p.k = static_cast<std::uint32_t>(1 + rng.below(std::min<std::uint32_t>(3, p.d)));
    p.n = 1 + rng.below(400);
    p.epsilon = eps_choices[rng.below(6)];
    p.delta = delta_choices[rng.below(3)];
    const auto algo = static_cast<Algo>(rng.below(4));
    const auto sem = algo == Algo::MedianBoost ? Semantics::ForAllEstimator : static_cast<Semantics>(rng.below(4));
    const Database db = random_database(p.n, p.d, 0.5, rng.next());
    const SketchBlob blob = algo == Algo::MedianBoost
                                ? build_median_boost(db, p, builder_for(Algo::Subsample), 1)
                                : builder_for(algo)(db, p, sem, 1);
    const auto bytes = serialize_blob(blob);
    const bool same = deserialize_blob(bytes).size_bits() == blob.size_bits();
    matches += same && blob.size_bits() == closed_form_bits(algo, sem, p);
    ++cells;
  }
  // n-sweep at fixed (d, k, eps, delta): subsample payload does not move.
  bool flat = true;
  for (Semantics s : kAllSemantics) {
    std::uint64_t first = 0;
    for (std::uint64_t n : {10ULL, 100ULL, 1000ULL, 10000ULL}) {
      const Database db = random_database(n, 10, 0.5, n);
      const auto bits = build_subsample(db, SketchParams::for_database(db, 2, 0.1, 0.1), s, 3).size_bits();
      if (first == 0) first = bits;
      flat = flat && bits == first;
    }
  }
  return {matches == 50 && flat,
          fmt("%d/50 cells match their closed form; subsample size constant over n = 10..10^4: %s", matches,
              flat ? "yes" : "no")};
}

struct Criterion {
  const char* name;
  std::function<Verdict()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"shattering", shattering},
      {"subsample validity", subsample_validity},
      {"unique-rows round trip", unique_rows_round_trip},
      {"consistency decoding", consistency},
      {"inner-product pipeline", inner_product_pipeline},
      {"amplification identity", amplification},
      {"zhat recovery", zhat},
      {"estimator pipeline", estimator_pipeline},
      {"spectral sanity", spectral},
      {"median boosting", boosting},
      {"size accounting", size_accounting},
  };
  return list;
}

}  // namespace
}  // namespace sketchlab

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const auto& list = sketchlab::criteria();
  bool all = true;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
    sketchlab::Verdict v;
    try {
      v = list[i].run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << (i < 9 ? "0" : "") << i + 1 << ' ' << (v.pass ? "PASS" : "FAIL") << ' '
              << list[i].name << ": " << v.detail << std::endl;
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
