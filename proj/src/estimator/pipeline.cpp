#include "sketchlab/estimator/pipeline.hpp"

#include <cmath>
#include <string>

#include "sketchlab/core/combinatorics.hpp"
#include "sketchlab/core/error.hpp"
#include "sketchlab/core/parallel.hpp"
#include "sketchlab/core/random.hpp"
#include "sketchlab/estimator/generators.hpp"
#include "sketchlab/estimator/zhat.hpp"
#include "sketchlab/sketch/query.hpp"

namespace sketchlab {

namespace {

constexpr int kFactorDraws = 64;
constexpr std::size_t kMaxN = 16;

}  // namespace

EstimatorOracle exact_estimator_oracle(const Database& db) {
  auto shared = std::make_shared<const Database>(db);
  return [shared](const Itemset& t) { return frequency(*shared, t).value(); };
}

EstimatorOracle sketch_estimator_oracle(SketchBlob blob) {
  auto shared = std::make_shared<const SketchBlob>(std::move(blob));
  return [shared](const Itemset& t) { return query(*shared, t).estimate; };
}

EstimatorAttack::EstimatorAttack(std::size_t d0, std::size_t n, std::size_t c, std::size_t k,
                                 std::uint64_t factor_seed, std::shared_ptr<const Codec> outer)
    : d0_(d0), n_(n), c_(c), k_(k) {
  if (c < 2) throw InvalidArgument("c >= 2");
  if (k < c + 1) throw InvalidArgument("k >= c + 1");
  if (d0 < 1 || n < 1) throw InvalidArgument("d0 >= 1 and n >= 1");
  if (n > kMaxN) throw InvalidArgument("n <= 16 (exhaustive decoding)");
  family_ = build_family(c * d0, k - c);
  if (family_.v > 16) throw InvalidArgument("v <= 16");

  for (int draw = 0; draw < kFactorDraws; ++draw) {
    factors_ = gen_random_factors(c - 1, d0, n, derive_seed(factor_seed, static_cast<std::uint64_t>(draw)));
    stack_ = hadamard_product(factors_);
    // Fewer Hadamard rows than unknowns can never be injective.
    if (stack_.rows() < n) break;
    if (min_codeword_gap(stack_) > 0.0) {
      injective_ = true;
      break;
    }
  }
  outer_ = outer ? std::move(outer) : std::make_shared<LinearCodec>(family_.v * block_bits());
  if (outer_->codeword_bits() != family_.v * block_bits()) {
    throw InvalidArgument("outer code must span v*d0*n bits");
  }
}

Database EstimatorAttack::block_database(const BitVector& block_payload) const {
  return build_D2(factors_, block_payload, IdentityCodec(block_bits()));
}

EstimatorInstance EstimatorAttack::encode(const BitVector& message) const {
  return encode_payload(outer_->encode(message));
}

EstimatorInstance EstimatorAttack::encode_payload(const BitVector& payload) const {
  const std::size_t b = block_bits();
  if (payload.size() != v() * b) throw InvalidArgument("payload must have v*d0*n bits");
  EstimatorInstance inst;
  inst.family = family_;
  inst.db = Database(v() * n_, 2 * d());
  for (std::size_t i = 0; i < v(); ++i) {
    inst.payloads.push_back(payload.slice(i * b, b));
    inst.blocks.push_back(block_database(inst.payloads.back()));
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t col = 0; col < d(); ++col) {
        inst.db.set(i * n_ + j, col, family_.vectors.get(i, col));
        inst.db.set(i * n_ + j, d() + col, inst.blocks.back().get(j, col));
      }
    }
  }
  return inst;
}

Itemset EstimatorAttack::lifted_query(const Itemset& t, std::uint64_t s_mask) const {
  if (t.dim() != d() || t.cardinality() != c_) throw InvalidArgument("T must be a c-itemset over d");
  BitVector members(2 * d());
  for (std::size_t col : itemset_for_string(family_, s_mask).indices()) members.set(col, true);
  for (std::size_t col : t.indices()) members.set(d() + col, true);
  return Itemset(std::move(members));
}

EstimatorAttack::Decoded EstimatorAttack::decode(const EstimatorOracle& oracle, double epsilon,
                                                 const DecoderConfig& config) const {
  std::vector<Itemset> itemsets;
  for_each_k_subset(d(), c_, [&](std::span<const std::size_t> members) {
    itemsets.push_back(Itemset::from_indices(d(), members));
  });
  const std::size_t vv = v();
  std::vector<std::vector<double>> zhat(itemsets.size());
  parallel_blocks(itemsets.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<double> answers(std::size_t{1} << vv);
    for (std::size_t ti = begin; ti < end; ++ti) {
      for (std::uint64_t s = 0; s < answers.size(); ++s) answers[s] = oracle(lifted_query(itemsets[ti], s));
      zhat[ti] = zhat_recover(answers, vv, epsilon);
    }
  });

  Decoded out;
  const std::size_t b = block_bits();
  out.payload = BitVector(vv * b);
  std::vector<double> counts(stack_.rows());
  for (std::size_t i = 0; i < vv; ++i) {
    for (std::size_t sc = 0; sc < d0_; ++sc) {
      for (std::size_t r = 0; r < stack_.rows(); ++r) {
        const auto tuple = stack_.tuple(r);
        std::vector<std::size_t> members;
        for (std::size_t t = 0; t < tuple.size(); ++t) members.push_back(t * d0_ + tuple[t]);
        members.push_back((c_ - 1) * d0_ + sc);
        counts[r] = static_cast<double>(n_) * zhat[colex_rank(members)][i];
      }
      const BruteforceResult y = bruteforce_decode(stack_, counts, config.zeta1);
      for (std::size_t h = 0; h < n_; ++h) out.payload.set(i * b + sc * n_ + h, y.y.get(h));
    }
  }

  for (std::size_t i = 0; i < vv; ++i) {
    const Database decoded = block_database(out.payload.slice(i * b, b));
    double weighted = 0.0, total = 0.0;
    for (std::size_t ti = 0; ti < itemsets.size(); ++ti) {
      const double mu = config.weight ? config.weight(itemsets[ti]) : 1.0;
      weighted += mu * std::abs(zhat[ti][i] - frequency(decoded, itemsets[ti]).value());
      total += mu;
    }
    out.block_error.push_back(total > 0.0 ? weighted / total : 0.0);
    if (out.block_error.back() <= config.markov_factor * epsilon * (1.0 + 1e-12)) ++out.blocks_passing;
  }
  out.message = outer_->decode(out.payload);
  return out;
}

EstimatorOutcome run_estimator_attack(const EstimatorAttack& attack, const BitVector& message,
                                 double epsilon, double delta, const SketchBuilder& builder,
                                 std::uint64_t seed, const DecoderConfig& config,
                                 Semantics semantics) {
  if (is_indicator(semantics)) throw InvalidArgument("the estimator attack needs estimator semantics");
  if (message.size() > attack.message_bits()) {
    throw InvalidArgument("message longer than the code's " + std::to_string(attack.message_bits()) +
                          "-bit capacity");
  }
  BitVector padded(attack.message_bits());
  for (std::size_t i = 0; i < message.size(); ++i) padded.set(i, message.get(i));
  const BitVector payload = attack.outer().encode(padded);
  const EstimatorInstance inst = attack.encode_payload(payload);
  const SketchParams params = SketchParams::for_database(
      inst.db, static_cast<std::uint32_t>(attack.k()), epsilon, delta);
  const SketchBlob blob = builder(inst.db, params, semantics, seed);

  EstimatorOutcome out;
  out.sketch_bits = blob.size_bits();
  const auto decoded = attack.decode(sketch_estimator_oracle(blob), epsilon, config);
  const std::size_t b = attack.block_bits();
  for (std::size_t i = 0; i < attack.v(); ++i) {
    if (decoded.payload.slice(i * b, b) == payload.slice(i * b, b)) ++out.blocks_recovered;
  }
  out.blocks_passing = decoded.blocks_passing;
  if (decoded.message) out.message = decoded.message->slice(0, message.size());
  return out;
}

}  // namespace sketchlab
