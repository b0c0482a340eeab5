#include "sketchlab/sketch/sizes.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sketchlab/core/combinatorics.hpp"
#include "sketchlab/core/error.hpp"

namespace sketchlab {

namespace {

// Closed forms that are exact integers (16 * 16 / 0.5) must not be
// bumped up by the last ulp of a logarithm.
std::uint64_t ceil_tolerant(double x) {
  return static_cast<std::uint64_t>(std::ceil(x * (1.0 - 1e-12)));
}

double itemset_count(const SketchParams& params) {
  auto c = checked_binomial(params.d, params.k);
  return c ? static_cast<double>(*c) : std::exp(std::lgamma(params.d + 1.0) -
                                                std::lgamma(params.k + 1.0) -
                                                std::lgamma(params.d - params.k + 1.0));
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                       : static_cast<std::uint64_t>(p);
}

}  // namespace

std::uint64_t sample_size(Semantics semantics, const SketchParams& params) {
  params.validate();
  // ln(2 / delta'), with delta' = delta / C(d, k) under the union bound.
  double log_term = std::log(2.0 / params.delta);
  if (is_for_all(semantics)) log_term += std::log(itemset_count(params));
  const double eps = params.epsilon;
  const double s = is_indicator(semantics) ? 16.0 * log_term / eps : log_term / (2.0 * eps * eps);
  const std::uint64_t rows = ceil_tolerant(s);
  return rows == 0 ? 1 : rows;
}

std::uint32_t answer_bits(Semantics semantics, double epsilon) {
  if (is_indicator(semantics)) return 1;
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("0 < epsilon < 1");
  std::uint32_t b = 1;
  while (std::ldexp(1.0, -static_cast<int>(b)) > epsilon * (1.0 + 1e-12)) ++b;
  return b;
}

BitBudget release_db_bits(const SketchParams& params) {
  return {saturating_mul(params.n, params.d)};
}

BitBudget release_answers_bits(Semantics semantics, const SketchParams& params) {
  auto c = checked_binomial(params.d, params.k);
  if (!c || *c > kMaxAnswerItemsets) {
    throw InvalidArgument("C(d, k) > 2^26: release-answers enumeration bound exceeded");
  }
  return {*c * answer_bits(semantics, params.epsilon)};
}

BitBudget subsample_bits(Semantics semantics, const SketchParams& params) {
  return {saturating_mul(sample_size(semantics, params), params.d)};
}

std::uint64_t median_copies(const SketchParams& params, double factor) {
  params.validate();
  if (!(factor > 0.0)) throw InvalidArgument("boost factor > 0");
  const double copies = factor * std::log2(itemset_count(params) / params.delta);
  const std::uint64_t c = ceil_tolerant(copies);
  return c == 0 ? 1 : c;
}

SizeBound best_size_bound(Semantics semantics, const SketchParams& params) {
  params.validate();
  SizeBound best{release_db_bits(params), Algo::ReleaseDb};
  auto c = checked_binomial(params.d, params.k);
  if (c && *c <= kMaxAnswerItemsets) {
    const BitBudget answers = release_answers_bits(semantics, params);
    if (answers.bits < best.bits.bits) best = {answers, Algo::ReleaseAnswers};
  }
  const BitBudget sample = subsample_bits(semantics, params);
  if (sample.bits < best.bits.bits) best = {sample, Algo::Subsample};
  return best;
}

}  // namespace sketchlab
