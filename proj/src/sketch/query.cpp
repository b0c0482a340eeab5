#include "sketchlab/sketch/query.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sketchlab/core/combinatorics.hpp"
#include "sketchlab/core/error.hpp"
#include "sketchlab/sketch/builders.hpp"
#include "sketchlab/sketch/sizes.hpp"

namespace sketchlab {

namespace {

// A plain sketch occupying payload bits [offset, offset + bits).
struct Segment {
  Algo algo;
  Semantics semantics;
  const SketchParams& params;
  const BitVector& payload;
  std::size_t offset;
  std::size_t bits;
};

std::uint64_t count_rows(const Segment& seg, std::uint64_t rows, const Itemset& t) {
  const std::size_t d = seg.params.d;
  const auto tw = t.members().words();
  std::uint64_t count = 0;
  for (std::uint64_t r = 0; r < rows; ++r) {
    bool all = true;
    for (std::size_t w = 0; w < tw.size() && all; ++w) {
      if (tw[w] == 0) continue;
      const std::size_t len = std::min<std::size_t>(64, d - 64 * w);
      all = (seg.payload.extract(seg.offset + r * d + 64 * w, len) & tw[w]) == tw[w];
    }
    count += all ? 1 : 0;
  }
  return count;
}

double dequantize(std::uint64_t code, std::uint32_t b) {
  // Midpoint of the quantization cell keeps the error strictly below 2^-b.
  return std::min(1.0, (static_cast<double>(code) + 0.5) * std::ldexp(1.0, -static_cast<int>(b)));
}

Answer from_count(const Segment& seg, std::uint64_t count, std::uint64_t rows) {
  const Frequency f{count, rows};
  if (!is_indicator(seg.semantics)) return Answer::estimator(f.value());
  // Subsamples use the midpoint of the (eps/2, eps) dead zone.
  const double threshold =
      seg.algo == Algo::Subsample ? 0.75 * seg.params.epsilon : seg.params.epsilon;
  return Answer::indicator(f.at_least(threshold));
}

Answer query_segment(const Segment& seg, const Itemset& t) {
  switch (seg.algo) {
    case Algo::ReleaseDb:
    case Algo::Subsample: {
      const std::uint64_t rows = seg.bits / seg.params.d;
      return from_count(seg, count_rows(seg, rows, t), rows);
    }
    case Algo::ReleaseAnswers: {
      const auto idx = t.indices();
      const std::uint64_t rank = colex_rank(idx);
      if (is_indicator(seg.semantics)) return Answer::indicator(seg.payload.get(seg.offset + rank));
      const std::uint32_t b = answer_bits(seg.semantics, seg.params.epsilon);
      return Answer::estimator(dequantize(seg.payload.extract(seg.offset + rank * b, b), b));
    }
    case Algo::MedianBoost: break;
  }
  throw InvalidArgument("corrupt sketch: nested median-boost");
}

std::vector<Answer> answer_all_segment(const Segment& seg) {
  const std::uint64_t total = binomial(seg.params.d, seg.params.k);
  if (total > kMaxAnswerItemsets) throw InvalidArgument("C(d, k) > 2^26: too many itemsets");
  std::vector<Answer> out;
  out.reserve(total);
  switch (seg.algo) {
    case Algo::ReleaseDb:
    case Algo::Subsample: {
      const std::uint64_t rows = seg.bits / seg.params.d;
      Database sample(rows, seg.params.d);
      for (std::uint64_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < seg.params.d; ++j) {
          if (seg.payload.get(seg.offset + r * seg.params.d + j)) sample.set(r, j, true);
        }
      }
      for (std::uint64_t c : all_k_itemset_counts(sample, seg.params.k)) {
        out.push_back(from_count(seg, c, rows));
      }
      return out;
    }
    case Algo::ReleaseAnswers: {
      if (is_indicator(seg.semantics)) {
        for (std::uint64_t r = 0; r < total; ++r) {
          out.push_back(Answer::indicator(seg.payload.get(seg.offset + r)));
        }
      } else {
        const std::uint32_t b = answer_bits(seg.semantics, seg.params.epsilon);
        for (std::uint64_t r = 0; r < total; ++r) {
          out.push_back(Answer::estimator(dequantize(seg.payload.extract(seg.offset + r * b, b), b)));
        }
      }
      return out;
    }
    case Algo::MedianBoost: break;
  }
  throw InvalidArgument("corrupt sketch: nested median-boost");
}

std::vector<Segment> median_segments(const SketchBlob& blob) {
  const std::uint64_t sub =
      expected_payload_bits(blob.base_algo, Semantics::ForEachEstimator, blob.params);
  if (sub == 0 || blob.payload.size() == 0 || blob.payload.size() % sub != 0) {
    throw InvalidArgument("corrupt median-boost sketch: payload is not a whole number of copies");
  }
  std::vector<Segment> segs;
  for (std::size_t off = 0; off < blob.payload.size(); off += sub) {
    segs.push_back({blob.base_algo, Semantics::ForEachEstimator, blob.params, blob.payload, off, sub});
  }
  return segs;
}

double lower_median(std::vector<double>& values) {
  auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

void check_query(const SketchBlob& blob, const Itemset& t) {
  if (t.dim() != blob.params.d) throw InvalidArgument("query itemset dimension does not match d");
  if (t.cardinality() != blob.params.k) {
    throw InvalidArgument("query itemset must have exactly k = " + std::to_string(blob.params.k) +
                          " items");
  }
}

Segment whole(const SketchBlob& blob) {
  if (blob.algo != Algo::ReleaseAnswers && blob.payload.size() % blob.params.d != 0) {
    throw InvalidArgument("corrupt sketch: payload is not a whole number of rows");
  }
  return {blob.algo, blob.semantics, blob.params, blob.payload, 0, blob.payload.size()};
}

}  // namespace

Answer query(const SketchBlob& blob, const Itemset& t) {
  check_query(blob, t);
  if (blob.algo != Algo::MedianBoost) return query_segment(whole(blob), t);
  std::vector<double> estimates;
  for (const Segment& seg : median_segments(blob)) estimates.push_back(query_segment(seg, t).estimate);
  return Answer::estimator(lower_median(estimates));
}

Answer query(const SketchBlob& blob, const Itemset& t, Semantics expected) {
  if (blob.semantics != expected) {
    throw InvalidArgument("sketch was built for " + to_string(blob.semantics) + ", not " +
                          to_string(expected));
  }
  return query(blob, t);
}

std::vector<Answer> answer_all(const SketchBlob& blob) {
  if (blob.algo != Algo::MedianBoost) return answer_all_segment(whole(blob));
  std::vector<std::vector<Answer>> copies;
  for (const Segment& seg : median_segments(blob)) copies.push_back(answer_all_segment(seg));
  std::vector<Answer> out(copies.front().size());
  std::vector<double> estimates(copies.size());
  for (std::size_t r = 0; r < out.size(); ++r) {
    for (std::size_t c = 0; c < copies.size(); ++c) estimates[c] = copies[c][r].estimate;
    out[r] = Answer::estimator(lower_median(estimates));
  }
  return out;
}

std::vector<std::uint64_t> all_k_itemset_counts(const Database& db, std::size_t k) {
  const std::size_t d = db.d();
  const std::uint64_t total = binomial(d, k);
  if (k == 0 || total > kMaxAnswerItemsets) {
    throw InvalidArgument("need 1 <= k and C(d, k) <= 2^26");
  }
  std::vector<std::uint64_t> counts(total, 0);
  // binom[x][i] = C(x, i) for the colex rank sum.
  std::vector<std::vector<std::uint64_t>> binom(d, std::vector<std::uint64_t>(k + 1));
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t i = 0; i <= k; ++i) binom[x][i] = binomial(x, i);
  }
  std::vector<std::size_t> present;
  for (std::size_t r = 0; r < db.n(); ++r) {
    present.clear();
    const auto words = db.row(r);
    for (std::size_t w = 0; w < words.size(); ++w) {
      for (std::uint64_t bits = words[w]; bits != 0; bits &= bits - 1) {
        present.push_back(64 * w + static_cast<std::size_t>(std::countr_zero(bits)));
      }
    }
    if (present.size() < k) continue;
    for_each_k_subset(present.size(), k, [&](std::span<const std::size_t> pos) {
      std::uint64_t rank = 0;
      for (std::size_t i = 0; i < k; ++i) rank += binom[present[pos[i]]][i + 1];
      ++counts[rank];
    });
  }
  return counts;
}

}  // namespace sketchlab
