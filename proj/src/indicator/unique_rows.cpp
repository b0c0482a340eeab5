#include "sketchlab/indicator/unique_rows.hpp"

#include <cmath>
#include <string>

#include "sketchlab/core/combinatorics.hpp"
#include "sketchlab/core/error.hpp"
#include "sketchlab/sketch/query.hpp"

namespace sketchlab {

namespace {

void check_capacity(std::size_t d, std::size_t k, std::uint64_t m) {
  if (d < 2 || d % 2 != 0) throw InvalidArgument("d must be even and >= 2");
  if (k < 2) throw InvalidArgument("k >= 2");
  if (k - 1 > d / 2 || m > binomial(d / 2, k - 1)) {
    throw InvalidArgument("1/epsilon > C(d/2, k-1)");
  }
}

}  // namespace

std::uint64_t inverse_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("0 < epsilon < 1");
  const double inv = 1.0 / epsilon;
  const double rounded = std::round(inv);
  if (std::abs(inv - rounded) > 1e-9 * rounded) throw InvalidArgument("1/epsilon must be an integer");
  return static_cast<std::uint64_t>(rounded);
}

UniqueRowInstance encode_unique_rows(const BitVector& message, std::size_t d, std::size_t k,
                                     double epsilon, std::uint64_t n) {
  const std::uint64_t m = inverse_epsilon(epsilon);
  check_capacity(d, k, m);
  const std::size_t half = d / 2;
  if (message.size() != half * m) {
    throw InvalidArgument("message must have (d/2)/epsilon = " + std::to_string(half * m) +
                          " bits, got " + std::to_string(message.size()));
  }
  if (n < m) throw InvalidArgument("n >= 1/epsilon");

  UniqueRowInstance inst;
  inst.d = d;
  inst.k = k;
  inst.m = m;
  inst.message = message;
  inst.db = Database(n, d);
  inst.dup.assign(m, 0);
  const std::uint64_t full = (n / m) * m;
  for (std::uint64_t r = 0; r < n; ++r) {
    const std::uint64_t base = r < full ? r % m : 0;
    ++inst.dup[base];
    for (std::size_t c : colex_unrank(base, k - 1)) inst.db.set(r, c, true);
    for (std::size_t j = 0; j < half; ++j) {
      if (message.get(base * half + j)) inst.db.set(r, half + j, true);
    }
  }
  return inst;
}

Itemset unique_row_query(std::size_t d, std::size_t k, std::uint64_t i, std::size_t j) {
  if (j >= d / 2) throw InvalidArgument("column index j must be < d/2");
  auto members = colex_unrank(i, k - 1);
  members.push_back(d / 2 + j);
  return Itemset::from_indices(d, members);
}

BitVector decode_unique_rows(std::size_t d, std::size_t k, double epsilon,
                             const IndicatorOracle& oracle) {
  const std::uint64_t m = inverse_epsilon(epsilon);
  check_capacity(d, k, m);
  const std::size_t half = d / 2;
  BitVector message(half * m);
  for (std::uint64_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < half; ++j) {
      message.set(i * half + j, oracle(unique_row_query(d, k, i, j)));
    }
  }
  return message;
}

IndexOutcome simulate_index_protocol(const BitVector& x, std::uint64_t y, std::size_t d,
                                     std::size_t k, double epsilon, std::uint64_t n, double delta,
                                     const SketchBuilder& builder, std::uint64_t seed) {
  if (y >= x.size()) throw InvalidArgument("index y out of range");
  const UniqueRowInstance inst = encode_unique_rows(x, d, k, epsilon, n);
  const SketchParams params = SketchParams::for_database(inst.db, static_cast<std::uint32_t>(k),
                                                         epsilon, delta);
  const SketchBlob blob = builder(inst.db, params, Semantics::ForEachIndicator, seed);
  const std::size_t half = d / 2;
  return {query(blob, unique_row_query(d, k, y / half, y % half)).bit, blob.size_bits()};
}

}  // namespace sketchlab
