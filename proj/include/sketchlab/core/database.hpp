#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "sketchlab/core/bitvector.hpp"
#include "sketchlab/core/itemset.hpp"

namespace sketchlab {

/// n×d binary matrix, row-major, each row padded to whole 64-bit words.
///
/// Used both for databases proper and for the small bit matrices of the
/// lower-bound constructions. Immutable once built by value semantics; the
/// mutators exist for construction only.
class Database {
 public:
  /// All-zero n×d matrix. n ≥ 1 and d ≥ 1.
  Database(std::size_t n, std::size_t d);

  static Database from_rows(std::span<const BitVector> rows);
  /// Test helper: {"101", "011"}.
  static Database from_strings(std::initializer_list<std::string_view> rows);

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }
  std::size_t words_per_row() const { return wpr_; }

  std::span<const std::uint64_t> row(std::size_t i) const {
    return {data_.data() + i * wpr_, wpr_};
  }
  BitVector row_bits(std::size_t i) const;

  bool get(std::size_t i, std::size_t j) const {
    return (data_[i * wpr_ + (j >> 6)] >> (j & 63)) & 1U;
  }
  void set(std::size_t i, std::size_t j, bool value);
  void set_row(std::size_t i, const BitVector& bits);

  friend bool operator==(const Database&, const Database&) = default;

 private:
  std::size_t n_;
  std::size_t d_;
  std::size_t wpr_;
  std::vector<std::uint64_t> data_;
};

/// Bit matrices of the shattering and Hadamard constructions share the
/// database representation.
using BitMatrix = Database;

/// Exact frequency count/total. Comparisons against real thresholds treat the
/// threshold with a 1e-12 relative slack, so that decimal parameters such as
/// epsilon = 0.1 behave as the intended rationals (1/10 reaches 0.1).
struct Frequency {
  std::uint64_t count = 0;
  std::uint64_t total = 1;

  double value() const { return static_cast<double>(count) / static_cast<double>(total); }
  /// f ≥ threshold
  bool at_least(double threshold) const;
  /// f > threshold
  bool above(double threshold) const;
  /// f < threshold
  bool below(double threshold) const { return !at_least(threshold); }

  friend bool operator==(const Frequency& a, const Frequency& b) {
    return static_cast<unsigned __int128>(a.count) * b.total ==
           static_cast<unsigned __int128>(b.count) * a.total;
  }
};

/// 1 iff every member of t is set in the row.
bool row_contains(std::span<const std::uint64_t> row_words, const Itemset& t);
bool row_contains(const BitVector& row, const Itemset& t);

std::uint64_t support_count(const Database& db, const Itemset& t);
Frequency frequency(const Database& db, const Itemset& t);

/// n×d database with independent cells, each 1 with probability density.
Database random_database(std::size_t n, std::size_t d, double density, std::uint64_t seed);

}  // namespace sketchlab
