#pragma once

#include <cstdint>
#include <vector>

#include "sketchlab/core/bitvector.hpp"
#include "sketchlab/core/database.hpp"
#include "sketchlab/indicator/oracle.hpp"
#include "sketchlab/sketch/builders.hpp"

namespace sketchlab {

/// A message hidden in m = 1/epsilon base rows. Base row i has a distinct
/// (k−1)-subset of the left d/2 columns and message bits i·(d/2) ..
/// (i+1)·(d/2) − 1 in the right half; the rows are duplicated up to n.
struct UniqueRowInstance {
  std::size_t d = 0;
  std::size_t k = 0;
  std::uint64_t m = 0;
  BitVector message;
  Database db{1, 1};
  /// dup[i]: copies of base row i in db.
  std::vector<std::uint64_t> dup;
};

/// 1/epsilon when it is an integer (to 1e-9 relative), else rejects.
std::uint64_t inverse_epsilon(double epsilon);

/// Requires d even, 1/epsilon integer, 1/epsilon ≤ C(d/2, k−1),
/// |message| = (d/2)/epsilon and n ≥ 1/epsilon. Rows r < ⌊n·ε⌋·m repeat base
/// row r mod m; leftover rows repeat base row 0.
UniqueRowInstance encode_unique_rows(const BitVector& message, std::size_t d, std::size_t k,
                                     double epsilon, std::uint64_t n);

/// T_{i,j}: base row i's (k−1)-subset plus right-half column j (0-based).
Itemset unique_row_query(std::size_t d, std::size_t k, std::uint64_t i, std::size_t j);

/// Reads every message bit (i, j) as oracle(T_{i,j}).
BitVector decode_unique_rows(std::size_t d, std::size_t k, double epsilon,
                             const IndicatorOracle& oracle);

struct IndexOutcome {
  bool bit = false;
  std::uint64_t communication_bits = 0;
};

/// One run of the one-way INDEX protocol: Alice encodes x, sends a
/// for-each-indicator sketch; Bob answers T_y. y indexes x in row-major order.
IndexOutcome simulate_index_protocol(const BitVector& x, std::uint64_t y, std::size_t d,
                                     std::size_t k, double epsilon, std::uint64_t n, double delta,
                                     const SketchBuilder& builder, std::uint64_t seed);

}  // namespace sketchlab
