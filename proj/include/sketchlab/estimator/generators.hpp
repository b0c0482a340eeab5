#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sketchlab/core/bitvector.hpp"
#include "sketchlab/core/database.hpp"
#include "sketchlab/core/itemset.hpp"
#include "sketchlab/indicator/ecc.hpp"

namespace sketchlab {

/// kminus1 independent ell × n matrices of fair coins.
std::vector<BitMatrix> gen_random_factors(std::size_t kminus1, std::size_t ell, std::size_t n,
                                          std::uint64_t seed);

// The generated databases have n rows. Factor t (d0 × n) occupies columns
// t·d0 .. t·d0 + d0 − 1 transposed: row j holds column j of every factor.

/// n × (s·d0) for s factors.
Database build_D0(std::span<const BitMatrix> factors);

/// D0 with y appended as the last column.
Database build_D1(std::span<const BitMatrix> factors, const BitVector& y);

/// D0 with d0 special columns carrying ecc.encode(yprime) (d0·n bits):
/// special column i holds codeword bits i·n .. i·n + n − 1.
Database build_D2(std::span<const BitMatrix> factors, const BitVector& yprime, const Codec& ecc);

/// The itemset of D1 pairing factor rows `tuple` with the y column; its
/// count is row `tuple` of A·y.
Itemset d1_itemset(std::size_t d0, std::span<const std::size_t> tuple);

/// g_i: the same itemset over D2 with special column `special` in place of y.
Itemset special_itemset(std::size_t d0, std::span<const std::size_t> tuple, std::size_t special);

}  // namespace sketchlab
