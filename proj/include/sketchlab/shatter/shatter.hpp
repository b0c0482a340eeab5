#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sketchlab/core/bitvector.hpp"
#include "sketchlab/core/database.hpp"
#include "sketchlab/core/itemset.hpp"

namespace sketchlab {

/// k'×k' all-ones matrix with a zero diagonal. kprime ≥ 1.
BitMatrix build_W(std::size_t kprime);

/// log2(d)×d matrix whose column j is the big-endian binary form of j.
/// d must be a power of two ≥ 2.
BitMatrix build_Y(std::size_t d);

/// v = k'·log2(d/k') vectors over d columns, shattered by k'-itemset queries.
///
/// Row group i (rows i·block_bits .. (i+1)·block_bits − 1) holds Y^{(d/k')} in
/// column block i and all-ones in every other column block.
struct ShatteredFamily {
  std::size_t d = 0;
  std::size_t kprime = 0;
  std::size_t v = 0;
  std::size_t block_width = 0;  // d / k'
  std::size_t block_bits = 0;   // log2(d / k')
  BitMatrix vectors{1, 1};
};

/// Rejects unless d/k' is an integer power of two ≥ 2.
ShatteredFamily build_family(std::size_t d, std::size_t kprime);

/// True when build_family(d, kprime) accepts the pair.
bool valid_family_shape(std::size_t d, std::size_t kprime);

/// Largest d' ≤ d accepted by build_family with this k', or 0 if none.
std::size_t largest_valid_d(std::size_t d, std::size_t kprime);

// A string s ∈ {0,1}^v is split into k' blocks of block_bits bits, block i
// read big-endian as ℓ_i; T_s = {i·(d/k') + ℓ_i}. As a mask, bit i of the
// integer is s_{i+1}, the i-th character of the string.

/// T_s for s given as a v-bit vector (bit i = s_{i+1}).
Itemset itemset_for_string(const ShatteredFamily& family, const BitVector& s);
/// T_s for s given as a mask (bit i = s_{i+1}). Requires v ≤ 64.
Itemset itemset_for_string(const ShatteredFamily& family, std::uint64_t mask);

struct ShatterCounterexample {
  std::string s;    // bitstring s_1..s_v
  std::size_t row;  // 0-based row i with f_{T_s}(x_i) != s_i
};

struct ShatterReport {
  bool ok = false;
  std::uint64_t strings_checked = 0;
  std::optional<ShatterCounterexample> counterexample;
};

/// Checks f_{T_s}(x_i) = s_i for every s ∈ {0,1}^v and every row. Refuses
/// v > 24.
ShatterReport verify_shatter(const ShatteredFamily& family);

}  // namespace sketchlab
