#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sketchlab {

/// Exact C(d, k); 0 when k > d. Throws InvalidArgument if the value does not
/// fit in 64 bits (never the case for d ≤ 64).
std::uint64_t binomial(std::uint64_t d, std::uint64_t k);

/// C(d, k), or nullopt when it overflows 64 bits.
std::optional<std::uint64_t> checked_binomial(std::uint64_t d, std::uint64_t k);

// Colexicographic order on k-subsets of {0..d-1}: the subset {c_0 < ... <
// c_{k-1}} has rank sum_i C(c_i, i+1). The rank does not depend on d, which is
// what lets release-answers locate an itemset's payload slot in O(k).
std::uint64_t colex_rank(std::span<const std::size_t> sorted_members);
std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k);

/// Calls fn(members) for every k-subset of {0..d-1} in colex order.
template <typename Fn>
void for_each_k_subset(std::size_t d, std::size_t k, Fn&& fn) {
  if (k > d) return;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    fn(std::span<const std::size_t>(c));
    // Advance to the colex successor: bump the first element that can move.
    std::size_t i = 0;
    while (i < k && ((i + 1 < k) ? c[i] + 1 == c[i + 1] : c[i] + 1 == d)) ++i;
    if (i == k) return;
    ++c[i];
    for (std::size_t j = 0; j < i; ++j) c[j] = j;
  }
}

}  // namespace sketchlab
