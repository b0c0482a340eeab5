#include "sketchlab/core/combinatorics.hpp"

#include <limits>

#include "sketchlab/core/error.hpp"

namespace sketchlab {

std::optional<std::uint64_t> checked_binomial(std::uint64_t d, std::uint64_t k) {
  if (k > d) return 0;
  if (k > d - k) k = d - k;
  // result * (d - i) / (i + 1) stays an exact integer at every step; the
  // 128-bit product cannot overflow while result fits in 64 bits.
  unsigned __int128 result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result = result * (d - i) / (i + 1);
    if (result > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t binomial(std::uint64_t d, std::uint64_t k) {
  auto value = checked_binomial(d, k);
  if (!value) throw InvalidArgument("C(d, k) exceeds 64 bits");
  return *value;
}

std::uint64_t colex_rank(std::span<const std::size_t> sorted_members) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < sorted_members.size(); ++i) {
    rank += binomial(sorted_members[i], i + 1);
  }
  return rank;
}

std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k) {
  std::vector<std::size_t> members(k);
  for (std::size_t i = k; i > 0; --i) {
    // Largest c with C(c, i) <= rank; c >= i - 1 always qualifies.
    std::size_t c = i - 1;
    while (binomial(c + 1, i) <= rank) ++c;
    members[i - 1] = c;
    rank -= binomial(c, i);
  }
  return members;
}

}  // namespace sketchlab
