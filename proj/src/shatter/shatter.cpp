#include "sketchlab/shatter/shatter.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>

#include "sketchlab/core/error.hpp"
#include "sketchlab/core/parallel.hpp"

namespace sketchlab {

namespace {

constexpr std::size_t kMaxVerifyBits = 24;

std::size_t log2_exact(std::size_t x) { return static_cast<std::size_t>(std::countr_zero(x)); }

}  // namespace

BitMatrix build_W(std::size_t kprime) {
  if (kprime < 1) throw InvalidArgument("k' >= 1");
  BitMatrix w(kprime, kprime);
  for (std::size_t i = 0; i < kprime; ++i) {
    for (std::size_t j = 0; j < kprime; ++j) w.set(i, j, i != j);
  }
  return w;
}

BitMatrix build_Y(std::size_t d) {
  if (d < 2 || !std::has_single_bit(d)) throw InvalidArgument("d must be a power of two >= 2");
  const std::size_t bits = log2_exact(d);
  BitMatrix y(bits, d);
  for (std::size_t r = 0; r < bits; ++r) {
    for (std::size_t j = 0; j < d; ++j) y.set(r, j, (j >> (bits - 1 - r)) & 1U);
  }
  return y;
}

bool valid_family_shape(std::size_t d, std::size_t kprime) {
  if (kprime < 1 || d % kprime != 0) return false;
  const std::size_t w = d / kprime;
  return w >= 2 && std::has_single_bit(w);
}

std::size_t largest_valid_d(std::size_t d, std::size_t kprime) {
  if (kprime < 1 || d < 2 * kprime) return 0;
  return kprime * std::bit_floor(d / kprime);
}

ShatteredFamily build_family(std::size_t d, std::size_t kprime) {
  if (kprime < 1) throw InvalidArgument("k' >= 1");
  if (!valid_family_shape(d, kprime)) {
    throw InvalidArgument("d/k' must be a power of two >= 2 (d=" + std::to_string(d) +
                          ", k'=" + std::to_string(kprime) + ")");
  }
  ShatteredFamily f;
  f.d = d;
  f.kprime = kprime;
  f.block_width = d / kprime;
  f.block_bits = log2_exact(f.block_width);
  f.v = kprime * f.block_bits;
  const BitMatrix y = build_Y(f.block_width);
  f.vectors = BitMatrix(f.v, d);
  for (std::size_t r = 0; r < f.v; ++r) {
    const std::size_t group = r / f.block_bits;
    const std::size_t yr = r % f.block_bits;
    for (std::size_t c = 0; c < d; ++c) {
      const std::size_t block = c / f.block_width;
      f.vectors.set(r, c, block == group ? y.get(yr, c % f.block_width) : true);
    }
  }
  return f;
}

Itemset itemset_for_string(const ShatteredFamily& family, const BitVector& s) {
  if (s.size() != family.v) {
    throw InvalidArgument("string length " + std::to_string(s.size()) + " != v = " +
                          std::to_string(family.v));
  }
  BitVector members(family.d);
  for (std::size_t i = 0; i < family.kprime; ++i) {
    std::size_t ell = 0;
    for (std::size_t b = 0; b < family.block_bits; ++b) {
      ell = (ell << 1) | static_cast<std::size_t>(s.get(i * family.block_bits + b));
    }
    members.set(i * family.block_width + ell, true);
  }
  return Itemset(std::move(members));
}

Itemset itemset_for_string(const ShatteredFamily& family, std::uint64_t mask) {
  if (family.v > 64) throw InvalidArgument("mask form needs v <= 64");
  if (family.v < 64 && (mask >> family.v) != 0) throw InvalidArgument("mask has bits beyond v");
  return itemset_for_string(family, BitVector::from_uint(mask, family.v));
}

ShatterReport verify_shatter(const ShatteredFamily& family) {
  if (family.v > kMaxVerifyBits) {
    throw InvalidArgument("verify_shatter refuses v > 24 (2^v strings)");
  }
  if (family.vectors.n() != family.v || family.vectors.d() != family.d) {
    throw InvalidArgument("family matrix is not v x d");
  }
  const std::uint64_t total = std::uint64_t{1} << family.v;
  std::mutex found_mutex;
  std::optional<std::pair<std::uint64_t, std::size_t>> first;
  std::atomic<bool> failed{false};
  parallel_blocks(total, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::uint64_t mask = begin; mask < end && !failed.load(std::memory_order_relaxed); ++mask) {
      const Itemset t = itemset_for_string(family, mask);
      for (std::size_t i = 0; i < family.v; ++i) {
        if (row_contains(family.vectors.row(i), t) != (((mask >> i) & 1U) != 0)) {
          std::lock_guard lock(found_mutex);
          if (!first || mask < first->first) first = {{mask, i}};
          failed = true;
          break;
        }
      }
    }
  });
  ShatterReport report;
  if (!first) {
    report.ok = true;
    report.strings_checked = total;
    return report;
  }
  report.strings_checked = first->first + 1;
  report.counterexample = ShatterCounterexample{
      BitVector::from_uint(first->first, family.v).to_string(), first->second};
  return report;
}

}  // namespace sketchlab
