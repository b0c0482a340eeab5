#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sketchlab/core/bitvector.hpp"
#include "sketchlab/sketch/params.hpp"

namespace sketchlab {

/// A built sketch. payload.size() is the measured sketch size in bits.
///
/// For median boosting, base_algo names the algorithm of the sub-sketches;
/// the payload is their concatenation and the copy count is
/// payload.size() / (size of one sub-sketch).
struct SketchBlob {
  Algo algo = Algo::ReleaseDb;
  Algo base_algo = Algo::ReleaseDb;
  Semantics semantics = Semantics::ForAllEstimator;
  SketchParams params;
  std::uint64_t seed = 0;
  BitVector payload;

  std::uint64_t size_bits() const { return payload.size(); }

  friend bool operator==(const SketchBlob&, const SketchBlob&) = default;
};

// File layout, all integers little-endian:
//   "ISKB" | algo:u8 | semantics:u8 | k:u16 | eps:f64 | delta:f64 | n:u64 |
//   d:u32 | seed:u64 | payload_bits:u64 | payload bytes (LSB-first, zero pad)
// For median boosting the algo byte carries the base algorithm in its high
// nibble.
std::vector<std::uint8_t> serialize_blob(const SketchBlob& blob);
SketchBlob deserialize_blob(std::span<const std::uint8_t> bytes);
void write_blob(const SketchBlob& blob, const std::filesystem::path& path);
SketchBlob read_blob(const std::filesystem::path& path);

}  // namespace sketchlab
