#include "sketchlab/sketch/blob.hpp"

#include <bit>
#include <fstream>
#include <iterator>

#include "sketchlab/core/error.hpp"

namespace sketchlab {

namespace {

constexpr std::uint8_t kMagic[4] = {'I', 'S', 'K', 'B'};
constexpr std::size_t kHeaderBytes = 4 + 1 + 1 + 2 + 8 + 8 + 8 + 4 + 8 + 8;

void put(std::vector<std::uint8_t>& out, std::uint64_t value, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

std::uint64_t get(std::span<const std::uint8_t> in, std::size_t& pos, int bytes) {
  std::uint64_t value = 0;
  for (int i = 0; i < bytes; ++i) value |= static_cast<std::uint64_t>(in[pos++]) << (8 * i);
  return value;
}

bool valid_algo(std::uint8_t a) { return a <= static_cast<std::uint8_t>(Algo::MedianBoost); }

}  // namespace

std::vector<std::uint8_t> serialize_blob(const SketchBlob& blob) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.reserve(kHeaderBytes + (blob.payload.size() + 7) / 8);
  std::uint8_t algo = static_cast<std::uint8_t>(blob.algo);
  if (blob.algo == Algo::MedianBoost) {
    algo = static_cast<std::uint8_t>(algo | (static_cast<std::uint8_t>(blob.base_algo) << 4));
  }
  out.push_back(algo);
  out.push_back(static_cast<std::uint8_t>(blob.semantics));
  put(out, blob.params.k, 2);
  put(out, std::bit_cast<std::uint64_t>(blob.params.epsilon), 8);
  put(out, std::bit_cast<std::uint64_t>(blob.params.delta), 8);
  put(out, blob.params.n, 8);
  put(out, blob.params.d, 4);
  put(out, blob.seed, 8);
  put(out, blob.payload.size(), 8);
  const std::size_t bytes = (blob.payload.size() + 7) / 8;
  for (std::size_t b = 0; b < bytes; ++b) {
    const std::size_t len = blob.payload.size() - 8 * b < 8 ? blob.payload.size() - 8 * b : 8;
    out.push_back(static_cast<std::uint8_t>(blob.payload.extract(8 * b, len)));
  }
  return out;
}

SketchBlob deserialize_blob(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw InvalidArgument("not a sketch blob (missing ISKB header)");
  }
  std::size_t pos = 4;
  SketchBlob blob;
  const auto algo = static_cast<std::uint8_t>(get(bytes, pos, 1));
  const auto semantics = static_cast<std::uint8_t>(get(bytes, pos, 1));
  if (!valid_algo(algo & 0x0F) || !valid_algo(algo >> 4) || semantics > 3) {
    throw InvalidArgument("corrupt sketch blob: unknown algorithm or semantics tag");
  }
  blob.algo = static_cast<Algo>(algo & 0x0F);
  blob.base_algo = blob.algo == Algo::MedianBoost ? static_cast<Algo>(algo >> 4) : Algo::ReleaseDb;
  blob.semantics = static_cast<Semantics>(semantics);
  blob.params.k = static_cast<std::uint32_t>(get(bytes, pos, 2));
  blob.params.epsilon = std::bit_cast<double>(get(bytes, pos, 8));
  blob.params.delta = std::bit_cast<double>(get(bytes, pos, 8));
  blob.params.n = get(bytes, pos, 8);
  blob.params.d = static_cast<std::uint32_t>(get(bytes, pos, 4));
  blob.seed = get(bytes, pos, 8);
  const std::uint64_t bits = get(bytes, pos, 8);
  blob.params.validate();
  if (bytes.size() - pos != (bits + 7) / 8) {
    throw InvalidArgument("corrupt sketch blob: payload length does not match header");
  }
  blob.payload = BitVector(bits);
  for (std::uint64_t b = 0; b * 8 < bits; ++b) {
    const std::size_t len = bits - 8 * b < 8 ? bits - 8 * b : 8;
    blob.payload.deposit(8 * b, len, bytes[pos + b]);
  }
  return blob;
}

void write_blob(const SketchBlob& blob, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write sketch file " + path.string());
  const auto bytes = serialize_blob(blob);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

SketchBlob read_blob(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open sketch file " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_blob(bytes);
}

}  // namespace sketchlab
