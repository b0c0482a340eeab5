#include "sketchlab/indicator/ecc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "sketchlab/core/combinatorics.hpp"
#include "sketchlab/core/error.hpp"
#include "sketchlab/core/random.hpp"

namespace sketchlab {

namespace {

constexpr std::size_t kCrcBits = 8;
constexpr std::size_t kMaxWeight = 4;
constexpr std::size_t kPositionBits = 16;
constexpr std::uint64_t kMaxTable = std::uint64_t{1} << 21;
constexpr int kCandidatesPerColumn = 512;

// Error pattern: up to four positions, each stored as position + 1.
std::uint64_t pack_add(std::uint64_t packed, std::size_t weight, std::size_t position) {
  return packed | (static_cast<std::uint64_t>(position + 1) << (kPositionBits * weight));
}

struct Entry {
  std::uint64_t syndrome;
  std::uint64_t packed;
};

// Patterns of weight ≤ t over the positions placed so far, by weight.
struct PatternSet {
  std::vector<std::vector<Entry>> by_weight;
  std::unordered_set<std::uint64_t> syndromes;

  explicit PatternSet(std::size_t t) : by_weight(t + 1) {
    by_weight[0].push_back({0, 0});
    syndromes.insert(0);
  }

  // A column h keeps all syndromes distinct iff h ⊕ s(A) is new for every
  // pattern A of weight < t.
  bool admissible(std::uint64_t h) const {
    for (std::size_t w = 0; w + 1 < by_weight.size(); ++w) {
      for (const Entry& e : by_weight[w]) {
        if (syndromes.count(h ^ e.syndrome)) return false;
      }
    }
    return true;
  }

  void add(std::size_t position, std::uint64_t h) {
    for (std::size_t w = by_weight.size() - 1; w >= 1; --w) {
      const std::size_t old = by_weight[w - 1].size();
      for (std::size_t i = 0; i < old; ++i) {
        const Entry& e = by_weight[w - 1][i];
        by_weight[w].push_back({h ^ e.syndrome, pack_add(e.packed, w - 1, position)});
        syndromes.insert(h ^ e.syndrome);
      }
    }
  }
};

}  // namespace

std::uint8_t crc8(const BitVector& bits) {
  std::uint8_t crc = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const bool top = ((crc >> 7) & 1U) != static_cast<unsigned>(bits.get(i));
    crc = static_cast<std::uint8_t>(crc << 1);
    if (top) crc ^= 0x07;
  }
  return crc;
}

BitVector IdentityCodec::encode(const BitVector& message) const {
  if (message.size() != bits_) throw InvalidArgument("message length does not match codec");
  return message;
}

std::optional<BitVector> IdentityCodec::decode(const BitVector& codeword) const {
  if (codeword.size() != bits_) throw InvalidArgument("codeword length does not match codec");
  return codeword;
}

LinearCodec::LinearCodec(std::size_t codeword_bits, std::uint64_t seed) : n_(codeword_bits) {
  t_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.04 * static_cast<double>(n_) - 1e-9)));
  if (t_ > kMaxWeight) {
    throw InvalidArgument("codeword of " + std::to_string(n_) +
                          " bits needs more than 4 correctable errors; syndrome table too large");
  }
  std::uint64_t table_size = 0;
  for (std::size_t w = 0; w <= t_; ++w) table_size += binomial(n_, w);
  if (table_size > kMaxTable) throw InvalidArgument("syndrome table exceeds 2^21 entries");
  std::size_t r = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(table_size))));

  for (; r <= 64 && n_ > r + kCrcBits; ++r) {
    const std::size_t systematic = n_ - r;
    PatternSet patterns(t_);
    // Parity positions carry unit columns.
    for (std::size_t j = 0; j < r; ++j) patterns.add(systematic + j, std::uint64_t{1} << j);
    CounterRng rng(derive_seed(seed, r));
    const std::uint64_t mask = r == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
    std::vector<std::uint64_t> columns;
    for (std::size_t i = 0; i < systematic; ++i) {
      std::optional<std::uint64_t> chosen;
      for (int attempt = 0; attempt < kCandidatesPerColumn && !chosen; ++attempt) {
        const std::uint64_t h = rng.next() & mask;
        if (patterns.admissible(h)) chosen = h;
      }
      if (!chosen) break;
      patterns.add(i, *chosen);
      columns.push_back(*chosen);
    }
    if (columns.size() != systematic) continue;

    r_ = r;
    message_bits_ = systematic - kCrcBits;
    columns_ = std::move(columns);
    for (std::size_t w = 1; w <= t_; ++w) {
      for (const Entry& e : patterns.by_weight[w]) table_.emplace_back(e.syndrome, e.packed);
    }
    std::sort(table_.begin(), table_.end());
    return;
  }
  throw InvalidArgument("no linear code with a checksum fits a " + std::to_string(n_) +
                        "-bit codeword");
}

std::uint64_t LinearCodec::syndrome(const BitVector& word) const {
  std::uint64_t s = 0;
  const std::size_t systematic = n_ - r_;
  for (std::size_t i = 0; i < systematic; ++i) {
    if (word.get(i)) s ^= columns_[i];
  }
  for (std::size_t j = 0; j < r_; ++j) {
    if (word.get(systematic + j)) s ^= std::uint64_t{1} << j;
  }
  return s;
}

BitVector LinearCodec::encode(const BitVector& message) const {
  if (message.size() != message_bits_) {
    throw InvalidArgument("message must have " + std::to_string(message_bits_) + " bits");
  }
  BitVector word(n_);
  for (std::size_t i = 0; i < message_bits_; ++i) word.set(i, message.get(i));
  const std::uint8_t crc = crc8(message);
  for (std::size_t b = 0; b < kCrcBits; ++b) word.set(message_bits_ + b, (crc >> (7 - b)) & 1U);
  // Parity makes the syndrome zero.
  const std::uint64_t parity = syndrome(word);
  for (std::size_t j = 0; j < r_; ++j) word.set(n_ - r_ + j, (parity >> j) & 1U);
  return word;
}

std::optional<BitVector> LinearCodec::decode(const BitVector& codeword) const {
  if (codeword.size() != n_) {
    throw InvalidArgument("codeword must have " + std::to_string(n_) + " bits");
  }
  BitVector word = codeword;
  const std::uint64_t s = syndrome(word);
  if (s != 0) {
    auto it = std::lower_bound(table_.begin(), table_.end(), std::make_pair(s, std::uint64_t{0}));
    if (it == table_.end() || it->first != s) return std::nullopt;
    for (std::uint64_t packed = it->second; packed != 0; packed >>= kPositionBits) {
      word.flip(static_cast<std::size_t>(packed & 0xFFFF) - 1);
    }
  }
  BitVector message = word.slice(0, message_bits_);
  const std::uint8_t crc = static_cast<std::uint8_t>(word.extract(message_bits_, kCrcBits));
  // extract() is LSB-first; the CRC was written MSB-first.
  std::uint8_t stored = 0;
  for (std::size_t b = 0; b < kCrcBits; ++b) stored = static_cast<std::uint8_t>((stored << 1) | ((crc >> b) & 1U));
  if (stored != crc8(message)) return std::nullopt;
  return message;
}

}  // namespace sketchlab
