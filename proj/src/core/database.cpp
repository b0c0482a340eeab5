#include "sketchlab/core/database.hpp"

#include <bit>

#include "sketchlab/core/error.hpp"
#include "sketchlab/core/random.hpp"

namespace sketchlab {

Itemset::Itemset(BitVector members)
    : members_(std::move(members)), cardinality_(members_.popcount()) {}

Itemset Itemset::from_indices(std::size_t d, std::span<const std::size_t> indices) {
  BitVector bits(d);
  for (std::size_t idx : indices) {
    if (idx >= d) throw InvalidArgument("itemset attribute outside [1, d]");
    bits.set(idx, true);
  }
  return Itemset(std::move(bits));
}

Itemset Itemset::from_attributes(std::size_t d, std::span<const std::size_t> attributes) {
  BitVector bits(d);
  for (std::size_t a : attributes) {
    if (a == 0 || a > d) throw InvalidArgument("itemset attribute outside [1, d]");
    bits.set(a - 1, true);
  }
  return Itemset(std::move(bits));
}

std::vector<std::size_t> Itemset::indices() const {
  std::vector<std::size_t> out;
  out.reserve(cardinality_);
  for (std::size_t w = 0; w < members_.word_count(); ++w) {
    std::uint64_t word = members_.word(w);
    while (word != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::vector<std::size_t> Itemset::attributes() const {
  auto out = indices();
  for (auto& a : out) ++a;
  return out;
}

bool Itemset::subset_of(const Itemset& other) const {
  if (other.dim() != dim()) throw InvalidArgument("itemset dimension mismatch");
  for (std::size_t w = 0; w < members_.word_count(); ++w) {
    if ((members_.word(w) & ~other.members_.word(w)) != 0) return false;
  }
  return true;
}

Itemset Itemset::united(const Itemset& other) const {
  if (other.dim() != dim()) throw InvalidArgument("itemset dimension mismatch");
  BitVector bits = members_;
  for (std::size_t i : other.indices()) bits.set(i, true);
  return Itemset(std::move(bits));
}

std::string Itemset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t a : attributes()) {
    if (!first) out += ',';
    out += std::to_string(a);
    first = false;
  }
  return out + "}";
}

Database::Database(std::size_t n, std::size_t d) : n_(n), d_(d), wpr_(words_for_bits(d)) {
  if (n == 0 || d == 0) throw InvalidArgument("database needs n >= 1 and d >= 1");
  data_.assign(n_ * wpr_, 0);
}

Database Database::from_rows(std::span<const BitVector> rows) {
  if (rows.empty()) throw InvalidArgument("database needs n >= 1 and d >= 1");
  Database db(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) db.set_row(i, rows[i]);
  return db;
}

Database Database::from_strings(std::initializer_list<std::string_view> rows) {
  std::vector<BitVector> bits;
  for (auto r : rows) bits.push_back(BitVector::from_string(r));
  return from_rows(bits);
}

BitVector Database::row_bits(std::size_t i) const {
  BitVector out(d_);
  for (std::size_t w = 0; w < wpr_; ++w) {
    const std::size_t len = (w + 1) * 64 <= d_ ? 64 : d_ - w * 64;
    out.deposit(w * 64, len, data_[i * wpr_ + w]);
  }
  return out;
}

void Database::set(std::size_t i, std::size_t j, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (j & 63);
  auto& word = data_[i * wpr_ + (j >> 6)];
  word = value ? (word | bit) : (word & ~bit);
}

void Database::set_row(std::size_t i, const BitVector& bits) {
  if (bits.size() != d_) throw InvalidArgument("every row must have exactly d bits");
  for (std::size_t w = 0; w < wpr_; ++w) data_[i * wpr_ + w] = bits.word(w);
}

namespace {
constexpr double kThresholdSlack = 1e-12;
}

bool Frequency::at_least(double threshold) const {
  return static_cast<double>(count) >=
         threshold * static_cast<double>(total) * (1.0 - kThresholdSlack);
}

bool Frequency::above(double threshold) const {
  return static_cast<double>(count) >
         threshold * static_cast<double>(total) * (1.0 + kThresholdSlack);
}

bool row_contains(std::span<const std::uint64_t> row_words, const Itemset& t) {
  const auto& m = t.members();
  for (std::size_t w = 0; w < m.word_count(); ++w) {
    if ((row_words[w] & m.word(w)) != m.word(w)) return false;
  }
  return true;
}

bool row_contains(const BitVector& row, const Itemset& t) {
  if (row.size() != t.dim()) throw InvalidArgument("row length differs from itemset dimension");
  return row_contains(row.words(), t);
}

std::uint64_t support_count(const Database& db, const Itemset& t) {
  if (t.dim() != db.d()) throw InvalidArgument("itemset dimension differs from database d");
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < db.n(); ++i) count += row_contains(db.row(i), t) ? 1 : 0;
  return count;
}

Frequency frequency(const Database& db, const Itemset& t) {
  return Frequency{support_count(db, t), db.n()};
}

Database random_database(std::size_t n, std::size_t d, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw InvalidArgument("0 <= density <= 1");
  Database db(n, d);
  CounterRng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (rng.uniform() < density) db.set(i, j, true);
    }
  }
  return db;
}

}  // namespace sketchlab
