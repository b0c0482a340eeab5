#include "sketchlab/core/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "sketchlab/core/error.hpp"

namespace sketchlab {

Database parse_database(std::istream& in) {
  std::vector<BitVector> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    BitVector row(line.size());
    for (std::size_t j = 0; j < line.size(); ++j) {
      if (line[j] == '1') {
        row.set(j, true);
      } else if (line[j] != '0') {
        throw ParseError(line_no, "non-0/1 character '" + std::string(1, line[j]) + "'");
      }
    }
    if (row.empty()) throw ParseError(line_no, "empty row");
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(line_no, "ragged width: expected " + std::to_string(rows.front().size()) +
                                    " columns, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(line_no, "database has no rows");
  return Database::from_rows(rows);
}

void format_database(const Database& db, std::ostream& out) {
  std::string line(db.d(), '0');
  for (std::size_t i = 0; i < db.n(); ++i) {
    for (std::size_t j = 0; j < db.d(); ++j) line[j] = db.get(i, j) ? '1' : '0';
    out << line << '\n';
  }
}

Database read_database(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open database file " + path.string());
  return parse_database(in);
}

void write_database(const Database& db, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write database file " + path.string());
  format_database(db, out);
}

namespace {

void put_u64(std::ostream& out, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((value >> (8 * i)) & 0xFF));
}

std::uint64_t get_u64(std::istream& in) {
  std::uint64_t value = 0;
  for (int i = 0; i < 8; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw ParseError(0, "truncated binary header");
    value |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return value;
}

}  // namespace

Database read_database_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open database file " + path.string());
  const std::uint64_t n = get_u64(in);
  const std::uint64_t d = get_u64(in);
  if (n == 0 || d == 0) throw ParseError(0, "binary database needs n >= 1 and d >= 1");
  Database db(n, d);
  const std::size_t row_bytes = (d + 7) / 8;
  std::vector<char> buf(row_bytes);
  for (std::size_t i = 0; i < n; ++i) {
    if (!in.read(buf.data(), static_cast<std::streamsize>(row_bytes))) {
      throw ParseError(i + 1, "truncated binary row");
    }
    for (std::size_t j = 0; j < d; ++j) {
      db.set(i, j, (static_cast<unsigned char>(buf[j / 8]) >> (j % 8)) & 1U);
    }
  }
  return db;
}

void write_database_binary(const Database& db, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write database file " + path.string());
  put_u64(out, db.n());
  put_u64(out, db.d());
  const std::size_t row_bytes = (db.d() + 7) / 8;
  std::vector<char> buf(row_bytes);
  for (std::size_t i = 0; i < db.n(); ++i) {
    std::fill(buf.begin(), buf.end(), 0);
    for (std::size_t j = 0; j < db.d(); ++j) {
      if (db.get(i, j)) buf[j / 8] = static_cast<char>(buf[j / 8] | (1 << (j % 8)));
    }
    out.write(buf.data(), static_cast<std::streamsize>(row_bytes));
  }
}

}  // namespace sketchlab
