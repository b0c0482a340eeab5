#pragma once

#include <filesystem>
#include <iosfwd>

#include "sketchlab/core/database.hpp"

namespace sketchlab {

// Text format: one row per line of '0'/'1', newline-terminated, no header.
Database parse_database(std::istream& in);
void format_database(const Database& db, std::ostream& out);
Database read_database(const std::filesystem::path& path);
void write_database(const Database& db, const std::filesystem::path& path);

// Binary format: u64 n, u64 d (little-endian), then ceil(d/8) bytes per row,
// LSB-first within each byte.
Database read_database_binary(const std::filesystem::path& path);
void write_database_binary(const Database& db, const std::filesystem::path& path);

}  // namespace sketchlab
