#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace vaxwane::io {

/// Splits one CSV record into fields. Handles double-quoted fields with
/// embedded commas and doubled quotes; embedded newlines are not supported.
std::vector<std::string> split_csv_record(std::string_view line);

/// Reads all records of a CSV stream (first record is the header).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// Quotes a field if it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

/// Formats a double with `significant` significant digits (%.*g), stable
/// across runs so emitted files are byte-identical for identical inputs.
std::string fmt_g(double value, int significant = 12);

/// FNV-1a 64-bit digest; used for config hashes and manifest file digests.
std::uint64_t fnv1a64(std::string_view bytes);
std::string to_hex(std::uint64_t value);

}  // namespace vaxwane::io
