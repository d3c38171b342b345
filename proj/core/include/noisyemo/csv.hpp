#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace noisyemo {

/// Shortest representation that parses back to the same double; "nan",
/// "inf" and "-inf" for non-finite values.
std::string format_double(double v);
/// Strict parse of a complete field. Throws std::invalid_argument.
double parse_double(std::string_view text);
long parse_long(std::string_view text);

/// Fields are quoted only when they contain a comma, quote or newline.
std::string csv_escape(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws std::runtime_error when the column is missing.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::istream& in);
/// Throws std::runtime_error when the file cannot be opened.
CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace noisyemo
