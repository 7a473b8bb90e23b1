#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace bibliorank::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name, -1 if absent.
  int column(const std::string& name) const;
};

// Reads a whole CSV file. Understands double-quoted fields and CRLF line
// endings. Throws ValidationError naming file and line on malformed input.
Table read_csv(const std::filesystem::path& path);

// Same, but fails unless the header matches `expected` exactly.
Table read_csv(const std::filesystem::path& path,
               const std::vector<std::string>& expected);

std::string escape_field(const std::string& field);
std::string join_row(const std::vector<std::string>& fields);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);
// Fixed formatting for reports (paper tables print 3 decimals).
std::string format_fixed(double v, int decimals);

// Writes content to path via a temp file + rename so readers never observe
// a half-written file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace bibliorank::csv
