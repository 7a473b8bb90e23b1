#include "bibliorank/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bibliorank/errors.hpp"

namespace bibliorank::csv {

namespace fs = std::filesystem;

int Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

// Splits one physical line. Quoted fields may contain commas and doubled
// quotes; embedded newlines are not supported by any of our file formats.
std::vector<std::string> split_line(const std::string& line,
                                    const fs::path& path, std::size_t lineno) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted)
    throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                          ": unterminated quote");
  fields.push_back(cur);
  return fields;
}

}  // namespace

Table read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("missing file: " + path.string());
  Table table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      table.header = split_line(line, path, lineno);
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_line(line, path, lineno);
    if (fields.size() != table.header.size())
      throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                            ": expected " + std::to_string(table.header.size()) +
                            " fields, got " + std::to_string(fields.size()));
    table.rows.push_back(std::move(fields));
  }
  if (lineno == 0)
    throw ValidationError(path.string() + ": empty file, header required");
  return table;
}

Table read_csv(const fs::path& path, const std::vector<std::string>& expected) {
  Table table = read_csv(path);
  if (table.header != expected) {
    std::string want;
    for (const auto& h : expected) {
      if (!want.empty()) want += ',';
      want += h;
    }
    throw ValidationError(path.string() + ": bad header, expected '" + want + "'");
  }
  return table;
}

std::string escape_field(const std::string& field) {
  bool needs = field.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape_field(fields[i]);
  }
  out.push_back('\n');
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ValidationError("short write: " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("missing file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bibliorank::csv
