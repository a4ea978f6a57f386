#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "sicnet/errors.hpp"
#include "sicnet/experiments.hpp"

namespace sicnet {

namespace {

std::string quote_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        char buf[64];
        if constexpr (std::is_same_v<T, double>) {
          std::snprintf(buf, sizeof buf, "%.9g", v);
          return buf;
        } else if constexpr (std::is_same_v<T, long long>) {
          std::snprintf(buf, sizeof buf, "%lld", v);
          return buf;
        } else {
          return quote_field(v);
        }
      },
      cell);
}

}  // namespace

std::string format_csv(const SweepResult& result) {
  std::string out;
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (i) out += ',';
    out += quote_field(result.columns[i]);
  }
  out += "\r\n";
  for (const auto& row : result.rows) {
    if (row.size() != result.columns.size()) throw DomainError("csv: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

void emit_csv(const SweepResult& result, const std::string& path) {
  const std::string text = format_csv(result);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write failed: " + path);
}

CsvTable parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t i = 0;

  auto end_field = [&] {
    record.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  while (i < text.size()) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      ++i;
      continue;
    }
    if (c == '"' && !field_started && field.empty()) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' || c == '\n') {
      end_record();
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      field += c;
      field_started = true;
    }
    ++i;
  }
  if (in_quotes) throw ConfigError("csv: unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();

  CsvTable table;
  if (records.empty()) return table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size())
      throw ConfigError("csv: record " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                        " fields, header has " + std::to_string(table.header.size()));
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace sicnet
