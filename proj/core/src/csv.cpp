#include "irlab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "irlab/errors.hpp"

namespace irlab {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\r\n") != std::string::npos;
}

std::string quote(const std::string& field) {
  if (!needs_quoting(field)) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& os, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ',';
    os << quote(row[i]);
  }
  os << "\r\n";
}

}  // namespace

void emit_csv(const CsvTable& table, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("emit_csv: cannot open " + path);
  write_row(os, table.header);
  for (const auto& row : table.rows) write_row(os, row);
  if (!os) throw IoError("emit_csv: write failed for " + path);
}

CsvTable parse_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("parse_csv: cannot open " + path);
  std::stringstream buffer;
  buffer << is.rdbuf();
  const std::string text = buffer.str();

  CsvTable table;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool first_row = true;
  auto end_field = [&] {
    row.push_back(field);
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    if (first_row) {
      table.header = row;
      first_row = false;
    } else {
      table.rows.push_back(row);
    }
    row.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
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
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      // consumed with the following '\n'
    } else if (c == '\n') {
      end_row();
    } else {
      field += c;
    }
  }
  if (!field.empty() || !row.empty()) end_row();
  return table;
}

}  // namespace irlab
