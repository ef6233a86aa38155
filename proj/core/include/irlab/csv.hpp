#pragma once

#include <string>
#include <vector>

namespace irlab {

// RFC-4180-style CSV: header row, '.' decimal separator, numbers printed with
// 17 significant digits so round-trips are bit-exact for doubles.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_double(double v);  // %.17g

void emit_csv(const CsvTable& table, const std::string& path);  // IoError on failure
CsvTable parse_csv(const std::string& path);                    // IoError on failure

}  // namespace irlab
