#pragma once

#include <string>
#include <vector>

namespace eitsim {

// One CSV cell, already formatted. Numeric helpers below.
using CsvRow = std::vector<std::string>;

// RFC-4180-style writer: header first, \n line endings, UTF-8, quoting only
// when a field contains comma/quote/newline. NaN serializes literally as NaN.
void write_csv(const std::string& path, const CsvRow& header,
               const std::vector<CsvRow>& rows);

std::string csv_to_string(const CsvRow& header, const std::vector<CsvRow>& rows);

// %.15g: at least 12 significant digits, no locale separators; NaN -> "NaN".
std::string format_double(double value);

// %.17g: bit-exact round trip through strtod.
std::string format_double_exact(double value);

}  // namespace eitsim
