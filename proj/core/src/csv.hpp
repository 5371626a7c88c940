#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tuxqa::detail {

struct CsvRow {
  std::size_t line = 0;  // line the record starts on
  std::vector<std::string> fields;
};

// RFC 4180-style records: fields may be double-quoted, quotes inside quoted
// fields are doubled, quoted fields may span lines. Blank lines and lines
// starting with '#' are skipped. Throws ParseError on an unterminated quote.
std::vector<CsvRow> parse_csv(std::string_view content);

}  // namespace tuxqa::detail
