#include "csv.hpp"

#include "tuxqa/errors.hpp"

namespace tuxqa::detail {

std::vector<CsvRow> parse_csv(std::string_view content) {
  std::vector<CsvRow> rows;
  std::size_t i = 0;
  std::size_t line = 1;
  while (i < content.size()) {
    // Skip blank and comment lines.
    const auto eol = content.find('\n', i);
    const auto raw = content.substr(i, eol == std::string_view::npos ? std::string_view::npos : eol - i);
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || raw[first] == '#') {
      if (eol == std::string_view::npos) break;
      i = eol + 1;
      ++line;
      continue;
    }

    CsvRow row;
    row.line = line;
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;
    for (;;) {
      if (i >= content.size()) {
        if (quoted) throw ParseError(row.line, "unterminated quoted field");
        break;
      }
      const char c = content[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < content.size() && content[i + 1] == '"') {
            field += '"';
            i += 2;
          } else {
            quoted = false;
            ++i;
          }
          continue;
        }
        if (c == '\n') ++line;
        field += c;
        ++i;
        continue;
      }
      if (c == '"' && field.empty() && !field_was_quoted) {
        quoted = true;
        field_was_quoted = true;
        ++i;
        continue;
      }
      if (c == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        ++i;
        continue;
      }
      if (c == '\n') {
        ++i;
        ++line;
        break;
      }
      if (c != '\r') field += c;
      ++i;
    }
    row.fields.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace tuxqa::detail
