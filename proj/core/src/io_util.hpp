#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "tuxqa/errors.hpp"

namespace tuxqa::detail {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Calls fn(line_number, line) for each line; line_number is 1-based and the
// line excludes its terminator (\n or \r\n).
template <typename Fn>
void for_each_line(std::string_view content, Fn&& fn) {
  std::size_t line_no = 0;
  while (!content.empty()) {
    ++line_no;
    const auto nl = content.find('\n');
    auto line = content.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line_no, line);
    if (nl == std::string_view::npos) break;
    content.remove_prefix(nl + 1);
  }
}

inline bool is_comment_or_blank(std::string_view line) {
  const auto first = line.find_first_not_of(" \t");
  return first == std::string_view::npos || line[first] == '#';
}

}  // namespace tuxqa::detail
