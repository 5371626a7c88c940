#include "tuxqa/errors.hpp"

namespace tuxqa {

IoError::IoError(const std::string& path, const std::string& what)
    : Error(path + ": " + what), path_(path) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

std::string invariant_message(std::uint64_t id, const std::string& reason,
                              std::optional<std::size_t> line) {
  std::string msg = "record " + std::to_string(id) + ": " + reason;
  if (line) msg = "line " + std::to_string(*line) + ": " + msg;
  return msg;
}

}  // namespace

InvariantError::InvariantError(std::uint64_t record_id, std::string reason,
                               std::optional<std::size_t> line)
    : Error(invariant_message(record_id, reason, line)),
      record_id_(record_id),
      reason_(std::move(reason)),
      line_(line) {}

UnknownQuestion::UnknownQuestion(std::uint64_t id)
    : Error("unknown question id " + std::to_string(id)), id_(id) {}

FormatVersionMismatch::FormatVersionMismatch(int expected, int found)
    : Error("index format version " + std::to_string(found) + " not supported (expected " +
            std::to_string(expected) + ")"),
      expected_(expected),
      found_(found) {}

}  // namespace tuxqa
