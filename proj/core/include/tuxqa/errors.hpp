#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace tuxqa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
  IoError(const std::string& path, const std::string& what);
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

/// Malformed input. `line` is 1-based; 0 when the input has no line structure.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A loaded record violates a data invariant. The whole input is rejected.
class InvariantError : public Error {
public:
  InvariantError(std::uint64_t record_id, std::string reason,
                 std::optional<std::size_t> line = std::nullopt);
  std::uint64_t record_id() const noexcept { return record_id_; }
  const std::string& reason() const noexcept { return reason_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

private:
  std::uint64_t record_id_;
  std::string reason_;
  std::optional<std::size_t> line_;
};

class UnknownQuestion : public Error {
public:
  explicit UnknownQuestion(std::uint64_t id);
  std::uint64_t id() const noexcept { return id_; }

private:
  std::uint64_t id_;
};

class EmptyCorpus : public Error {
public:
  EmptyCorpus() : Error("corpus contains no questions") {}
};

class EmptyQuery : public Error {
public:
  EmptyQuery() : Error("query text is empty") {}
};

class IndexNotBuilt : public Error {
public:
  IndexNotBuilt() : Error("engine has no index") {}
};

class EmptyInput : public Error {
public:
  using Error::Error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class EmptyGoldSet : public Error {
public:
  EmptyGoldSet() : Error("gold query set is empty") {}
};

class EmptySamples : public Error {
public:
  EmptySamples() : Error("no latency samples") {}
};

class FormatVersionMismatch : public Error {
public:
  FormatVersionMismatch(int expected, int found);
  int expected() const noexcept { return expected_; }
  int found() const noexcept { return found_; }

private:
  int expected_;
  int found_;
};

}  // namespace tuxqa
