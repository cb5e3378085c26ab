#pragma once

#include <stdexcept>
#include <string>

namespace vsep {

/// Unreadable or malformed input; remembers the file and 1-based line when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, long line, const std::string& what)
      : std::runtime_error(line > 0 ? path + ":" + std::to_string(line) + ": " + what
                                    : path + ": " + what),
        path_(std::move(path)),
        line_(line) {}

  const std::string& path() const noexcept { return path_; }
  long line() const noexcept { return line_; }

 private:
  std::string path_;
  long line_;
};

/// Instance whose constraint set is empty or cannot admit a valid separator.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated internal invariant; signals a bug rather than bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vsep
