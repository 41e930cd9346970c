#pragma once

#include <stdexcept>
#include <string>

namespace dtloc {

/// A well-formed request the mathematics rejects: wall slopes, non-confluent
/// relations, malformed quiver documents. The CLI maps these to exit status 1.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Quiver document syntax or structure error, with a 1-based position.
class ParseError : public DomainError {
public:
  ParseError(int line, int column, const std::string &message)
      : DomainError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

} // namespace dtloc
