#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace moonshine {

/// Outcome of a finite-truncation check. Inconclusive means the guaranteed
/// precision window was too small to decide.
enum class Verdict { pass, fail, inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

/// A precondition on the mathematical input was violated (division by zero,
/// non-normalized series, non-unimodular matrix, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The available precision window does not cover what was asked for.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An equivariant family lacks an entry required by an operation.
class IncompleteFamilyError : public std::runtime_error {
 public:
  IncompleteFamilyError(unsigned g, unsigned h)
      : std::runtime_error("family has no entry for pair (" + std::to_string(g) +
                           "," + std::to_string(h) + ")"),
        g_(g),
        h_(h) {}

  unsigned g() const { return g_; }
  unsigned h() const { return h_; }

 private:
  unsigned g_;
  unsigned h_;
};

/// Malformed input text; carries a 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string const& what, std::size_t line, std::size_t column = 1)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace moonshine
