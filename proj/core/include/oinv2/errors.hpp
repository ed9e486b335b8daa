#pragma once

#include <stdexcept>
#include <string>

namespace oinv2 {

struct SourcePos {
  int line = 0;
  int column = 0;
};

// Malformed concrete syntax (formula text, structure JSON, DIMACS).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourcePos pos)
      : std::runtime_error(msg + " (line " + std::to_string(pos.line) +
                           ", column " + std::to_string(pos.column) + ")"),
        pos_(pos) {}
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}

  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_{};
};

// Well-formed input that violates an operation's precondition.
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant; never the caller's fault.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace oinv2
