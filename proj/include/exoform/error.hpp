#pragma once

#include <stdexcept>
#include <string>

namespace exoform {

enum class ErrorKind {
  parse,                 // lexical or syntactic error in DSL text
  name,                  // reference to an undeclared object
  chart,                 // variable outside the chart, chart mismatch
  dimension,             // degree/arity/index-range violation
  degree,                // unsupported form degree for an operation
  unsupported_metric,    // hodge star outside the supported metric class
  unsupported_integrand, // non-polynomial integrand
  unsupported,           // everything else outside the v1 expression class
  not_closed,            // antiderivative of a form that is not closed
  no_origination,        // restriction did not produce an identical relation
  usage,                 // bad verb, flags, or object names at the interface
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Errors raised while reading DSL text additionally carry a 1-based source
// position; the kind distinguishes syntax from name-resolution and dimension
// problems found at the same stage.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string message,
             ErrorKind kind = ErrorKind::parse)
      : Error(kind, "line " + std::to_string(line) + ", col " +
                        std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace exoform
