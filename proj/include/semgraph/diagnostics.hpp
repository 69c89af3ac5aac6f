#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace semgraph {

/// Source location. Spans never take part in AST equality.
struct Span {
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t endLine = 0;
  std::size_t endColumn = 0;

  friend bool operator==(const Span&, const Span&) { return true; }
};

enum class Severity { Info, Warning, Error };

const char* to_string(Severity s);

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexical or syntax error carrying a position in the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::string message, Span span, std::vector<std::string> expected = {});

  const Span& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  Span span_;
  std::vector<std::string> expected_;
};

/// Raised when labels cannot be resolved or the schema is structurally
/// inconsistent (cycles, duplicates, ambiguous mappings).
class ResolutionError : public Error {
 public:
  ResolutionError(std::string message, Span span = {});
  const Span& span() const { return span_; }

 private:
  Span span_;
};

/// Raised by graph mutations that would break a schema rule.
class GraphError : public Error {
 public:
  GraphError(std::string rule, std::string message);
  const std::string& rule() const { return rule_; }

 private:
  std::string rule_;
};

/// Formats `file:line:col: severity: message`.
std::string formatDiagnostic(const std::string& file, const Span& span, Severity severity,
                             const std::string& message);

}  // namespace semgraph
