#include "semgraph/diagnostics.hpp"

#include <sstream>

namespace semgraph {

const char* to_string(Severity s) {
  switch (s) {
    case Severity::Info:
      return "info";
    case Severity::Warning:
      return "warning";
    case Severity::Error:
      return "error";
  }
  return "error";
}

namespace {
std::string withExpected(const std::string& message, const std::vector<std::string>& expected) {
  if (expected.empty()) return message;
  std::ostringstream os;
  os << message << " (expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) os << (i + 1 == expected.size() ? " or " : ", ");
    os << expected[i];
  }
  os << ")";
  return os.str();
}
}  // namespace

SyntaxError::SyntaxError(std::string message, Span span, std::vector<std::string> expected)
    : Error(withExpected(message, expected)),
      message_(withExpected(message, expected)),
      span_(span),
      expected_(std::move(expected)) {}

ResolutionError::ResolutionError(std::string message, Span span)
    : Error(std::move(message)), span_(span) {}

GraphError::GraphError(std::string rule, std::string message)
    : Error(rule + ": " + message), rule_(std::move(rule)) {}

std::string formatDiagnostic(const std::string& file, const Span& span, Severity severity,
                             const std::string& message) {
  std::ostringstream os;
  os << file << ':' << span.line << ':' << span.column << ": " << to_string(severity) << ": "
     << message;
  return os.str();
}

}  // namespace semgraph
