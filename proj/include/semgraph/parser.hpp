#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "semgraph/ast.hpp"
#include "semgraph/lexer.hpp"

namespace semgraph {

SourceSchema parseSchema(const std::vector<Token>& tokens);
SourceSchema parseSchema(std::string_view text);

/// Parses a single `head :- body` rule.
Constraint parseComplement(std::string_view text);

/// Parses one label reference such as `#School.Teacher`, `.Teacher` or `Teacher`.
LabelRef parseLabelRef(std::string_view text);

/// Variable bookkeeping for a complement rule.
struct ComplementVars {
  std::set<std::string> head;
  std::set<std::string> body;
  std::set<std::string> existential;  // head minus body
  std::vector<std::string> warnings;
};

/// Computes variable sets. Throws SyntaxError when a variable is given two
/// different labels.
ComplementVars analyzeComplement(const Constraint& rule);

/// Canonical text; `parseSchema(printSchema(s)) == s` for well-formed ASTs.
std::string printSchema(const SourceSchema& schema);
std::string printTopDecl(const TopDecl& decl);
std::string printConstraint(const Constraint& c);
std::string printOccurrence(const OccurrenceExpr& e);

}  // namespace semgraph
