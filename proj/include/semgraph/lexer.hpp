#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "semgraph/diagnostics.hpp"

namespace semgraph {

enum class TokenKind {
  // keywords
  KwMeaning,
  KwIntensive,
  KwWith,
  KwSpecialize,
  KwStatic,
  KwPublic,
  KwPrivate,
  KwJoin,
  KwAs,
  // punctuation
  Arrow,         // ->
  RefArrow,      // -->
  LBrace,        // {
  RBrace,        // }
  LParen,        // (
  RParen,        // )
  Comma,         // ,
  Bar,           // |
  Question,      // ?
  Semicolon,     // ;
  SetOf,         // [*]
  Equiv,         // <=>
  Spec,          // <=
  SpecSuper,     // <=!
  SpecSub,       // !<=
  Implied,       // :-
  Colon,         // :
  Caret,         // ^
  Star,          // *
  DoubleBar,     // ||
  Amp,           // &
  Dollar,        // $
  Hash,          // #
  Dot,           // .
  At,            // @
  // payload tokens
  Identifier,
  String,        // 'text'
  Number,        // decimal natural
  End,
};

const char* to_string(TokenKind k);

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // identifier name, literal contents, or punctuation spelling
  Span span;
};

/// Splits schema text into tokens. The trailing `End` token is not included.
/// `//` starts a comment that runs to end of line.
std::vector<Token> tokenize(std::string_view text);

}  // namespace semgraph
