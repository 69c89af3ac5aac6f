#include "semgraph/lexer.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace semgraph {

const char* to_string(TokenKind k) {
  switch (k) {
    case TokenKind::KwMeaning: return "MEANING";
    case TokenKind::KwIntensive: return "INTENSIVE";
    case TokenKind::KwWith: return "WITH";
    case TokenKind::KwSpecialize: return "SPECIALIZE";
    case TokenKind::KwStatic: return "STATIC";
    case TokenKind::KwPublic: return "PUBLIC";
    case TokenKind::KwPrivate: return "PRIVATE";
    case TokenKind::KwJoin: return "JOIN";
    case TokenKind::KwAs: return "AS";
    case TokenKind::Arrow: return "ARROW";
    case TokenKind::RefArrow: return "REF_ARROW";
    case TokenKind::LBrace: return "LBRACE";
    case TokenKind::RBrace: return "RBRACE";
    case TokenKind::LParen: return "LPAREN";
    case TokenKind::RParen: return "RPAREN";
    case TokenKind::Comma: return "COMMA";
    case TokenKind::Bar: return "BAR";
    case TokenKind::Question: return "QUESTION";
    case TokenKind::Semicolon: return "SEMICOLON";
    case TokenKind::SetOf: return "SETOF";
    case TokenKind::Equiv: return "EQUIV";
    case TokenKind::Spec: return "SPEC";
    case TokenKind::SpecSuper: return "SPEC_SUPER";
    case TokenKind::SpecSub: return "SPEC_SUB";
    case TokenKind::Implied: return "IMPLIED";
    case TokenKind::Colon: return "COLON";
    case TokenKind::Caret: return "CARET";
    case TokenKind::Star: return "STAR";
    case TokenKind::DoubleBar: return "DOUBLE_BAR";
    case TokenKind::Amp: return "AMP";
    case TokenKind::Dollar: return "DOLLAR";
    case TokenKind::Hash: return "HASH";
    case TokenKind::Dot: return "DOT";
    case TokenKind::At: return "AT";
    case TokenKind::Identifier: return "IDENT";
    case TokenKind::String: return "STRING";
    case TokenKind::Number: return "NUMBER";
    case TokenKind::End: return "END";
  }
  return "?";
}

namespace {

// Longest spellings first so that prefix matches lose.
constexpr std::array<std::pair<std::string_view, TokenKind>, 25> kPunctuation{{
    {"-->", TokenKind::RefArrow}, {"<=>", TokenKind::Equiv},   {"<=!", TokenKind::SpecSuper},
    {"!<=", TokenKind::SpecSub},  {"[*]", TokenKind::SetOf},   {"->", TokenKind::Arrow},
    {"<=", TokenKind::Spec},      {":-", TokenKind::Implied},  {"||", TokenKind::DoubleBar},
    {"{", TokenKind::LBrace},     {"}", TokenKind::RBrace},    {"(", TokenKind::LParen},
    {")", TokenKind::RParen},     {",", TokenKind::Comma},     {"|", TokenKind::Bar},
    {"?", TokenKind::Question},   {";", TokenKind::Semicolon}, {":", TokenKind::Colon},
    {"^", TokenKind::Caret},      {"*", TokenKind::Star},      {"&", TokenKind::Amp},
    {"$", TokenKind::Dollar},     {"#", TokenKind::Hash},      {".", TokenKind::Dot},
    {"@", TokenKind::At},
}};

constexpr std::array<std::pair<std::string_view, TokenKind>, 9> kKeywords{{
    {"meaning", TokenKind::KwMeaning},
    {"intensive", TokenKind::KwIntensive},
    {"with", TokenKind::KwWith},
    {"specialize", TokenKind::KwSpecialize},
    {"static", TokenKind::KwStatic},
    {"public", TokenKind::KwPublic},
    {"private", TokenKind::KwPrivate},
    {"join", TokenKind::KwJoin},
    {"as", TokenKind::KwAs},
}};

bool isIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool isIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipTrivia();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skipTrivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    Token tok;
    tok.span.line = line_;
    tok.span.column = col_;
    char c = text_[pos_];
    if (isIdentStart(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && isIdentChar(text_[pos_])) advance();
      tok.text = std::string(text_.substr(start, pos_ - start));
      tok.kind = TokenKind::Identifier;
      for (const auto& [spelling, kind] : kKeywords) {
        if (spelling == tok.text) tok.kind = kind;
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      tok.kind = TokenKind::Number;
      tok.text = std::string(text_.substr(start, pos_ - start));
    } else if (c == '\'') {
      advance();
      std::string value;
      while (true) {
        if (pos_ >= text_.size() || text_[pos_] == '\n') {
          throw SyntaxError("unterminated string literal", tok.span);
        }
        char d = text_[pos_];
        if (d == '\'') {
          advance();
          break;
        }
        if (d == '\\' && pos_ + 1 < text_.size()) {
          advance();
          d = text_[pos_];
        }
        value.push_back(d);
        advance();
      }
      tok.kind = TokenKind::String;
      tok.text = std::move(value);
    } else {
      bool matched = false;
      for (const auto& [spelling, kind] : kPunctuation) {
        if (text_.substr(pos_, spelling.size()) == spelling) {
          tok.kind = kind;
          tok.text = std::string(spelling);
          advance(spelling.size());
          matched = true;
          break;
        }
      }
      if (!matched) {
        std::string shown(1, c);
        throw SyntaxError("unrecognized character '" + shown + "'", tok.span);
      }
    }
    tok.span.endLine = line_;
    tok.span.endColumn = col_;
    return tok;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace semgraph
