#include "semgraph/parser.hpp"

#include <map>
#include <utility>

namespace semgraph {

namespace {

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
    end_.kind = TokenKind::End;
    end_.text = "end of input";
    if (!tokens_.empty()) {
      end_.span = tokens_.back().span;
      end_.span.line = tokens_.back().span.endLine;
      end_.span.column = tokens_.back().span.endColumn;
    } else {
      end_.span.line = end_.span.column = 1;
    }
  }

  SourceSchema schema() {
    SourceSchema out;
    while (!atEnd()) {
      if (accept(TokenKind::Semicolon)) continue;
      out.declarations.push_back(topDecl());
    }
    return out;
  }

  Constraint singleConstraint() {
    Constraint c = constraint();
    accept(TokenKind::Semicolon);
    if (!atEnd()) fail("unexpected token after rule", {"end of input"});
    return c;
  }

  LabelRef singleLabel() {
    LabelRef l = labelRef();
    if (!atEnd()) fail("unexpected token after label", {"end of input"});
    return l;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : end_;
  }
  bool atEnd() const { return pos_ >= tokens_.size(); }
  bool check(TokenKind k, std::size_t ahead = 0) const { return peek(ahead).kind == k; }

  bool accept(TokenKind k) {
    if (!check(k)) return false;
    ++pos_;
    return true;
  }

  const Token& expect(TokenKind k, const char* spelling) {
    if (!check(k)) fail("unexpected " + describe(peek()), {spelling});
    return tokens_[pos_++];
  }

  static std::string describe(const Token& t) {
    if (t.kind == TokenKind::End) return "end of input";
    return "'" + t.text + "'";
  }

  [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected) const {
    throw SyntaxError(message, peek().span, std::move(expected));
  }

  void finishSpan(Span& span) const {
    const Token& last = pos_ > 0 ? tokens_[pos_ - 1] : end_;
    span.endLine = last.span.endLine;
    span.endColumn = last.span.endColumn;
  }

  std::string identifier(const char* what) { return expect(TokenKind::Identifier, what).text; }

  TopDecl topDecl() {
    TopDecl d;
    d.span = peek().span;
    if (accept(TokenKind::KwSpecialize)) {
      d.kind = TopDecl::Kind::Specialize;
      d.sub = labelRef();
      d.style = specOp();
      d.super = labelRef();
      expect(TokenKind::Arrow, "'->'");
      d.nested = constraintBlock();
      finishSpan(d.span);
      return d;
    }
    d.intensive = accept(TokenKind::KwIntensive);
    if (!check(TokenKind::KwMeaning)) fail("unexpected " + describe(peek()), {"'meaning'", "'specialize'"});
    ++pos_;

    if (check(TokenKind::Star)) {
      ++pos_;
      d.kind = TopDecl::Kind::Compound;
      d.compound.op = CompoundOp::Group;
      d.compound.left = rootName();
    } else {
      std::string first = rootName();
      if (check(TokenKind::Caret) || check(TokenKind::DoubleBar) || check(TokenKind::Amp)) {
        d.kind = TopDecl::Kind::Compound;
        TokenKind op = peek().kind;
        ++pos_;
        d.compound.left = first;
        d.compound.right = rootName();
        d.compound.op = op == TokenKind::Caret      ? CompoundOp::Product
                        : op == TokenKind::DoubleBar ? CompoundOp::Union
                                                     : CompoundOp::Intersection;
        if (op == TokenKind::Caret && accept(TokenKind::KwJoin)) {
          d.compound.op = CompoundOp::Join;
          expect(TokenKind::LParen, "'('");
          plainRoots_ = true;
          d.compound.joinLeft = labelRef();
          expect(TokenKind::Amp, "'&'");
          d.compound.joinRight = labelRef();
          plainRoots_ = false;
          expect(TokenKind::RParen, "')'");
        }
        if (op == TokenKind::Caret && accept(TokenKind::KwAs)) d.compound.alias = identifier("identifier");
      } else {
        d.kind = TopDecl::Kind::Meaning;
        d.label.form = LabelForm::Absolute;
        d.label.segments = {first};
        d.label.span = d.span;
        if (accept(TokenKind::Arrow)) d.body = braceBody();
        if (check(TokenKind::KwWith)) d.with = withClause();
      }
    }
    if (d.intensive && d.kind != TopDecl::Kind::Meaning) {
      throw SyntaxError("'intensive' is only valid on a plain meaning declaration", d.span);
    }
    if (d.kind == TopDecl::Kind::Compound) {
      d.label.form = LabelForm::Absolute;
      d.label.segments = {compoundRootText(d.compound)};
    }
    finishSpan(d.span);
    return d;
  }

  // '#' ident
  std::string rootName() {
    expect(TokenKind::Hash, "'#'");
    return "#" + identifier("meaning name");
  }

  SpecStyle specOp() {
    if (accept(TokenKind::Spec)) return SpecStyle::Normal;
    if (accept(TokenKind::SpecSub)) return SpecStyle::SubRestricted;
    if (accept(TokenKind::SpecSuper)) return SpecStyle::SuperRestricted;
    fail("unexpected " + describe(peek()), {"'<='", "'!<='", "'<=!'"});
  }

  bool atSpecOp() const {
    return check(TokenKind::Spec) || check(TokenKind::SpecSub) || check(TokenKind::SpecSuper);
  }

  std::string segment() {
    std::string s = identifier("label segment");
    while (check(TokenKind::Amp) && check(TokenKind::Identifier, 1)) {
      pos_ += 1;
      s += "&" + identifier("label segment");
    }
    return s;
  }

  LabelRef labelRef() {
    LabelRef l;
    l.span = peek().span;
    if (accept(TokenKind::At)) {
      LabelRef inner = labelRef();
      if (inner.form != LabelForm::Absolute) {
        throw SyntaxError("pure reference requires an absolute label", inner.span);
      }
      l.form = LabelForm::Absolute;
      l.segments = {"@" + inner.text()};
      finishSpan(l.span);
      return l;
    }
    if (check(TokenKind::Star)) {
      ++pos_;
      l.form = LabelForm::Absolute;
      l.segments.push_back("*" + rootName());
    } else if (check(TokenKind::Hash)) {
      l.form = LabelForm::Absolute;
      std::string root = rootName();
      if (!plainRoots_ && (check(TokenKind::Caret) || check(TokenKind::DoubleBar) || check(TokenKind::Amp)) &&
          check(TokenKind::Hash, 1)) {
        root += peek().text;
        ++pos_;
        root += rootName();
      }
      l.segments.push_back(root);
    } else if (check(TokenKind::Dot)) {
      ++pos_;
      l.form = LabelForm::RootRelative;
      l.segments.push_back(segment());
    } else if (check(TokenKind::Identifier)) {
      l.form = LabelForm::Local;
      l.segments.push_back(segment());
    } else {
      fail("unexpected " + describe(peek()), {"label"});
    }
    while (check(TokenKind::Dot) && check(TokenKind::Identifier, 1)) {
      ++pos_;
      l.segments.push_back(segment());
    }
    finishSpan(l.span);
    return l;
  }

  OccurrenceExpr braceBody() {
    expect(TokenKind::LBrace, "'{'");
    if (accept(TokenKind::RBrace)) return OccurrenceExpr::empty();
    OccurrenceExpr e = occ();
    expect(TokenKind::RBrace, "'}'");
    checkDistinct(e);
    return e;
  }

  // Leaves of one body must carry distinct names; nested bodies are separate scopes.
  static void checkDistinct(const OccurrenceExpr& e) {
    std::map<std::string, Span> seen;
    forEachLeaf(e, [&](const ComponentDecl& c) {
      if (!seen.emplace(c.name, c.span).second) {
        throw SyntaxError("duplicate component name '" + c.name +
                              "': each component label can occur only once in an occurrence expression",
                          c.span);
      }
    });
  }

  OccurrenceExpr occ() {
    OccurrenceExpr e = conj();
    while (accept(TokenKind::Bar)) e = OccurrenceExpr::makeDisj(std::move(e), conj());
    return e;
  }

  OccurrenceExpr conj() {
    OccurrenceExpr e = post();
    while (accept(TokenKind::Comma)) e = OccurrenceExpr::makeConj(std::move(e), post());
    return e;
  }

  OccurrenceExpr post() {
    OccurrenceExpr e = prim();
    if (accept(TokenKind::Question)) e = OccurrenceExpr::makeOptional(std::move(e));
    return e;
  }

  OccurrenceExpr prim() {
    if (accept(TokenKind::LParen)) {
      OccurrenceExpr inner = occ();
      expect(TokenKind::RParen, "')'");
      return OccurrenceExpr::makeGroup(std::move(inner));
    }
    return OccurrenceExpr::makeLeaf(componentDecl());
  }

  ComponentDecl componentDecl() {
    ComponentDecl c;
    c.span = peek().span;
    if (accept(TokenKind::KwStatic)) {
      c.scope = Scope::Static;
      c.scopeExplicit = true;
    } else if (accept(TokenKind::KwPublic)) {
      c.scope = Scope::Public;
      c.scopeExplicit = true;
    } else if (accept(TokenKind::KwPrivate)) {
      c.scope = Scope::Private;
      c.scopeExplicit = true;
    }
    if (!check(TokenKind::Identifier)) {
      fail("unexpected " + describe(peek()), {"component name", "'('", "'static'", "'public'", "'private'"});
    }
    c.name = identifier("component name");
    c.setOf = accept(TokenKind::SetOf);
    if (accept(TokenKind::Equiv)) {
      c.equivTarget = labelRef();
    } else if (atSpecOp()) {
      c.specStyle = specOp();
      c.specTarget = labelRef();
    }
    if (accept(TokenKind::RefArrow)) c.refTarget = labelRef();
    if (accept(TokenKind::Arrow)) c.body = braceBody();
    if (check(TokenKind::KwWith)) c.with = withClause();
    finishSpan(c.span);
    return c;
  }

  std::vector<Constraint> withClause() {
    expect(TokenKind::KwWith, "'with'");
    return constraintBlock();
  }

  // '{' [constraint (';' constraint)*] [';'] '}'
  std::vector<Constraint> constraintBlock() {
    std::vector<Constraint> out;
    expect(TokenKind::LBrace, "'{'");
    while (!check(TokenKind::RBrace)) {
      if (atEnd()) fail("unterminated constraint block", {"'}'"});
      out.push_back(constraint());
      if (!accept(TokenKind::Semicolon) && !check(TokenKind::RBrace)) fail("unexpected " + describe(peek()), {"';'", "'}'"});
    }
    expect(TokenKind::RBrace, "'}'");
    return out;
  }

  Constraint constraint() {
    Constraint c;
    c.span = peek().span;
    if (check(TokenKind::Dollar)) {
      c.kind = Constraint::Kind::Complement;
      c.head = patternList(true);
      expect(TokenKind::Implied, "':-'");
      c.body = patternList(false);
      finishSpan(c.span);
      return c;
    }
    c.lhs = labelRef();
    if (accept(TokenKind::Equiv)) {
      c.kind = Constraint::Kind::Equivalence;
    } else if (accept(TokenKind::RefArrow)) {
      c.kind = Constraint::Kind::Reference;
    } else if (atSpecOp()) {
      c.kind = Constraint::Kind::Specialization;
      c.style = specOp();
    } else {
      fail("unexpected " + describe(peek()), {"'<=>'", "'<='", "'!<='", "'<=!'", "'-->'"});
    }
    c.rhs = labelRef();
    finishSpan(c.span);
    return c;
  }

  std::vector<PatternAtom> patternList(bool allowLinks) {
    std::vector<PatternAtom> out;
    do {
      if (accept(TokenKind::LParen)) {
        auto inner = patternList(allowLinks);
        expect(TokenKind::RParen, "')'");
        for (auto& a : inner) out.push_back(std::move(a));
      } else {
        out.push_back(atom(allowLinks));
      }
    } while (accept(TokenKind::Comma));
    return out;
  }

  std::string variable() {
    expect(TokenKind::Dollar, "'$'");
    return identifier("variable name");
  }

  PatternAtom atom(bool allowLinks) {
    PatternAtom a;
    Span start = peek().span;
    std::string first = variable();
    if (check(TokenKind::Spec)) {
      if (!allowLinks) throw SyntaxError("specialization atom is not allowed in a component pattern", start);
      ++pos_;
      a.link = PatternAtom::Link::LinkedIsSub;
      a.linkedVar = first;
      a.var = variable();
      expect(TokenKind::Colon, "':'");
      a.label = labelRef();
    } else {
      a.var = first;
      expect(TokenKind::Colon, "':'");
      a.label = labelRef();
      if (check(TokenKind::Spec)) {
        if (!allowLinks) throw SyntaxError("specialization atom is not allowed in a component pattern", start);
        ++pos_;
        a.link = PatternAtom::Link::LinkedIsSuper;
        a.linkedVar = variable();
      }
    }
    if (accept(TokenKind::Arrow)) {
      if (accept(TokenKind::LParen)) {
        a.children = patternList(allowLinks);
        expect(TokenKind::RParen, "')'");
      } else {
        a.children.push_back(atom(allowLinks));
      }
    }
    return a;
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  bool plainRoots_ = false;  // inside `join (...)` a following '&' separates the two labels
  Token end_;
};

void collectVars(const PatternAtom& a, std::set<std::string>& vars) {
  vars.insert(a.var);
  if (a.link != PatternAtom::Link::None) vars.insert(a.linkedVar);
  for (const auto& c : a.children) collectVars(c, vars);
}

void collectLabels(const PatternAtom& a, const std::string& context,
                   std::map<std::string, std::pair<std::string, Span>>& labels) {
  std::string key = (a.label.form == LabelForm::Absolute ? "" : context + "/") + a.label.text();
  auto [it, inserted] = labels.emplace(a.var, std::make_pair(key, a.label.span));
  if (!inserted && it->second.first != key) {
    throw SyntaxError("variable $" + a.var + " is given conflicting labels", a.label.span);
  }
  for (const auto& c : a.children) collectLabels(c, key, labels);
}

void countOccurrences(const PatternAtom& a, std::map<std::string, int>& counts,
                      std::set<std::string>& withEdges, bool nested) {
  ++counts[a.var];
  if (nested || !a.children.empty() || a.link != PatternAtom::Link::None) withEdges.insert(a.var);
  if (a.link != PatternAtom::Link::None) {
    ++counts[a.linkedVar];
    withEdges.insert(a.linkedVar);
  }
  for (const auto& c : a.children) countOccurrences(c, counts, withEdges, true);
}

}  // namespace

SourceSchema parseSchema(const std::vector<Token>& tokens) { return Parser(tokens).schema(); }

SourceSchema parseSchema(std::string_view text) { return parseSchema(tokenize(text)); }

Constraint parseComplement(std::string_view text) {
  auto tokens = tokenize(text);
  Parser p(tokens);
  Constraint c = p.singleConstraint();
  if (c.kind != Constraint::Kind::Complement) {
    throw SyntaxError("expected a complement rule of the form 'head :- body'", c.span);
  }
  analyzeComplement(c);
  return c;
}

LabelRef parseLabelRef(std::string_view text) {
  auto tokens = tokenize(text);
  return Parser(tokens).singleLabel();
}

ComplementVars analyzeComplement(const Constraint& rule) {
  ComplementVars v;
  for (const auto& a : rule.head) collectVars(a, v.head);
  for (const auto& a : rule.body) collectVars(a, v.body);
  for (const auto& h : v.head) {
    if (!v.body.count(h)) v.existential.insert(h);
  }
  std::map<std::string, std::pair<std::string, Span>> labels;
  for (const auto& a : rule.body) collectLabels(a, "", labels);
  for (const auto& a : rule.head) collectLabels(a, "", labels);

  std::map<std::string, int> counts;
  std::set<std::string> withEdges;
  for (const auto& a : rule.head) countOccurrences(a, counts, withEdges, false);
  for (const auto& a : rule.body) countOccurrences(a, counts, withEdges, false);
  for (const auto& e : v.existential) {
    if (counts[e] == 1 && !withEdges.count(e)) {
      v.warnings.push_back("existential variable $" + e + " occurs once and is not connected");
    }
  }
  return v;
}

}  // namespace semgraph
