#include "dlearn/syntax.h"

#include <optional>
#include <sstream>

namespace dlearn {

ParseError::ParseError(int line, int column, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { kIdent, kLParen, kRParen, kComma, kAmp, kLe, kEq, kColon, kTurnstile, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

const char* Describe(Tok t) {
  switch (t) {
    case Tok::kIdent: return "identifier";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kComma: return "','";
    case Tok::kAmp: return "'&'";
    case Tok::kLe: return "'<='";
    case Tok::kEq: return "'=='";
    case Tok::kColon: return "':'";
    case Tok::kTurnstile: return "'|-'";
    case Tok::kEnd: return "end of line";
  }
  return "?";
}

// Parser over a single line; comments are stripped by the caller.
class LineParser {
 public:
  LineParser(std::string_view line, int line_no) : line_no_(line_no) { Lex(line); }

  bool AtEnd() const { return Peek().kind == Tok::kEnd; }
  const Token& Peek(std::size_t k = 0) const {
    return pos_ + k < toks_.size() ? toks_[pos_ + k] : toks_.back();
  }

  Token Expect(Tok kind) {
    const Token& t = Peek();
    if (t.kind != kind) Fail(t, std::string("expected ") + Describe(kind) + ", found " + Found(t));
    return toks_[pos_++];
  }

  bool Accept(Tok kind) {
    if (Peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  void ExpectEnd() {
    if (!AtEnd()) Fail(Peek(), "unexpected " + Found(Peek()));
  }

  // A user-supplied name: a valid identifier that is neither reserved nor fresh.
  std::string Name() {
    Token t = Expect(Tok::kIdent);
    CheckUserName(t);
    return t.text;
  }

  Concept ParseConcept() {
    std::vector<Concept> parts;
    parts.push_back(ParseTerm());
    while (Accept(Tok::kAmp)) parts.push_back(ParseTerm());
    return Concept::And(std::move(parts));
  }

  Concept ParseTerm() {
    const Token& t = Peek();
    if (t.kind == Tok::kLParen) {
      ++pos_;
      Concept c = ParseConcept();
      Expect(Tok::kRParen);
      return c;
    }
    if (t.kind != Tok::kIdent) Fail(t, "expected a concept, found " + Found(t));
    if (t.text == "top") {
      ++pos_;
      return Concept::Top();
    }
    if (t.text == "some") {
      ++pos_;
      Expect(Tok::kLParen);
      std::string role = Name();
      Expect(Tok::kComma);
      Concept filler = ParseConcept();
      Expect(Tok::kRParen);
      return Concept::Exists(std::move(role), std::move(filler));
    }
    return Concept::Name(Name());
  }

  // Returns one axiom, or two for "==".
  std::vector<Axiom> ParseAxiomLine() {
    Token head = Expect(Tok::kIdent);
    Expect(Tok::kColon);
    std::vector<Axiom> out;
    if (head.text == "ci") {
      Concept lhs = ParseConcept();
      const Token& op = Peek();
      if (op.kind == Tok::kLe) {
        ++pos_;
        out.push_back(Axiom::Ci(lhs, ParseConcept()));
      } else if (op.kind == Tok::kEq) {
        ++pos_;
        Concept rhs = ParseConcept();
        out.push_back(Axiom::Ci(lhs, rhs));
        out.push_back(Axiom::Ci(rhs, lhs));
      } else {
        Fail(op, "expected '<=' or '==', found " + Found(op));
      }
    } else if (head.text == "ri") {
      std::string sub = Name();
      Expect(Tok::kLe);
      out.push_back(Axiom::Ri(sub, Name()));
    } else {
      Fail(head, "expected 'ci:' or 'ri:', found '" + head.text + "'");
    }
    ExpectEnd();
    return out;
  }

  Assertion ParseAssertion() {
    std::string pred = Name();
    Expect(Tok::kLParen);
    std::string a = Name();
    if (Accept(Tok::kComma)) {
      std::string b = Name();
      Expect(Tok::kRParen);
      return Assertion::OfRole(pred, a, b);
    }
    Expect(Tok::kRParen);
    return Assertion::OfConcept(pred, a);
  }

  Iq ParseIq() {
    const Token& t = Peek();
    if (t.kind == Tok::kIdent && t.text != "top" && t.text != "some" && Peek(1).kind == Tok::kLParen) {
      Assertion a = ParseAssertion();
      if (a.is_role) return Iq::RoleQuery(a.predicate, a.first, a.second);
      return Iq::ConceptQuery(Concept::Name(a.predicate), a.first);
    }
    Concept c = ParseTerm();
    Expect(Tok::kLParen);
    std::string ind = Name();
    Expect(Tok::kRParen);
    return Iq::ConceptQuery(std::move(c), std::move(ind));
  }

  DataExample ParseDataExampleLine() {
    Token head = Expect(Tok::kIdent);
    if (head.text != "iq") Fail(head, "expected 'iq:', found '" + head.text + "'");
    Expect(Tok::kColon);
    ABox abox;
    if (Peek().kind != Tok::kTurnstile) {
      abox.insert(ParseAssertion());
      while (Accept(Tok::kComma)) abox.insert(ParseAssertion());
    }
    Expect(Tok::kTurnstile);
    Iq q = ParseIq();
    ExpectEnd();
    return DataExample{std::move(abox), std::move(q)};
  }

  [[noreturn]] void Fail(const Token& t, const std::string& msg) const {
    throw ParseError(line_no_, t.column, msg);
  }

 private:
  static std::string Found(const Token& t) {
    return t.kind == Tok::kIdent ? "'" + t.text + "'" : Describe(t.kind);
  }

  void CheckUserName(const Token& t) const {
    if (IsReservedWord(t.text)) Fail(t, "reserved word '" + t.text + "' used as identifier");
    if (IsFreshName(t.text)) Fail(t, "identifier '" + t.text + "' uses the reserved '__x' prefix");
  }

  void Lex(std::string_view s) {
    std::size_t i = 0;
    auto ident_char = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    };
    while (i < s.size()) {
      char c = s[i];
      int col = static_cast<int>(i) + 1;
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        continue;
      }
      auto two = [&](char next) { return i + 1 < s.size() && s[i + 1] == next; };
      if (c == '(') { toks_.push_back({Tok::kLParen, "(", col}); ++i; continue; }
      if (c == ')') { toks_.push_back({Tok::kRParen, ")", col}); ++i; continue; }
      if (c == ',') { toks_.push_back({Tok::kComma, ",", col}); ++i; continue; }
      if (c == '&') { toks_.push_back({Tok::kAmp, "&", col}); ++i; continue; }
      if (c == ':') { toks_.push_back({Tok::kColon, ":", col}); ++i; continue; }
      if (c == '<' && two('=')) { toks_.push_back({Tok::kLe, "<=", col}); i += 2; continue; }
      if (c == '=' && two('=')) { toks_.push_back({Tok::kEq, "==", col}); i += 2; continue; }
      if (c == '|' && two('-')) { toks_.push_back({Tok::kTurnstile, "|-", col}); i += 2; continue; }
      if (ident_char(c)) {
        if (c >= '0' && c <= '9') throw ParseError(line_no_, col, "identifier cannot start with a digit");
        std::size_t j = i;
        while (j < s.size() && ident_char(s[j])) ++j;
        toks_.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), col});
        i = j;
        continue;
      }
      throw ParseError(line_no_, col, std::string("unexpected character '") + c + "'");
    }
    toks_.push_back({Tok::kEnd, "", static_cast<int>(s.size()) + 1});
  }

  int line_no_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string_view StripComment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

bool IsBlank(std::string_view s) {
  return s.find_first_not_of(" \t\r") == std::string_view::npos;
}

// Calls f(line, line_no) for each non-blank line with comments removed.
template <typename F>
void ForEachLine(std::string_view text, F f) {
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = StripComment(text.substr(start, end - start));
    if (!IsBlank(line)) f(line, line_no);
    start = end + 1;
  }
}

// Single-line inputs: the first non-blank line, rejecting any others.
std::pair<std::string_view, int> SoleLine(std::string_view text) {
  std::optional<std::pair<std::string_view, int>> found;
  ForEachLine(text, [&](std::string_view line, int no) {
    if (found) throw ParseError(no, 1, "expected a single line");
    found.emplace(line, no);
  });
  if (!found) throw ParseError(1, 1, "empty input");
  return *found;
}

}  // namespace

TBox ParseTBox(std::string_view text) {
  TBox t;
  ForEachLine(text, [&](std::string_view line, int no) {
    for (auto& a : LineParser(line, no).ParseAxiomLine()) t.Insert(a);
  });
  return t;
}

std::string PrintTBox(const TBox& t) {
  std::string out;
  for (const auto& a : t) {
    out += a.str();
    out += '\n';
  }
  return out;
}

Concept ParseConcept(std::string_view text) {
  auto [line, no] = SoleLine(text);
  LineParser p(line, no);
  Concept c = p.ParseConcept();
  p.ExpectEnd();
  return c;
}

Axiom ParseAxiom(std::string_view text) {
  auto [line, no] = SoleLine(text);
  auto axioms = LineParser(line, no).ParseAxiomLine();
  if (axioms.size() != 1) throw ParseError(no, 1, "'==' denotes two axioms; expected a single inclusion");
  return axioms.front();
}

ABox ParseABox(std::string_view text) {
  ABox abox;
  ForEachLine(text, [&](std::string_view line, int no) {
    LineParser p(line, no);
    abox.insert(p.ParseAssertion());
    p.ExpectEnd();
  });
  return abox;
}

std::string PrintABox(const ABox& abox) {
  std::string out;
  for (const auto& a : abox) {
    out += a.str();
    out += '\n';
  }
  return out;
}

DataExample ParseDataExample(std::string_view text) {
  auto [line, no] = SoleLine(text);
  return LineParser(line, no).ParseDataExampleLine();
}

}  // namespace dlearn
