// Text format for TBoxes, ABoxes and examples.
//
//   line    := "ci:" concept ("<=" | "==") concept | "ri:" IDENT "<=" IDENT
//   concept := term { "&" term }
//   term    := "top" | IDENT | "some" "(" IDENT "," concept ")" | "(" concept ")"
//
// '#' starts a comment, blank lines are ignored. ABox lines are A(a) or
// r(a,b). A data example is written on one line as
//
//   iq: A(a), r(a, b) |- C(a)
//
// where a compound query concept is parenthesized: (A & B)(a).

#ifndef DLEARN_SYNTAX_H_
#define DLEARN_SYNTAX_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dlearn/concept.h"

namespace dlearn {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

TBox ParseTBox(std::string_view text);
std::string PrintTBox(const TBox& t);

Concept ParseConcept(std::string_view text);
// One "ci:" or "ri:" line; "==" is rejected since it denotes two axioms.
Axiom ParseAxiom(std::string_view text);

ABox ParseABox(std::string_view text);
std::string PrintABox(const ABox& abox);

DataExample ParseDataExample(std::string_view text);

}  // namespace dlearn

#endif  // DLEARN_SYNTAX_H_
