// Finite interpretations and the model checker for ELH.

#ifndef DLEARN_INTERPRETATION_H_
#define DLEARN_INTERPRETATION_H_

#include <map>
#include <set>
#include <string>
#include <utility>

#include "dlearn/concept.h"

namespace dlearn {

using Element = int;

// Domain is {0, ..., domain_size - 1}.
struct Interpretation {
  int domain_size = 1;
  std::map<std::string, std::set<Element>> concepts;
  std::map<std::string, std::set<std::pair<Element, Element>>> roles;
  std::map<std::string, Element> individuals;

  int AddElement() { return domain_size++; }
  void AddConcept(const std::string& name, Element d) { concepts[name].insert(d); }
  void AddRole(const std::string& role, Element d, Element e) { roles[role].insert({d, e}); }
  bool HasConcept(const std::string& name, Element d) const;
  bool HasRole(const std::string& role, Element d, Element e) const;
};

std::set<Element> ExtensionOf(const Concept& c, const Interpretation& i);
bool InExtension(const Concept& c, const Interpretation& i, Element d);

bool Satisfies(const Interpretation& i, const Axiom& a);
bool Satisfies(const Interpretation& i, const TBox& t);
// Unmapped individuals make assertions and queries false.
bool Satisfies(const Interpretation& i, const Assertion& a);
bool Satisfies(const Interpretation& i, const ABox& abox);
bool Satisfies(const Interpretation& i, const Iq& q);

}  // namespace dlearn

#endif  // DLEARN_INTERPRETATION_H_
