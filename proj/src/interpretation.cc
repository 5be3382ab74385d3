#include "dlearn/interpretation.h"

#include <vector>

namespace dlearn {

bool Interpretation::HasConcept(const std::string& name, Element d) const {
  auto it = concepts.find(name);
  return it != concepts.end() && it->second.count(d) > 0;
}

bool Interpretation::HasRole(const std::string& role, Element d, Element e) const {
  auto it = roles.find(role);
  return it != roles.end() && it->second.count({d, e}) > 0;
}

namespace {

using Bits = std::vector<bool>;

Bits Eval(const Concept& c, const Interpretation& i) {
  const auto n = static_cast<std::size_t>(i.domain_size);
  switch (c.kind()) {
    case ConceptKind::kTop:
      return Bits(n, true);
    case ConceptKind::kName: {
      Bits out(n, false);
      if (auto it = i.concepts.find(c.name()); it != i.concepts.end())
        for (Element d : it->second) out[d] = true;
      return out;
    }
    case ConceptKind::kConj: {
      Bits out(n, true);
      for (const auto& m : c.members()) {
        Bits sub = Eval(m, i);
        for (std::size_t d = 0; d < n; ++d) out[d] = out[d] && sub[d];
      }
      return out;
    }
    case ConceptKind::kExists: {
      Bits out(n, false);
      auto it = i.roles.find(c.role());
      if (it == i.roles.end()) return out;
      Bits filler = Eval(c.filler(), i);
      for (const auto& [d, e] : it->second)
        if (filler[e]) out[d] = true;
      return out;
    }
  }
  return Bits(n, false);
}

}  // namespace

std::set<Element> ExtensionOf(const Concept& c, const Interpretation& i) {
  Bits bits = Eval(c, i);
  std::set<Element> out;
  for (std::size_t d = 0; d < bits.size(); ++d)
    if (bits[d]) out.insert(static_cast<Element>(d));
  return out;
}

bool InExtension(const Concept& c, const Interpretation& i, Element d) {
  return Eval(c, i)[d];
}

bool Satisfies(const Interpretation& i, const Axiom& a) {
  if (a.is_ci()) {
    Bits lhs = Eval(a.lhs(), i);
    Bits rhs = Eval(a.rhs(), i);
    for (std::size_t d = 0; d < lhs.size(); ++d)
      if (lhs[d] && !rhs[d]) return false;
    return true;
  }
  auto sub = i.roles.find(a.sub_role());
  if (sub == i.roles.end()) return true;
  for (const auto& [d, e] : sub->second)
    if (!i.HasRole(a.sup_role(), d, e)) return false;
  return true;
}

bool Satisfies(const Interpretation& i, const TBox& t) {
  for (const auto& a : t)
    if (!Satisfies(i, a)) return false;
  return true;
}

bool Satisfies(const Interpretation& i, const Assertion& a) {
  auto d = i.individuals.find(a.first);
  if (d == i.individuals.end()) return false;
  if (!a.is_role) return i.HasConcept(a.predicate, d->second);
  auto e = i.individuals.find(a.second);
  return e != i.individuals.end() && i.HasRole(a.predicate, d->second, e->second);
}

bool Satisfies(const Interpretation& i, const ABox& abox) {
  for (const auto& a : abox)
    if (!Satisfies(i, a)) return false;
  return true;
}

bool Satisfies(const Interpretation& i, const Iq& q) {
  auto d = i.individuals.find(q.first());
  if (d == i.individuals.end()) return false;
  if (!q.is_role()) return InExtension(q.concept_expr(), i, d->second);
  auto e = i.individuals.find(q.second());
  return e != i.individuals.end() && i.HasRole(q.role(), d->second, e->second);
}

}  // namespace dlearn
