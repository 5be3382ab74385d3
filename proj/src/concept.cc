#include "dlearn/concept.h"

#include <algorithm>
#include <stdexcept>

namespace dlearn {

bool IsValidIdentifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), [&](char c) { return alpha(c) || digit(c); });
}

bool IsReservedWord(std::string_view s) {
  return s == "top" || s == "some" || s == "role";
}

bool IsFreshName(std::string_view s) { return s.starts_with("__x"); }

namespace {

void CheckName(const std::string& s, const char* what) {
  if (!IsValidIdentifier(s) || IsReservedWord(s))
    throw std::invalid_argument(std::string("invalid ") + what + " name '" + s + "'");
}

}  // namespace

struct Concept::Node {
  ConceptKind kind;
  std::string name;  // concept name or role name
  std::vector<Concept> members;
  std::vector<Concept> filler;  // exactly one element for kExists
  std::string str;
};

Concept Concept::Top() {
  static const Concept top(std::make_shared<const Node>(Node{ConceptKind::kTop, "", {}, {}, "top"}));
  return top;
}

Concept Concept::Name(std::string name) {
  CheckName(name, "concept");
  std::string str = name;
  return Concept(std::make_shared<const Node>(Node{ConceptKind::kName, std::move(name), {}, {}, std::move(str)}));
}

Concept Concept::And(std::vector<Concept> parts) {
  std::vector<Concept> flat;
  for (auto& p : parts) {
    if (p.is_conj()) {
      flat.insert(flat.end(), p.members().begin(), p.members().end());
    } else if (!p.is_top()) {
      flat.push_back(std::move(p));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return Top();
  if (flat.size() == 1) return flat.front();
  std::string str;
  for (const auto& m : flat) {
    if (!str.empty()) str += " & ";
    str += m.str();
  }
  return Concept(std::make_shared<const Node>(Node{ConceptKind::kConj, "", std::move(flat), {}, std::move(str)}));
}

Concept Concept::Exists(std::string role, Concept filler) {
  CheckName(role, "role");
  std::string str = "some(" + role + ", " + filler.str() + ")";
  return Concept(std::make_shared<const Node>(
      Node{ConceptKind::kExists, std::move(role), {}, {std::move(filler)}, std::move(str)}));
}

ConceptKind Concept::kind() const { return node_->kind; }
const std::string& Concept::name() const { return node_->name; }
const std::string& Concept::role() const { return node_->name; }
const Concept& Concept::filler() const {
  if (!is_exists()) throw std::logic_error("filler() on a non-existential concept");
  return node_->filler.front();
}
const std::vector<Concept>& Concept::members() const { return node_->members; }
const std::string& Concept::str() const { return node_->str; }

std::vector<Concept> Concept::TopLevelConjuncts() const {
  if (is_conj()) return members();
  if (is_top()) return {};
  return {*this};
}

Axiom::Axiom(bool is_ci, Concept lhs, Concept rhs, std::string sub, std::string sup)
    : is_ci_(is_ci), lhs_(std::move(lhs)), rhs_(std::move(rhs)), sub_(std::move(sub)), sup_(std::move(sup)) {
  str_ = is_ci_ ? "ci: " + lhs_.str() + " <= " + rhs_.str() : "ri: " + sub_ + " <= " + sup_;
}

Axiom Axiom::Ci(Concept lhs, Concept rhs) { return Axiom(true, std::move(lhs), std::move(rhs), "", ""); }

Axiom Axiom::Ri(std::string sub, std::string sup) {
  CheckName(sub, "role");
  CheckName(sup, "role");
  return Axiom(false, Concept::Top(), Concept::Top(), std::move(sub), std::move(sup));
}

TBox Union(const TBox& t1, const TBox& t2) {
  TBox out = t1;
  for (const auto& a : t2) out.Insert(a);
  return out;
}

Assertion Assertion::OfConcept(std::string name, std::string ind) {
  CheckName(name, "concept");
  CheckName(ind, "individual");
  return Assertion{false, std::move(name), std::move(ind), ""};
}

Assertion Assertion::OfRole(std::string role, std::string a, std::string b) {
  CheckName(role, "role");
  CheckName(a, "individual");
  CheckName(b, "individual");
  return Assertion{true, std::move(role), std::move(a), std::move(b)};
}

std::string Assertion::str() const {
  return is_role ? predicate + "(" + first + ", " + second + ")" : predicate + "(" + first + ")";
}

Iq Iq::ConceptQuery(Concept c, std::string ind) {
  CheckName(ind, "individual");
  return Iq(false, std::move(c), "", std::move(ind), "");
}

Iq Iq::RoleQuery(std::string role, std::string a, std::string b) {
  CheckName(role, "role");
  CheckName(a, "individual");
  CheckName(b, "individual");
  return Iq(true, Concept::Top(), std::move(role), std::move(a), std::move(b));
}

std::string Iq::str() const {
  if (is_role_) return role_ + "(" + first_ + ", " + second_ + ")";
  // Parenthesize compound concepts so the trailing "(a)" binds to the whole.
  if (concept_.is_name() || concept_.is_top()) return concept_.str() + "(" + first_ + ")";
  return "(" + concept_.str() + ")(" + first_ + ")";
}

std::string DataExample::str() const {
  std::string s = "iq: ";
  bool first = true;
  for (const auto& a : abox) {
    if (!first) s += ", ";
    s += a.str();
    first = false;
  }
  s += first ? "|- " : " |- ";
  s += query.str();
  return s;
}

std::set<std::string> IndividualsOf(const ABox& abox) {
  std::set<std::string> out;
  for (const auto& a : abox) {
    out.insert(a.first);
    if (a.is_role) out.insert(a.second);
  }
  return out;
}

namespace {

void CollectNames(const Concept& c, Signature& sig) {
  switch (c.kind()) {
    case ConceptKind::kTop:
      break;
    case ConceptKind::kName:
      if (!IsFreshName(c.name())) sig.concepts.insert(c.name());
      break;
    case ConceptKind::kConj:
      for (const auto& m : c.members()) CollectNames(m, sig);
      break;
    case ConceptKind::kExists:
      sig.roles.insert(c.role());
      CollectNames(c.filler(), sig);
      break;
  }
}

}  // namespace

Signature SignatureOf(const Concept& c) {
  Signature sig;
  CollectNames(c, sig);
  return sig;
}

Signature SignatureOf(const Axiom& a) {
  Signature sig;
  if (a.is_ci()) {
    CollectNames(a.lhs(), sig);
    CollectNames(a.rhs(), sig);
  } else {
    sig.roles.insert(a.sub_role());
    sig.roles.insert(a.sup_role());
  }
  return sig;
}

Signature SignatureOf(const TBox& t) {
  Signature sig;
  for (const auto& a : t) MergeInto(sig, SignatureOf(a));
  return sig;
}

Signature SignatureOf(const ABox& abox) {
  Signature sig;
  for (const auto& a : abox) (a.is_role ? sig.roles : sig.concepts).insert(a.predicate);
  return sig;
}

void MergeInto(Signature& into, const Signature& from) {
  into.concepts.insert(from.concepts.begin(), from.concepts.end());
  into.roles.insert(from.roles.begin(), from.roles.end());
}

std::size_t SizeOf(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kTop:
    case ConceptKind::kName:
      return 1;
    case ConceptKind::kConj: {
      std::size_t n = 1;
      for (const auto& m : c.members()) n += SizeOf(m);
      return n;
    }
    case ConceptKind::kExists:
      return 2 + SizeOf(c.filler());
  }
  return 0;
}

std::size_t SizeOf(const Axiom& a) {
  return a.is_ci() ? 1 + SizeOf(a.lhs()) + SizeOf(a.rhs()) : 3;
}

std::size_t SizeOf(const TBox& t) {
  std::size_t n = 0;
  for (const auto& a : t) n += SizeOf(a);
  return n;
}

std::size_t SizeOf(const DataExample& d) {
  std::size_t n = 0;
  for (const auto& a : d.abox) n += a.is_role ? 3 : 2;
  n += d.query.is_role() ? 3 : SizeOf(d.query.concept_expr()) + 1;
  return n;
}

std::size_t DepthOf(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::kTop:
    case ConceptKind::kName:
      return 0;
    case ConceptKind::kConj: {
      std::size_t d = 0;
      for (const auto& m : c.members()) d = std::max(d, DepthOf(m));
      return d;
    }
    case ConceptKind::kExists:
      return 1 + DepthOf(c.filler());
  }
  return 0;
}

std::size_t DepthOf(const Axiom& a) {
  return a.is_ci() ? std::max(DepthOf(a.lhs()), DepthOf(a.rhs())) : 0;
}

void CollectSubconcepts(const Concept& c, std::set<Concept>& out) {
  if (!out.insert(c).second) return;
  if (c.is_conj()) {
    for (const auto& m : c.members()) CollectSubconcepts(m, out);
  } else if (c.is_exists()) {
    CollectSubconcepts(c.filler(), out);
  }
}

}  // namespace dlearn
