// ELH syntax: concept expressions, axioms, TBoxes, ABoxes and instance queries.
//
// All values are immutable and canonical on construction: conjunctions are
// flattened, deduplicated, stripped of `top` and sorted by printed form, so
// two concepts are structurally equal iff their printed forms are equal.

#ifndef DLEARN_CONCEPT_H_
#define DLEARN_CONCEPT_H_

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dlearn {

// Identifier rules shared by concept, role and individual names.
bool IsValidIdentifier(std::string_view s);
bool IsReservedWord(std::string_view s);
// Names in the "__x" namespace are minted by the reasoner and never appear in
// user input, signatures or learner query spaces.
bool IsFreshName(std::string_view s);

enum class ConceptKind { kTop, kName, kConj, kExists };

class Concept {
 public:
  static Concept Top();
  static Concept Name(std::string name);
  // Canonicalizes: an empty list yields Top, a single member yields itself.
  static Concept And(std::vector<Concept> parts);
  static Concept Exists(std::string role, Concept filler);

  ConceptKind kind() const;
  bool is_top() const { return kind() == ConceptKind::kTop; }
  bool is_name() const { return kind() == ConceptKind::kName; }
  bool is_conj() const { return kind() == ConceptKind::kConj; }
  bool is_exists() const { return kind() == ConceptKind::kExists; }

  // Concept name (kName) or role name (kExists).
  const std::string& name() const;
  const std::string& role() const;
  const Concept& filler() const;
  // Members of a conjunction; empty otherwise.
  const std::vector<Concept>& members() const;
  // Conj -> members, Top -> {}, anything else -> {*this}.
  std::vector<Concept> TopLevelConjuncts() const;

  // Canonical textual form in the TBox file grammar.
  const std::string& str() const;

  bool operator==(const Concept& c) const { return str() == c.str(); }
  std::strong_ordering operator<=>(const Concept& c) const { return str() <=> c.str(); }

 private:
  struct Node;
  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Axiom {
 public:
  static Axiom Ci(Concept lhs, Concept rhs);
  static Axiom Ri(std::string sub, std::string sup);

  bool is_ci() const { return is_ci_; }
  bool is_ri() const { return !is_ci_; }
  const Concept& lhs() const { return lhs_; }
  const Concept& rhs() const { return rhs_; }
  const std::string& sub_role() const { return sub_; }
  const std::string& sup_role() const { return sup_; }

  // "ci: C <= D" or "ri: r <= s".
  const std::string& str() const { return str_; }

  bool operator==(const Axiom& a) const { return str_ == a.str_; }
  std::strong_ordering operator<=>(const Axiom& a) const { return str_ <=> a.str_; }

 private:
  Axiom(bool is_ci, Concept lhs, Concept rhs, std::string sub, std::string sup);

  bool is_ci_;
  Concept lhs_;
  Concept rhs_;
  std::string sub_;
  std::string sup_;
  std::string str_;
};

// A finite set of axioms ordered by canonical print.
class TBox {
 public:
  using const_iterator = std::set<Axiom>::const_iterator;

  TBox() = default;
  TBox(std::initializer_list<Axiom> axioms) : axioms_(axioms) {}
  template <typename It>
  TBox(It first, It last) : axioms_(first, last) {}

  // Returns false if a canonically equal axiom is already present.
  bool Insert(const Axiom& a) { return axioms_.insert(a).second; }
  bool Erase(const Axiom& a) { return axioms_.erase(a) > 0; }
  bool Contains(const Axiom& a) const { return axioms_.count(a) > 0; }

  std::size_t size() const { return axioms_.size(); }
  bool empty() const { return axioms_.empty(); }
  const_iterator begin() const { return axioms_.begin(); }
  const_iterator end() const { return axioms_.end(); }
  const std::set<Axiom>& axioms() const { return axioms_; }

  bool operator==(const TBox&) const = default;

 private:
  std::set<Axiom> axioms_;
};

TBox Union(const TBox& t1, const TBox& t2);

// A(a) or r(a,b).
struct Assertion {
  bool is_role = false;
  std::string predicate;
  std::string first;
  std::string second;  // role assertions only

  static Assertion OfConcept(std::string name, std::string ind);
  static Assertion OfRole(std::string role, std::string a, std::string b);
  std::string str() const;

  auto operator<=>(const Assertion&) const = default;
};

using ABox = std::set<Assertion>;

// C(a) or r(a,b).
class Iq {
 public:
  static Iq ConceptQuery(Concept c, std::string ind);
  static Iq RoleQuery(std::string role, std::string a, std::string b);

  bool is_role() const { return is_role_; }
  const Concept& concept_expr() const { return concept_; }
  const std::string& role() const { return role_; }
  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }
  std::string str() const;

  bool operator==(const Iq& q) const { return str() == q.str(); }
  std::strong_ordering operator<=>(const Iq& q) const { return str() <=> q.str(); }

 private:
  Iq(bool is_role, Concept c, std::string role, std::string a, std::string b)
      : is_role_(is_role), concept_(std::move(c)), role_(std::move(role)),
        first_(std::move(a)), second_(std::move(b)) {}

  bool is_role_;
  Concept concept_;
  std::string role_;
  std::string first_;
  std::string second_;
};

// An (ABox, IQ) pair; the query only mentions individuals of the ABox.
struct DataExample {
  ABox abox;
  Iq query;

  std::string str() const;
  bool operator==(const DataExample& d) const { return str() == d.str(); }
  std::strong_ordering operator<=>(const DataExample& d) const { return str() <=> d.str(); }
};

std::set<std::string> IndividualsOf(const ABox& abox);

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;

  bool empty() const { return concepts.empty() && roles.empty(); }
  std::size_t size() const { return concepts.size() + roles.size(); }
  bool operator==(const Signature&) const = default;
};

// Names syntactically occurring in the argument, minus fresh names.
Signature SignatureOf(const Concept& c);
Signature SignatureOf(const Axiom& a);
Signature SignatureOf(const TBox& t);
Signature SignatureOf(const ABox& a);
void MergeInto(Signature& into, const Signature& from);

// Size: one per name occurrence (concept or role) plus one per constructor
// occurrence (top, each conjunction node, each existential, each inclusion).
// So |A <= B| = 3 and |some(r, A)| = 3.
std::size_t SizeOf(const Concept& c);
std::size_t SizeOf(const Axiom& a);
std::size_t SizeOf(const TBox& t);
// Assertions count their names, the query its concept plus the individual.
std::size_t SizeOf(const DataExample& d);
// Maximal nesting of existential restrictions.
std::size_t DepthOf(const Concept& c);
std::size_t DepthOf(const Axiom& a);

// All subconcepts (including c itself), each once.
void CollectSubconcepts(const Concept& c, std::set<Concept>& out);

}  // namespace dlearn

#endif  // DLEARN_CONCEPT_H_
