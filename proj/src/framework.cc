#include "dlearn/framework.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "dlearn/reasoner.h"
#include "dlearn/syntax.h"

namespace dlearn {

namespace {

constexpr std::pair<FragmentId, std::string_view> kFragmentNames[] = {
    {FragmentId::kToyAtomic, "toy-atomic"}, {FragmentId::kToyConj, "toy-conj"},
    {FragmentId::kDlLite, "dllite"},        {FragmentId::kElh, "elh"},
    {FragmentId::kElhIq, "elh-iq"},
};

bool IsNameConj(const Concept& c) {
  if (c.is_name()) return true;
  if (!c.is_conj()) return false;
  return std::all_of(c.members().begin(), c.members().end(), [](const Concept& m) { return m.is_name(); });
}

bool IsDlLiteBasic(const Concept& c) {
  return c.is_name() || (c.is_exists() && c.filler().is_top());
}

std::string_view Trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

template <typename T>
void SortBySize(std::vector<T>& v) {
  std::sort(v.begin(), v.end(), [](const T& a, const T& b) {
    auto sa = SizeOf(a);
    auto sb = SizeOf(b);
    return sa != sb ? sa < sb : a.str() < b.str();
  });
}

// Canonical concepts by (size cap, depth cap), built from smaller ones.
class ConceptEnumerator {
 public:
  explicit ConceptEnumerator(const Signature& sig) : sig_(sig) {}

  const std::vector<Concept>& Get(std::size_t size, std::size_t depth) {
    auto key = std::make_pair(size, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Concept> out;
    if (size >= 1) {
      out.push_back(Concept::Top());
      std::vector<Concept> atoms = Atoms(size, depth);
      out.insert(out.end(), atoms.begin(), atoms.end());
      std::vector<Concept> chosen;
      Conjunctions(atoms, 0, 1, size, chosen, out);
    }
    SortBySize(out);
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  // Names and existentials, the non-conjunctive non-top concepts.
  std::vector<Concept> Atoms(std::size_t size, std::size_t depth) {
    std::vector<Concept> atoms;
    for (const auto& a : sig_.concepts) atoms.push_back(Concept::Name(a));
    if (depth > 0 && size >= 3) {
      const auto fillers = Get(size - 2, depth - 1);
      for (const auto& r : sig_.roles)
        for (const auto& f : fillers) atoms.push_back(Concept::Exists(r, f));
    }
    SortBySize(atoms);
    return atoms;
  }

  // Sets of at least two atoms, total size 1 + sum within `cap`. Atoms are
  // sorted by size, so the scan can stop at the first one that does not fit.
  void Conjunctions(const std::vector<Concept>& atoms, std::size_t from, std::size_t used, std::size_t cap,
                    std::vector<Concept>& chosen, std::vector<Concept>& out) {
    for (std::size_t i = from; i < atoms.size(); ++i) {
      std::size_t s = SizeOf(atoms[i]);
      if (used + s > cap) break;
      chosen.push_back(atoms[i]);
      if (chosen.size() >= 2) out.push_back(Concept::And(chosen));
      Conjunctions(atoms, i + 1, used + s, cap, chosen, out);
      chosen.pop_back();
    }
  }

  const Signature& sig_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Concept>> memo_;
};

// Adds the description tree of c rooted at `ind`, naming successors ind1, ind2, ...
void AddTree(const Concept& c, const std::string& ind, const std::string& root, int& counter, ABox& abox) {
  for (const auto& part : c.TopLevelConjuncts()) {
    if (part.is_name()) {
      abox.insert(Assertion::OfConcept(part.name(), ind));
    } else {
      std::string succ = root + std::to_string(++counter);
      abox.insert(Assertion::OfRole(part.role(), ind, succ));
      AddTree(part.filler(), succ, root, counter, abox);
    }
  }
}

std::vector<Example> EnumerateDataExamples(const Signature& sig, std::size_t depth_cap, std::size_t size_cap) {
  const std::vector<std::string> inds{"a", "b"};
  std::vector<Assertion> pool;
  for (const auto& a : sig.concepts)
    for (const auto& i : inds) pool.push_back(Assertion::OfConcept(a, i));
  for (const auto& r : sig.roles)
    for (const auto& i : inds)
      for (const auto& j : inds) pool.push_back(Assertion::OfRole(r, i, j));
  auto size_of = [](const Assertion& a) -> std::size_t { return a.is_role ? 3 : 2; };
  // Smallest query is a name or top at an individual.
  if (size_cap < 4) return {};
  std::vector<ABox> aboxes;
  std::vector<Assertion> chosen;
  auto rec = [&](auto&& self, std::size_t from, std::size_t used) -> void {
    if (!chosen.empty()) aboxes.emplace_back(chosen.begin(), chosen.end());
    for (std::size_t i = from; i < pool.size(); ++i) {
      if (used + size_of(pool[i]) + 2 > size_cap) continue;
      chosen.push_back(pool[i]);
      self(self, i + 1, used + size_of(pool[i]));
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0);
  ConceptEnumerator concepts(sig);
  std::vector<Example> out;
  for (const auto& abox : aboxes) {
    std::size_t used = 0;
    for (const auto& a : abox) used += size_of(a);
    std::size_t room = size_cap - used;
    for (const auto& ind : IndividualsOf(abox)) {
      for (const auto& c : concepts.Get(room - 1, depth_cap))
        out.push_back(DataExample{abox, Iq::ConceptQuery(c, ind)});
    }
    if (room >= 3) {
      auto individuals = IndividualsOf(abox);
      for (const auto& r : sig.roles)
        for (const auto& i : individuals)
          for (const auto& j : individuals) out.push_back(DataExample{abox, Iq::RoleQuery(r, i, j)});
    }
  }
  std::sort(out.begin(), out.end(), [](const Example& x, const Example& y) {
    auto sx = SizeOf(x);
    auto sy = SizeOf(y);
    return sx != sy ? sx < sy : ToString(x) < ToString(y);
  });
  return out;
}

}  // namespace

std::string_view ToString(FragmentId f) {
  for (const auto& [id, name] : kFragmentNames)
    if (id == f) return name;
  return "?";
}

FragmentId ParseFragmentId(std::string_view s) {
  for (const auto& [id, name] : kFragmentNames)
    if (name == s) return id;
  throw std::invalid_argument("unknown framework '" + std::string(s) + "'");
}

std::string ToString(const Example& e) {
  return std::visit([](const auto& x) { return std::string(x.str()); }, e);
}

Example ParseExample(std::string_view text) {
  if (Trimmed(text).substr(0, 3) == "iq:") return ParseDataExample(text);
  return ParseAxiom(text);
}

std::size_t SizeOf(const Example& e) {
  return std::visit([](const auto& x) { return dlearn::SizeOf(x); }, e);
}

bool LearningFramework::AdmitsAxiom(const Axiom& a) const {
  switch (id_) {
    case FragmentId::kToyAtomic:
      return a.is_ci() && a.lhs().is_name() && a.rhs().is_name();
    case FragmentId::kToyConj:
      return a.is_ci() && IsNameConj(a.lhs()) && a.rhs().is_name();
    case FragmentId::kDlLite:
      return a.is_ri() || (IsDlLiteBasic(a.lhs()) && IsDlLiteBasic(a.rhs()));
    case FragmentId::kElh:
    case FragmentId::kElhIq:
      return true;
  }
  return false;
}

bool LearningFramework::AdmitsHypothesis(const TBox& t) const {
  return std::all_of(t.begin(), t.end(), [this](const Axiom& a) { return AdmitsAxiom(a); });
}

bool LearningFramework::AdmitsExample(const Example& e) const {
  if (const auto* d = std::get_if<DataExample>(&e)) {
    if (id_ != FragmentId::kElhIq) return false;
    auto inds = IndividualsOf(d->abox);
    if (!inds.count(d->query.first())) return false;
    return !d->query.is_role() || inds.count(d->query.second()) > 0;
  }
  return id_ != FragmentId::kElhIq && AdmitsAxiom(std::get<Axiom>(e));
}

void LearningFramework::CheckHypothesis(const TBox& t) const {
  for (const auto& a : t)
    if (!AdmitsAxiom(a))
      throw FragmentViolation("axiom '" + a.str() + "' is outside fragment " + std::string(ToString(id_)));
}

void LearningFramework::CheckExample(const Example& e) const {
  if (!AdmitsExample(e))
    throw FragmentViolation("example '" + ToString(e) + "' is not admitted by fragment " + std::string(ToString(id_)));
}

bool LearningFramework::IsMember(const TBox& h, const Example& e) const {
  CheckHypothesis(h);
  CheckExample(e);
  if (const auto* d = std::get_if<DataExample>(&e)) return IqEntails(h, d->abox, d->query);
  return Entails(h, std::get<Axiom>(e));
}

bool LearningFramework::IsCounterexample(const TBox& t, const TBox& h, const Example& e) const {
  return IsMember(t, e) != IsMember(h, e);
}

std::vector<Example> LearningFramework::EnumerateExamples(const Signature& sig, std::size_t depth_cap,
                                                          std::size_t size_cap) const {
  std::vector<Axiom> axioms;
  std::vector<Concept> names;
  for (const auto& a : sig.concepts) names.push_back(Concept::Name(a));
  switch (id_) {
    case FragmentId::kToyAtomic:
      for (const auto& l : names)
        for (const auto& r : names) axioms.push_back(Axiom::Ci(l, r));
      break;
    case FragmentId::kToyConj: {
      if (names.size() > 20) throw std::length_error("toy-conj example space too large to materialize");
      const std::size_t n = names.size();
      for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<Concept> parts;
        for (std::size_t i = 0; i < n; ++i)
          if (mask >> i & 1) parts.push_back(names[i]);
        Concept lhs = Concept::And(parts);
        for (const auto& r : names) axioms.push_back(Axiom::Ci(lhs, r));
      }
      break;
    }
    case FragmentId::kDlLite: {
      std::vector<Concept> basics = names;
      for (const auto& r : sig.roles) basics.push_back(Concept::Exists(r, Concept::Top()));
      for (const auto& l : basics)
        for (const auto& r : basics) axioms.push_back(Axiom::Ci(l, r));
      for (const auto& r : sig.roles)
        for (const auto& s : sig.roles) axioms.push_back(Axiom::Ri(r, s));
      break;
    }
    case FragmentId::kElh: {
      if (sig.empty()) break;
      if (size_cap >= 3)
        for (const auto& r : sig.roles)
          for (const auto& s : sig.roles) axioms.push_back(Axiom::Ri(r, s));
      if (size_cap < 3) break;
      ConceptEnumerator en(sig);
      const auto& sides = en.Get(size_cap - 2, depth_cap);
      for (const auto& l : sides) {
        std::size_t sl = SizeOf(l);
        for (const auto& r : sides) {
          if (1 + sl + SizeOf(r) > size_cap) break;
          axioms.push_back(Axiom::Ci(l, r));
        }
      }
      break;
    }
    case FragmentId::kElhIq:
      if (sig.empty()) return {};
      return EnumerateDataExamples(sig, depth_cap, size_cap);
  }
  SortBySize(axioms);
  return std::vector<Example>(axioms.begin(), axioms.end());
}

std::vector<Concept> EnumerateConcepts(const Signature& sig, std::size_t depth_cap, std::size_t size_cap) {
  ConceptEnumerator en(sig);
  return en.Get(size_cap, depth_cap);
}

DataExample AxiomToDataExample(const Axiom& a, const Signature& avoid) {
  if (a.is_ri()) return DataExample{{Assertion::OfRole(a.sub_role(), "a", "b")}, Iq::RoleQuery(a.sup_role(), "a", "b")};
  ABox abox;
  int counter = 0;
  AddTree(a.lhs(), "a", "a", counter, abox);
  bool root_named = std::any_of(abox.begin(), abox.end(), [](const Assertion& x) { return x.first == "a"; });
  if (!root_named) {
    std::string anchor = "Anything";
    for (int k = 1; avoid.concepts.count(anchor); ++k) anchor = "Anything" + std::to_string(k);
    abox.insert(Assertion::OfConcept(anchor, "a"));
  }
  return DataExample{std::move(abox), Iq::ConceptQuery(a.rhs(), "a")};
}

}  // namespace dlearn
