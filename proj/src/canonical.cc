// Canonical models and the model-checking route to entailment.

#include <algorithm>
#include <map>
#include <set>

#include "dlearn/reasoner.h"

namespace dlearn {

namespace {

// Reflexive-transitive closure of the RI digraph, computed by search.
std::map<std::string, std::set<std::string>> SuperRoles(const TBox& t) {
  std::map<std::string, std::set<std::string>> direct;
  for (const auto& a : t)
    if (a.is_ri()) direct[a.sub_role()].insert(a.sup_role());
  std::map<std::string, std::set<std::string>> out;
  for (const auto& [r, unused] : direct) {
    std::set<std::string> seen{r};
    std::vector<std::string> stack{r};
    while (!stack.empty()) {
      std::string cur = stack.back();
      stack.pop_back();
      auto it = direct.find(cur);
      if (it == direct.end()) continue;
      for (const auto& s : it->second)
        if (seen.insert(s).second) stack.push_back(s);
    }
    out.emplace(r, std::move(seen));
  }
  return out;
}

class ModelBuilder {
 public:
  ModelBuilder(const TBox& t, const std::vector<Concept>& seeds) : t_(t), super_(SuperRoles(t)) {
    std::set<Concept> subs;
    for (const auto& a : t)
      if (a.is_ci()) {
        CollectSubconcepts(a.lhs(), subs);
        CollectSubconcepts(a.rhs(), subs);
      }
    for (const auto& c : seeds) CollectSubconcepts(c, subs);
    for (const auto& c : subs)
      if (c.is_exists() && !witness_.count(c.filler().str()))
        witness_.emplace(c.filler().str(), model_.AddElement());
    // AddElement started from domain_size == 1; element 0 is left for the caller.
    for (const auto& c : subs)
      if (c.is_exists()) Realize(witness_.at(c.filler().str()), c.filler());
  }

  Interpretation& model() { return model_; }

  // Makes d an instance of c by adding its top-level structure; fillers are
  // represented by their shared witness.
  void Realize(Element d, const Concept& c) {
    for (const auto& part : c.TopLevelConjuncts()) {
      if (part.is_name()) {
        model_.AddConcept(part.name(), d);
      } else {
        AddEdge(part.role(), d, witness_.at(part.filler().str()));
      }
    }
  }

  void AddEdge(const std::string& r, Element d, Element e) {
    model_.AddRole(r, d, e);
    if (auto it = super_.find(r); it != super_.end())
      for (const auto& s : it->second) model_.AddRole(s, d, e);
  }

  // Repairs violated CIs until none remain. Returns false if `fuel` passes
  // were not enough.
  bool Close(std::optional<std::size_t> fuel) {
    std::size_t passes = 0;
    for (;;) {
      bool changed = false;
      for (const auto& a : t_) {
        if (!a.is_ci()) continue;
        std::set<Element> lhs = ExtensionOf(a.lhs(), model_);
        if (lhs.empty()) continue;
        std::set<Element> rhs = ExtensionOf(a.rhs(), model_);
        for (Element d : lhs) {
          if (rhs.count(d)) continue;
          Realize(d, a.rhs());
          changed = true;
        }
      }
      if (!changed) return true;
      if (fuel && ++passes > *fuel) return false;
    }
  }

 private:
  const TBox& t_;
  std::map<std::string, std::set<std::string>> super_;
  std::map<std::string, Element> witness_;
  Interpretation model_;
};

}  // namespace

std::size_t DefaultFuel(const TBox& t, const Axiom& ci) {
  return SizeOf(t) + (ci.is_ci() ? DepthOf(ci.rhs()) : 0) + 2;
}

Interpretation CanonicalModel(const TBox& t, const Concept& c, Element* root, std::optional<std::size_t> fuel,
                              const std::vector<Concept>& extra_fillers) {
  std::vector<Concept> seeds = extra_fillers;
  seeds.push_back(c);
  ModelBuilder b(t, seeds);
  b.Realize(0, c);
  if (!b.Close(fuel)) throw FuelExhausted("canonical model did not stabilize within " + std::to_string(*fuel) + " passes");
  if (root) *root = 0;
  return std::move(b.model());
}

Interpretation CanonicalModel(const TBox& t, const ABox& abox, std::optional<std::size_t> fuel,
                              const std::vector<Concept>& extra_fillers) {
  ModelBuilder b(t, extra_fillers);
  Interpretation& m = b.model();
  // Element 0 exists already; give it to the first individual.
  bool first = true;
  for (const auto& ind : IndividualsOf(abox)) {
    m.individuals[ind] = first ? 0 : m.AddElement();
    first = false;
  }
  for (const auto& a : abox) {
    if (a.is_role) {
      b.AddEdge(a.predicate, m.individuals.at(a.first), m.individuals.at(a.second));
    } else {
      m.AddConcept(a.predicate, m.individuals.at(a.first));
    }
  }
  if (!b.Close(fuel)) throw FuelExhausted("canonical model did not stabilize within " + std::to_string(*fuel) + " passes");
  return std::move(b.model());
}

bool CanonicalCheck(const TBox& t, const Axiom& ci, std::optional<std::size_t> fuel) {
  std::size_t f = fuel.value_or(DefaultFuel(t, ci));
  if (ci.is_ri()) {
    ABox abox{Assertion::OfRole(ci.sub_role(), "a", "b")};
    Interpretation m = CanonicalModel(t, abox, f);
    return m.HasRole(ci.sup_role(), m.individuals.at("a"), m.individuals.at("b"));
  }
  Element root = 0;
  Interpretation m = CanonicalModel(t, ci.lhs(), &root, f);
  return InExtension(ci.rhs(), m, root);
}

bool IqEntails(const TBox& t, const ABox& abox, const Iq& q) {
  std::vector<Concept> extra;
  if (!q.is_role()) extra.push_back(q.concept_expr());
  Interpretation m = CanonicalModel(t, abox, std::nullopt, extra);
  return Satisfies(m, q);
}

}  // namespace dlearn
