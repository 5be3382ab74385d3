// ELH entailment.
//
// The main route normalizes the TBox and saturates it with the EL completion
// rules extended by the role hierarchy. An independent route builds canonical
// models and model-checks them; it answers instance queries and serves as a
// cross-check for subsumption.

#ifndef DLEARN_REASONER_H_
#define DLEARN_REASONER_H_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlearn/concept.h"
#include "dlearn/interpretation.h"

namespace dlearn {

// A TBox rewritten into the shapes A <= B, A1 & A2 <= B, A <= some(r, B),
// some(r, A) <= B (A, B names or top) plus role inclusions. Every compound
// subconcept X of the input is given a fresh name __xN with X == __xN, so the
// rewriting is a conservative extension of the original.
struct NormalizedTBox {
  TBox original;
  TBox normal_axioms;
  std::map<std::string, Concept> fresh_map;
  // Concept name, top or fresh name standing for each registered concept,
  // keyed by canonical print.
  std::map<std::string, Concept> atom_of;

  // Throws std::out_of_range for concepts that were not registered.
  const Concept& AtomFor(const Concept& c) const;
};

// `extra` registers additional concepts (typically query sides).
NormalizedTBox Normalize(const TBox& t, const std::vector<Concept>& extra = {});

// Saturates a TBox once and answers subsumptions between registered concepts.
class Classifier {
 public:
  explicit Classifier(const TBox& t, const std::vector<Concept>& extra = {});
  ~Classifier();
  Classifier(Classifier&&) noexcept;
  Classifier& operator=(Classifier&&) noexcept;

  // Unregistered concepts fall back to a fresh saturation.
  bool Subsumes(const Concept& sub, const Concept& sup) const;
  bool RoleSubsumes(const std::string& sub, const std::string& sup) const;
  bool Entails(const Axiom& a) const;

  const NormalizedTBox& normalized() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool Entails(const TBox& t, const Axiom& a);
// Every axiom of t2 follows from t.
bool EntailsTBox(const TBox& t, const TBox& t2);
// Mutual entailment.
bool Equivalent(const TBox& t1, const TBox& t2);

class FuelExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// size_of(t) + depth_of(rhs) + 2.
std::size_t DefaultFuel(const TBox& t, const Axiom& ci);

// The canonical model of `c` w.r.t. `t`: a root realizing c plus one shared
// witness per existential filler occurring in t or c, closed under t.
// `fuel` bounds the number of closure passes; nullopt runs to the fixpoint.
// Throws FuelExhausted when the bound is hit before the fixpoint.
Interpretation CanonicalModel(const TBox& t, const Concept& c, Element* root,
                              std::optional<std::size_t> fuel = std::nullopt,
                              const std::vector<Concept>& extra_fillers = {});
Interpretation CanonicalModel(const TBox& t, const ABox& abox,
                              std::optional<std::size_t> fuel = std::nullopt,
                              const std::vector<Concept>& extra_fillers = {});

// Decides t |= ci by model checking the canonical model of the left side.
// RIs are decided on the canonical model of {r(a, b)}.
bool CanonicalCheck(const TBox& t, const Axiom& ci, std::optional<std::size_t> fuel = std::nullopt);

bool IqEntails(const TBox& t, const ABox& abox, const Iq& q);

}  // namespace dlearn

#endif  // DLEARN_REASONER_H_
