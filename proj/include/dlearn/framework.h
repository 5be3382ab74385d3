// Learning frameworks (examples, hypotheses, mu) for the fragments studied
// here: learning from entailments for the toy languages, DL-Lite and ELH, and
// learning from (ABox, instance query) pairs for ELH.

#ifndef DLEARN_FRAMEWORK_H_
#define DLEARN_FRAMEWORK_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dlearn/concept.h"

namespace dlearn {

enum class FragmentId { kToyAtomic, kToyConj, kDlLite, kElh, kElhIq };

std::string_view ToString(FragmentId f);
// Accepts the ids used on the command line: toy-atomic, toy-conj, dllite, elh, elh-iq.
FragmentId ParseFragmentId(std::string_view s);

using Example = std::variant<Axiom, DataExample>;

std::string ToString(const Example& e);
// "ci:"/"ri:" lines become axiom examples, "iq:" lines data examples.
Example ParseExample(std::string_view text);
std::size_t SizeOf(const Example& e);

struct LabeledExample {
  Example example;
  bool label = false;
};

class FragmentViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LearningFramework {
 public:
  explicit LearningFramework(FragmentId id) : id_(id) {}

  FragmentId id() const { return id_; }
  bool uses_data_examples() const { return id_ == FragmentId::kElhIq; }

  bool AdmitsAxiom(const Axiom& a) const;
  bool AdmitsHypothesis(const TBox& t) const;
  bool AdmitsExample(const Example& e) const;
  // Throw FragmentViolation naming the offending item.
  void CheckHypothesis(const TBox& t) const;
  void CheckExample(const Example& e) const;

  // e in mu(h): entailment for axiom examples, (h, abox) |= query for data.
  bool IsMember(const TBox& h, const Example& e) const;
  // e in mu(t) xor mu(h).
  bool IsCounterexample(const TBox& t, const TBox& h, const Example& e) const;

  // Every example over `sig` within the caps, each once, ordered by size and
  // then by canonical print. The toy and DL-Lite spaces ignore the caps;
  // elh-iq examples use the individuals a and b.
  std::vector<Example> EnumerateExamples(const Signature& sig, std::size_t depth_cap, std::size_t size_cap) const;

 private:
  FragmentId id_;
};

// Canonical ELH concepts over `sig` with size and depth within the caps,
// ordered by size then print.
std::vector<Concept> EnumerateConcepts(const Signature& sig, std::size_t depth_cap, std::size_t size_cap);

// Turns C <= D into ({tree of C at a}, D(a)) and r <= s into ({r(a, b)}, s(a, b)).
// (t, abox) |= query iff t |= axiom. A top left side is anchored by a concept
// name outside `avoid`, which behaves like top for every TBox over `avoid`.
DataExample AxiomToDataExample(const Axiom& a, const Signature& avoid);

}  // namespace dlearn

#endif  // DLEARN_FRAMEWORK_H_
