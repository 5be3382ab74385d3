// Learning algorithms. Each takes a teacher handle and the target signature
// and returns a hypothesis TBox.

#ifndef DLEARN_LEARNER_H_
#define DLEARN_LEARNER_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dlearn/concept.h"
#include "dlearn/framework.h"
#include "dlearn/oracle.h"

namespace dlearn {

class CapExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LearnerCaps {
  std::size_t max_size = 12;  // elh-enum-eq: largest hypothesis size tried
  std::size_t depth_cap = 1;  // elh-enum-eq: existential depth of hypothesis axioms
};

using Learner = std::function<TBox(Teacher&, const Signature&)>;

// One MQ per A <= B over the concept names; reflexive answers are asked but
// not stored.
TBox LearnToyAtomic(Teacher& teacher, const Signature& sig);

struct HornEntry {
  std::set<std::string> antecedent;
  std::set<std::string> consequents;  // names outside the antecedent
};

struct HornTrace {
  std::size_t counterexamples = 0;
  bool all_counterexamples_positive = true;
  std::size_t refinements = 0;
  // Sum of antecedent sizes at creation; bounds the number of refinements.
  std::size_t created_antecedent_total = 0;
  bool refinements_shrink = true;
  std::vector<HornEntry> final_state;
};

// Propositional Horn learning with MQs and EQs over the toy-conj fragment.
TBox LearnHorn(Teacher& teacher, const Signature& sig, HornTrace* trace = nullptr);

// One MQ per DL-Lite axiom over sig.
TBox LearnDlLiteMq(Teacher& teacher, const Signature& sig);

// Grows the hypothesis by the returned counterexamples until Yes.
TBox LearnDlLiteEq(Teacher& teacher, const Signature& sig);

// EQs on every TBox of size 0, 1, 2, ... over sig, skipping TBoxes
// equivalent to one already asked. Throws CapExhausted after max_size.
TBox LearnElhEnumerate(Teacher& teacher, const Signature& sig, const LearnerCaps& caps);

struct PacParams {
  double epsilon = 0.1;
  double delta = 0.1;
};

// Throws std::invalid_argument unless both lie strictly inside (0, 1).
void Validate(const PacParams& p);

// Samples replacing the i-th EQ (i >= 1): ceil((ln(1/delta) + i ln 2) / epsilon).
std::size_t PacSampleSize(const PacParams& p, std::size_t i);

// Runs `inner` with every EQ answered from sample queries.
TBox PacWrap(const Learner& inner, Teacher& teacher, const Signature& sig, const PacParams& p);

// Learner ids: toy-mq, horn-mqeq, dllite-mq, dllite-eq, elh-enum-eq and
// pac(<inner>). Throws std::invalid_argument for unknown ids and for pac
// without parameters.
Learner MakeLearner(std::string_view id, const LearnerCaps& caps = {}, std::optional<PacParams> pac = std::nullopt);
bool IsKnownLearner(std::string_view id);
bool IsPacLearner(std::string_view id);
// Fragments a learner's hypotheses and queries fit into.
bool LearnerSupports(std::string_view id, FragmentId f);
const std::vector<std::string>& BaseLearnerIds();

}  // namespace dlearn

#endif  // DLEARN_LEARNER_H_
