// The family T_sigma = {sigma <= M} u T_0 over A_1..A_n, NA_1..NA_n, M, with
// T_0 = {A_i & NA_i <= M}, and an adversarial membership teacher that keeps
// every member consistent with its answers for as long as possible.

#ifndef DLEARN_HARDNESS_H_
#define DLEARN_HARDNESS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dlearn/concept.h"
#include "dlearn/oracle.h"

namespace dlearn {

inline constexpr int kMaxFamilyN = 20;

// Member index: bit i (counting from the most significant of n bits) selects
// NA_{i+1} over A_{i+1}, so indices order members by sigma read as a bit string.
using SigmaIndex = std::uint32_t;

struct SigmaFamily {
  int n = 0;
  std::vector<std::string> pos;  // A1..An
  std::vector<std::string> neg;  // NA1..NAn
  std::string goal = "M";
  TBox t0;
  Signature signature;

  std::size_t size() const { return std::size_t{1} << n; }
  Concept SigmaConcept(SigmaIndex s) const;
  TBox Member(SigmaIndex s) const;
  std::string Bits(SigmaIndex s) const;
};

// Throws std::invalid_argument for n < 1 and std::length_error above `limit`.
SigmaFamily BuildFamily(int n, int limit = kMaxFamilyN);

enum class CiPattern { kEntailedByAll, kEntailedByAtMostOne, kViolation };
std::string_view ToString(CiPattern c);

struct CiClass {
  CiPattern kind = CiPattern::kEntailedByAtMostOne;
  std::size_t entailing = 0;          // members entailing the CI
  std::optional<SigmaIndex> sigma;    // the single one, if any
};

// Decides T_sigma |= ci for every member. The default engine is Horn forward
// chaining over bitmasks; `use_reasoner` runs the ELH reasoner per member.
// Throws FragmentViolation for CIs outside toy-conj over the family signature.
CiClass ClassifyCi(const SigmaFamily& fam, const Axiom& ci, bool use_reasoner = false);

// Every CI with a non-empty conjunction of family names on the left and a
// family name on the right.
std::vector<Axiom> CandidateCis(const SigmaFamily& fam);

class QueryBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DichotomyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Answers Yes only when every remaining member entails the query; otherwise
// No, dropping the (at most one) remaining member that entails it.
class AdversarialMqTeacher : public Teacher {
 public:
  AdversarialMqTeacher(SigmaFamily fam, std::size_t max_queries);

  const LearningFramework& framework() const override { return framework_; }
  Answer AnswerMq(const Example& e) override;
  Answer AnswerEq(const TBox&) override;
  Answer AnswerSq() override;

  const SigmaFamily& family() const { return fam_; }
  std::size_t queries() const { return queries_; }
  std::size_t remaining() const { return remaining_; }
  std::vector<SigmaIndex> RemainingMembers() const;
  // remaining() after each answered query.
  const std::vector<std::size_t>& remaining_series() const { return series_; }
  // |remaining| >= 2^n - k after the k-th query, for every k so far.
  bool elimination_bound_held() const { return bound_held_; }
  // Replays every answer against T_sigma.
  bool ConsistentWithAnswers(SigmaIndex s) const;

 private:
  SigmaFamily fam_;
  LearningFramework framework_;
  std::size_t max_queries_;
  std::size_t queries_ = 0;
  std::vector<char> alive_;
  std::size_t remaining_;
  std::vector<std::size_t> series_;
  std::vector<std::pair<Axiom, bool>> log_;
  bool bound_held_ = true;
};

enum class HardnessOutcome { kPassed, kFailed, kExceeded };
std::string_view ToString(HardnessOutcome o);

struct HardnessResult {
  int n = 0;
  std::string learner;
  std::size_t queries = 0;
  std::size_t remaining = 0;
  HardnessOutcome outcome = HardnessOutcome::kFailed;
  std::optional<SigmaIndex> witness;  // a member the hypothesis misses
  bool elimination_bound_held = true;
  bool consistency_held = true;

  // queries > 2^n - 1 or the learner did not identify the target.
  bool lower_bound_witnessed() const;
  static std::string CsvHeader();
  std::string CsvRow() const;
};

// MQ-only learners that know the family layout. Ids: toy-mq, sigma-scan,
// conj-mq, random-mq, halt-immediately.
using FamilyLearner = std::function<TBox(Teacher&, const SigmaFamily&)>;
const std::vector<std::string>& HardnessLearnerIds();
FamilyLearner MakeHardnessLearner(std::string_view id, std::uint64_t seed = 0);

// Runs a learner against the adversary. The query budget defaults to 2^(n+1).
HardnessResult RunHardness(int n, std::string_view learner, std::uint64_t seed = 0,
                           std::optional<std::size_t> max_queries = std::nullopt);

}  // namespace dlearn

#endif  // DLEARN_HARDNESS_H_
