// Teachers. A learner only ever holds a Teacher&, so it sees answers and
// nothing of the target.

#ifndef DLEARN_ORACLE_H_
#define DLEARN_ORACLE_H_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dlearn/concept.h"
#include "dlearn/framework.h"
#include "dlearn/random.h"

namespace dlearn {

enum class QueryKind { kMembership, kEquivalence, kSample };
std::string_view ToString(QueryKind k);

struct Answer {
  enum class Kind { kYes, kNo, kCounterexample, kSample };
  Kind kind = Kind::kNo;
  std::optional<Example> example;  // counterexample or sample
  bool label = false;              // sample label

  static Answer Yes() { return {Kind::kYes, std::nullopt, false}; }
  static Answer No() { return {Kind::kNo, std::nullopt, false}; }
  static Answer Counterexample(Example e) { return {Kind::kCounterexample, std::move(e), false}; }
  static Answer Sample(LabeledExample s) { return {Kind::kSample, std::move(s.example), s.label}; }

  bool yes() const { return kind == Kind::kYes; }
};

// Text form used in transcripts: "yes", "no", the counterexample line, or
// "<label> <example line>" for samples.
std::string ToString(const Answer& a);

class UnsupportedQuery : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptySupport : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Teacher {
 public:
  virtual ~Teacher() = default;
  virtual const LearningFramework& framework() const = 0;
  // Yes or No.
  virtual Answer AnswerMq(const Example& e) = 0;
  // Yes or a counterexample.
  virtual Answer AnswerEq(const TBox& h) = 0;
  // A labeled sample.
  virtual Answer AnswerSq() = 0;
};

enum class EqStrategy { kFirstSmallest, kRandomSeeded, kAdversarialLargest };
std::string_view ToString(EqStrategy s);
EqStrategy ParseEqStrategy(std::string_view s);

struct DistributionSpec {
  enum class Kind { kUniform, kWeighted };
  Kind kind = Kind::kUniform;
  // Uniform: over EnumerateExamples(signature, depth_cap, size_cap). An empty
  // signature means the target's.
  Signature signature;
  std::size_t depth_cap = 1;
  std::size_t size_cap = 5;
  // Weighted: finite non-negative weights with a positive total.
  std::vector<std::pair<Example, double>> corpus;

  static DistributionSpec Uniform(std::size_t depth_cap, std::size_t size_cap, Signature sig = {});
  static DistributionSpec Weighted(std::vector<std::pair<Example, double>> corpus);
};

struct TeacherConfig {
  TBox target;
  FragmentId framework = FragmentId::kElh;
  EqStrategy eq_strategy = EqStrategy::kFirstSmallest;
  DistributionSpec distribution;
  std::uint64_t seed = 0;
};

// Answers truthfully for a machine-held target.
class TruthfulTeacher : public Teacher {
 public:
  // Throws FragmentViolation if the target is outside the framework.
  explicit TruthfulTeacher(TeacherConfig cfg);

  const LearningFramework& framework() const override { return framework_; }
  Answer AnswerMq(const Example& e) override;
  Answer AnswerEq(const TBox& h) override;
  Answer AnswerSq() override;

  // The examples the sample distribution draws from, with their weights.
  const std::vector<std::pair<Example, double>>& Support();

 private:
  TeacherConfig cfg_;
  LearningFramework framework_;
  Rng rng_;
  std::optional<std::vector<std::pair<Example, double>>> support_;
  std::vector<double> cumulative_;
};

class SessionClosed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TeacherTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A pending query as seen from the answering side.
struct PendingQuery {
  QueryKind kind;
  std::string payload;
  std::size_t step;
};

// Relays queries to an external answerer (a human behind the HTTP API). The
// learner thread blocks in AnswerMq/AnswerEq until Reply is called from
// another thread. Answers are trusted as given.
class DeferredTeacher : public Teacher {
 public:
  explicit DeferredTeacher(FragmentId f, std::chrono::milliseconds timeout = std::chrono::hours(24));

  const LearningFramework& framework() const override { return framework_; }
  Answer AnswerMq(const Example& e) override;
  Answer AnswerEq(const TBox& h) override;
  Answer AnswerSq() override;

  std::optional<PendingQuery> pending() const;

  // Error reported when a reply does not fit the pending query.
  class BadReply : public std::runtime_error {
   public:
    BadReply(std::string reason, const std::string& msg) : std::runtime_error(msg), reason_(std::move(reason)) {}
    const std::string& reason() const { return reason_; }

   private:
    std::string reason_;
  };

  // "yes"/"no" for membership, "yes" for equivalence. Throws BadReply
  // ("no-pending-query", "invalid-answer") and leaves the query pending.
  void ReplyYesNo(std::string_view answer);
  // A counterexample line for a pending equivalence query. Throws BadReply
  // ("no-pending-query", "parse-error", "fragment-violation", "invalid-answer").
  void ReplyCounterexample(std::string_view text);

  // Wakes the learner with SessionClosed.
  void Close();

 private:
  Answer Await(QueryKind kind, std::string payload);
  void Deliver(Answer a);

  LearningFramework framework_;
  std::chrono::milliseconds timeout_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::optional<PendingQuery> pending_;
  std::optional<Answer> reply_;
  std::size_t steps_ = 0;
  bool closed_ = false;
};

}  // namespace dlearn

#endif  // DLEARN_ORACLE_H_
