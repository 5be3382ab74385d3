// Experiment orchestration: recorded teacher sessions, target generation,
// experiment runs and their reports.

#ifndef DLEARN_HARNESS_H_
#define DLEARN_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dlearn/concept.h"
#include "dlearn/framework.h"
#include "dlearn/learner.h"
#include "dlearn/oracle.h"

namespace dlearn {

using Json = nlohmann::ordered_json;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InfeasibleSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TranscriptEvent {
  std::size_t step = 0;
  std::string type;  // QueryPosed, AnswerGiven, HypothesisSnapshot, Halted
  Json payload;
};

struct Metrics {
  std::size_t mq = 0;
  std::size_t eq = 0;
  std::size_t sq = 0;
  // Largest counterexample size seen so far, one entry per answer.
  std::vector<std::size_t> max_counterexample_so_far;
  std::optional<bool> success;  // unknown without a machine-held target
  std::size_t hypothesis_size = 0;
  std::string outcome;
  std::optional<double> true_error;  // PAC runs: D-mass of mu(h) xor mu(t)
  std::vector<std::string> budget_warnings;
  double wall_ms = 0;  // not part of the transcript

  std::size_t queries() const { return mq + eq + sq; }
};

// Records the query/answer protocol between a learner and a teacher.
// Thread-safe: the learner side writes while another thread may read.
class RecordingTeacher : public Teacher {
 public:
  // max_queries = 0 means unbounded; otherwise the query past the limit
  // throws CapExhausted. `step_budget` enables advisory warnings.
  RecordingTeacher(Teacher& base, std::size_t max_queries = 0, std::optional<std::size_t> step_budget = std::nullopt);

  const LearningFramework& framework() const override { return base_.framework(); }
  Answer AnswerMq(const Example& e) override;
  Answer AnswerEq(const TBox& h) override;
  Answer AnswerSq() override;

  // Appends the final hypothesis (if any) and the halted event.
  void RecordHalt(const std::optional<TBox>& h, const std::string& outcome, std::optional<bool> success,
                  std::optional<double> true_error = std::nullopt);

  std::vector<TranscriptEvent> events() const;
  Metrics metrics() const;
  // Step of the most recent query event.
  std::size_t last_query_step() const;
  Json TranscriptJson(const Json& config) const;

 private:
  std::size_t Pose(QueryKind kind, const std::string& text);
  void Record(const Answer& a);

  Teacher& base_;
  std::size_t max_queries_;
  std::optional<std::size_t> step_budget_;
  mutable std::mutex mu_;
  std::vector<TranscriptEvent> events_;
  Metrics metrics_;
  std::size_t last_query_step_ = 0;
  std::size_t max_counterexample_ = 0;
};

Json ToJson(const Metrics& m);
Json ToJson(const Signature& s);
Signature SignatureFromJson(const Json& j);

struct GeneratorSpec {
  FragmentId fragment = FragmentId::kToyAtomic;
  std::size_t sig_size = 3;            // concept names
  std::size_t axiom_count = 2;
  std::size_t depth_cap = 1;
  std::optional<std::size_t> roles;    // default: 0 for toy fragments, 1 otherwise
  std::size_t max_axiom_size = 7;      // elh and elh-iq only
  std::uint64_t seed = 0;
};

// "sig=3,axioms=2,depth=1[,roles=1][,size=7]".
GeneratorSpec ParseGeneratorSpec(std::string_view text, FragmentId f, std::uint64_t seed);
Json ToJson(const GeneratorSpec& g);
// Concept names A, B, C, ... and roles r, s, t, ...
Signature GeneratorSignature(const GeneratorSpec& g);
// A random TBox of axiom_count axioms, none a tautology or entailed by the
// others picked before it. Deterministic per seed. Throws InfeasibleSpec.
TBox GenerateTarget(const GeneratorSpec& g);

struct ExperimentConfig {
  FragmentId framework = FragmentId::kToyAtomic;
  std::string learner = "toy-mq";
  EqStrategy eq_strategy = EqStrategy::kFirstSmallest;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> target_path;
  std::optional<GeneratorSpec> generator;
  std::optional<PacParams> pac;
  std::size_t max_queries = 0;
  LearnerCaps caps;
  // Uniform sample distribution for SQs over the learner's signature.
  std::size_t sample_depth_cap = 1;
  std::size_t sample_size_cap = 5;
  std::optional<std::filesystem::path> out_dir;
};

Json ToJson(const ExperimentConfig& cfg, const Signature& sig);

struct ExperimentResult {
  TBox target;
  Signature signature;
  std::optional<TBox> hypothesis;
  Metrics metrics;
  Json transcript;  // {config, events, metrics}
};

// Fragment-specific bound on the number of queries of exact polynomial
// learners; nullopt where none applies.
std::optional<std::size_t> StepBudget(std::string_view learner, const TBox& target, const Signature& sig);

// Throws ConfigError for invalid configurations. Learner failures (cap
// exhaustion, misbehaving teachers) are reported in metrics.outcome.
ExperimentResult RunExperiment(const ExperimentConfig& cfg);

std::string SummaryCsvHeader();
std::string SummaryCsvRow(const ExperimentConfig& cfg, const ExperimentResult& r);
// transcript.json, summary.csv and hypothesis.tbox under dir.
void WriteReports(const std::filesystem::path& dir, const ExperimentConfig& cfg, const ExperimentResult& r);

}  // namespace dlearn

#endif  // DLEARN_HARNESS_H_
