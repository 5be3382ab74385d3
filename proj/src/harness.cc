#include "dlearn/harness.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "dlearn/random.h"
#include "dlearn/reasoner.h"
#include "dlearn/syntax.h"

namespace dlearn {

namespace {

std::string_view AnswerKind(const Answer& a) {
  switch (a.kind) {
    case Answer::Kind::kYes: return "yes";
    case Answer::Kind::kNo: return "no";
    case Answer::Kind::kCounterexample: return "counterexample";
    case Answer::Kind::kSample: return "sample";
  }
  return "?";
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot read target file '" + p.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  out << text;
}

std::size_t ParseCount(std::string_view key, std::string_view value) {
  std::size_t out = 0;
  if (value.empty()) throw ConfigError("generator field '" + std::string(key) + "' has no value");
  for (char c : value) {
    if (c < '0' || c > '9') throw ConfigError("generator field '" + std::string(key) + "' is not a number");
    out = out * 10 + static_cast<std::size_t>(c - '0');
  }
  return out;
}

std::string NthName(std::size_t i, bool role) {
  static constexpr std::string_view kRoles = "rstuvw";
  if (role) return i < kRoles.size() ? std::string(1, kRoles[i]) : "r" + std::to_string(i);
  return i < 26 ? std::string(1, static_cast<char>('A' + i)) : "C" + std::to_string(i);
}

bool IsToy(FragmentId f) { return f == FragmentId::kToyAtomic || f == FragmentId::kToyConj; }

}  // namespace

// ---------------------------------------------------------------- recording

RecordingTeacher::RecordingTeacher(Teacher& base, std::size_t max_queries, std::optional<std::size_t> step_budget)
    : base_(base), max_queries_(max_queries), step_budget_(step_budget) {}

std::size_t RecordingTeacher::Pose(QueryKind kind, const std::string& text) {
  std::lock_guard lock(mu_);
  if (max_queries_ && metrics_.queries() >= max_queries_)
    throw CapExhausted("query cap of " + std::to_string(max_queries_) + " reached");
  switch (kind) {
    case QueryKind::kMembership: ++metrics_.mq; break;
    case QueryKind::kEquivalence: ++metrics_.eq; break;
    case QueryKind::kSample: ++metrics_.sq; break;
  }
  Json payload = {{"kind", ToString(kind)}, {"text", text}};
  events_.push_back({events_.size() + 1, "QueryPosed", std::move(payload)});
  last_query_step_ = events_.size();
  return last_query_step_;
}

void RecordingTeacher::Record(const Answer& a) {
  std::lock_guard lock(mu_);
  Json payload = {{"kind", AnswerKind(a)}};
  if (a.example) {
    payload["text"] = ToString(*a.example);
    payload["size"] = SizeOf(*a.example);
    if (a.kind == Answer::Kind::kSample) payload["label"] = a.label;
  }
  if (a.kind == Answer::Kind::kCounterexample) max_counterexample_ = std::max(max_counterexample_, SizeOf(*a.example));
  events_.push_back({events_.size() + 1, "AnswerGiven", std::move(payload)});
  metrics_.max_counterexample_so_far.push_back(max_counterexample_);
  if (step_budget_ && metrics_.queries() > *step_budget_ && metrics_.budget_warnings.empty())
    metrics_.budget_warnings.push_back("query " + std::to_string(metrics_.queries()) + " exceeds the budget of " +
                                       std::to_string(*step_budget_));
}

Answer RecordingTeacher::AnswerMq(const Example& e) {
  Pose(QueryKind::kMembership, ToString(e));
  Answer a = base_.AnswerMq(e);
  Record(a);
  return a;
}

Answer RecordingTeacher::AnswerEq(const TBox& h) {
  Pose(QueryKind::kEquivalence, PrintTBox(h));
  Answer a = base_.AnswerEq(h);
  Record(a);
  return a;
}

Answer RecordingTeacher::AnswerSq() {
  Pose(QueryKind::kSample, "");
  Answer a = base_.AnswerSq();
  Record(a);
  return a;
}

void RecordingTeacher::RecordHalt(const std::optional<TBox>& h, const std::string& outcome, std::optional<bool> success,
                                  std::optional<double> true_error) {
  std::lock_guard lock(mu_);
  if (h) {
    events_.push_back({events_.size() + 1, "HypothesisSnapshot", Json{{"text", PrintTBox(*h)}, {"size", SizeOf(*h)}}});
    metrics_.hypothesis_size = SizeOf(*h);
  }
  metrics_.outcome = outcome;
  metrics_.success = success;
  metrics_.true_error = true_error;
  events_.push_back({events_.size() + 1, "Halted", Json{{"outcome", outcome}}});
}

std::vector<TranscriptEvent> RecordingTeacher::events() const {
  std::lock_guard lock(mu_);
  return events_;
}

Metrics RecordingTeacher::metrics() const {
  std::lock_guard lock(mu_);
  return metrics_;
}

std::size_t RecordingTeacher::last_query_step() const {
  std::lock_guard lock(mu_);
  return last_query_step_;
}

Json RecordingTeacher::TranscriptJson(const Json& config) const {
  std::lock_guard lock(mu_);
  Json events = Json::array();
  for (const auto& e : events_) events.push_back({{"step", e.step}, {"type", e.type}, {"payload", e.payload}});
  return {{"config", config}, {"events", std::move(events)}, {"metrics", ToJson(metrics_)}};
}

Json ToJson(const Metrics& m) {
  Json j = {{"mqCount", m.mq},
            {"eqCount", m.eq},
            {"sqCount", m.sq},
            {"maxCounterexampleSoFar", m.max_counterexample_so_far},
            {"success", m.success ? Json(*m.success) : Json(nullptr)},
            {"hypothesisSize", m.hypothesis_size},
            {"outcome", m.outcome}};
  if (m.true_error) j["trueError"] = *m.true_error;
  j["budgetWarnings"] = m.budget_warnings;
  return j;
}

Json ToJson(const Signature& s) { return {{"concepts", s.concepts}, {"roles", s.roles}}; }

Signature SignatureFromJson(const Json& j) {
  Signature s;
  if (!j.is_object()) throw ConfigError("signature must be an object");
  for (const char* key : {"concepts", "roles"}) {
    if (!j.contains(key)) continue;
    const Json& list = j.at(key);
    if (!list.is_array()) throw ConfigError(std::string("signature.") + key + " must be an array");
    for (const auto& name : list) {
      if (!name.is_string()) throw ConfigError(std::string("signature.") + key + " must hold strings");
      std::string n = name.get<std::string>();
      if (!IsValidIdentifier(n) || IsReservedWord(n) || IsFreshName(n)) throw ConfigError("invalid name '" + n + "'");
      (std::string_view(key) == "concepts" ? s.concepts : s.roles).insert(n);
    }
  }
  return s;
}

// ---------------------------------------------------------------- targets

GeneratorSpec ParseGeneratorSpec(std::string_view text, FragmentId f, std::uint64_t seed) {
  GeneratorSpec g;
  g.fragment = f;
  g.seed = seed;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view field = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    auto eq = field.find('=');
    if (eq == std::string_view::npos) throw ConfigError("generator field '" + std::string(field) + "' lacks '='");
    std::string_view key = field.substr(0, eq);
    std::size_t value = ParseCount(key, field.substr(eq + 1));
    if (key == "sig") g.sig_size = value;
    else if (key == "axioms") g.axiom_count = value;
    else if (key == "depth") g.depth_cap = value;
    else if (key == "roles") g.roles = value;
    else if (key == "size") g.max_axiom_size = value;
    else throw ConfigError("unknown generator field '" + std::string(key) + "'");
  }
  return g;
}

Json ToJson(const GeneratorSpec& g) {
  Signature sig = GeneratorSignature(g);
  return {{"fragment", ToString(g.fragment)}, {"sig", g.sig_size},           {"roles", sig.roles.size()},
          {"axioms", g.axiom_count},          {"depth", g.depth_cap},        {"size", g.max_axiom_size},
          {"seed", g.seed}};
}

Signature GeneratorSignature(const GeneratorSpec& g) {
  Signature s;
  for (std::size_t i = 0; i < g.sig_size; ++i) s.concepts.insert(NthName(i, false));
  std::size_t roles = IsToy(g.fragment) ? 0 : g.roles.value_or(1);
  for (std::size_t i = 0; i < roles; ++i) s.roles.insert(NthName(i, true));
  return s;
}

TBox GenerateTarget(const GeneratorSpec& g) {
  Signature sig = GeneratorSignature(g);
  Rng rng(g.seed);
  TBox t;
  auto consider = [&](const Axiom& a) {
    if (!Entails(t, a)) t.Insert(a);
  };
  if (g.fragment == FragmentId::kToyConj) {
    // The space has (2^n - 1) n axioms, so draw instead of enumerating.
    const std::size_t n = sig.concepts.size();
    if (n == 0 && g.axiom_count > 0) throw InfeasibleSpec("empty signature");
    if (n < 64 && g.axiom_count > ((std::uint64_t{1} << n) - 1) * n)
      throw InfeasibleSpec("axiom count exceeds the toy-conj space");
    std::vector<std::string> names(sig.concepts.begin(), sig.concepts.end());
    for (std::size_t attempt = 0; t.size() < g.axiom_count; ++attempt) {
      if (attempt >= 1000 * (g.axiom_count + 1))
        throw InfeasibleSpec("could not find " + std::to_string(g.axiom_count) + " independent toy-conj axioms");
      std::size_t width = 1 + rng.Below(std::min<std::size_t>(3, n));
      std::vector<Concept> lhs;
      for (std::size_t i = 0; i < width; ++i) lhs.push_back(Concept::Name(names[rng.Below(n)]));
      consider(Axiom::Ci(Concept::And(lhs), Concept::Name(names[rng.Below(n)])));
    }
    return t;
  }
  LearningFramework f(g.fragment == FragmentId::kElhIq ? FragmentId::kElh : g.fragment);
  std::vector<Example> space = f.EnumerateExamples(sig, g.depth_cap, g.max_axiom_size);
  if (g.axiom_count > space.size())
    throw InfeasibleSpec("axiom count " + std::to_string(g.axiom_count) + " exceeds the " +
                         std::string(ToString(g.fragment)) + " space of " + std::to_string(space.size()) + " axioms");
  rng.Shuffle(space.begin(), space.end());
  for (const auto& e : space) {
    if (t.size() == g.axiom_count) break;
    consider(std::get<Axiom>(e));
  }
  if (t.size() < g.axiom_count)
    throw InfeasibleSpec("only " + std::to_string(t.size()) + " independent axioms exist for this spec");
  return t;
}

// ---------------------------------------------------------------- experiments

Json ToJson(const ExperimentConfig& cfg, const Signature& sig) {
  Json target;
  if (cfg.target_path) target["path"] = cfg.target_path->string();
  if (cfg.generator) target["generator"] = ToJson(*cfg.generator);
  Json j = {{"framework", ToString(cfg.framework)},
            {"learner", cfg.learner},
            {"eq_strategy", ToString(cfg.eq_strategy)},
            {"seed", cfg.seed},
            {"target", target},
            {"signature", ToJson(sig)},
            {"caps", {{"max_queries", cfg.max_queries}, {"max_size", cfg.caps.max_size}, {"depth_cap", cfg.caps.depth_cap}}},
            {"sample", {{"depth_cap", cfg.sample_depth_cap}, {"size_cap", cfg.sample_size_cap}}}};
  j["pac"] = cfg.pac ? Json{{"epsilon", cfg.pac->epsilon}, {"delta", cfg.pac->delta}} : Json(nullptr);
  return j;
}

std::optional<std::size_t> StepBudget(std::string_view learner, const TBox& target, const Signature& sig) {
  const std::size_t nc = sig.concepts.size();
  const std::size_t nr = sig.roles.size();
  const std::size_t m = target.size();
  if (learner == "toy-mq") return nc * nc;
  if (learner == "horn-mqeq") return 4 * m * m * nc + m + 1;
  if (learner == "dllite-mq") return (nc + nr) * (nc + nr) + nr * nr;
  if (learner == "dllite-eq") return (nc + nr) * (nc + nr) + nr * nr + 1;
  return std::nullopt;
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg) {
  if (!IsKnownLearner(cfg.learner)) throw ConfigError("unknown learner '" + cfg.learner + "'");
  if (!LearnerSupports(cfg.learner, cfg.framework))
    throw ConfigError("learner '" + cfg.learner + "' does not fit framework " + std::string(ToString(cfg.framework)));
  if (IsPacLearner(cfg.learner) && !cfg.pac) throw ConfigError("pac learners need --epsilon and --delta");
  if (cfg.pac) {
    try {
      Validate(*cfg.pac);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (cfg.target_path.has_value() == cfg.generator.has_value())
    throw ConfigError("give exactly one of a target file and a generator spec");

  ExperimentResult r;
  if (cfg.target_path) {
    try {
      r.target = ParseTBox(ReadFile(*cfg.target_path));
    } catch (const ParseError& e) {
      throw ConfigError(cfg.target_path->string() + ": " + e.what());
    }
    r.signature = SignatureOf(r.target);
  } else {
    r.target = GenerateTarget(*cfg.generator);
    r.signature = GeneratorSignature(*cfg.generator);
  }
  LearningFramework framework(cfg.framework);
  if (!framework.AdmitsHypothesis(r.target))
    throw ConfigError("target is outside framework " + std::string(ToString(cfg.framework)));

  TeacherConfig tc;
  tc.target = r.target;
  tc.framework = cfg.framework;
  tc.eq_strategy = cfg.eq_strategy;
  tc.distribution = DistributionSpec::Uniform(cfg.sample_depth_cap, cfg.sample_size_cap, r.signature);
  tc.seed = cfg.seed;
  TruthfulTeacher teacher(tc);
  std::string base_id = cfg.learner;
  if (IsPacLearner(base_id)) base_id = base_id.substr(4, base_id.size() - 5);
  RecordingTeacher recorder(teacher, cfg.max_queries,
                            IsPacLearner(cfg.learner) ? std::nullopt : StepBudget(base_id, r.target, r.signature));
  Learner learner = MakeLearner(cfg.learner, cfg.caps, cfg.pac);

  auto start = std::chrono::steady_clock::now();
  std::string outcome;
  std::optional<bool> success;
  std::optional<double> true_error;
  try {
    r.hypothesis = learner(recorder, r.signature);
    success = Equivalent(*r.hypothesis, r.target);
    outcome = *success ? "success" : "mismatch";
    if (IsPacLearner(cfg.learner)) {
      double total = 0, wrong = 0;
      for (const auto& [e, w] : teacher.Support()) {
        total += w;
        if (framework.IsMember(*r.hypothesis, e) != framework.IsMember(r.target, e)) wrong += w;
      }
      true_error = total > 0 ? wrong / total : 0.0;
      outcome = "halted";
    }
  } catch (const CapExhausted& e) {
    outcome = "cap-exhausted";
    success = false;
  } catch (const std::exception& e) {
    outcome = std::string("error: ") + e.what();
    success = false;
  }
  auto stop = std::chrono::steady_clock::now();
  recorder.RecordHalt(r.hypothesis, outcome, success, true_error);
  r.metrics = recorder.metrics();
  r.metrics.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  r.transcript = recorder.TranscriptJson(ToJson(cfg, r.signature));
  if (cfg.out_dir) WriteReports(*cfg.out_dir, cfg, r);
  return r;
}

std::string SummaryCsvHeader() {
  return "framework,learner,seed,target_size,mq,eq,sq,max_counterexample,hypothesis_size,success,outcome,true_error,"
         "wall_ms";
}

std::string SummaryCsvRow(const ExperimentConfig& cfg, const ExperimentResult& r) {
  const Metrics& m = r.metrics;
  std::ostringstream out;
  std::string outcome = m.outcome;
  std::replace(outcome.begin(), outcome.end(), ',', ';');
  std::replace(outcome.begin(), outcome.end(), '\n', ' ');
  out << ToString(cfg.framework) << ',' << cfg.learner << ',' << cfg.seed << ',' << SizeOf(r.target) << ',' << m.mq << ','
      << m.eq << ',' << m.sq << ',' << (m.max_counterexample_so_far.empty() ? 0 : m.max_counterexample_so_far.back())
      << ',' << m.hypothesis_size << ',' << (m.success ? (*m.success ? "true" : "false") : "") << ',' << outcome << ',';
  if (m.true_error) out << *m.true_error;
  out << ',' << m.wall_ms;
  return out.str();
}

void WriteReports(const std::filesystem::path& dir, const ExperimentConfig& cfg, const ExperimentResult& r) {
  std::filesystem::create_directories(dir);
  WriteFile(dir / "transcript.json", r.transcript.dump(2) + "\n");
  WriteFile(dir / "summary.csv", SummaryCsvHeader() + "\n" + SummaryCsvRow(cfg, r) + "\n");
  WriteFile(dir / "hypothesis.tbox", r.hypothesis ? PrintTBox(*r.hypothesis) : "");
}

}  // namespace dlearn
