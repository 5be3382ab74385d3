// One PASS/FAIL line per primary acceptance criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "dlearn/framework.h"
#include "dlearn/hardness.h"
#include "dlearn/harness.h"
#include "dlearn/learner.h"
#include "dlearn/reasoner.h"
#include "dlearn/syntax.h"
#include "test_util.h"

using namespace dlearn;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double limit_s;
  std::function<Verdict()> run;
};

// Fails the verdict with the first message only.
void Require(Verdict& v, bool cond, const std::string& msg) {
  if (!cond && v.ok) {
    v.ok = false;
    v.detail = msg;
  }
}

Verdict CrossValidation() {
  // Every TBox of at most two axioms of size <= 5 against every axiom of
  // size <= 7, with existential depth <= 2, over two signatures of three symbols.
  constexpr std::size_t kTBoxAxiomSize = 5;
  constexpr std::size_t kQuerySize = 7;
  constexpr std::size_t kDepth = 2;
  Verdict v;
  std::size_t pairs = 0, entailed = 0;
  LearningFramework elh(FragmentId::kElh);
  for (const Signature& sig : {testing::Sig({"A", "B"}, {"r"}), testing::Sig({"A"}, {"r", "s"})}) {
    std::vector<Axiom> queries;
    for (auto& e : elh.EnumerateExamples(sig, kDepth, kQuerySize)) queries.push_back(std::get<Axiom>(e));
    std::vector<Axiom> small;
    for (const auto& a : queries)
      if (SizeOf(a) <= kTBoxAxiomSize && !Entails(TBox{}, a)) small.push_back(a);
    std::vector<TBox> tboxes{TBox{}};
    for (std::size_t i = 0; i < small.size(); ++i) {
      tboxes.push_back(TBox{small[i]});
      for (std::size_t j = i + 1; j < small.size(); ++j) tboxes.push_back(TBox{small[i], small[j]});
    }
    for (const auto& t : tboxes) {
      Classifier cls(t);
      for (const auto& q : queries) {
        bool fast = cls.Entails(q);
        bool model = CanonicalCheck(t, q);
        ++pairs;
        entailed += fast;
        Require(v, fast == model, "disagree on " + PrintTBox(t) + " ? " + q.str());
      }
    }
  }
  Require(v, pairs >= 1000, "space too small");
  if (v.ok) v.detail = std::to_string(pairs) + " pairs, " + std::to_string(entailed) + " entailed";
  return v;
}

Verdict ExistentialChain() {
  Verdict v;
  TBox t = testing::T("ci: A <= some(r, A)\n");
  Concept chain = Concept::Name("A");
  for (int n = 1; n <= 10; ++n) {
    chain = Concept::Exists("r", chain);
    Require(v, Entails(t, Axiom::Ci(Concept::Name("A"), chain)), "n = " + std::to_string(n));
  }
  if (v.ok) v.detail = "n = 1..10 entailed";
  return v;
}

Verdict WorkedExample() {
  Verdict v;
  TBox target = testing::T("ci: A <= B\nci: B <= C\n");
  TruthfulTeacher base(testing::Truthful(target, FragmentId::kToyAtomic));
  RecordingTeacher rec(base);
  TBox h = LearnToyAtomic(rec, testing::Sig({"A", "B", "C"}));
  Require(v, h == testing::T("ci: A <= B\nci: A <= C\nci: B <= C\n"), "output " + PrintTBox(h));
  Require(v, rec.metrics().mq == 9, "mq = " + std::to_string(rec.metrics().mq));
  Require(v, rec.metrics().eq == 0, "eq asked");
  if (v.ok) v.detail = "9 MQs, {A<=B, A<=C, B<=C}";
  return v;
}

Verdict DichotomyExhaustive() {
  Verdict v;
  std::size_t total = 0;
  for (int n : {2, 3}) {
    SigmaFamily fam = BuildFamily(n);
    for (const auto& ci : CandidateCis(fam)) {
      ++total;
      Require(v, ClassifyCi(fam, ci).kind != CiPattern::kViolation, "violation at " + ci.str());
    }
  }
  if (v.ok) v.detail = std::to_string(total) + " CIs, 0 violations";
  return v;
}

Verdict LowerBound() {
  Verdict v;
  constexpr int kN = 12;
  constexpr std::size_t kBound = (std::size_t{1} << kN) - 1;
  std::ostringstream rows;
  for (const auto& id : HardnessLearnerIds()) {
    HardnessResult r = RunHardness(kN, id, 1);
    bool exceeded = r.queries > kBound;
    bool failed = r.outcome == HardnessOutcome::kFailed && r.witness.has_value();
    Require(v, exceeded || failed, id + " neither exceeded nor failed");
    Require(v, r.elimination_bound_held, id + " broke the elimination invariant");
    rows << id << "=" << r.queries << "/" << ToString(r.outcome) << " ";
  }
  if (v.ok) v.detail = rows.str();
  return v;
}

Verdict HornTargets() {
  Verdict v;
  LearningFramework conj(FragmentId::kToyConj);
  std::size_t max_ratio_num = 0, max_ratio_den = 1;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorSpec g;
    g.fragment = FragmentId::kToyConj;
    g.axiom_count = 1 + seed % 8;
    g.sig_size = std::max<std::size_t>(g.axiom_count + 4, 4 + (seed * 5) % 9);
    g.seed = seed;
    TBox target = GenerateTarget(g);
    Signature sig = GeneratorSignature(g);
    TruthfulTeacher base(testing::Truthful(target, FragmentId::kToyConj, seed));
    testing::CountingTeacher counter(base);
    TBox h = LearnHorn(counter, sig, nullptr);
    std::string tag = "seed " + std::to_string(seed) + ": ";
    Require(v, Equivalent(h, target), tag + "not identified");
    for (const auto& ce : counter.counterexamples)
      Require(v, conj.IsMember(target, ce), tag + "negative counterexample " + ToString(ce));
    std::size_t m = target.size(), n = sig.concepts.size();
    Require(v, counter.mq <= 4 * m * m * n, tag + "mq " + std::to_string(counter.mq) + " over budget");
    if (counter.mq * max_ratio_den > max_ratio_num * (m * m * n)) {
      max_ratio_num = counter.mq;
      max_ratio_den = m * m * n;
    }
  }
  if (v.ok) {
    std::ostringstream d;
    d << "100/100 identified, max mq/(m^2 n) = " << std::setprecision(3)
      << static_cast<double>(max_ratio_num) / static_cast<double>(max_ratio_den);
    v.detail = d.str();
  }
  return v;
}

Verdict DlLiteBudgets() {
  Verdict v;
  std::size_t max_eq_slack = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GeneratorSpec g;
    g.fragment = FragmentId::kDlLite;
    g.sig_size = 2 + seed % 3;
    g.roles = 1 + seed % 2;
    g.axiom_count = 1 + seed % 6;
    g.seed = seed;
    TBox target = GenerateTarget(g);
    Signature sig = GeneratorSignature(g);
    std::size_t nc = sig.concepts.size(), nr = sig.roles.size();
    std::size_t space = (nc + nr) * (nc + nr) + nr * nr;
    std::string tag = "seed " + std::to_string(seed) + ": ";

    TruthfulTeacher mq_base(testing::Truthful(target, FragmentId::kDlLite, seed));
    testing::CountingTeacher mq_counter(mq_base);
    TBox h_mq = LearnDlLiteMq(mq_counter, sig);
    Require(v, Equivalent(h_mq, target), tag + "dllite-mq missed");
    Require(v, mq_counter.mq == space, tag + "dllite-mq asked " + std::to_string(mq_counter.mq));

    TruthfulTeacher eq_base(testing::Truthful(target, FragmentId::kDlLite, seed));
    testing::CountingTeacher eq_counter(eq_base);
    TBox h_eq = LearnDlLiteEq(eq_counter, sig);
    Require(v, Equivalent(h_eq, target), tag + "dllite-eq missed");
    Require(v, eq_counter.eq <= space + 1, tag + "dllite-eq asked " + std::to_string(eq_counter.eq));
    max_eq_slack = std::max(max_eq_slack, eq_counter.eq);
  }
  if (v.ok) v.detail = "100/100 both learners, max eqCount " + std::to_string(max_eq_slack);
  return v;
}

Verdict PacWrapper() {
  constexpr double kEpsilon = 0.2;
  constexpr double kDelta = 0.2;
  constexpr int kTrials = 200;
  constexpr double kMaxFailure = kDelta + 0.05;
  Verdict v;
  LearningFramework dl(FragmentId::kDlLite);
  int failures = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    ExperimentConfig cfg;
    cfg.framework = FragmentId::kDlLite;
    cfg.learner = "pac(dllite-eq)";
    cfg.pac = PacParams{kEpsilon, kDelta};
    cfg.seed = static_cast<std::uint64_t>(trial);
    GeneratorSpec g;
    g.fragment = FragmentId::kDlLite;
    g.sig_size = 3;
    g.roles = 1 + trial % 2;
    g.axiom_count = 1 + trial % 5;
    g.seed = cfg.seed;
    cfg.generator = g;
    ExperimentResult r = RunExperiment(cfg);
    if (!r.hypothesis) {
      Require(v, false, "trial " + std::to_string(trial) + ": " + r.metrics.outcome);
      continue;
    }
    // Uniform over the whole finite axiom space.
    auto space = dl.EnumerateExamples(r.signature, 1, 0);
    std::size_t wrong = 0;
    for (const auto& e : space) wrong += dl.IsMember(*r.hypothesis, e) != dl.IsMember(r.target, e);
    double error = static_cast<double>(wrong) / static_cast<double>(space.size());
    failures += error > kEpsilon;
  }
  double rate = static_cast<double>(failures) / kTrials;
  Require(v, rate <= kMaxFailure, "failure rate " + std::to_string(rate));
  if (v.ok) v.detail = std::to_string(failures) + "/" + std::to_string(kTrials) + " trials above epsilon";
  return v;
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict Reproducibility() {
  struct Run {
    FragmentId f;
    std::string learner;
    std::string gen;
    std::optional<PacParams> pac;
  };
  const std::vector<Run> runs = {
      {FragmentId::kToyAtomic, "toy-mq", "sig=3,axioms=2", {}},
      {FragmentId::kToyConj, "horn-mqeq", "sig=6,axioms=4", {}},
      {FragmentId::kDlLite, "dllite-mq", "sig=3,axioms=3,roles=2", {}},
      {FragmentId::kDlLite, "dllite-eq", "sig=3,axioms=3,roles=2", {}},
      {FragmentId::kElh, "elh-enum-eq", "sig=2,axioms=1,roles=1,size=5", {}},
      {FragmentId::kDlLite, "pac(dllite-eq)", "sig=3,axioms=3,roles=1", PacParams{0.1, 0.1}},
  };
  Verdict v;
  auto root = std::filesystem::temp_directory_path() / "dlearn_acceptance_repro";
  std::filesystem::remove_all(root);
  for (const auto& run : runs) {
    std::string first, second;
    for (int rep = 0; rep < 2; ++rep) {
      ExperimentConfig cfg;
      cfg.framework = run.f;
      cfg.learner = run.learner;
      cfg.seed = 42;
      cfg.eq_strategy = EqStrategy::kRandomSeeded;
      cfg.generator = ParseGeneratorSpec(run.gen, run.f, cfg.seed);
      cfg.pac = run.pac;
      cfg.out_dir = root / (std::to_string(rep) + "_" + ToString(run.f).data());
      RunExperiment(cfg);
      (rep == 0 ? first : second) = Slurp(*cfg.out_dir / "transcript.json");
    }
    Require(v, !first.empty(), run.learner + " wrote no transcript");
    Require(v, first == second, run.learner + " transcripts differ");
  }
  if (v.ok) v.detail = std::to_string(runs.size()) + " learners byte-identical";
  return v;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"reasoner cross-validation", 60, CrossValidation},
      {"existential chain n<=10", 1, ExistentialChain},
      {"toy-mq worked example", 1, WorkedExample},
      {"ci dichotomy exhaustive n=2,3", 10, DichotomyExhaustive},
      {"lower bound n=12", 30, LowerBound},
      {"horn learner 100 targets", 60, HornTargets},
      {"dllite budgets 100 targets", 30, DlLiteBudgets},
      {"pac(dllite-eq) 200 trials", 120, PacWrapper},
      {"reproducibility per learner", 60, Reproducibility},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.ok && secs >= c.limit_s) v = {false, v.detail + "; too slow"};
    failed += !v.ok;
    std::cout << (v.ok ? "PASS " : "FAIL ") << c.name << " [" << std::fixed << std::setprecision(2) << secs << "s < "
              << std::setprecision(0) << c.limit_s << "s] " << v.detail << std::endl;
  }
  return failed;
}
