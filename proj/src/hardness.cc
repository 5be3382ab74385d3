#include "dlearn/hardness.h"

#include <algorithm>
#include <map>

#include "dlearn/learner.h"
#include "dlearn/random.h"
#include "dlearn/reasoner.h"

namespace dlearn {

namespace {

using Mask = std::uint64_t;

struct Clause {
  Mask lhs;
  Mask rhs;
};

// Family names as bits: A_i -> i, NA_i -> n + i, M -> 2n.
class HornEngine {
 public:
  explicit HornEngine(const SigmaFamily& fam) : fam_(fam) {
    for (int i = 0; i < fam.n; ++i) {
      index_[fam.pos[i]] = i;
      index_[fam.neg[i]] = fam.n + i;
      shared_.push_back({Bit(i) | Bit(fam.n + i), Bit(2 * fam.n)});
    }
    index_[fam.goal] = 2 * fam.n;
  }

  static Mask Bit(int i) { return Mask{1} << i; }

  Mask SigmaMask(SigmaIndex s) const {
    Mask m = 0;
    for (int i = 0; i < fam_.n; ++i) m |= (s >> (fam_.n - 1 - i) & 1) ? Bit(fam_.n + i) : Bit(i);
    return m;
  }

  // Throws FragmentViolation unless ci is (conjunction of family names) <= family name.
  std::pair<Mask, Mask> Encode(const Axiom& ci) const {
    auto fail = [&] { return FragmentViolation("'" + ci.str() + "' is not a toy-conj CI over the family signature"); };
    if (!ci.is_ci() || !ci.rhs().is_name() || ci.lhs().is_top()) throw fail();
    Mask lhs = 0;
    for (const auto& c : ci.lhs().TopLevelConjuncts()) {
      if (!c.is_name()) throw fail();
      auto it = index_.find(c.name());
      if (it == index_.end()) throw fail();
      lhs |= Bit(it->second);
    }
    auto it = index_.find(ci.rhs().name());
    if (it == index_.end()) throw fail();
    return {lhs, Bit(it->second)};
  }

  bool Entails(SigmaIndex s, Mask lhs, Mask rhs) const {
    Clause own{SigmaMask(s), Bit(2 * fam_.n)};
    Mask x = lhs;
    for (bool changed = true; changed;) {
      changed = false;
      auto fire = [&](const Clause& c) {
        if ((x & c.lhs) == c.lhs && (x & c.rhs) != c.rhs) {
          x |= c.rhs;
          changed = true;
        }
      };
      for (const auto& c : shared_) fire(c);
      fire(own);
    }
    return (x & rhs) == rhs;
  }

 private:
  const SigmaFamily& fam_;
  std::map<std::string, int> index_;
  std::vector<Clause> shared_;
};

TBox WithT0(const SigmaFamily& fam, const TBox& extra) { return Union(fam.t0, extra); }

TBox SigmaScan(Teacher& t, const SigmaFamily& fam) {
  TBox h;
  for (SigmaIndex s = 0; s < fam.size(); ++s) {
    Axiom a = Axiom::Ci(fam.SigmaConcept(s), Concept::Name(fam.goal));
    if (t.AnswerMq(a).yes()) h.Insert(a);
  }
  return WithT0(fam, h);
}

TBox ConjScan(Teacher& t, const SigmaFamily& fam) {
  std::vector<std::string> names(fam.signature.concepts.begin(), fam.signature.concepts.end());
  TBox h;
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t from, std::size_t k) -> void {
    if (pick.size() == k) {
      std::vector<Concept> parts;
      for (auto i : pick) parts.push_back(Concept::Name(names[i]));
      Concept lhs = Concept::And(parts);
      for (std::size_t b = 0; b < names.size(); ++b) {
        if (std::find(pick.begin(), pick.end(), b) != pick.end()) continue;
        Axiom a = Axiom::Ci(lhs, Concept::Name(names[b]));
        if (t.AnswerMq(a).yes()) h.Insert(a);
      }
      return;
    }
    for (std::size_t i = from; i < names.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1, k);
      pick.pop_back();
    }
  };
  for (std::size_t k = 1; k < names.size(); ++k) rec(rec, 0, k);
  return h;
}

TBox RandomGuesses(Teacher& t, const SigmaFamily& fam, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t budget = fam.size() >= 2 ? fam.size() - 2 : 0;
  for (std::size_t q = 0; q < budget; ++q) {
    Axiom a = Axiom::Ci(fam.SigmaConcept(static_cast<SigmaIndex>(rng.Below(fam.size()))), Concept::Name(fam.goal));
    if (t.AnswerMq(a).yes()) return WithT0(fam, TBox{a});
  }
  return fam.t0;
}

const std::vector<std::string> kHardnessLearners = {"toy-mq", "sigma-scan", "conj-mq", "random-mq", "halt-immediately"};

}  // namespace

Concept SigmaFamily::SigmaConcept(SigmaIndex s) const {
  std::vector<Concept> parts;
  for (int i = 0; i < n; ++i) parts.push_back(Concept::Name((s >> (n - 1 - i) & 1) ? neg[i] : pos[i]));
  return Concept::And(std::move(parts));
}

TBox SigmaFamily::Member(SigmaIndex s) const {
  TBox t = t0;
  t.Insert(Axiom::Ci(SigmaConcept(s), Concept::Name(goal)));
  return t;
}

std::string SigmaFamily::Bits(SigmaIndex s) const {
  std::string out;
  for (int i = 0; i < n; ++i) out.push_back((s >> (n - 1 - i) & 1) ? '1' : '0');
  return out;
}

SigmaFamily BuildFamily(int n, int limit) {
  if (n < 1) throw std::invalid_argument("family size n must be at least 1");
  if (n > limit) throw std::length_error("family size n = " + std::to_string(n) + " exceeds the limit " + std::to_string(limit));
  SigmaFamily fam;
  fam.n = n;
  for (int i = 1; i <= n; ++i) {
    fam.pos.push_back("A" + std::to_string(i));
    fam.neg.push_back("NA" + std::to_string(i));
    fam.t0.Insert(Axiom::Ci(Concept::And({Concept::Name(fam.pos.back()), Concept::Name(fam.neg.back())}),
                            Concept::Name(fam.goal)));
    fam.signature.concepts.insert(fam.pos.back());
    fam.signature.concepts.insert(fam.neg.back());
  }
  fam.signature.concepts.insert(fam.goal);
  return fam;
}

std::string_view ToString(CiPattern c) {
  switch (c) {
    case CiPattern::kEntailedByAll: return "entailed-by-all";
    case CiPattern::kEntailedByAtMostOne: return "entailed-by-at-most-one";
    case CiPattern::kViolation: return "violation";
  }
  return "?";
}

CiClass ClassifyCi(const SigmaFamily& fam, const Axiom& ci, bool use_reasoner) {
  HornEngine engine(fam);
  auto [lhs, rhs] = engine.Encode(ci);
  CiClass out;
  for (SigmaIndex s = 0; s < fam.size(); ++s) {
    bool yes = use_reasoner ? Entails(fam.Member(s), ci) : engine.Entails(s, lhs, rhs);
    if (!yes) continue;
    if (++out.entailing == 1) out.sigma = s;
  }
  if (out.entailing == fam.size()) {
    out.kind = CiPattern::kEntailedByAll;
    out.sigma.reset();
  } else if (out.entailing >= 2) {
    out.kind = CiPattern::kViolation;
    out.sigma.reset();
  }
  return out;
}

std::vector<Axiom> CandidateCis(const SigmaFamily& fam) {
  LearningFramework f(FragmentId::kToyConj);
  std::vector<Axiom> out;
  for (const auto& e : f.EnumerateExamples(fam.signature, 0, 0)) out.push_back(std::get<Axiom>(e));
  return out;
}

AdversarialMqTeacher::AdversarialMqTeacher(SigmaFamily fam, std::size_t max_queries)
    : fam_(std::move(fam)),
      framework_(FragmentId::kToyConj),
      max_queries_(max_queries),
      alive_(fam_.size(), 1),
      remaining_(fam_.size()) {}

Answer AdversarialMqTeacher::AnswerMq(const Example& e) {
  framework_.CheckExample(e);
  const Axiom& ci = std::get<Axiom>(e);
  if (queries_ >= max_queries_)
    throw QueryBudgetExceeded("query budget of " + std::to_string(max_queries_) + " exceeded");
  CiClass c = ClassifyCi(fam_, ci);
  if (c.kind == CiPattern::kViolation)
    throw DichotomyViolation("'" + ci.str() + "' is entailed by " + std::to_string(c.entailing) + " members");
  ++queries_;
  bool yes = c.kind == CiPattern::kEntailedByAll || (c.sigma && alive_[*c.sigma] && remaining_ == 1);
  if (!yes && c.sigma && alive_[*c.sigma]) {
    alive_[*c.sigma] = 0;
    --remaining_;
  }
  log_.emplace_back(ci, yes);
  series_.push_back(remaining_);
  if (remaining_ + queries_ < fam_.size()) bound_held_ = false;
  return yes ? Answer::Yes() : Answer::No();
}

Answer AdversarialMqTeacher::AnswerEq(const TBox&) {
  throw UnsupportedQuery("the adversary answers membership queries only");
}

Answer AdversarialMqTeacher::AnswerSq() { throw UnsupportedQuery("the adversary answers membership queries only"); }

std::vector<SigmaIndex> AdversarialMqTeacher::RemainingMembers() const {
  std::vector<SigmaIndex> out;
  for (SigmaIndex s = 0; s < fam_.size(); ++s)
    if (alive_[s]) out.push_back(s);
  return out;
}

bool AdversarialMqTeacher::ConsistentWithAnswers(SigmaIndex s) const {
  HornEngine engine(fam_);
  for (const auto& [ci, yes] : log_) {
    auto [lhs, rhs] = engine.Encode(ci);
    if (engine.Entails(s, lhs, rhs) != yes) return false;
  }
  return true;
}

std::string_view ToString(HardnessOutcome o) {
  switch (o) {
    case HardnessOutcome::kPassed: return "PASSED";
    case HardnessOutcome::kFailed: return "FAILED";
    case HardnessOutcome::kExceeded: return "EXCEEDED";
  }
  return "?";
}

bool HardnessResult::lower_bound_witnessed() const {
  return outcome != HardnessOutcome::kPassed || queries > (std::size_t{1} << n) - 1;
}

std::string HardnessResult::CsvHeader() { return "n,learner,queries,remaining,outcome,witness"; }

std::string HardnessResult::CsvRow() const {
  std::string w;
  if (witness) {
    for (int i = 0; i < n; ++i) w.push_back((*witness >> (n - 1 - i) & 1) ? '1' : '0');
  }
  return std::to_string(n) + "," + learner + "," + std::to_string(queries) + "," + std::to_string(remaining) + "," +
         std::string(ToString(outcome)) + "," + w;
}

const std::vector<std::string>& HardnessLearnerIds() { return kHardnessLearners; }

FamilyLearner MakeHardnessLearner(std::string_view id, std::uint64_t seed) {
  if (id == "toy-mq") return [](Teacher& t, const SigmaFamily& fam) { return LearnToyAtomic(t, fam.signature); };
  if (id == "sigma-scan") return SigmaScan;
  if (id == "conj-mq") return ConjScan;
  if (id == "random-mq") return [seed](Teacher& t, const SigmaFamily& fam) { return RandomGuesses(t, fam, seed); };
  if (id == "halt-immediately") return [](Teacher&, const SigmaFamily& fam) { return fam.t0; };
  throw std::invalid_argument("unknown hardness learner '" + std::string(id) + "'");
}

HardnessResult RunHardness(int n, std::string_view learner, std::uint64_t seed, std::optional<std::size_t> max_queries) {
  SigmaFamily fam = BuildFamily(n);
  FamilyLearner run = MakeHardnessLearner(learner, seed);
  AdversarialMqTeacher teacher(fam, max_queries.value_or(std::size_t{2} << n));
  HardnessResult r;
  r.n = n;
  r.learner = std::string(learner);
  std::optional<TBox> h;
  try {
    h = run(teacher, fam);
  } catch (const QueryBudgetExceeded&) {
    r.outcome = HardnessOutcome::kExceeded;
  }
  r.queries = teacher.queries();
  r.remaining = teacher.remaining();
  r.elimination_bound_held = teacher.elimination_bound_held();
  auto alive = teacher.RemainingMembers();
  // Spot-check the version space: a few members from both ends.
  for (std::size_t i = 0; i < alive.size(); ++i) {
    if (i >= 4 && i + 4 < alive.size()) continue;
    r.consistency_held &= teacher.ConsistentWithAnswers(alive[i]);
  }
  if (!h) return r;
  r.outcome = HardnessOutcome::kFailed;
  for (SigmaIndex s : alive) {
    if (!Equivalent(fam.Member(s), *h)) {
      r.witness = s;
      break;
    }
  }
  if (!r.witness && alive.size() == 1) r.outcome = HardnessOutcome::kPassed;
  return r;
}

}  // namespace dlearn
