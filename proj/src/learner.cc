#include "dlearn/learner.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "dlearn/reasoner.h"

namespace dlearn {

namespace {

bool Ask(Teacher& t, const Example& e) { return t.AnswerMq(e).yes(); }

bool IsReflexive(const Axiom& a) { return a.is_ci() ? a.lhs() == a.rhs() : a.sub_role() == a.sup_role(); }

const Axiom& AxiomCounterexample(const Answer& a, std::string_view learner) {
  const auto* ax = std::get_if<Axiom>(&*a.example);
  if (!ax) throw std::runtime_error(std::string(learner) + " needs axiom counterexamples");
  return *ax;
}

Concept ConjOf(const std::set<std::string>& names) {
  std::vector<Concept> parts;
  for (const auto& n : names) parts.push_back(Concept::Name(n));
  return Concept::And(std::move(parts));
}

// ---------------------------------------------------------------- horn

class HornLearner {
 public:
  HornLearner(Teacher& teacher, const Signature& sig, HornTrace* trace)
      : teacher_(teacher), sig_(sig), trace_(trace) {}

  TBox Run() {
    for (;;) {
      TBox h = Hypothesis();
      Answer a = teacher_.AnswerEq(h);
      if (a.yes()) {
        if (trace_) trace_->final_state = entries_;
        return h;
      }
      const Axiom& ce = AxiomCounterexample(a, "horn-mqeq");
      if (!ce.is_ci() || !ce.rhs().is_name()) throw std::runtime_error("horn-mqeq got a non-Horn counterexample");
      std::set<std::string> x;
      for (const auto& m : ce.lhs().TopLevelConjuncts()) {
        if (!m.is_name()) throw std::runtime_error("horn-mqeq got a non-Horn counterexample");
        x.insert(m.name());
      }
      Close(x);
      if (trace_) ++trace_->counterexamples;
      // h |= C <= A iff A is in the closure of C, so a counterexample already
      // entailed by h is negative, which a truthful teacher never returns.
      if (x.count(ce.rhs().name())) {
        if (trace_) trace_->all_counterexamples_positive = false;
        throw std::runtime_error("horn-mqeq got a negative counterexample: " + ce.str());
      }
      if (!Refine(x)) {
        HornEntry e{x, Consequents(x)};
        if (trace_) trace_->created_antecedent_total += x.size();
        entries_.push_back(std::move(e));
      }
    }
  }

 private:
  TBox Hypothesis() const {
    TBox h;
    for (const auto& e : entries_) {
      Concept lhs = ConjOf(e.antecedent);
      for (const auto& b : e.consequents) h.Insert(Axiom::Ci(lhs, Concept::Name(b)));
    }
    return h;
  }

  void Close(std::set<std::string>& x) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& e : entries_) {
        if (!std::includes(x.begin(), x.end(), e.antecedent.begin(), e.antecedent.end())) continue;
        for (const auto& b : e.consequents) changed |= x.insert(b).second;
      }
    }
  }

  std::set<std::string> Consequents(const std::set<std::string>& l) {
    std::set<std::string> out;
    Concept lhs = ConjOf(l);
    for (const auto& b : sig_.concepts)
      if (!l.count(b) && Ask(teacher_, Axiom::Ci(lhs, Concept::Name(b)))) out.insert(b);
    return out;
  }

  // Shrinks the first antecedent whose intersection with x is a proper,
  // non-empty subset that the target does not leave closed.
  bool Refine(const std::set<std::string>& x) {
    for (auto& e : entries_) {
      std::set<std::string> meet;
      std::set_intersection(e.antecedent.begin(), e.antecedent.end(), x.begin(), x.end(),
                            std::inserter(meet, meet.end()));
      if (meet.empty() || meet.size() == e.antecedent.size()) continue;
      // Anything the target derives from meet it also derives from the
      // antecedent, so only those names need asking.
      std::set<std::string> candidates = e.antecedent;
      candidates.insert(e.consequents.begin(), e.consequents.end());
      Concept lhs = ConjOf(meet);
      for (const auto& b : candidates) {
        if (meet.count(b)) continue;
        if (!Ask(teacher_, Axiom::Ci(lhs, Concept::Name(b)))) continue;
        if (trace_) {
          ++trace_->refinements;
          trace_->refinements_shrink &= meet.size() < e.antecedent.size();
        }
        e.antecedent = std::move(meet);
        e.consequents = Consequents(e.antecedent);
        return true;
      }
    }
    return false;
  }

  Teacher& teacher_;
  const Signature& sig_;
  HornTrace* trace_;
  std::vector<HornEntry> entries_;
};

// ---------------------------------------------------------------- elh enumeration

class ElhEnumerator {
 public:
  ElhEnumerator(Teacher& teacher, const Signature& sig, const LearnerCaps& caps)
      : teacher_(teacher), sig_(sig), caps_(caps) {}

  TBox Run() {
    if (Query(TBox{})) return TBox{};
    LearningFramework elh(FragmentId::kElh);
    for (std::size_t n = 1; n <= caps_.max_size; ++n) {
      axioms_.clear();
      for (const auto& e : elh.EnumerateExamples(sig_, caps_.depth_cap, n)) {
        const Axiom& a = std::get<Axiom>(e);
        if (!Entails(TBox{}, a)) axioms_.push_back(a);
      }
      sides_.clear();
      std::set<Concept> sides;
      for (const auto& a : axioms_)
        if (a.is_ci()) sides.insert({a.lhs(), a.rhs()});
      sides_.assign(sides.begin(), sides.end());
      keys_.clear();
      for (const auto& t : asked_) keys_.insert(Key(t));
      std::vector<std::size_t> chosen;
      if (auto found = Subsets(0, n, chosen)) return *found;
    }
    throw CapExhausted("elh-enum-eq: no TBox up to size " + std::to_string(caps_.max_size) + " was accepted");
  }

 private:
  std::string Key(const TBox& t) const {
    Classifier c(t, sides_);
    std::string k;
    k.reserve(axioms_.size());
    for (const auto& a : axioms_) k.push_back(c.Entails(a) ? '1' : '0');
    return k;
  }

  bool Query(const TBox& t) {
    asked_.push_back(t);
    return teacher_.AnswerEq(t).yes();
  }

  // TBoxes of total size exactly `left` from axioms_[from..], in list order.
  std::optional<TBox> Subsets(std::size_t from, std::size_t left, std::vector<std::size_t>& chosen) {
    if (left == 0) {
      TBox t;
      for (auto i : chosen) t.Insert(axioms_[i]);
      if (!keys_.insert(Key(t)).second) return std::nullopt;
      if (Query(t)) return t;
      return std::nullopt;
    }
    for (std::size_t i = from; i < axioms_.size(); ++i) {
      std::size_t s = SizeOf(axioms_[i]);
      if (s > left) break;
      chosen.push_back(i);
      auto found = Subsets(i + 1, left - s, chosen);
      chosen.pop_back();
      if (found) return found;
    }
    return std::nullopt;
  }

  Teacher& teacher_;
  const Signature& sig_;
  LearnerCaps caps_;
  std::vector<Axiom> axioms_;
  std::vector<Concept> sides_;
  std::vector<TBox> asked_;
  std::unordered_set<std::string> keys_;
};

// ---------------------------------------------------------------- pac

class SampleEqTeacher : public Teacher {
 public:
  SampleEqTeacher(Teacher& base, const PacParams& p) : base_(base), params_(p) {}

  const LearningFramework& framework() const override { return base_.framework(); }
  Answer AnswerMq(const Example& e) override { return base_.AnswerMq(e); }
  Answer AnswerSq() override { return base_.AnswerSq(); }

  Answer AnswerEq(const TBox& h) override {
    framework().CheckHypothesis(h);
    std::size_t m = PacSampleSize(params_, ++eqs_);
    for (std::size_t k = 0; k < m; ++k) {
      Answer s = base_.AnswerSq();
      if (framework().IsMember(h, *s.example) != s.label) return Answer::Counterexample(*s.example);
    }
    return Answer::Yes();
  }

 private:
  Teacher& base_;
  PacParams params_;
  std::size_t eqs_ = 0;
};

const std::vector<std::string> kBaseIds = {"toy-mq", "horn-mqeq", "dllite-mq", "dllite-eq", "elh-enum-eq"};

std::optional<std::string_view> PacInner(std::string_view id) {
  if (id.size() > 5 && id.substr(0, 4) == "pac(" && id.back() == ')') return id.substr(4, id.size() - 5);
  return std::nullopt;
}

}  // namespace

TBox LearnToyAtomic(Teacher& teacher, const Signature& sig) {
  TBox h;
  for (const auto& a : sig.concepts) {
    for (const auto& b : sig.concepts) {
      Axiom ax = Axiom::Ci(Concept::Name(a), Concept::Name(b));
      if (Ask(teacher, ax) && a != b) h.Insert(ax);
    }
  }
  return h;
}

TBox LearnHorn(Teacher& teacher, const Signature& sig, HornTrace* trace) {
  return HornLearner(teacher, sig, trace).Run();
}

TBox LearnDlLiteMq(Teacher& teacher, const Signature& sig) {
  TBox h;
  for (const auto& e : LearningFramework(FragmentId::kDlLite).EnumerateExamples(sig, 0, 0)) {
    if (Ask(teacher, e) && !IsReflexive(std::get<Axiom>(e))) h.Insert(std::get<Axiom>(e));
  }
  return h;
}

TBox LearnDlLiteEq(Teacher& teacher, const Signature& sig) {
  const std::size_t space = sig.concepts.size() + sig.roles.size();
  const std::size_t max_eqs = space * space + sig.roles.size() * sig.roles.size() + 1;
  TBox h;
  for (std::size_t eqs = 0; eqs < max_eqs; ++eqs) {
    Answer a = teacher.AnswerEq(h);
    if (a.yes()) return h;
    const Axiom& ce = AxiomCounterexample(a, "dllite-eq");
    if (Entails(h, ce)) throw std::runtime_error("dllite-eq got a negative counterexample: " + ce.str());
    h.Insert(ce);
  }
  throw CapExhausted("dllite-eq: more equivalence queries than the axiom space allows");
}

TBox LearnElhEnumerate(Teacher& teacher, const Signature& sig, const LearnerCaps& caps) {
  return ElhEnumerator(teacher, sig, caps).Run();
}

void Validate(const PacParams& p) {
  if (!(p.epsilon > 0 && p.epsilon < 1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  if (!(p.delta > 0 && p.delta < 1)) throw std::invalid_argument("delta must lie in (0, 1)");
}

std::size_t PacSampleSize(const PacParams& p, std::size_t i) {
  return static_cast<std::size_t>(std::ceil((std::log(1 / p.delta) + static_cast<double>(i) * std::log(2.0)) / p.epsilon));
}

TBox PacWrap(const Learner& inner, Teacher& teacher, const Signature& sig, const PacParams& p) {
  Validate(p);
  SampleEqTeacher wrapped(teacher, p);
  return inner(wrapped, sig);
}

const std::vector<std::string>& BaseLearnerIds() { return kBaseIds; }

bool IsPacLearner(std::string_view id) { return PacInner(id).has_value(); }

bool IsKnownLearner(std::string_view id) {
  if (auto inner = PacInner(id)) id = *inner;
  return std::find(kBaseIds.begin(), kBaseIds.end(), id) != kBaseIds.end();
}

bool LearnerSupports(std::string_view id, FragmentId f) {
  if (auto inner = PacInner(id)) id = *inner;
  if (id == "toy-mq") return f == FragmentId::kToyAtomic || f == FragmentId::kToyConj;
  if (id == "horn-mqeq") return f == FragmentId::kToyConj;
  if (id == "dllite-mq" || id == "dllite-eq") return f == FragmentId::kDlLite;
  if (id == "elh-enum-eq") return f == FragmentId::kElh || f == FragmentId::kElhIq;
  return false;
}

Learner MakeLearner(std::string_view id, const LearnerCaps& caps, std::optional<PacParams> pac) {
  if (auto inner = PacInner(id)) {
    if (!pac) throw std::invalid_argument("learner '" + std::string(id) + "' needs epsilon and delta");
    Validate(*pac);
    Learner base = MakeLearner(*inner, caps);
    PacParams p = *pac;
    return [base, p](Teacher& t, const Signature& sig) { return PacWrap(base, t, sig, p); };
  }
  if (id == "toy-mq") return LearnToyAtomic;
  if (id == "horn-mqeq") return [](Teacher& t, const Signature& sig) { return LearnHorn(t, sig); };
  if (id == "dllite-mq") return LearnDlLiteMq;
  if (id == "dllite-eq") return LearnDlLiteEq;
  if (id == "elh-enum-eq") return [caps](Teacher& t, const Signature& sig) { return LearnElhEnumerate(t, sig, caps); };
  throw std::invalid_argument("unknown learner '" + std::string(id) + "'");
}

}  // namespace dlearn
