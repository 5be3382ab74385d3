#include "dlearn/oracle.h"

#include <algorithm>
#include <cmath>

#include "dlearn/reasoner.h"
#include "dlearn/syntax.h"

namespace dlearn {

std::string_view ToString(QueryKind k) {
  switch (k) {
    case QueryKind::kMembership: return "mq";
    case QueryKind::kEquivalence: return "eq";
    case QueryKind::kSample: return "sq";
  }
  return "?";
}

std::string ToString(const Answer& a) {
  switch (a.kind) {
    case Answer::Kind::kYes: return "yes";
    case Answer::Kind::kNo: return "no";
    case Answer::Kind::kCounterexample: return ToString(*a.example);
    case Answer::Kind::kSample: return std::string(a.label ? "positive " : "negative ") + ToString(*a.example);
  }
  return "?";
}

std::string_view ToString(EqStrategy s) {
  switch (s) {
    case EqStrategy::kFirstSmallest: return "first-smallest";
    case EqStrategy::kRandomSeeded: return "random-seeded";
    case EqStrategy::kAdversarialLargest: return "adversarial-largest";
  }
  return "?";
}

EqStrategy ParseEqStrategy(std::string_view s) {
  for (auto e : {EqStrategy::kFirstSmallest, EqStrategy::kRandomSeeded, EqStrategy::kAdversarialLargest})
    if (ToString(e) == s) return e;
  throw std::invalid_argument("unknown eq strategy '" + std::string(s) + "'");
}

DistributionSpec DistributionSpec::Uniform(std::size_t depth_cap, std::size_t size_cap, Signature sig) {
  DistributionSpec d;
  d.kind = Kind::kUniform;
  d.depth_cap = depth_cap;
  d.size_cap = size_cap;
  d.signature = std::move(sig);
  return d;
}

DistributionSpec DistributionSpec::Weighted(std::vector<std::pair<Example, double>> corpus) {
  DistributionSpec d;
  d.kind = Kind::kWeighted;
  d.corpus = std::move(corpus);
  return d;
}

TruthfulTeacher::TruthfulTeacher(TeacherConfig cfg)
    : cfg_(std::move(cfg)), framework_(cfg_.framework), rng_(cfg_.seed) {
  framework_.CheckHypothesis(cfg_.target);
}

Answer TruthfulTeacher::AnswerMq(const Example& e) {
  return framework_.IsMember(cfg_.target, e) ? Answer::Yes() : Answer::No();
}

Answer TruthfulTeacher::AnswerEq(const TBox& h) {
  framework_.CheckHypothesis(h);
  std::vector<Axiom> candidates;
  {
    std::vector<Concept> extra;
    for (const auto& a : Union(cfg_.target, h)) {
      if (a.is_ci()) {
        extra.push_back(a.lhs());
        extra.push_back(a.rhs());
      }
    }
    Classifier ct(cfg_.target, extra);
    Classifier ch(h, extra);
    for (const auto& a : cfg_.target)
      if (!ch.Entails(a)) candidates.push_back(a);
    for (const auto& a : h)
      if (!ct.Entails(a)) candidates.push_back(a);
  }
  if (candidates.empty()) return Answer::Yes();
  std::sort(candidates.begin(), candidates.end(), [](const Axiom& x, const Axiom& y) {
    auto sx = SizeOf(x);
    auto sy = SizeOf(y);
    return sx != sy ? sx < sy : x.str() < y.str();
  });
  Axiom pick = candidates.front();
  switch (cfg_.eq_strategy) {
    case EqStrategy::kFirstSmallest:
      break;
    case EqStrategy::kRandomSeeded:
      pick = candidates[rng_.Below(candidates.size())];
      break;
    case EqStrategy::kAdversarialLargest: {
      std::size_t largest = SizeOf(candidates.back());
      pick = *std::find_if(candidates.begin(), candidates.end(),
                           [&](const Axiom& a) { return SizeOf(a) == largest; });
      break;
    }
  }
  if (!framework_.uses_data_examples()) return Answer::Counterexample(pick);
  Signature avoid = SignatureOf(cfg_.target);
  MergeInto(avoid, SignatureOf(h));
  return Answer::Counterexample(AxiomToDataExample(pick, avoid));
}

const std::vector<std::pair<Example, double>>& TruthfulTeacher::Support() {
  if (support_) return *support_;
  std::vector<std::pair<Example, double>> s;
  if (cfg_.distribution.kind == DistributionSpec::Kind::kWeighted) {
    for (const auto& [e, w] : cfg_.distribution.corpus) {
      if (!std::isfinite(w) || w < 0) throw std::invalid_argument("sample weights must be finite and non-negative");
      framework_.CheckExample(e);
      if (w > 0) s.emplace_back(e, w);
    }
  } else {
    Signature sig = cfg_.distribution.signature.empty() ? SignatureOf(cfg_.target) : cfg_.distribution.signature;
    for (auto& e : framework_.EnumerateExamples(sig, cfg_.distribution.depth_cap, cfg_.distribution.size_cap))
      s.emplace_back(std::move(e), 1.0);
  }
  double total = 0;
  for (const auto& [e, w] : s) cumulative_.push_back(total += w);
  support_ = std::move(s);
  return *support_;
}

Answer TruthfulTeacher::AnswerSq() {
  const auto& support = Support();
  if (support.empty()) throw EmptySupport("sample distribution has empty support");
  std::size_t index;
  if (cfg_.distribution.kind == DistributionSpec::Kind::kUniform) {
    index = rng_.Below(support.size());
  } else {
    double x = rng_.Unit() * cumulative_.back();
    index = std::upper_bound(cumulative_.begin(), cumulative_.end(), x) - cumulative_.begin();
    index = std::min(index, support.size() - 1);
  }
  const Example& e = support[index].first;
  return Answer::Sample({e, framework_.IsMember(cfg_.target, e)});
}

DeferredTeacher::DeferredTeacher(FragmentId f, std::chrono::milliseconds timeout)
    : framework_(f), timeout_(timeout) {}

Answer DeferredTeacher::AnswerMq(const Example& e) {
  framework_.CheckExample(e);
  return Await(QueryKind::kMembership, ToString(e));
}

Answer DeferredTeacher::AnswerEq(const TBox& h) {
  framework_.CheckHypothesis(h);
  return Await(QueryKind::kEquivalence, PrintTBox(h));
}

Answer DeferredTeacher::AnswerSq() { throw UnsupportedQuery("sample queries need a machine-held target"); }

std::optional<PendingQuery> DeferredTeacher::pending() const {
  std::lock_guard lock(mu_);
  return pending_;
}

Answer DeferredTeacher::Await(QueryKind kind, std::string payload) {
  std::unique_lock lock(mu_);
  if (closed_) throw SessionClosed("session closed");
  pending_ = PendingQuery{kind, std::move(payload), ++steps_};
  reply_.reset();
  bool ready = cv_.wait_for(lock, timeout_, [this] { return closed_ || reply_.has_value(); });
  pending_.reset();
  if (closed_) throw SessionClosed("session closed");
  if (!ready) throw TeacherTimeout("no answer within the configured timeout");
  Answer a = std::move(*reply_);
  reply_.reset();
  return a;
}

void DeferredTeacher::Deliver(Answer a) {
  reply_ = std::move(a);
  pending_.reset();
  cv_.notify_all();
}

void DeferredTeacher::ReplyYesNo(std::string_view answer) {
  std::lock_guard lock(mu_);
  if (!pending_ || reply_) throw BadReply("no-pending-query", "no query is pending");
  if (answer == "yes") return Deliver(Answer::Yes());
  if (answer == "no" && pending_->kind == QueryKind::kMembership) return Deliver(Answer::No());
  throw BadReply("invalid-answer", pending_->kind == QueryKind::kMembership
                                       ? "membership queries take 'yes' or 'no'"
                                       : "equivalence queries take 'yes' or a counterexample");
}

void DeferredTeacher::ReplyCounterexample(std::string_view text) {
  std::lock_guard lock(mu_);
  if (!pending_ || reply_) throw BadReply("no-pending-query", "no query is pending");
  if (pending_->kind != QueryKind::kEquivalence)
    throw BadReply("invalid-answer", "counterexamples only answer equivalence queries");
  Example e = [&] {
    try {
      return ParseExample(text);
    } catch (const ParseError& err) {
      throw BadReply("parse-error", err.what());
    }
  }();
  if (!framework_.AdmitsExample(e))
    throw BadReply("fragment-violation",
                   "example '" + ToString(e) + "' is not admitted by fragment " + std::string(ToString(framework_.id())));
  Deliver(Answer::Counterexample(std::move(e)));
}

void DeferredTeacher::Close() {
  std::lock_guard lock(mu_);
  closed_ = true;
  pending_.reset();
  cv_.notify_all();
}

}  // namespace dlearn
