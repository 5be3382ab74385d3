#include "dlearn/reasoner.h"

#include <deque>
#include <set>
#include <unordered_map>

namespace dlearn {

const Concept& NormalizedTBox::AtomFor(const Concept& c) const { return atom_of.at(c.str()); }

namespace {

class Normalizer {
 public:
  Normalizer(NormalizedTBox& out, const TBox& t) : out_(out) {
    // Input may itself contain fresh names (e.g. an already normalized TBox).
    for (const auto& a : t) {
      if (!a.is_ci()) continue;
      std::set<Concept> subs;
      CollectSubconcepts(a.lhs(), subs);
      CollectSubconcepts(a.rhs(), subs);
      for (const auto& c : subs)
        if (c.is_name() && IsFreshName(c.name())) taken_.insert(c.name());
    }
  }

  // Returns the atom (name, top or fresh name) standing for c, emitting its
  // definition on first sight.
  Concept Atom(const Concept& c) {
    if (auto it = out_.atom_of.find(c.str()); it != out_.atom_of.end()) return it->second;
    if (c.is_name() || c.is_top()) {
      out_.atom_of.emplace(c.str(), c);
      return c;
    }
    std::string name;
    do {
      name = "__x" + std::to_string(counter_++);
    } while (taken_.count(name));
    Concept fresh = Concept::Name(name);
    out_.atom_of.emplace(c.str(), fresh);
    out_.fresh_map.emplace(fresh.name(), c);
    if (c.is_conj()) {
      // c == first & rest, with rest defined recursively.
      const auto& ms = c.members();
      Concept first = Atom(ms.front());
      Concept rest = Atom(Concept::And(std::vector<Concept>(ms.begin() + 1, ms.end())));
      Emit(Axiom::Ci(fresh, first));
      Emit(Axiom::Ci(fresh, rest));
      Emit(Axiom::Ci(Concept::And({first, rest}), fresh));
    } else {
      Concept filler = Atom(c.filler());
      Emit(Axiom::Ci(fresh, Concept::Exists(c.role(), filler)));
      Emit(Axiom::Ci(Concept::Exists(c.role(), filler), fresh));
    }
    return fresh;
  }

  void Emit(const Axiom& a) { out_.normal_axioms.Insert(a); }

 private:
  NormalizedTBox& out_;
  std::set<std::string> taken_;
  int counter_ = 0;
};

}  // namespace

NormalizedTBox Normalize(const TBox& t, const std::vector<Concept>& extra) {
  NormalizedTBox out;
  out.original = t;
  Normalizer n(out, t);
  n.Atom(Concept::Top());
  for (const auto& a : t) {
    if (a.is_ri()) {
      n.Emit(a);
      continue;
    }
    Concept lhs = n.Atom(a.lhs());
    Concept rhs = n.Atom(a.rhs());
    if (lhs != rhs && !rhs.is_top()) n.Emit(Axiom::Ci(lhs, rhs));
  }
  for (const auto& c : extra) n.Atom(c);
  return out;
}

// Completion over a normalized TBox. Atoms are concept names (including fresh
// ones) and top; S(X) is the set of atoms subsuming X, edges (X, r, Y) record
// that X is subsumed by some(r, Y).
struct Classifier::Impl {
  NormalizedTBox norm;
  std::unordered_map<std::string, int> atom_id;
  std::unordered_map<std::string, int> role_id;
  std::vector<std::vector<char>> role_sub;  // reflexive-transitive r <=* s

  std::vector<std::vector<int>> told;                          // A -> B
  std::vector<std::vector<std::pair<int, int>>> conj;          // A1 -> (A2, B)
  std::vector<std::vector<std::pair<int, int>>> exists_rhs;    // A -> (r, B)
  std::vector<std::vector<std::pair<int, int>>> exists_lhs;    // A -> (r, B) for some(r, A) <= B

  std::vector<std::vector<char>> subsumers;
  std::vector<std::vector<int>> subsumer_list;
  std::vector<std::vector<std::pair<int, int>>> preds;  // Y -> (X, r)
  std::vector<std::vector<char>> edge_seen;             // flattened (r, Y) per X

  std::deque<std::pair<int, int>> queue;

  int top_id = 0;

  int Atom(const Concept& c) {
    auto [it, inserted] = atom_id.emplace(c.str(), static_cast<int>(atom_id.size()));
    return it->second;
  }

  int Role(const std::string& r) {
    auto [it, inserted] = role_id.emplace(r, static_cast<int>(role_id.size()));
    return it->second;
  }

  void Build() {
    top_id = Atom(Concept::Top());
    for (const auto& [key, atom] : norm.atom_of) Atom(atom);
    std::vector<std::pair<int, int>> ris;
    struct Pending { int kind; int a, b, c; };
    std::vector<Pending> pending;
    for (const auto& ax : norm.normal_axioms) {
      if (ax.is_ri()) {
        ris.push_back({Role(ax.sub_role()), Role(ax.sup_role())});
        continue;
      }
      const Concept& l = ax.lhs();
      const Concept& r = ax.rhs();
      if (l.is_conj()) {
        pending.push_back({1, Atom(l.members()[0]), Atom(l.members()[1]), Atom(r)});
      } else if (r.is_exists()) {
        pending.push_back({2, Atom(l), Role(r.role()), Atom(r.filler())});
      } else if (l.is_exists()) {
        pending.push_back({3, Atom(l.filler()), Role(l.role()), Atom(r)});
      } else {
        pending.push_back({0, Atom(l), Atom(r), 0});
      }
    }
    const std::size_t n = atom_id.size();
    const std::size_t nr = role_id.size();
    told.assign(n, {});
    conj.assign(n, {});
    exists_rhs.assign(n, {});
    exists_lhs.assign(n, {});
    for (const auto& p : pending) {
      switch (p.kind) {
        case 0: told[p.a].push_back(p.b); break;
        case 1:
          conj[p.a].push_back({p.b, p.c});
          conj[p.b].push_back({p.a, p.c});
          break;
        case 2: exists_rhs[p.a].push_back({p.b, p.c}); break;
        case 3: exists_lhs[p.a].push_back({p.b, p.c}); break;
      }
    }
    role_sub.assign(nr, std::vector<char>(nr, 0));
    for (std::size_t r = 0; r < nr; ++r) role_sub[r][r] = 1;
    for (auto [a, b] : ris) role_sub[a][b] = 1;
    for (std::size_t k = 0; k < nr; ++k)
      for (std::size_t i = 0; i < nr; ++i)
        if (role_sub[i][k])
          for (std::size_t j = 0; j < nr; ++j)
            if (role_sub[k][j]) role_sub[i][j] = 1;

    subsumers.assign(n, std::vector<char>(n, 0));
    subsumer_list.assign(n, {});
    preds.assign(n, {});
    edge_seen.assign(n, std::vector<char>(nr * n, 0));
    for (std::size_t x = 0; x < n; ++x) {
      Add(static_cast<int>(x), static_cast<int>(x));
      Add(static_cast<int>(x), top_id);
    }
    Run();
  }

  void Add(int x, int a) {
    if (subsumers[x][a]) return;
    subsumers[x][a] = 1;
    subsumer_list[x].push_back(a);
    queue.push_back({x, a});
  }

  void AddEdge(int x, int r, int y) {
    char& seen = edge_seen[x][static_cast<std::size_t>(r) * atom_id.size() + y];
    if (seen) return;
    seen = 1;
    preds[y].push_back({x, r});
    // Index-based loop: Add never touches subsumer_list[y] unless x == y.
    for (std::size_t i = 0; i < subsumer_list[y].size(); ++i) {
      int a = subsumer_list[y][i];
      for (auto [s, b] : exists_lhs[a])
        if (role_sub[r][s]) Add(x, b);
    }
  }

  void Run() {
    while (!queue.empty()) {
      auto [x, a] = queue.front();
      queue.pop_front();
      for (int b : told[a]) Add(x, b);
      for (auto [other, b] : conj[a])
        if (subsumers[x][other]) Add(x, b);
      for (auto [r, b] : exists_rhs[a]) AddEdge(x, r, b);
      if (!exists_lhs[a].empty()) {
        for (std::size_t i = 0; i < preds[x].size(); ++i) {
          auto [p, r] = preds[x][i];
          for (auto [s, b] : exists_lhs[a])
            if (role_sub[r][s]) Add(p, b);
        }
      }
    }
  }
};

Classifier::Classifier(const TBox& t, const std::vector<Concept>& extra) : impl_(std::make_unique<Impl>()) {
  impl_->norm = Normalize(t, extra);
  impl_->Build();
}

Classifier::~Classifier() = default;
Classifier::Classifier(Classifier&&) noexcept = default;
Classifier& Classifier::operator=(Classifier&&) noexcept = default;

const NormalizedTBox& Classifier::normalized() const { return impl_->norm; }

bool Classifier::Subsumes(const Concept& sub, const Concept& sup) const {
  if (sup.is_top() || sub == sup) return true;
  const auto& atoms = impl_->norm.atom_of;
  auto a = atoms.find(sub.str());
  auto b = atoms.find(sup.str());
  if (a == atoms.end() || b == atoms.end())
    return Classifier(impl_->norm.original, {sub, sup}).Subsumes(sub, sup);
  int x = impl_->atom_id.at(a->second.str());
  int y = impl_->atom_id.at(b->second.str());
  return impl_->subsumers[x][y] != 0;
}

bool Classifier::RoleSubsumes(const std::string& sub, const std::string& sup) const {
  if (sub == sup) return true;
  auto a = impl_->role_id.find(sub);
  auto b = impl_->role_id.find(sup);
  if (a == impl_->role_id.end() || b == impl_->role_id.end()) return false;
  return impl_->role_sub[a->second][b->second] != 0;
}

bool Classifier::Entails(const Axiom& a) const {
  return a.is_ci() ? Subsumes(a.lhs(), a.rhs()) : RoleSubsumes(a.sub_role(), a.sup_role());
}

bool Entails(const TBox& t, const Axiom& a) {
  if (a.is_ri()) return Classifier(t).RoleSubsumes(a.sub_role(), a.sup_role());
  if (a.rhs().is_top() || a.lhs() == a.rhs()) return true;
  return Classifier(t, {a.lhs(), a.rhs()}).Subsumes(a.lhs(), a.rhs());
}

bool EntailsTBox(const TBox& t, const TBox& t2) {
  std::vector<Concept> extra;
  for (const auto& a : t2) {
    if (a.is_ci()) {
      extra.push_back(a.lhs());
      extra.push_back(a.rhs());
    }
  }
  Classifier c(t, extra);
  for (const auto& a : t2)
    if (!c.Entails(a)) return false;
  return true;
}

bool Equivalent(const TBox& t1, const TBox& t2) { return EntailsTBox(t1, t2) && EntailsTBox(t2, t1); }

}  // namespace dlearn
