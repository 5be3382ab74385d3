#include "doctest.h"

#include "dlearn/interpretation.h"
#include "dlearn/reasoner.h"
#include "test_util.h"

using namespace dlearn;
using dlearn::testing::Ax;
using dlearn::testing::C;
using dlearn::testing::T;

namespace {

Interpretation Small() {
  Interpretation i;
  i.domain_size = 4;
  i.concepts["A"] = {1, 2};
  i.concepts["B"] = {2, 3};
  return i;
}

// Exists r.C repeated n times around A.
Concept Chain(const std::string& role, int n) {
  Concept c = Concept::Name("A");
  for (int k = 0; k < n; ++k) c = Concept::Exists(role, c);
  return c;
}

}  // namespace

TEST_CASE("extension of top, conjunction and existential") {
  Interpretation i = Small();
  CHECK(ExtensionOf(Concept::Top(), i) == std::set<Element>{0, 1, 2, 3});
  CHECK(ExtensionOf(C("A & B"), i) == std::set<Element>{2});
  Interpretation j;
  j.domain_size = 3;
  j.concepts["A"] = {2};
  j.roles["r"] = {{1, 2}};
  CHECK(ExtensionOf(C("some(r, A)"), j) == std::set<Element>{1});
  CHECK(ExtensionOf(C("some(s, A)"), j).empty());
}

TEST_CASE("satisfaction of axioms") {
  Interpretation i;
  i.domain_size = 2;
  i.concepts["A"] = {1};
  CHECK(Satisfies(i, Ax("ci: A <= A")));
  CHECK_FALSE(Satisfies(i, Ax("ci: A <= B")));
  dlearn::testing::RandomSyntax gen(3);
  for (int k = 0; k < 200; ++k) {
    Interpretation m = gen.RandomInterpretation(4, 0.3);
    bool subset = true;
    for (auto p : m.roles["r"])
      if (!m.roles["s"].count(p)) subset = false;
    CHECK(Satisfies(m, Ax("ri: r <= s")) == subset);
  }
}

TEST_CASE("entailment examples") {
  CHECK(Entails(T("ci: A <= B\nci: B <= C"), Ax("ci: A <= C")));
  CHECK(Entails(T("ci: A <= B"), Ax("ci: some(r, A) & B <= top")));
  CHECK(Entails(TBox{}, Ax("ci: some(r, A) <= top")));
  CHECK(Entails(T("ci: A <= some(r, A)"), Ax("ci: A <= some(r, some(r, A))")));
  CHECK_FALSE(Entails(TBox{}, Ax("ci: A <= B")));
  CHECK(Entails(TBox{}, Ax("ci: A & B <= A")));
  CHECK(Entails(T("ri: r <= s\nci: some(s, A) <= B"), Ax("ci: some(r, A) <= B")));
  CHECK(Entails(T("ci: A <= some(r, B)\nci: B <= C"), Ax("ci: A <= some(r, C)")));
  CHECK(Entails(T("ci: A <= B\nci: A <= C\nci: B & C <= D"), Ax("ci: A <= D")));
  CHECK(Entails(T("ci: top <= A"), Ax("ci: B <= A")));
  CHECK(Entails(T("ci: some(r, top) <= A\nci: B <= some(r, C)"), Ax("ci: B <= A")));
  CHECK_FALSE(Entails(T("ci: some(r, A) <= B"), Ax("ci: some(s, A) <= B")));
}

TEST_CASE("empty TBox countermodel exists for distinct names") {
  CHECK_FALSE(Entails(TBox{}, Ax("ci: A <= B")));
  Interpretation m;
  m.domain_size = 2;
  m.concepts["A"] = {0};
  CHECK(Satisfies(m, TBox{}));
  CHECK_FALSE(Satisfies(m, Ax("ci: A <= B")));
}

TEST_CASE("TBox entailment") {
  TBox t = T("ci: A <= B\nci: B <= C");
  CHECK(EntailsTBox(t, t));
  CHECK(EntailsTBox(t, T("ci: A <= C")));
  CHECK_FALSE(EntailsTBox(T("ci: A <= C"), t));
  CHECK(EntailsTBox(TBox{}, TBox{}));
  CHECK(Equivalent(T("ci: A == B"), T("ci: B <= A\nci: A <= B")));
}

TEST_CASE("existential chain A <= some(r)^n A") {
  TBox t = T("ci: A <= some(r, A)");
  for (int n = 1; n <= 10; ++n) {
    Axiom a = Axiom::Ci(Concept::Name("A"), Chain("r", n));
    CHECK(Entails(t, a));
    CHECK(CanonicalCheck(t, a, 10));
  }
  CHECK_FALSE(Entails(t, Axiom::Ci(Concept::Name("A"), Chain("s", 1))));
}

TEST_CASE("canonical check examples") {
  CHECK(CanonicalCheck(T("ci: A <= B"), Ax("ci: A <= B"), 1));
  CHECK(CanonicalCheck(T("ci: A <= some(r, A)"), Ax("ci: A <= some(r, some(r, some(r, A)))"), 10));
  CHECK_FALSE(CanonicalCheck(TBox{}, Ax("ci: A <= B")));
  CHECK(CanonicalCheck(T("ri: r <= s\nri: s <= t"), Ax("ri: r <= t")));
  CHECK_FALSE(CanonicalCheck(T("ri: r <= s"), Ax("ri: s <= r")));
}

TEST_CASE("canonical check signals fuel exhaustion") {
  // Axioms are visited in print order, so this chain needs one pass per link.
  TBox t = T("ci: B <= A\nci: C <= B\nci: D <= C");
  CHECK_THROWS_AS(CanonicalCheck(t, Ax("ci: D <= A"), 1), FuelExhausted);
  CHECK(CanonicalCheck(t, Ax("ci: D <= A"), 3));
}

TEST_CASE("instance queries") {
  CHECK(IqEntails(TBox{}, ParseABox("A(a)"), Iq::ConceptQuery(C("A"), "a")));
  CHECK(IqEntails(T("ci: A <= B"), ParseABox("A(a)"), Iq::ConceptQuery(C("B"), "a")));
  CHECK_FALSE(IqEntails(TBox{}, ParseABox("A(a)"), Iq::ConceptQuery(C("B"), "a")));
  CHECK(IqEntails(T("ci: A1 & A2 & A3 <= M"), ParseABox("A1(a)\nA2(a)\nA3(a)"), Iq::ConceptQuery(C("M"), "a")));
  CHECK_FALSE(IqEntails(T("ci: A1 & A2 & A3 <= M"), ParseABox("A1(a)\nA2(a)"), Iq::ConceptQuery(C("M"), "a")));
  CHECK(IqEntails(T("ri: r <= s"), ParseABox("r(a, b)"), Iq::RoleQuery("s", "a", "b")));
  CHECK(IqEntails(T("ci: A <= some(r, B)\nci: some(r, B) <= C"), ParseABox("A(a)"),
                  Iq::ConceptQuery(C("C & some(r, B)"), "a")));
  CHECK(IqEntails(T("ci: some(r, B) <= C"), ParseABox("r(a, b)\nB(b)"), Iq::ConceptQuery(C("C"), "a")));
  CHECK_FALSE(IqEntails(TBox{}, ParseABox("A(a)"), Iq::ConceptQuery(C("A"), "b")));
}

TEST_CASE("normalization uses the reserved namespace and is conservative") {
  TBox t = T("ci: A <= some(r, B & C)\nci: some(r, B) <= D");
  NormalizedTBox n = Normalize(t);
  CHECK_FALSE(n.fresh_map.empty());
  for (const auto& [name, def] : n.fresh_map) CHECK(IsFreshName(name));
  for (const auto& a : n.normal_axioms) {
    if (a.is_ri()) continue;
    auto basic = [](const Concept& c) { return c.is_name() || c.is_top(); };
    bool shape = (basic(a.lhs()) && basic(a.rhs())) ||
                 (a.lhs().is_conj() && a.lhs().members().size() == 2 && basic(a.rhs())) ||
                 (basic(a.lhs()) && a.rhs().is_exists() && basic(a.rhs().filler())) ||
                 (a.lhs().is_exists() && basic(a.lhs().filler()) && basic(a.rhs()));
    CHECK_MESSAGE(shape, a.str());
  }
  CHECK(SignatureOf(n.normal_axioms) == SignatureOf(t));
  // Entailments over the original signature coincide.
  dlearn::testing::RandomSyntax gen(5);
  gen.concepts = {"A", "B", "C", "D"};
  gen.roles = {"r"};
  for (int k = 0; k < 200; ++k) {
    Axiom a = Axiom::Ci(gen.RandomConcept(2), gen.RandomConcept(2));
    CHECK(Entails(t, a) == Entails(n.normal_axioms, a));
  }
}

TEST_CASE("reflexivity, weakening and transitivity") {
  dlearn::testing::RandomSyntax gen(21);
  for (int k = 0; k < 100; ++k) {
    TBox t = gen.RandomTBox(4, 2);
    for (const auto& a : t) CHECK(Entails(t, a));
    TBox bigger = Union(t, gen.RandomTBox(3, 2));
    Axiom q = gen.RandomAxiom(2);
    if (Entails(t, q)) CHECK(Entails(bigger, q));
  }
  CHECK(Entails(T("ci: A <= B\nci: B <= C"), Ax("ci: A <= C")));
}

TEST_CASE("RI closure is reachability in the RI digraph") {
  TBox t = T("ri: r <= s\nri: s <= u\nri: v <= r");
  CHECK(Entails(t, Ax("ri: r <= u")));
  CHECK(Entails(t, Ax("ri: v <= u")));
  CHECK(Entails(t, Ax("ri: w <= w")));
  CHECK_FALSE(Entails(t, Ax("ri: u <= r")));
  CHECK_FALSE(Entails(t, Ax("ri: s <= v")));
}

TEST_CASE("soundness against random models of the TBox") {
  dlearn::testing::RandomSyntax gen(99);
  int entailed_checks = 0;
  int models = 0;
  for (int k = 0; k < 400; ++k) {
    TBox t = gen.RandomTBox(4, 2);
    std::vector<Axiom> entailed;
    for (int q = 0; q < 40; ++q) {
      Axiom a = gen.RandomAxiom(2);
      if (Entails(t, a)) entailed.push_back(a);
    }
    for (int m = 0; m < 25; ++m) {
      Interpretation i = gen.RandomInterpretation(1 + static_cast<int>(gen.Pick(4)), 0.3);
      gen.RepairToModel(i, t);
      REQUIRE(Satisfies(i, t));
      ++models;
      for (const auto& a : entailed) {
        ++entailed_checks;
        CHECK_MESSAGE(Satisfies(i, a), (PrintTBox(t) + " |= " + a.str()));
      }
    }
  }
  CHECK(models >= 10000);
  CHECK(entailed_checks > 0);
}

TEST_CASE("saturation and canonical models agree on random inputs") {
  dlearn::testing::RandomSyntax gen(1234);
  for (int k = 0; k < 1500; ++k) {
    TBox t = gen.RandomTBox(4, 2);
    Axiom a = gen.RandomAxiom(2);
    CHECK_MESSAGE(Entails(t, a) == CanonicalCheck(t, a, 1000), (PrintTBox(t) + " ? " + a.str()));
  }
}
