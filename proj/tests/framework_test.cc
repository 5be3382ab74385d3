#include "doctest.h"

#include <set>

#include "dlearn/framework.h"
#include "dlearn/reasoner.h"
#include "test_util.h"

using namespace dlearn;
using dlearn::testing::Ax;
using dlearn::testing::C;
using dlearn::testing::Sig;
using dlearn::testing::T;

namespace {

const LearningFramework kToyAtomic(FragmentId::kToyAtomic);
const LearningFramework kToyConj(FragmentId::kToyConj);
const LearningFramework kDlLite(FragmentId::kDlLite);
const LearningFramework kElh(FragmentId::kElh);
const LearningFramework kElhIq(FragmentId::kElhIq);

std::set<std::string> Printed(const std::vector<Example>& v) {
  std::set<std::string> out;
  for (const auto& e : v) out.insert(ToString(e));
  return out;
}

bool SortedBySizeThenPrint(const std::vector<Example>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    auto a = SizeOf(v[i - 1]);
    auto b = SizeOf(v[i]);
    if (a > b || (a == b && ToString(v[i - 1]) >= ToString(v[i]))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("fragment ids round-trip") {
  for (auto f : {FragmentId::kToyAtomic, FragmentId::kToyConj, FragmentId::kDlLite, FragmentId::kElh,
                 FragmentId::kElhIq})
    CHECK(ParseFragmentId(ToString(f)) == f);
  CHECK(ToString(FragmentId::kToyConj) == "toy-conj");
  CHECK_THROWS_AS(ParseFragmentId("alc"), std::invalid_argument);
}

TEST_CASE("membership examples") {
  CHECK(kElh.IsMember(T("ci: A <= B\nci: B <= C"), Ax("ci: A <= C")));
  CHECK(kElh.IsMember(T("ci: A <= some(r, B)"), Ax("ci: C <= C")));
  TBox t_sigma = T(
      "ci: A1 & A2 & A3 <= M\n"
      "ci: A1 & NA1 <= M\nci: A2 & NA2 <= M\nci: A3 & NA3 <= M");
  CHECK(kElhIq.IsMember(t_sigma, ParseDataExample("iq: A1(a), A2(a), A3(a) |- M(a)")));
  CHECK_FALSE(kElhIq.IsMember(t_sigma, ParseDataExample("iq: A1(a), A2(a), NA3(a) |- M(a)")));
}

TEST_CASE("membership delegates to the reasoner") {
  dlearn::testing::RandomSyntax gen(17);
  for (int k = 0; k < 300; ++k) {
    TBox t = gen.RandomTBox(4, 2);
    Axiom a = gen.RandomAxiom(2);
    CHECK(kElh.IsMember(t, a) == Entails(t, a));
  }
}

TEST_CASE("counterexample examples and symmetry") {
  CHECK(kElh.IsCounterexample(T("ci: A <= B"), TBox{}, Ax("ci: A <= B")));
  CHECK(kElh.IsCounterexample(T("ci: A <= B\nci: B <= C"), T("ci: A <= B"), Ax("ci: B <= C")));
  dlearn::testing::RandomSyntax gen(23);
  for (int k = 0; k < 200; ++k) {
    TBox t = gen.RandomTBox(3, 1);
    TBox h = gen.RandomTBox(3, 1);
    Axiom e = gen.RandomAxiom(1);
    CHECK_FALSE(kElh.IsCounterexample(t, t, e));
    CHECK(kElh.IsCounterexample(t, h, e) == kElh.IsCounterexample(h, t, e));
  }
}

TEST_CASE("validators") {
  CHECK(kToyAtomic.AdmitsAxiom(Ax("ci: A <= B")));
  CHECK_FALSE(kToyAtomic.AdmitsAxiom(Ax("ci: A & B <= C")));
  CHECK(kToyConj.AdmitsAxiom(Ax("ci: A & B <= C")));
  CHECK_FALSE(kToyConj.AdmitsAxiom(Ax("ci: A <= B & C")));
  CHECK_FALSE(kToyConj.AdmitsAxiom(Ax("ci: top <= B")));
  CHECK(kDlLite.AdmitsAxiom(Ax("ci: some(r, top) <= A")));
  CHECK(kDlLite.AdmitsAxiom(Ax("ri: r <= s")));
  CHECK_FALSE(kDlLite.AdmitsAxiom(Ax("ci: some(r, A) <= B")));
  CHECK_FALSE(kToyAtomic.AdmitsAxiom(Ax("ri: r <= s")));
  CHECK(kElh.AdmitsAxiom(Ax("ci: some(r, A & B) <= some(s, top)")));
  CHECK_THROWS_AS(kToyAtomic.IsMember(T("ci: A & B <= C"), Ax("ci: A <= B")), FragmentViolation);
  CHECK_THROWS_AS(kToyAtomic.IsMember(TBox{}, Ax("ci: A & B <= C")), FragmentViolation);
  // Data examples belong to elh-iq only, and their query must be grounded in the ABox.
  CHECK_FALSE(kElh.AdmitsExample(ParseDataExample("iq: A(a) |- B(a)")));
  CHECK(kElhIq.AdmitsExample(ParseDataExample("iq: A(a) |- B(a)")));
  CHECK_FALSE(kElhIq.AdmitsExample(ParseDataExample("iq: A(a) |- B(b)")));
  CHECK_FALSE(kElhIq.AdmitsExample(ParseDataExample("iq: r(a, b) |- s(a, c)")));
  CHECK_FALSE(kElhIq.AdmitsExample(Ax("ci: A <= B")));
}

TEST_CASE("example text dispatch") {
  CHECK(std::holds_alternative<Axiom>(ParseExample("ci: A <= B")));
  CHECK(std::holds_alternative<Axiom>(ParseExample("  ri: r <= s")));
  CHECK(std::holds_alternative<DataExample>(ParseExample("iq: A(a) |- B(a)")));
  CHECK(SizeOf(ParseExample("iq: A(a) |- B(a)")) == 4);
  CHECK_THROWS_AS(ParseExample("ci: A <="), ParseError);
}

TEST_CASE("toy-atomic enumeration has |C|^2 axioms including reflexive ones") {
  auto v = kToyAtomic.EnumerateExamples(Sig({"A", "B", "C"}), 0, 0);
  CHECK(v.size() == 9);
  CHECK(Printed(v).count("ci: A <= A"));
  CHECK(Printed(v).size() == 9);
}

TEST_CASE("toy-conj enumeration has (2^n - 1) n axioms") {
  for (int n = 1; n <= 5; ++n) {
    std::set<std::string> names;
    for (int i = 0; i < n; ++i) names.insert("A" + std::to_string(i));
    auto v = kToyConj.EnumerateExamples(Sig(names), 0, 0);
    CHECK(v.size() == static_cast<std::size_t>(((1 << n) - 1) * n));
    CHECK(Printed(v).size() == v.size());
    CHECK(SortedBySizeThenPrint(v));
  }
}

TEST_CASE("dllite enumeration matches a brute-force filter of the ELH space") {
  for (int nc = 0; nc <= 2; ++nc) {
    for (int nr = 0; nr <= 2; ++nr) {
      std::set<std::string> cs, rs;
      for (int i = 0; i < nc; ++i) cs.insert(std::string(1, static_cast<char>('A' + i)));
      for (int i = 0; i < nr; ++i) rs.insert(std::string(1, static_cast<char>('r' + i)));
      Signature sig = Sig(cs, rs);
      auto v = kDlLite.EnumerateExamples(sig, 0, 0);
      // ELH axioms of size <= 7 and depth <= 1 contain every DL-Lite axiom.
      std::set<std::string> oracle;
      for (const auto& e : kElh.EnumerateExamples(sig, 1, 7))
        if (kDlLite.AdmitsExample(e)) oracle.insert(ToString(e));
      CHECK(Printed(v) == oracle);
      CHECK(v.size() == static_cast<std::size_t>((nc + nr) * (nc + nr) + nr * nr));
    }
  }
  auto v = kDlLite.EnumerateExamples(Sig({"A", "B", "C"}, {"r", "s", "t"}), 0, 0);
  CHECK(v.size() == 36 + 9);
  CHECK(Printed(v).size() == v.size());
}

TEST_CASE("empty signature gives an empty space for every fragment") {
  for (const auto* f : {&kToyAtomic, &kToyConj, &kDlLite, &kElh, &kElhIq})
    CHECK(f->EnumerateExamples(Signature{}, 2, 9).empty());
}

TEST_CASE("elh enumeration is ordered, duplicate-free and within the caps") {
  Signature sig = Sig({"A", "B"}, {"r"});
  auto v = kElh.EnumerateExamples(sig, 1, 7);
  CHECK(SortedBySizeThenPrint(v));
  CHECK(Printed(v).size() == v.size());
  for (const auto& e : v) {
    const Axiom& a = std::get<Axiom>(e);
    CHECK(SizeOf(a) <= 7);
    CHECK(DepthOf(a) <= 1);
  }
  // Every canonical axiom within the caps is present.
  std::set<std::string> all = Printed(v);
  dlearn::testing::RandomSyntax gen(5);
  gen.concepts = {"A", "B"};
  gen.roles = {"r"};
  int seen = 0;
  for (int k = 0; k < 3000; ++k) {
    Axiom a = gen.RandomAxiom(1);
    if (SizeOf(a) > 7 || DepthOf(a) > 1) continue;
    ++seen;
    CHECK_MESSAGE(all.count(a.str()), a.str());
  }
  CHECK(seen > 100);
}

TEST_CASE("concept enumeration counts small cases") {
  // Size <= 3 over one name and one role, depth 1:
  // top, A, some(r, top), some(r, A).
  auto v = EnumerateConcepts(Sig({"A"}, {"r"}), 1, 3);
  CHECK(v.size() == 4);
  // Adding a second name contributes B and A & B.
  CHECK(EnumerateConcepts(Sig({"A", "B"}, {"r"}), 1, 3).size() == 7);
}

TEST_CASE("elh-iq enumeration is grounded, ordered and duplicate-free") {
  auto v = kElhIq.EnumerateExamples(Sig({"A"}, {"r"}), 1, 6);
  CHECK_FALSE(v.empty());
  CHECK(SortedBySizeThenPrint(v));
  CHECK(Printed(v).size() == v.size());
  for (const auto& e : v) {
    CHECK(kElhIq.AdmitsExample(e));
    CHECK(SizeOf(e) <= 6);
  }
  CHECK(Printed(v).count("iq: A(a) |- A(a)"));
  CHECK(Printed(v).count("iq: r(a, b) |- r(a, b)"));
}

TEST_CASE("axioms converted to data examples keep their entailment status") {
  dlearn::testing::RandomSyntax gen(31);
  for (int k = 0; k < 400; ++k) {
    TBox t = gen.RandomTBox(4, 2);
    Axiom a = gen.RandomAxiom(2);
    Signature avoid = SignatureOf(t);
    MergeInto(avoid, SignatureOf(a));
    DataExample d = AxiomToDataExample(a, avoid);
    CHECK(kElhIq.AdmitsExample(d));
    CHECK_MESSAGE(IqEntails(t, d.abox, d.query) == Entails(t, a), (PrintTBox(t) + " ? " + a.str() + " as " + d.str()));
  }
  DataExample d = AxiomToDataExample(Ax("ci: A & some(r, B) <= C"), Signature{});
  CHECK(d.str() == "iq: A(a), B(a1), r(a, a1) |- C(a)");
  CHECK(AxiomToDataExample(Ax("ri: r <= s"), Signature{}).str() == "iq: r(a, b) |- s(a, b)");
  CHECK(AxiomToDataExample(Ax("ci: top <= A"), Sig({"A", "Anything"})).str() == "iq: Anything1(a) |- A(a)");
}
