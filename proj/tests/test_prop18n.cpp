#include <doctest.h>

#include "nmodal/prop18n.hpp"
#include "support/generators.hpp"

using namespace nmodal;

namespace {

Formula f(const char* text) { return parse_formula(text); }

}  // namespace

TEST_CASE("sharp and flat examples") {
  for (const LogicId& logic : testgen::grid()) CHECK(sharp(f("box true"), logic).is_top());
  CHECK(to_string(sharp(f("box box p"), LogicId::parse("NA(2,1)"))) == "q{box box p} | q{box p}");
  CHECK(flat(f("box false"), LogicId::parse("NRA(1,1)")).is_bot());
  CHECK(to_string(flat(f("box box p"), LogicId::parse("NA(1,2)"))) == "q{box box p} & q{box p}");
  CHECK(sharp(f("p -> q"), LogicId::parse("N")) == f("p -> q"));
  CHECK_THROWS(sharp(f("q{box p}"), LogicId::parse("N")));
}

TEST_CASE("translations are cached and reproducible") {
  Translator a(LogicId::parse("NA(1,2)")), b(LogicId::parse("NA(1,2)"));
  Formula x = f("box (box box p -> q) | box box box r");
  CHECK(a.sharp(x) == a.sharp(x));
  CHECK(a.sharp(x) == b.sharp(x));
  CHECK(a.flat(x) == b.flat(x));
}

TEST_CASE("std_subst") {
  CHECK(std_subst(f("q{box p} | q")) == f("box p | q"));
  CHECK(std_subst(f("p")) == f("p"));
  CHECK(std_subst(sharp(f("box box p"), LogicId::parse("NA(2,1)"))) == f("box box p | box p"));
}

TEST_CASE("emulate examples") {
  LogicId n = LogicId::parse("N");
  Proof nec = decide(parse_sequent("=> box true"), n).proof;
  Proof lk = emulate(nec, n);
  CHECK(lk->conclusion == Sequent({}, {Formula::top()}));
  CHECK(check_lk_proof(lk).valid());

  LogicId a12 = LogicId::parse("NA(1,2)");
  Formula b2 = f("box box p");
  Proof init = make_proof(Sequent({b2}, {b2}), Rule::Init, b2, {});
  Proof e = emulate(init, a12);
  CHECK(e->conclusion == parse_sequent("q{box box p} & q{box p} => q{box box p}"));
  CHECK(check_lk_proof(e).valid());
  CHECK(decide_classical(e->conclusion));

  LogicId a02 = LogicId::parse("NA(0,2)");
  Proof prem = make_proof(parse_sequent("p, box box p => p"), Rule::WeakenL, b2, {make_proof(parse_sequent("p => p"), Rule::Init, f("p"), {})});
  Proof acc = make_proof(parse_sequent("box box p => p"), Rule::AccL, b2, {prem});
  REQUIRE(check_proof(acc, a02).valid());
  Proof ea = emulate(acc, a02);
  CHECK(ea->conclusion == parse_sequent("q{box box p} & p => p"));
  CHECK(check_lk_proof(ea).valid());
}

TEST_CASE("verify_propositionalization examples") {
  CHECK(verify_propositionalization({f("box p")}, {}, LogicId::parse("NA(1,1)")).ok());
  Report two = verify_propositionalization({}, {{f("box box p"), f("box p")}}, LogicId::parse("NA(1,2)"));
  CHECK(two.ok());
  CHECK(two.checks.size() == 1);
  CHECK(verify_propositionalization({f("box (p -> q)")}, {}, LogicId::parse("N")).ok());
}

TEST_CASE("propositionalization and emulation on a corpus") {
  testgen::FormulaGen gen(61);
  for (const LogicId& logic : testgen::grid()) {
    Translator tr(logic);
    std::vector<Formula> corpus;
    for (int i = 0; i < 40; ++i) corpus.push_back(gen(3));
    std::vector<std::pair<Formula, Formula>> pairs;
    for (const auto& a : corpus) {
      for (const auto& b : corpus) pairs.emplace_back(a, b);
    }
    Report r = verify_propositionalization(corpus, pairs, tr);
    CHECK_MESSAGE(r.ok(), r.to_text());

    for (int i = 0; i < 30; ++i) {
      Proof p = tr.prover().prove(gen.sequent(3));
      if (!p) continue;
      Proof lk = emulate(p, tr);
      CHECK(check_lk_proof(lk).valid());
      CHECK(lk->conclusion == tr.translate(p->conclusion));
      CHECK(decide_classical(lk->conclusion));
    }
  }
}
