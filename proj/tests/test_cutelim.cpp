#include <doctest.h>

#include "nmodal/cutelim.hpp"
#include "support/generators.hpp"

using namespace nmodal;

namespace {

Formula f(const char* text) { return parse_formula(text); }

Proof init(const Formula& a) { return make_proof(Sequent({a}, {a}), Rule::Init, a, {}); }

// => true, built as impR over false => false.
Proof top_proof() { return make_proof(Sequent({}, {Formula::top()}), Rule::ImpR, Formula::top(), {init(Formula::bot())}); }

Proof nec_chain(unsigned k) {
  Proof p = top_proof();
  for (unsigned i = 1; i <= k; ++i) {
    Formula b = Formula::box(Formula::top(), i);
    p = make_proof(Sequent({}, {b}), Rule::Nec, b, {p});
  }
  return p;
}

Proof cut(const Proof& left, const Proof& right, const Formula& phi, const Sequent& conclusion) {
  ProofAux aux;
  aux.left_ante = left->conclusion.ante();
  aux.left_succ = set_minus(left->conclusion.succ(), {phi});
  return make_proof(conclusion, Rule::Cut, phi, {left, right}, aux);
}

}  // namespace

TEST_CASE("axiom cut reduces to the axiom") {
  LogicId n = LogicId::parse("N");
  Proof c = cut(init(f("p")), init(f("p")), f("p"), parse_sequent("p => p"));
  REQUIRE(check_proof(c, n).valid());
  Proof out = eliminate_cuts(c, n);
  CHECK(is_cut_free(out));
  CHECK(out->conclusion == parse_sequent("p => p"));
  CHECK(check_proof(out, n).valid());
}

TEST_CASE("principal nec against accL in NA(0,2)") {
  LogicId logic = LogicId::parse("NA(0,2)");
  Formula t = Formula::top(), b2 = Formula::box(t, 2);
  Proof w = make_proof(Sequent({t, b2}, {t}), Rule::WeakenL, b2, {init(t)});
  Proof acc = make_proof(Sequent({b2}, {t}), Rule::AccL, b2, {w});
  Proof c = cut(nec_chain(2), acc, b2, Sequent({}, {t}));
  REQUIRE(check_proof(c, logic).valid());
  Proof out = eliminate_cuts(c, logic);
  CHECK(is_cut_free(out));
  CHECK(out->conclusion == Sequent({}, {t}));
  CHECK(check_proof(out, logic).valid());
}

TEST_CASE("cut-free input is returned unchanged") {
  LogicId logic = LogicId::parse("NA(2,1)");
  Proof p = decide(parse_sequent("=> box p -> box box p"), logic).proof;
  CHECK(eliminate_cuts(p, logic) == p);
}

TEST_CASE("invalid input is rejected") {
  Proof bogus = make_proof(parse_sequent("=> p"), Rule::Init, f("p"), {});
  CHECK_THROWS_AS(eliminate_cuts(bogus, LogicId::parse("N")), std::invalid_argument);
}

TEST_CASE("lower_box") {
  LogicId a02 = LogicId::parse("NA(0,2)");
  Proof low = lower_box(nec_chain(2), a02);
  CHECK(low->conclusion == Sequent({}, {Formula::top()}));
  CHECK(check_proof(low, a02).valid());

  LogicId a13 = LogicId::parse("NA(1,3)");
  Proof low3 = lower_box(nec_chain(3), a13);
  CHECK(low3->conclusion == Sequent({}, {Formula::box(Formula::top())}));
  CHECK(check_proof(low3, a13).valid());

  CHECK_THROWS_AS(lower_box(nec_chain(2), LogicId::parse("NA(2,2)")), std::invalid_argument);
  CHECK_THROWS_AS(lower_box(nec_chain(1), a02), std::invalid_argument);
}

TEST_CASE("injected cuts are eliminated across the grid") {
  testgen::FormulaGen gen(41);
  int done = 0;
  for (const LogicId& logic : testgen::grid()) {
    Prover prover(logic);
    for (int i = 0; i < 40; ++i) {
      Sequent s = gen.sequent(3, 1, 1);
      Proof p = prover.prove(s);
      if (!p) continue;
      Proof withcut = testgen::inject_cuts(prover, p, gen, 3);
      if (is_cut_free(withcut)) continue;
      REQUIRE(check_proof(withcut, logic).valid());
      Proof out = eliminate_cuts(withcut, logic);
      CHECK(is_cut_free(out));
      CHECK(out->conclusion == s);
      CHECK(check_proof(out, logic).valid());
      ++done;
    }
  }
  CHECK(done > 100);
}
