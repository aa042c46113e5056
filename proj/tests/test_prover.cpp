#include <doctest.h>

#include "nmodal/prover.hpp"
#include "support/generators.hpp"

using namespace nmodal;

namespace {

Formula f(const char* text) { return parse_formula(text); }

bool provable(const char* seq, const char* logic) { return decide(parse_sequent(seq), LogicId::parse(logic)).provable; }

std::set<std::string> texts(const ClosureSet& c) {
  std::set<std::string> out;
  for (const auto& x : c.formulas) out.insert(to_string(x));
  return out;
}

}  // namespace

TEST_CASE("closure examples") {
  CHECK(texts(closure(parse_sequent("=> box box p"))) == std::set<std::string>{"box box p", "box p", "p"});
  CHECK(texts(closure(parse_sequent("box box box false =>"))) ==
        std::set<std::string>{"box box box false", "box box false", "box false", "false"});
  CHECK(texts(closure(parse_sequent("=> box (p -> q)"))) == std::set<std::string>{"box (p -> q)", "p -> q", "p", "q"});
}

TEST_CASE("decide examples") {
  CHECK(provable("=> box p -> box box p", "NA(2,1)"));
  CHECK_FALSE(provable("=> box p -> box box p", "NA(1,1)"));
  for (const char* logic : {"N", "NA(1,2)", "N+A(0,2)", "NRA(3,1)"}) CHECK_FALSE(provable("=> p", logic));
  CHECK(provable("box box box false =>", "N+A(0,2)"));
  CHECK_FALSE(provable("box box box false =>", "NA(0,2)"));
  CHECK(provable("box false =>", "NRA(0,0)"));
  CHECK_FALSE(provable("box false =>", "NA(0,0)"));
  CHECK(provable("=> box true", "N"));
  // No K: box distributes over nothing.
  CHECK_FALSE(provable("box (p -> q), box p => box q", "NA(2,2)"));
  CHECK_FALSE(provable("box p, box q => box (p & q)", "N"));
}

TEST_CASE("Amn axiom grid and consistency") {
  for (const LogicId& logic : testgen::grid(3)) {
    Formula ax = Formula::imp(Formula::box(f("p"), logic.n), Formula::box(f("p"), logic.m));
    Decision d = decide(Sequent({}, {ax}), logic);
    CHECK_MESSAGE(d.provable, logic.to_string());
    CHECK(check_proof(d.proof, logic).valid());
    CHECK_FALSE(decide(Sequent(), logic).provable);
  }
}

TEST_CASE("saturate_forward examples") {
  LogicId n = LogicId::parse("N");
  ProvableSet ps = saturate_forward(closure(std::vector<Formula>{f("p")}), n);
  CHECK(ps.contains(parse_sequent("p => p")));
  CHECK_FALSE(ps.contains(parse_sequent("=> p")));
  CHECK_FALSE(ps.contains(parse_sequent("p =>")));

  ProvableSet bot = saturate_forward(closure(std::vector<Formula>{f("false")}), n);
  CHECK(bot.contains(parse_sequent("false =>")));
  CHECK(bot.contains(parse_sequent("false => false")));

  ProvableSet ros = saturate_forward(closure(parse_sequent("box box box false =>")), LogicId::parse("NRA(1,1)"));
  CHECK(ros.contains(parse_sequent("box false =>")));
  CHECK(ros.contains(parse_sequent("box box box false =>")));
}

TEST_CASE("backward search is sound and agrees with forward saturation") {
  testgen::FormulaGen gen(31);
  int compared = 0;
  for (const LogicId& logic : testgen::grid()) {
    Prover prover(logic);
    for (int i = 0; i < 80; ++i) {
      Sequent s = gen.sequent(3);
      ClosureSet cl = closure(s);
      if (cl.size() > 12) continue;
      Decision d = prover.decide(s);
      CHECK_MESSAGE(d.provable == saturate_forward(cl, logic).contains(s), logic.to_string(), " ", to_string(s));
      if (d.provable) {
        CHECK(d.proof->conclusion == s);
        CHECK(is_cut_free(d.proof));
        CHECK(check_proof(d.proof, logic).valid());
      }
      ++compared;
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE("variants are monotone") {
  testgen::FormulaGen gen(32);
  for (unsigned m = 0; m <= 2; ++m) {
    for (unsigned n = 0; n <= 2; ++n) {
      Prover plain({Variant::Plain, m, n}), plus({Variant::Plus, m, n}), r({Variant::R, m, n});
      for (int i = 0; i < 60; ++i) {
        Sequent s = gen.sequent(3);
        if (!plain.provable(s)) continue;
        CHECK(plus.provable(s));
        CHECK(r.provable(s));
      }
    }
  }
}

TEST_CASE("classical agreement on box-free sequents") {
  testgen::FormulaGen gen(33, {"p", "q", "r"}, false);
  for (const LogicId& logic : {LogicId::parse("N"), LogicId::parse("NRA(2,1)"), LogicId::parse("N+A(0,2)")}) {
    Prover prover(logic);
    for (int i = 0; i < 300; ++i) {
      Sequent s = gen.sequent(4);
      CHECK(prover.provable(s) == decide_classical(s));
    }
  }
}

TEST_CASE("decide_classical examples and truth-table oracle") {
  CHECK(decide_classical(parse_sequent("p & q => p")));
  CHECK(decide_classical(parse_sequent("=> p | ~p")));
  CHECK(decide_classical(parse_sequent("q{box p} & p => q{box p}")));
  CHECK_FALSE(decide_classical(parse_sequent("q{box p} => q{box box p}")));
  CHECK_THROWS_AS(decide_classical(parse_sequent("box p => box p")), std::invalid_argument);

  testgen::FormulaGen gen(34, {"p", "q", "r", "s"}, false);
  for (int i = 0; i < 500; ++i) {
    Formula a = gen(4);
    std::vector<Atom> atoms{Atom::base("p"), Atom::base("q"), Atom::base("r"), Atom::base("s")};
    CHECK(classically_valid(a) == (testgen::truth_table(a, atoms) == 0xFFFF));
  }
}

TEST_CASE("budget exhaustion is reported") {
  Prover tiny(LogicId::parse("NA(2,1)"), 3);
  CHECK_THROWS_AS(tiny.provable(parse_sequent("box (p & q) | r, box box q => box p & (q | r), box box box r")), ResourceLimit);
}
