#include <doctest.h>

#include "nmodal/interp.hpp"
#include "support/generators.hpp"

using namespace nmodal;

namespace {

Formula f(const char* text) { return parse_formula(text); }

std::vector<Atom> pqr() { return {Atom::base("p"), Atom::base("q"), Atom::base("r")}; }

}  // namespace

TEST_CASE("maehara examples") {
  LogicId n = LogicId::parse("N");
  Decision top = decide(parse_sequent("=> box true"), n);
  REQUIRE(top.provable);
  Sequent s = top.proof->conclusion;
  CHECK(maehara(top.proof, Partition{Sequent(), s, s}, n).is_top());

  Decision pp = decide(parse_sequent("p => p"), n);
  CHECK(maehara(pp.proof, Partition{parse_sequent("p =>"), parse_sequent("=> p"), pp.proof->conclusion}, n) == f("p"));

  Sequent s2 = parse_sequent("p & q => p | r");
  Decision d2 = decide(s2, n);
  Partition part{parse_sequent("p & q =>"), parse_sequent("=> p | r"), s2};
  Formula chi = maehara(d2.proof, part, n);
  CHECK(testgen::truth_table(chi, pqr()) == testgen::truth_table(f("p"), pqr()));
  Prover prover(n);
  CHECK(verify_partition_interpolant(part, chi, prover).ok());
}

TEST_CASE("maehara rejects bad input") {
  LogicId n = LogicId::parse("N");
  Decision pp = decide(parse_sequent("p => p"), n);
  CHECK_THROWS_AS(maehara(pp.proof, Partition{parse_sequent("q =>"), parse_sequent("=> p"), parse_sequent("q => p")}, n),
                  std::invalid_argument);
}

TEST_CASE("lyndon_interpolant examples") {
  LogicId a11 = LogicId::parse("NA(1,1)");
  Formula chi = lyndon_interpolant(f("box p & box q"), f("box p | r"), a11);
  CHECK(chi == f("box p"));
  CHECK(verify_interpolant(f("box p & box q"), f("box p | r"), chi, a11, InterpolationMode::Lyndon).ok());

  Formula same = lyndon_interpolant(f("p"), f("p"), LogicId::parse("N"));
  CHECK(verify_interpolant(f("p"), f("p"), same, LogicId::parse("N"), InterpolationMode::Lyndon).ok());
  CHECK(signed_vars(same).pos.size() <= 1);

  CHECK(lyndon_interpolant(f("false"), f("q"), a11).is_bot());
  CHECK_THROWS_AS(lyndon_interpolant(f("p"), f("q"), a11), NotProvable);
}

TEST_CASE("verify_interpolant examples") {
  LogicId n = LogicId::parse("N");
  CHECK(verify_interpolant(f("p & q"), f("p | r"), f("p"), n, InterpolationMode::Lyndon).ok());
  Report bad = verify_interpolant(f("p"), f("q"), f("true"), n, InterpolationMode::Lyndon);
  CHECK_FALSE(bad.ok());
  REQUIRE(bad.failures().size() == 1);
  CHECK(bad.failures()[0].name == "|- chi -> psi");
  CHECK(verify_interpolant(f("box p"), f("box box p"), f("box p"), LogicId::parse("NA(2,1)"), InterpolationMode::Lyndon).ok());
  // Craig accepts a polarity mismatch that Lyndon refuses.
  CHECK(verify_interpolant(f("p & ~p"), f("p | ~p"), f("~p"), n, InterpolationMode::Craig).ok());
  CHECK_FALSE(verify_interpolant(f("p & q"), f("~~p | r"), f("~p"), n, InterpolationMode::Lyndon).ok());
}

TEST_CASE("all partitions of provable sequents satisfy (a)-(d)") {
  testgen::FormulaGen gen(51);
  int partitions = 0;
  for (const LogicId& logic : testgen::grid()) {
    Prover prover(logic);
    int found = 0;
    for (int i = 0; i < 400 && found < 25; ++i) {
      Sequent s = gen.sequent(3);
      Proof p = prover.prove(s);
      if (!p) continue;
      ++found;
      auto parts = enumerate_partitions(s);
      for (std::uint64_t k = 0; k < parts.size() && k < 64; ++k) {
        Formula chi = maehara(p, parts[k], logic);
        CHECK_FALSE(contains_quote(chi));
        Report r = verify_partition_interpolant(parts[k], chi, prover);
        CHECK_MESSAGE(r.ok(), r.to_text());
        ++partitions;
      }
    }
  }
  CHECK(partitions > 1000);
}
