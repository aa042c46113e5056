#include <doctest.h>

#include "nmodal/ulip.hpp"
#include "support/generators.hpp"

using namespace nmodal;

namespace {

Formula f(const char* text) { return parse_formula(text); }

ForbiddenSets forbid(const char* pos, const char* neg = "") { return {parse_atom_list(pos), parse_atom_list(neg)}; }

bool entails(const Formula& a, const Formula& b, const std::vector<Atom>& atoms) {
  std::uint64_t ta = testgen::truth_table(a, atoms), tb = testgen::truth_table(b, atoms);
  return (ta & ~tb) == 0;
}

}  // namespace

TEST_CASE("classical_post_interpolant examples") {
  CHECK(classical_post_interpolant(f("p & q"), forbid("q")) == f("p"));
  CHECK(classical_post_interpolant(f("p"), forbid("p")).is_top());
  CHECK(classical_post_interpolant(f("false"), forbid("p", "q")).is_bot());
  CHECK(classical_post_interpolant(f("q{box p} & q{box q}"), forbid("")) == f("q{box p} & q{box q}"));
  CHECK_THROWS_AS(classical_post_interpolant(f("box p"), forbid("")), std::invalid_argument);
}

TEST_CASE("safety examples") {
  Safety a = safety(f("box q"), forbid("q"));
  CHECK_FALSE(a.plus_safe);
  CHECK(a.minus_safe);
  Safety b = safety(f("false"), forbid("p,q", "p,q"));
  CHECK(b.plus_safe);
  CHECK(b.minus_safe);
  Safety c = safety(f("~q"), forbid("q"));
  CHECK(c.plus_safe);
  CHECK_FALSE(c.minus_safe);
}

TEST_CASE("entailed clauses are canonical and minimal") {
  std::vector<Clause> cs = entailed_clauses(f("(p | q) & (p | r) & s"), forbid(""));
  for (std::size_t i = 1; i < cs.size(); ++i) CHECK(cs[i - 1].size() <= cs[i].size());
  std::vector<Atom> atoms{Atom::base("p"), Atom::base("q"), Atom::base("r"), Atom::base("s")};
  for (const auto& c : cs) {
    CHECK(entails(f("(p | q) & (p | r) & s"), c.to_formula(), atoms));
    for (const auto& d : cs) {
      if (&c == &d) continue;
      // No clause is subsumed by another one.
      bool sub = std::includes(c.pos.begin(), c.pos.end(), d.pos.begin(), d.pos.end()) &&
                 std::includes(c.neg.begin(), c.neg.end(), d.neg.begin(), d.neg.end());
      CHECK_FALSE(sub);
    }
  }
  CHECK(cs.size() == 3);
}

TEST_CASE("strongest consequence over allowed clauses") {
  testgen::FormulaGen gen(71, {"p", "q", "r"}, false);
  std::vector<Atom> atoms{Atom::base("p"), Atom::base("q"), Atom::base("r")};
  for (int i = 0; i < 300; ++i) {
    Formula phi = gen(4);
    ForbiddenSets fb;
    for (const auto& a : atoms) {
      if (gen.pick(3) == 0) fb.ppos.insert(a);
      if (gen.pick(3) == 0) fb.pneg.insert(a);
    }
    Formula chi = classical_post_interpolant(phi, fb);
    CHECK(entails(phi, chi, atoms));
    for (const auto& c : allowed_clauses(phi, fb)) {
      CHECK(entails(phi, c.to_formula(), atoms) == entails(chi, c.to_formula(), atoms));
    }
    // Dropping a literal over an atom outside phi keeps an entailed clause entailed.
    SignedVarSet v = signed_vars(phi);
    for (const auto& a : atoms) {
      if (v.all().count(a)) continue;
      for (const auto& c : allowed_clauses(phi, {})) {
        Formula wider = Formula::disj(c.to_formula(), Formula::var(a));
        if (entails(phi, wider, atoms)) CHECK(entails(phi, c.to_formula(), atoms));
      }
    }
  }
}

TEST_CASE("modal_post_interpolant examples") {
  LogicId a11 = LogicId::parse("NA(1,1)");
  Formula chi = modal_post_interpolant(f("box p & box q"), forbid("q"), a11);
  CHECK(chi == f("box p"));
  CHECK(verify_post_interpolant(f("box p & box q"), chi, forbid("q"), {f("box p"), f("box p | r"), f("true")}, a11).ok());
  CHECK(modal_post_interpolant(f("box p"), forbid(""), a11) == f("box p"));
  CHECK(modal_post_interpolant(f("p"), forbid("p"), a11).is_top());
}

TEST_CASE("verify_post_interpolant examples") {
  LogicId n = LogicId::parse("N");
  Report vacuous = verify_post_interpolant(f("p"), f("true"), forbid("p"), {f("p")}, n);
  CHECK(vacuous.ok());
  CHECK(vacuous.checks.back().detail == "0 tested");
  Report bad = verify_post_interpolant(f("p"), f("p"), forbid("p"), {}, n);
  CHECK_FALSE(bad.ok());
  CHECK(bad.failures()[0].name == "1. V+(chi) within V+(phi) - P+");
}

TEST_CASE("modal pipeline across the grid") {
  testgen::FormulaGen gen(72);
  for (const LogicId& logic : testgen::grid()) {
    Translator tr(logic);
    for (int i = 0; i < 12; ++i) {
      Formula phi = gen(3);
      ForbiddenSets fb;
      for (const char* a : {"p", "q", "r"}) {
        if (gen.pick(3) == 0) fb.ppos.insert(Atom::base(a));
        if (gen.pick(3) == 0) fb.pneg.insert(Atom::base(a));
      }
      Formula chi = modal_post_interpolant(phi, fb, tr);
      std::vector<Formula> pool;
      const Formula fl = tr.flat(phi);
      for (const auto& c : allowed_clauses(fl, quote_forbidden(fl, fb), 300)) pool.push_back(std_subst(c.to_formula()));
      for (const auto& c : allowed_clauses(phi, fb, 300)) pool.push_back(c.to_formula());
      Report r = verify_post_interpolant(phi, chi, fb, pool, tr.prover());
      CHECK_MESSAGE(r.ok(), r.to_text());
    }
  }
}

TEST_CASE("atom lists") {
  CHECK(parse_atom_list("").empty());
  CHECK(parse_atom_list("p, q,p").size() == 2);
  CHECK_THROWS(parse_atom_list("p,,Q"));
}
