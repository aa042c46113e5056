#include <doctest.h>

#include "nmodal/calculus.hpp"
#include "nmodal/proof_json.hpp"
#include "nmodal/prover.hpp"
#include "support/generators.hpp"

using namespace nmodal;

namespace {

Formula f(const char* text) { return parse_formula(text); }

RuleSet with(std::initializer_list<Rule> extra) {
  RuleSet r = lk_rules();
  for (Rule x : extra) r.insert(x);
  return r;
}

Proof init(const char* text) {
  Formula a = f(text);
  return make_proof(Sequent({a}, {a}), Rule::Init, a, {});
}

}  // namespace

TEST_CASE("logic spec strings") {
  CHECK(LogicId::parse("NA(2,1)") == LogicId{Variant::Plain, 2, 1});
  CHECK(LogicId::parse("N+A(0,2)") == LogicId{Variant::Plus, 0, 2});
  CHECK(LogicId::parse(" NRA( 1 , 3 ) ") == LogicId{Variant::R, 1, 3});
  CHECK(LogicId::parse("N") == LogicId{Variant::Plain, 0, 0});
  CHECK(LogicId::parse("N+A(0,2)").to_string() == "N+A(0,2)");
  CHECK_THROWS_AS(LogicId::parse("NB(1,1)"), std::invalid_argument);
  CHECK_THROWS_AS(LogicId::parse("NA(1)"), std::invalid_argument);
}

TEST_CASE("rule_set examples") {
  CHECK(rule_set(LogicId::parse("NA(2,1)")) == with({Rule::Nec, Rule::AccR}));
  CHECK(rule_set(LogicId::parse("N+A(0,2)")) == with({Rule::Nec, Rule::AccL, Rule::RosBox}));
  CHECK(rule_set(LogicId::parse("NA(1,1)")) == with({Rule::Nec}));
  CHECK(rule_set(LogicId::parse("N+A(1,3)")) == rule_set(LogicId::parse("NA(1,3)")));
  CHECK(rule_set(LogicId::parse("N+A(0,1)")) == rule_set(LogicId::parse("NA(0,1)")));
  CHECK(rule_set(LogicId::parse("NRA(0,0)")) == with({Rule::Nec, Rule::Ros}));
  CHECK(rule_set(LogicId::parse("NA(0,0)")).contains(Rule::Cut));
}

TEST_CASE("sequents are sets") {
  Sequent a({f("p"), f("q"), f("p")}, {f("r"), f("r")});
  Sequent b({f("q"), f("p")}, {f("r")});
  CHECK(a == b);
  CHECK(a.size() == 3);
  CHECK(parse_sequent("p, q, p => r") == b);
  CHECK(parse_sequent("=>").empty());
  CHECK(to_string(parse_sequent("box p => box box p")) == "box p => box box p");
}

TEST_CASE("partition enumeration") {
  CHECK(enumerate_partitions(parse_sequent("p => p")).size() == 4);
  CHECK(enumerate_partitions(parse_sequent("=>")).size() == 1);
  CHECK(enumerate_partitions(parse_sequent("p, q =>")).size() == 4);
  Partition only = enumerate_partitions(parse_sequent("=>"))[0];
  CHECK(only.left.empty());
  CHECK(only.right.empty());

  Sequent s = parse_sequent("p, q => r, box p");
  auto parts = enumerate_partitions(s);
  REQUIRE(parts.size() == 16);
  std::set<std::string> seen;
  for (std::uint64_t i = 0; i < parts.size(); ++i) {
    Partition part = parts[i];
    CHECK(part.valid());
    CHECK(part.of == s);
    CHECK(part.left.join(part.right) == s);
    seen.insert(to_string(part.left) + " | " + to_string(part.right));
  }
  CHECK(seen.size() == 16);
  // Documented order: index 0 puts everything on the left; bit 0 is the first antecedent formula.
  CHECK(parts[0].right.empty());
  CHECK(parts[15].left.empty());
  CHECK(parts[1].right == parse_sequent("p =>"));
}

TEST_CASE("check_proof examples") {
  LogicId na21 = LogicId::parse("NA(2,1)");
  CHECK(check_proof(init("p"), na21).valid());

  Proof bad_leaf = make_proof(parse_sequent("=> p"), Rule::Init, f("p"), {});
  Proof nec = make_proof(parse_sequent("=> box p"), Rule::Nec, f("box p"), {bad_leaf});
  CheckResult r = check_proof(nec, na21);
  CHECK_FALSE(r.valid());
  CHECK(r.path == std::vector<std::size_t>{0});

  // accL: box^n phi, G => D from box^m phi, box^n phi, G => D; inactive when m > n.
  Proof prem = make_proof(parse_sequent("box box p, box p => box box p"), Rule::WeakenL, f("box p"), {init("box box p")});
  Proof acc = make_proof(parse_sequent("box p => box box p"), Rule::AccL, f("box p"), {prem});
  CheckResult inactive = check_proof(acc, na21);
  CHECK(inactive.error == CheckError::InactiveRule);
}

TEST_CASE("check_proof: strict initial sequents and splits") {
  LogicId n = LogicId::parse("N");
  CHECK_FALSE(check_proof(make_proof(parse_sequent("p, q => p"), Rule::Init, f("p"), {}), n).valid());
  CHECK(check_proof(make_proof(parse_sequent("false =>"), Rule::InitBot, f("false"), {}), n).valid());
  CHECK_FALSE(check_proof(make_proof(parse_sequent("false => p"), Rule::InitBot, f("false"), {}), n).valid());

  // impL with an explicit split: p -> q, p => q.
  ProofAux aux;
  aux.left_ante = {f("p")};
  aux.left_succ = {};
  Proof imp = make_proof(parse_sequent("p -> q, p => q"), Rule::ImpL, f("p -> q"), {init("p"), init("q")}, aux);
  CHECK(check_proof(imp, n).valid());
  ProofAux wrong = aux;
  wrong.left_ante = {f("q")};
  CHECK_FALSE(check_proof(make_proof(imp->conclusion, Rule::ImpL, f("p -> q"), {init("p"), init("q")}, wrong), n).valid());

  Proof unknown = make_proof(parse_sequent("p => p"), Rule::Unknown, std::nullopt, {});
  CHECK(check_proof(unknown, n).error == CheckError::UnknownRule);
  Proof count = make_proof(parse_sequent("p => p, q"), Rule::WeakenR, f("q"), {});
  CHECK(check_proof(count, n).error == CheckError::PremiseCount);
  // A no-op weakening is a legal instance.
  CHECK(check_proof(make_proof(parse_sequent("p => p"), Rule::WeakenL, f("p"), {init("p")}), n).valid());
}

TEST_CASE("check_proof is local: single-node mutations are rejected") {
  testgen::FormulaGen gen(21);
  int mutated = 0;
  for (const LogicId& logic : testgen::grid()) {
    Prover prover(logic);
    for (int i = 0; i < 40; ++i) {
      Proof p = prover.prove(gen.sequent(3));
      if (!p || p->premises.empty()) continue;
      // Swap the rule tag of the root for another rule.
      Rule other = p->rule == Rule::WeakenL ? Rule::WeakenR : Rule::WeakenL;
      CHECK_FALSE(check_proof(make_proof(p->conclusion, other, p->principal, p->premises, p->aux), logic).valid());
      // Drop a formula from the conclusion of the first premise.
      const Proof& q = p->premises[0];
      Sequent shrunk = q->conclusion.succ().empty()
                           ? (q->conclusion.ante().empty() ? q->conclusion
                                                           : q->conclusion.remove_ante(q->conclusion.ante()[0]))
                           : q->conclusion.remove_succ(q->conclusion.succ()[0]);
      if (shrunk == q->conclusion) continue;
      std::vector<Proof> prem = p->premises;
      prem[0] = make_proof(shrunk, q->rule, q->principal, q->premises, q->aux);
      CheckResult r = check_proof(make_proof(p->conclusion, p->rule, p->principal, prem, p->aux), logic);
      CHECK_FALSE(r.valid());
      ++mutated;
    }
  }
  CHECK(mutated > 100);
}

TEST_CASE("no structurally generated proof of the empty sequent checks") {
  testgen::FormulaGen gen(22);
  const std::vector<Rule> rules = {Rule::Init,  Rule::InitBot, Rule::AndL, Rule::AndR, Rule::OrL,    Rule::OrR,
                                   Rule::ImpL,  Rule::ImpR,    Rule::WeakenL, Rule::WeakenR, Rule::Cut, Rule::Nec,
                                   Rule::AccL,  Rule::AccR,    Rule::RosBox, Rule::Ros};
  std::function<Proof(const Sequent&, int)> tree = [&](const Sequent& s, int depth) -> Proof {
    Rule r = rules[gen.pick(rules.size())];
    std::vector<Proof> prem;
    const unsigned k = depth <= 0 ? 0 : gen.pick(3);
    for (unsigned i = 0; i < k; ++i) {
      // Premises: the conclusion plus or minus a random formula.
      Formula a = gen(2);
      Sequent next = gen.pick(2) ? s.add_ante(a) : s.add_succ(a);
      prem.push_back(tree(next, depth - 1));
    }
    ProofAux aux;
    aux.index = 1 + gen.pick(2);
    aux.left_ante = s.ante();
    aux.left_succ = s.succ();
    std::optional<Formula> principal;
    if (gen.pick(4)) principal = gen(2);
    return make_proof(s, r, principal, prem, aux);
  };
  for (const LogicId& logic : testgen::grid()) {
    for (int i = 0; i < 200; ++i) CHECK_FALSE(check_proof(tree(Sequent(), 3), logic).valid());
  }
}

TEST_CASE("proof JSON round trip") {
  testgen::FormulaGen gen(23);
  int n = 0;
  for (const LogicId& logic : testgen::grid()) {
    Prover prover(logic);
    for (int i = 0; i < 20; ++i) {
      Proof p = prover.prove(gen.sequent(3));
      if (!p) continue;
      nlohmann::json j = proof_to_json(p);
      Proof back = proof_from_json(nlohmann::json::parse(j.dump()));
      CHECK(proof_to_json(back) == j);
      CHECK(check_proof(back, logic).valid());
      ++n;
    }
  }
  CHECK(n > 50);
  nlohmann::json leaf = {{"sequent", {{"ante", {"p"}}, {"succ", {"p"}}}}, {"rule", "init"}, {"premises", nlohmann::json::array()}};
  CHECK(check_proof(proof_from_json(leaf), LogicId::parse("N")).valid());
  leaf["rule"] = "frobnicate";
  CHECK(check_proof(proof_from_json(leaf), LogicId::parse("N")).error == CheckError::UnknownRule);
  CHECK_THROWS_AS(proof_from_json(nlohmann::json{{"rule", "init"}}), ProofFormatError);
}
