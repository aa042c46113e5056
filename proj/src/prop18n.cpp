#include "nmodal/prop18n.hpp"

#include <algorithm>

namespace nmodal {

Translator::Translator(LogicId logic, std::size_t budget) : logic_(logic), prover_(logic, budget) {}

Formula Translator::sharp(const Formula& f) {
  if (auto it = sharp_.find(f); it != sharp_.end()) return it->second;
  Formula out = f;
  switch (f.kind()) {
    case FormulaKind::Bot:
      break;
    case FormulaKind::Var:
      if (f.atom().is_quote()) throw std::invalid_argument("translation input contains a quote atom: " + to_string(f));
      break;
    case FormulaKind::And:
      out = Formula::conj(sharp(f.lhs()), sharp(f.rhs()));
      break;
    case FormulaKind::Or:
      out = Formula::disj(sharp(f.lhs()), sharp(f.rhs()));
      break;
    case FormulaKind::Imp:
      out = Formula::imp(flat(f.lhs()), sharp(f.rhs()));
      break;
    case FormulaKind::Box:
      out = sharp_box(f);
      break;
  }
  sharp_.emplace(f, out);
  return out;
}

Formula Translator::flat(const Formula& f) {
  if (auto it = flat_.find(f); it != flat_.end()) return it->second;
  Formula out = f;
  switch (f.kind()) {
    case FormulaKind::Bot:
      break;
    case FormulaKind::Var:
      if (f.atom().is_quote()) throw std::invalid_argument("translation input contains a quote atom: " + to_string(f));
      break;
    case FormulaKind::And:
      out = Formula::conj(flat(f.lhs()), flat(f.rhs()));
      break;
    case FormulaKind::Or:
      out = Formula::disj(flat(f.lhs()), flat(f.rhs()));
      break;
    case FormulaKind::Imp:
      out = Formula::imp(sharp(f.lhs()), flat(f.rhs()));
      break;
    case FormulaKind::Box:
      out = flat_box(f);
      break;
  }
  flat_.emplace(f, out);
  return out;
}

Formula Translator::sharp_box(const Formula& f) {
  auto [k, core] = box_decompose(f);
  if (prover_.provable(Sequent({}, {Formula::box(core, k - 1)}))) return Formula::top();
  const unsigned m = logic_.m, n = logic_.n;
  if (k >= m && m > n) return Formula::disj(Formula::quote(f), sharp(Formula::box(core, k - m + n)));
  return Formula::quote(f);
}

Formula Translator::flat_box(const Formula& f) {
  auto [k, core] = box_decompose(f);
  if (condition_c(k, core)) return Formula::bot();
  const unsigned m = logic_.m, n = logic_.n;
  if (k >= n && n > m) return Formula::conj(Formula::quote(f), flat(Formula::box(core, k - n + m)));
  return Formula::quote(f);
}

bool Translator::refutable_below(unsigned k, const Formula& core) {
  return prover_.provable(Sequent({Formula::box(core, k - 1)}, {}));
}

bool Translator::condition_c(unsigned k, const Formula& core) {
  if (logic_.variant == Variant::Plus && logic_.m == 0 && logic_.n >= 2 && k >= 2) return refutable_below(k, core);
  if (logic_.variant == Variant::R) return refutable_below(k, core);
  return false;
}

Sequent Translator::translate(const Sequent& s) {
  std::vector<Formula> a, b;
  for (const auto& f : s.ante()) a.push_back(flat(f));
  for (const auto& f : s.succ()) b.push_back(sharp(f));
  return Sequent(std::move(a), std::move(b));
}

Formula sharp(const Formula& f, const LogicId& logic) {
  Translator tr(logic);
  return tr.sharp(f);
}

Formula flat(const Formula& f, const LogicId& logic) {
  Translator tr(logic);
  return tr.flat(f);
}

Formula std_subst(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Bot:
      return f;
    case FormulaKind::Var:
      return f.atom().is_quote() ? f.atom().payload() : f;
    case FormulaKind::And:
      return Formula::conj(std_subst(f.lhs()), std_subst(f.rhs()));
    case FormulaKind::Or:
      return Formula::disj(std_subst(f.lhs()), std_subst(f.rhs()));
    case FormulaKind::Imp:
      return Formula::imp(std_subst(f.lhs()), std_subst(f.rhs()));
    case FormulaKind::Box:
      return Formula::box(std_subst(f.body()));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Emulation

namespace {

Proof make_cut(const Proof& left, const Proof& right, const Formula& phi) {
  const Sequent& l = left->conclusion;
  const Sequent& r = right->conclusion;
  ProofAux aux;
  aux.left_ante = l.ante();
  aux.left_succ = set_minus(l.succ(), {phi});
  Sequent concl(set_union(l.ante(), set_minus(r.ante(), {phi})), set_union(aux.left_succ, r.succ()));
  return make_proof(std::move(concl), Rule::Cut, phi, {left, right}, std::move(aux));
}

Proof prove_top() {
  const Formula bot = Formula::bot();
  return make_proof(Sequent({}, {Formula::top()}), Rule::ImpR, Formula::top(), {make_proof(Sequent({bot}, {bot}), Rule::Init, bot, {})});
}

class Emulator {
 public:
  explicit Emulator(Translator& tr) : tr_(tr), lk_(LogicId{}) {}

  Proof run(const Proof& p) {
    if (auto it = memo_.find(p.get()); it != memo_.end()) return it->second;
    Proof out = compute(p);
    memo_.emplace(p.get(), out);
    keep_.push_back(p);
    return out;
  }

 private:
  Proof compute(const Proof& p) {
    const Sequent target = tr_.translate(p->conclusion);
    switch (p->rule) {
      case Rule::Init: {
        Proof q = lk_.prove(target);
        if (!q) throw std::logic_error("emulate: flat does not entail sharp for " + to_string(p->conclusion));
        return q;
      }
      case Rule::InitBot:
        return make_proof(target, Rule::InitBot, std::nullopt, {});
      case Rule::Nec:
        if (!(target == Sequent({}, {Formula::top()}))) {
          throw std::logic_error("emulate: nec conclusion does not translate to => true");
        }
        return prove_top();
      case Rule::Ros:
      case Rule::RosBox:
        if (!(target == Sequent({Formula::bot()}, {}))) {
          throw std::logic_error("emulate: " + std::string(rule_name(p->rule)) + " conclusion does not translate to false =>");
        }
        return make_proof(target, Rule::InitBot, std::nullopt, {});
      case Rule::AccL:
        return acc_left(p, target);
      case Rule::AccR:
        return acc_right(p, target);
      case Rule::Cut:
        throw std::invalid_argument("emulate: proof contains cut");
      case Rule::Unknown:
        throw std::invalid_argument("emulate: unknown rule");
      default:
        break;
    }
    // LK rules carry over memberwise.
    std::vector<Proof> prem;
    for (const auto& q : p->premises) prem.push_back(run(q));
    const Formula a = *p->principal;
    const bool left = p->rule == Rule::AndL || p->rule == Rule::OrL || p->rule == Rule::ImpL || p->rule == Rule::WeakenL;
    ProofAux aux;
    aux.index = p->aux.index;
    if (p->rule == Rule::ImpL) {
      for (const auto& f : p->aux.left_ante) aux.left_ante.push_back(tr_.flat(f));
      for (const auto& f : p->aux.left_succ) aux.left_succ.push_back(tr_.sharp(f));
      aux.left_ante = make_set(aux.left_ante);
      aux.left_succ = make_set(aux.left_succ);
    }
    return make_proof(target, p->rule, left ? tr_.flat(a) : tr_.sharp(a), std::move(prem), std::move(aux));
  }

  Proof acc_left(const Proof& p, const Sequent& target) {
    const Formula a = *p->principal;
    const LogicId& lg = tr_.logic();
    const Formula af = tr_.flat(a);
    if (af.is_bot()) return weaken_to(make_proof(Sequent({af}, {}), Rule::InitBot, std::nullopt, {}), target);
    const Formula gf = tr_.flat(Formula::box(unbox(a, lg.n), lg.m));
    if (af.kind() != FormulaKind::And || !(af.rhs() == gf)) throw std::logic_error("emulate: unexpected flat form " + to_string(af));
    ProofAux second;
    second.index = 2;
    Proof left = make_proof(Sequent({af}, {gf}), Rule::AndL, af, {make_proof(Sequent({gf}, {gf}), Rule::Init, gf, {})}, second);
    return weaken_to(make_cut(left, run(p->premises[0]), gf), target);
  }

  Proof acc_right(const Proof& p, const Sequent& target) {
    const Formula a = *p->principal;
    const LogicId& lg = tr_.logic();
    const Formula as = tr_.sharp(a);
    if (as.is_top()) return weaken_to(prove_top(), target);
    const Formula gs = tr_.sharp(Formula::box(unbox(a, lg.m), lg.n));
    if (as.kind() != FormulaKind::Or || !(as.rhs() == gs)) throw std::logic_error("emulate: unexpected sharp form " + to_string(as));
    ProofAux second;
    second.index = 2;
    Proof right = make_proof(Sequent({gs}, {as}), Rule::OrR, as, {make_proof(Sequent({gs}, {gs}), Rule::Init, gs, {})}, second);
    return weaken_to(make_cut(run(p->premises[0]), right, gs), target);
  }

  Translator& tr_;
  Prover lk_;
  std::unordered_map<const ProofNode*, Proof> memo_;
  std::vector<Proof> keep_;
};

}  // namespace

Proof emulate(const Proof& proof, Translator& tr) {
  if (!is_cut_free(proof)) throw std::invalid_argument("emulate: proof contains cut");
  if (auto res = check_proof(proof, tr.logic()); !res) throw std::invalid_argument("emulate: invalid proof: " + res.detail);
  Emulator e(tr);
  return e.run(proof);
}

Proof emulate(const Proof& proof, const LogicId& logic) {
  Translator tr(logic);
  return emulate(proof, tr);
}

// ---------------------------------------------------------------------------
// Verification

namespace {

bool within(const AtomSet& a, const AtomSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// Condition (3) for one translation of phi; returns an empty string on success.
std::string variable_condition(const Formula& phi, const Formula& translated) {
  const SignedVarSet v = signed_vars(phi);
  const SignedVarSet t = signed_vars(translated);
  for (int pol = 0; pol < 2; ++pol) {
    const AtomSet& atoms = pol == 0 ? t.pos : t.neg;
    const AtomSet& same = pol == 0 ? v.pos : v.neg;
    for (const auto& a : atoms) {
      if (!a.is_quote()) {
        if (!same.count(a)) return "base atom " + to_string(a) + " has the wrong polarity";
        continue;
      }
      SignedVarSet w = signed_vars(a.payload());
      const AtomSet& bullet = pol == 0 ? w.pos : w.neg;
      const AtomSet& circ = pol == 0 ? w.neg : w.pos;
      if (!within(bullet, v.pos) || !within(circ, v.neg)) return "quote atom " + to_string(a) + " escapes V(phi)";
    }
  }
  return {};
}

}  // namespace

Report verify_propositionalization(const std::vector<Formula>& formulas,
                                   const std::vector<std::pair<Formula, Formula>>& pairs, Translator& tr) {
  Report r;
  r.header = "propositionalization checks in " + tr.logic().to_string();
  Prover& pr = tr.prover();
  for (const auto& phi : formulas) {
    const std::string name = to_string(phi);
    const Formula s = tr.sharp(phi), f = tr.flat(phi);
    r.add("(1) S(sharp) -> phi: " + name, pr.provable(Sequent({std_subst(s)}, {phi})));
    r.add("(1) phi -> S(flat): " + name, pr.provable(Sequent({phi}, {std_subst(f)})));
    std::string e1 = variable_condition(phi, s), e2 = variable_condition(phi, f);
    r.add("(3) variables of sharp: " + name, e1.empty(), e1);
    r.add("(3) variables of flat: " + name, e2.empty(), e2);
    r.add("flat -> sharp: " + name, decide_classical(Sequent({f}, {s})));
  }
  for (const auto& [phi, psi] : pairs) {
    if (!pr.provable(Sequent({phi}, {psi}))) continue;
    r.add("(2) flat(phi) -> sharp(psi): " + to_string(phi) + " ; " + to_string(psi),
          decide_classical(Sequent({tr.flat(phi)}, {tr.sharp(psi)})));
  }
  return r;
}

Report verify_propositionalization(const std::vector<Formula>& formulas,
                                   const std::vector<std::pair<Formula, Formula>>& pairs, const LogicId& logic) {
  Translator tr(logic);
  return verify_propositionalization(formulas, pairs, tr);
}

}  // namespace nmodal
