#include "nmodal/interp.hpp"

#include <algorithm>
#include <unordered_map>

namespace nmodal {

Formula simplify_constants(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::And: {
      Formula a = simplify_constants(f.lhs()), b = simplify_constants(f.rhs());
      if (a.is_bot() || b.is_bot()) return Formula::bot();
      if (a.is_top()) return b;
      if (b.is_top() || a == b) return a;
      return Formula::conj(a, b);
    }
    case FormulaKind::Or: {
      Formula a = simplify_constants(f.lhs()), b = simplify_constants(f.rhs());
      if (a.is_top() || b.is_top()) return Formula::top();
      if (a.is_bot()) return b;
      if (b.is_bot() || a == b) return a;
      return Formula::disj(a, b);
    }
    case FormulaKind::Imp: {
      if (f.is_top()) return f;
      Formula a = simplify_constants(f.lhs()), b = simplify_constants(f.rhs());
      if (a.is_bot() || b.is_top()) return Formula::top();
      if (a.is_top()) return b;
      return Formula::imp(a, b);
    }
    default:
      return f;
  }
}

SignedVarSet sequent_signed_vars(const Sequent& s) {
  SignedVarSet out;
  for (const auto& f : s.ante()) collect_signed_vars(f, false, out);
  for (const auto& f : s.succ()) collect_signed_vars(f, true, out);
  return out;
}

namespace {

bool principal_in_ante(Rule r) {
  return r == Rule::AndL || r == Rule::OrL || r == Rule::ImpL || r == Rule::AccL || r == Rule::WeakenL ||
         r == Rule::Ros || r == Rule::RosBox;
}

Formula disj(const Formula& a, const Formula& b) {
  if (a.is_bot()) return b;
  if (b.is_bot() || a == b) return a;
  if (a.is_top() || b.is_top()) return Formula::top();
  return Formula::disj(a, b);
}

Formula conj(const Formula& a, const Formula& b) {
  if (a.is_top()) return b;
  if (b.is_top() || a == b) return a;
  if (a.is_bot() || b.is_bot()) return Formula::bot();
  return Formula::conj(a, b);
}

struct Key {
  const ProofNode* node;
  Sequent side1;
  bool operator==(const Key&) const = default;
};
struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept { return std::hash<const void*>()(k.node) ^ (k.side1.hash() * 31); }
};

class Maehara {
 public:
  // side1 is the G1 => D1 part; the rest of the conclusion is side 2.
  Formula run(const Proof& p, const Sequent& side1) {
    Key key{p.get(), side1};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Formula chi = compute(p, side1);
    memo_.emplace(std::move(key), chi);
    return chi;
  }

 private:
  Formula compute(const Proof& p, const Sequent& side1) {
    const Sequent& c = p->conclusion;
    switch (p->rule) {
      case Rule::Init: {
        const Formula f = c.ante()[0];
        bool left_ante = side1.in_ante(f), left_succ = side1.in_succ(f);
        if (left_ante && left_succ) return Formula::bot();
        if (!left_ante && !left_succ) return Formula::top();
        return left_ante ? f : Formula::neg(f);
      }
      case Rule::InitBot:
        return side1.in_ante(Formula::bot()) ? Formula::bot() : Formula::top();
      case Rule::Nec:
        return side1.in_succ(*p->principal) ? Formula::bot() : Formula::top();
      case Rule::Ros:
      case Rule::RosBox:
        return side1.in_ante(*p->principal) ? Formula::bot() : Formula::top();
      case Rule::Cut:
        throw std::invalid_argument("maehara: proof contains cut");
      case Rule::Unknown:
        throw std::invalid_argument("maehara: unknown rule");
      default:
        break;
    }
    const Formula a = *p->principal;
    const bool principal_left = principal_in_ante(p->rule) ? side1.in_ante(a) : side1.in_succ(a);
    std::vector<Formula> sub;
    for (const auto& q : p->premises) {
      // Premise formulas keep their conclusion side; new components follow
      // the principal formula.
      std::vector<Formula> ante, succ;
      for (const auto& f : q->conclusion.ante()) {
        if (c.in_ante(f) ? side1.in_ante(f) : principal_left) ante.push_back(f);
      }
      for (const auto& f : q->conclusion.succ()) {
        if (c.in_succ(f) ? side1.in_succ(f) : principal_left) succ.push_back(f);
      }
      sub.push_back(run(q, Sequent(std::move(ante), std::move(succ))));
    }
    if (sub.size() == 1) return sub[0];
    // Two premises: principal on side 1 -> disjunction, on side 2 -> conjunction.
    return principal_left ? disj(sub[0], sub[1]) : conj(sub[0], sub[1]);
  }

  std::unordered_map<Key, Formula, KeyHash> memo_;
};

std::string atoms_text(const AtomSet& s) {
  std::string out = "{";
  for (const auto& a : s) {
    if (out.size() > 1) out += ",";
    out += to_string(a);
  }
  return out + "}";
}

AtomSet intersect(const AtomSet& a, const AtomSet& b) {
  AtomSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

AtomSet unite(const AtomSet& a, const AtomSet& b) {
  AtomSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

bool within(const AtomSet& a, const AtomSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

void add_inclusion(Report& r, const std::string& name, const AtomSet& sub, const AtomSet& super) {
  r.add(name, within(sub, super), atoms_text(sub) + " vs " + atoms_text(super));
}

}  // namespace

Formula maehara(const Proof& proof, const Partition& part, const LogicId& logic) {
  if (!(part.of == proof->conclusion) || !part.valid()) {
    throw std::invalid_argument("maehara: not a partition of " + to_string(proof->conclusion));
  }
  if (!is_cut_free(proof)) throw std::invalid_argument("maehara: proof contains cut");
  if (auto res = check_proof(proof, logic); !res) throw std::invalid_argument("maehara: invalid proof: " + res.detail);
  Maehara m;
  return m.run(proof, part.left);
}

Formula lyndon_interpolant(const Formula& phi, const Formula& psi, Prover& prover) {
  Sequent s({phi}, {psi});
  Proof p = prover.prove(s);
  if (!p) throw NotProvable(to_string(phi) + " -> " + to_string(psi) + " is not provable in " + prover.logic().to_string());
  return maehara(p, Partition{Sequent({phi}, {}), Sequent({}, {psi}), s}, prover.logic());
}

Formula lyndon_interpolant(const Formula& phi, const Formula& psi, const LogicId& logic) {
  Prover prover(logic);
  return lyndon_interpolant(phi, psi, prover);
}

Report verify_partition_interpolant(const Partition& part, const Formula& chi, Prover& prover) {
  Report r;
  r.header = "interpolant " + to_string(chi) + " for " + to_string(part.left) + " ; " + to_string(part.right);
  r.add("(a) G1 => D1, chi", prover.provable(part.left.add_succ(chi)));
  r.add("(b) chi, G2 => D2", prover.provable(part.right.add_ante(chi)));
  SignedVarSet x = signed_vars(chi);
  SignedVarSet s1 = sequent_signed_vars(part.left);
  SignedVarSet s2 = sequent_signed_vars(part.right);
  add_inclusion(r, "(c) positive variables", x.pos, intersect(s1.neg, s2.pos));
  add_inclusion(r, "(d) negative variables", x.neg, intersect(s1.pos, s2.neg));
  return r;
}

Report verify_interpolant(const Formula& phi, const Formula& psi, const Formula& chi, Prover& prover,
                          InterpolationMode mode) {
  Report r;
  r.header = std::string(mode == InterpolationMode::Lyndon ? "lyndon" : "craig") + " interpolant " + to_string(chi) +
             " in " + prover.logic().to_string();
  r.add("|- phi -> chi", prover.provable(Sequent({phi}, {chi})));
  r.add("|- chi -> psi", prover.provable(Sequent({chi}, {psi})));
  SignedVarSet vp = signed_vars(phi), vq = signed_vars(psi), vx = signed_vars(chi);
  if (mode == InterpolationMode::Lyndon) {
    add_inclusion(r, "V+(chi) within V+(phi) n V+(psi)", vx.pos, intersect(vp.pos, vq.pos));
    add_inclusion(r, "V-(chi) within V-(phi) n V-(psi)", vx.neg, intersect(vp.neg, vq.neg));
  } else {
    add_inclusion(r, "V(chi) within V(phi) n V(psi)", unite(vx.pos, vx.neg),
                  intersect(unite(vp.pos, vp.neg), unite(vq.pos, vq.neg)));
  }
  return r;
}

Report verify_interpolant(const Formula& phi, const Formula& psi, const Formula& chi, const LogicId& logic,
                          InterpolationMode mode) {
  Prover prover(logic);
  return verify_interpolant(phi, psi, chi, prover, mode);
}

}  // namespace nmodal
