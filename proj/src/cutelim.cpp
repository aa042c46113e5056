#include "nmodal/cutelim.hpp"

#include <map>
#include <tuple>
#include <unordered_map>

namespace nmodal {

namespace {

bool right_principal(const ProofNode& p, const Formula& phi) {
  switch (p.rule) {
    case Rule::AndR:
    case Rule::OrR:
    case Rule::ImpR:
    case Rule::Nec:
    case Rule::AccR:
    case Rule::WeakenR:
      return p.principal && *p.principal == phi;
    default:
      return false;
  }
}

bool left_principal(const ProofNode& p, const Formula& phi) {
  switch (p.rule) {
    case Rule::AndL:
    case Rule::OrL:
    case Rule::ImpL:
    case Rule::AccL:
    case Rule::Ros:
    case Rule::RosBox:
    case Rule::WeakenL:
      return p.principal && *p.principal == phi;
    case Rule::InitBot:
      return phi.is_bot();
    default:
      return false;
  }
}

// Skips weakenings that do not change the sequent.
Proof skip_noop_weakening(Proof p) {
  while ((p->rule == Rule::WeakenL || p->rule == Rule::WeakenR) && p->premises.size() == 1 &&
         p->premises[0]->conclusion == p->conclusion) {
    p = p->premises[0];
  }
  return p;
}

Proof peel(const Proof& proof, Rule expected, unsigned times) {
  Proof p = proof;
  for (unsigned i = 0; i < times; ++i) {
    p = skip_noop_weakening(p);
    if (p->rule != expected) {
      throw InternalInconsistency("expected a " + std::string(rule_name(expected)) + " step at " + to_string(p->conclusion) +
                                  ", found " + std::string(rule_name(p->rule)));
    }
    p = p->premises[0];
  }
  return p;
}

struct Shape {
  FormulaSet consumed_ante, consumed_succ, required_ante, required_succ;
};

class Eliminator {
 public:
  explicit Eliminator(const LogicId& logic) : logic_(logic) {}

  Proof process(const Proof& p) {
    auto it = done_.find(p.get());
    if (it != done_.end()) return it->second;
    std::vector<Proof> prem;
    bool changed = false;
    for (const auto& q : p->premises) {
      prem.push_back(process(q));
      changed = changed || prem.back() != q;
    }
    Proof out;
    if (p->rule == Rule::Cut) {
      Proof r = mix(prem[0], prem[1], *p->principal);
      out = weaken_to(r, p->conclusion);
    } else if (!changed) {
      out = p;
    } else {
      out = make_proof(p->conclusion, p->rule, p->principal, std::move(prem), p->aux);
    }
    done_.emplace(p.get(), out);
    keep_.push_back(p);
    return out;
  }

 private:
  static Sequent mix_target(const Sequent& l, const Sequent& r, const Formula& phi) {
    return Sequent(set_union(l.ante(), set_minus(r.ante(), {phi})), set_union(set_minus(l.succ(), {phi}), r.succ()));
  }

  // Cut-free proof of a subsequent of
  //   L.ante u (R.ante - phi) => (L.succ - phi) u R.succ.
  Proof mix(const Proof& l, const Proof& r, const Formula& phi) {
    auto key = std::make_tuple(l.get(), r.get(), phi.node());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second.result;
    Proof res = mix_uncached(l, r, phi);
    const Sequent target = mix_target(l->conclusion, r->conclusion, phi);
    if (!res->conclusion.subset_of(target)) {
      throw InternalInconsistency("reduction overshot: " + to_string(res->conclusion) + " not within " + to_string(target));
    }
    if (res->conclusion.empty()) throw InternalInconsistency("reduction produced a proof of the empty sequent");
    memo_.emplace(key, Memo{l, r, res});
    return res;
  }

  Proof mix_uncached(const Proof& l, const Proof& r, const Formula& phi) {
    const Sequent& lc = l->conclusion;
    const Sequent& rc = r->conclusion;
    if (!lc.in_succ(phi)) return l;
    if (!rc.in_ante(phi)) return r;
    if (rc.in_succ(phi)) return l;
    if (lc.in_ante(phi)) return r;

    if (l->rule == Rule::WeakenL || l->rule == Rule::WeakenR) return mix(l->premises[0], r, phi);
    if (r->rule == Rule::WeakenL || r->rule == Rule::WeakenR) return mix(l, r->premises[0], phi);

    const Sequent target = mix_target(lc, rc, phi);
    if (!right_principal(*l, phi)) {
      std::vector<Proof> prem;
      for (const auto& q : l->premises) prem.push_back(q->conclusion.in_succ(phi) ? mix(q, r, phi) : q);
      return rebuild(*l, prem, target);
    }
    if (!left_principal(*r, phi)) {
      std::vector<Proof> prem;
      for (const auto& q : r->premises) prem.push_back(q->conclusion.in_ante(phi) ? mix(l, q, phi) : q);
      return rebuild(*r, prem, target);
    }
    return principal(l, r, phi, target);
  }

  Proof principal(const Proof& l, const Proof& r, const Formula& phi, const Sequent& target) {
    if (l->rule == Rule::Nec) {
      if (r->rule != Rule::AccL) {
        throw InternalInconsistency("nec against " + std::string(rule_name(r->rule)) + " on " + to_string(phi));
      }
      // The accL premise still holds phi; cut it away first, then cut the
      // lowered box against the formula accL introduced.
      Proof x = mix(l, r->premises[0], phi);
      Formula g = Formula::box(unbox(phi, logic_.n), logic_.m);
      if (!x->conclusion.in_ante(g)) return x;
      return mix(lower_box(l, logic_), x, g);
    }
    if (l->rule == Rule::AccR) {
      if (r->rule != Rule::Ros) {
        throw InternalInconsistency("accR against " + std::string(rule_name(r->rule)) + " on " + to_string(phi));
      }
      Proof x = mix(l->premises[0], r, phi);
      Formula g = Formula::box(unbox(phi, logic_.m), logic_.n);
      if (!x->conclusion.in_succ(g)) return x;
      return mix(x, peel(r, Rule::Ros, logic_.m - logic_.n), g);
    }

    // Propositional pair: first remove phi from the premises of both sides.
    std::vector<Proof> lp, rp;
    for (const auto& q : l->premises) lp.push_back(q->conclusion.in_succ(phi) ? mix(q, r, phi) : q);
    for (const auto& q : r->premises) rp.push_back(q->conclusion.in_ante(phi) ? mix(l, q, phi) : q);
    Proof lf = rebuild(*l, lp, target.add_succ(phi));
    if (!lf->conclusion.in_succ(phi)) return lf;
    Proof rf = rebuild(*r, rp, target.add_ante(phi));
    if (!rf->conclusion.in_ante(phi)) return rf;

    if (lf->rule == Rule::AndR && rf->rule == Rule::AndL) {
      unsigned i = rf->aux.index;
      return mix(lf->premises[i - 1], rf->premises[0], i == 1 ? phi.lhs() : phi.rhs());
    }
    if (lf->rule == Rule::OrR && rf->rule == Rule::OrL) {
      unsigned i = lf->aux.index;
      return mix(lf->premises[0], rf->premises[i - 1], i == 1 ? phi.lhs() : phi.rhs());
    }
    if (lf->rule == Rule::ImpR && rf->rule == Rule::ImpL) {
      Proof x = mix(lf->premises[0], rf->premises[1], phi.rhs());
      return mix(rf->premises[0], x, phi.lhs());
    }
    throw InternalInconsistency("unexpected principal pair " + std::string(rule_name(l->rule)) + "/" +
                                std::string(rule_name(r->rule)) + " on " + to_string(phi));
  }

  Shape shape(const ProofNode& node, std::size_t i) const {
    const Formula a = *node.principal;
    Shape s;
    switch (node.rule) {
      case Rule::AndL:
        s.consumed_ante = {node.aux.index == 1 ? a.lhs() : a.rhs()};
        break;
      case Rule::OrR:
        s.consumed_succ = {node.aux.index == 1 ? a.lhs() : a.rhs()};
        break;
      case Rule::ImpR:
        s.consumed_ante = {a.lhs()};
        s.consumed_succ = {a.rhs()};
        break;
      case Rule::AndR:
        s.consumed_succ = {i == 0 ? a.lhs() : a.rhs()};
        break;
      case Rule::OrL:
        s.consumed_ante = {i == 0 ? a.lhs() : a.rhs()};
        break;
      case Rule::ImpL:
        if (i == 0) {
          s.consumed_succ = {a.lhs()};
        } else {
          s.consumed_ante = {a.rhs()};
        }
        break;
      case Rule::AccL:
        s.consumed_ante = {Formula::box(unbox(a, logic_.n), logic_.m)};
        s.required_ante = {a};
        break;
      case Rule::AccR:
        s.consumed_succ = {Formula::box(unbox(a, logic_.m), logic_.n)};
        s.required_succ = {a};
        break;
      case Rule::WeakenL:
      case Rule::WeakenR:
        break;
      default:
        throw InternalInconsistency("cannot permute a cut past " + std::string(rule_name(node.rule)));
    }
    return s;
  }

  static bool principal_on_left(Rule r) {
    return r == Rule::AndL || r == Rule::OrL || r == Rule::ImpL || r == Rule::AccL || r == Rule::WeakenL;
  }

  // Reapplies node's rule to new premises, weakening them to a common
  // context. Returns a premise directly when it already fits the target.
  Proof rebuild(const ProofNode& node, const std::vector<Proof>& prem, const Sequent& target) {
    for (const auto& q : prem) {
      if (q->conclusion.subset_of(target)) return q;
    }
    std::vector<Shape> shapes;
    FormulaSet xa, xs;
    for (std::size_t i = 0; i < prem.size(); ++i) {
      shapes.push_back(shape(node, i));
      xa = set_union(xa, set_minus(prem[i]->conclusion.ante(), shapes[i].consumed_ante));
      xs = set_union(xs, set_minus(prem[i]->conclusion.succ(), shapes[i].consumed_succ));
    }
    std::vector<Proof> weakened;
    for (std::size_t i = 0; i < prem.size(); ++i) {
      const Shape& s = shapes[i];
      Sequent want(set_union(set_union(xa, s.consumed_ante), s.required_ante),
                   set_union(set_union(xs, s.consumed_succ), s.required_succ));
      weakened.push_back(weaken_to(prem[i], want));
    }
    const Formula a = *node.principal;
    Sequent concl = principal_on_left(node.rule) ? Sequent(xa, xs).add_ante(a) : Sequent(xa, xs).add_succ(a);
    if (!concl.subset_of(target)) {
      throw InternalInconsistency("permuted " + std::string(rule_name(node.rule)) + " yields " + to_string(concl) +
                                  " outside " + to_string(target));
    }
    ProofAux aux;
    aux.index = node.aux.index;
    if (node.rule == Rule::ImpL) {
      aux.left_ante = xa;
      aux.left_succ = xs;
    }
    return make_proof(std::move(concl), node.rule, a, std::move(weakened), std::move(aux));
  }

  struct Memo {
    Proof l, r, result;
  };

  LogicId logic_;
  std::map<std::tuple<const ProofNode*, const ProofNode*, const detail::FormulaNode*>, Memo> memo_;
  std::unordered_map<const ProofNode*, Proof> done_;
  std::vector<Proof> keep_;
};

}  // namespace

Proof lower_box(const Proof& proof, const LogicId& logic) {
  if (logic.n <= logic.m) throw std::invalid_argument("lower_box: requires n > m");
  const Sequent& c = proof->conclusion;
  if (!c.ante().empty() || c.succ().size() != 1 || c.succ()[0].box_prefix() < logic.n) {
    throw std::invalid_argument("lower_box: conclusion must be => box^" + std::to_string(logic.n) + " psi, got " + to_string(c));
  }
  if (!is_cut_free(proof)) throw std::invalid_argument("lower_box: proof contains cut");
  return peel(proof, Rule::Nec, logic.n - logic.m);
}

Proof eliminate_cuts(const Proof& proof, const LogicId& logic) {
  if (auto res = check_proof(proof, logic); !res) {
    throw std::invalid_argument("eliminate_cuts: input proof is invalid: " + res.detail);
  }
  if (is_cut_free(proof)) return proof;
  Eliminator e(logic);
  Proof out = e.process(proof);
  if (!(out->conclusion == proof->conclusion) || !is_cut_free(out)) {
    throw InternalInconsistency("eliminate_cuts: output does not match the input end-sequent");
  }
  if (auto res = check_proof(out, logic); !res) {
    throw InternalInconsistency("eliminate_cuts: produced an invalid proof: " + res.detail);
  }
  return out;
}

}  // namespace nmodal
