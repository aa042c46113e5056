#include "nmodal/ulip.hpp"

#include <algorithm>
#include <unordered_map>

namespace nmodal {

AllowedLiterals allowed_literals(const Formula& phi, const ForbiddenSets& forbidden) {
  SignedVarSet v = signed_vars(phi);
  AllowedLiterals out;
  std::set_difference(v.pos.begin(), v.pos.end(), forbidden.ppos.begin(), forbidden.ppos.end(), std::back_inserter(out.pos));
  std::set_difference(v.neg.begin(), v.neg.end(), forbidden.pneg.begin(), forbidden.pneg.end(), std::back_inserter(out.neg));
  return out;
}

Formula Clause::to_formula() const {
  // Literals in canonical order: by atom, positive before negative.
  std::vector<std::pair<Atom, bool>> lits;
  for (const auto& a : pos) lits.emplace_back(a, false);
  for (const auto& a : neg) lits.emplace_back(a, true);
  std::sort(lits.begin(), lits.end());
  std::optional<Formula> out;
  for (const auto& [a, negated] : lits) {
    Formula l = negated ? Formula::neg(Formula::var(a)) : Formula::var(a);
    out = out ? Formula::disj(*out, l) : l;
  }
  return out.value_or(Formula::bot());
}

namespace {

void index_atoms(const Formula& f, std::unordered_map<const detail::FormulaNode*, unsigned>& idx) {
  switch (f.kind()) {
    case FormulaKind::Bot:
      return;
    case FormulaKind::Var:
      idx.emplace(f.node(), static_cast<unsigned>(idx.size()));
      return;
    case FormulaKind::Box:
      throw std::invalid_argument("classical engine: formula contains a box: " + to_string(f));
    default:
      index_atoms(f.lhs(), idx);
      index_atoms(f.rhs(), idx);
  }
}

bool eval(const Formula& f, const std::unordered_map<const detail::FormulaNode*, unsigned>& idx, std::uint64_t row) {
  switch (f.kind()) {
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Var:
      return row >> idx.at(f.node()) & 1;
    case FormulaKind::And:
      return eval(f.lhs(), idx, row) && eval(f.rhs(), idx, row);
    case FormulaKind::Or:
      return eval(f.lhs(), idx, row) || eval(f.rhs(), idx, row);
    case FormulaKind::Imp:
      return !eval(f.lhs(), idx, row) || eval(f.rhs(), idx, row);
    default:
      throw std::invalid_argument("classical engine: formula contains a box");
  }
}

using Literal = std::pair<Atom, bool>;  // (atom, negated)

std::vector<Literal> literals_of(const Clause& c) {
  std::vector<Literal> out;
  for (const auto& a : c.pos) out.emplace_back(a, false);
  for (const auto& a : c.neg) out.emplace_back(a, true);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Clause> entailed_clauses(const Formula& phi, const ForbiddenSets& forbidden, std::size_t bound) {
  std::unordered_map<const detail::FormulaNode*, unsigned> idx;
  index_atoms(phi, idx);
  const AllowedLiterals allowed = allowed_literals(phi, forbidden);
  const std::size_t nlit = allowed.pos.size() + allowed.neg.size();
  if (nlit > bound) {
    throw ResourceLimit("classical engine: " + std::to_string(nlit) + " allowed literals exceed the bound of " +
                        std::to_string(bound));
  }
  if (idx.size() > 22) throw ResourceLimit("classical engine: more than 22 atoms");

  // Literal i of the mask: positives first, then negatives.
  std::vector<unsigned> lit_atom;
  for (const auto& a : allowed.pos) lit_atom.push_back(idx.at(Formula::var(a).node()));
  for (const auto& a : allowed.neg) lit_atom.push_back(idx.at(Formula::var(a).node()));
  const std::size_t npos = allowed.pos.size();

  // mark[c] = some model of phi falsifies every literal of c, i.e. phi does not entail c.
  const std::size_t space = std::size_t{1} << nlit;
  std::vector<char> mark(space, 0);
  const std::uint64_t rows = std::uint64_t{1} << idx.size();
  for (std::uint64_t row = 0; row < rows; ++row) {
    if (!eval(phi, idx, row)) continue;
    std::size_t falsified = 0;
    for (std::size_t i = 0; i < nlit; ++i) {
      bool value = row >> lit_atom[i] & 1;
      bool literal_true = i < npos ? value : !value;
      if (!literal_true) falsified |= std::size_t{1} << i;
    }
    mark[falsified] = 1;
  }
  for (std::size_t b = 0; b < nlit; ++b) {
    for (std::size_t c = 0; c < space; ++c) {
      if (c >> b & 1) mark[c ^ (std::size_t{1} << b)] |= mark[c];
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> complementary;
  for (std::size_t i = 0; i < npos; ++i) {
    for (std::size_t j = npos; j < nlit; ++j) {
      if (lit_atom[i] == lit_atom[j]) complementary.emplace_back(i, j);
    }
  }
  auto tautological = [&](std::size_t c) {
    return std::any_of(complementary.begin(), complementary.end(),
                       [&](const auto& p) { return (c >> p.first & 1) && (c >> p.second & 1); });
  };

  std::vector<Clause> out;
  for (std::size_t c = 0; c < space; ++c) {
    if (mark[c] || tautological(c)) continue;
    bool minimal = true;
    for (std::size_t b = 0; b < nlit && minimal; ++b) {
      if ((c >> b & 1) && !mark[c ^ (std::size_t{1} << b)]) minimal = false;
    }
    if (!minimal) continue;
    Clause cl;
    for (std::size_t i = 0; i < nlit; ++i) {
      if (!(c >> i & 1)) continue;
      if (i < npos) {
        cl.pos.push_back(allowed.pos[i]);
      } else {
        cl.neg.push_back(allowed.neg[i - npos]);
      }
    }
    out.push_back(std::move(cl));
  }
  std::sort(out.begin(), out.end(), [](const Clause& a, const Clause& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return literals_of(a) < literals_of(b);
  });
  return out;
}

Formula classical_post_interpolant(const Formula& phi, const ForbiddenSets& forbidden, std::size_t bound) {
  std::vector<Clause> clauses = entailed_clauses(phi, forbidden, bound);
  std::optional<Formula> out;
  for (const auto& c : clauses) {
    Formula f = c.to_formula();
    out = out ? Formula::conj(*out, f) : f;
  }
  return out.value_or(Formula::top());
}

std::vector<Clause> allowed_clauses(const Formula& phi, const ForbiddenSets& forbidden, std::size_t limit) {
  const AllowedLiterals allowed = allowed_literals(phi, forbidden);
  std::vector<std::pair<Atom, bool>> lits;
  for (const auto& a : allowed.pos) lits.emplace_back(a, false);
  for (const auto& a : allowed.neg) lits.emplace_back(a, true);
  std::vector<Clause> out;
  // Grow clauses by size so the shortest come first when truncating.
  std::vector<std::vector<std::size_t>> layer{{}};
  for (std::size_t len = 0; len <= lits.size() && !layer.empty(); ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& idx : layer) {
      Clause c;
      for (std::size_t i : idx) (lits[i].second ? c.neg : c.pos).push_back(lits[i].first);
      if (out.size() >= limit) return out;
      out.push_back(std::move(c));
      for (std::size_t j = idx.empty() ? 0 : idx.back() + 1; j < lits.size(); ++j) {
        bool clash = std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return lits[i].first == lits[j].first; });
        if (clash) continue;
        auto grown = idx;
        grown.push_back(j);
        next.push_back(std::move(grown));
      }
    }
    layer = std::move(next);
  }
  return out;
}

Safety safety(const Formula& psi, const ForbiddenSets& forbidden) {
  SignedVarSet v = signed_vars(psi);
  auto meets = [](const AtomSet& a, const AtomSet& b) {
    return std::any_of(a.begin(), a.end(), [&](const Atom& x) { return b.count(x) > 0; });
  };
  return {!meets(v.pos, forbidden.ppos) && !meets(v.neg, forbidden.pneg),
          !meets(v.neg, forbidden.ppos) && !meets(v.pos, forbidden.pneg)};
}

Formula modal_post_interpolant(const Formula& phi, const ForbiddenSets& forbidden, Translator& tr, std::size_t bound) {
  for (const auto* set : {&forbidden.ppos, &forbidden.pneg}) {
    for (const auto& a : *set) {
      if (a.is_quote()) throw std::invalid_argument("forbidden sets must contain base atoms only");
    }
  }
  if (contains_quote(phi)) throw std::invalid_argument("modal_post_interpolant: input contains a quote atom");
  const Formula fl = tr.flat(phi);
  return std_subst(classical_post_interpolant(fl, quote_forbidden(fl, forbidden), bound));
}

ForbiddenSets quote_forbidden(const Formula& flat_phi, const ForbiddenSets& forbidden) {
  ForbiddenSets q = forbidden;
  for (const auto& a : atoms_of(flat_phi)) {
    if (!a.is_quote()) continue;
    Safety s = safety(a.payload(), forbidden);
    if (!s.plus_safe) q.ppos.insert(a);
    if (!s.minus_safe) q.pneg.insert(a);
  }
  return q;
}

Formula modal_post_interpolant(const Formula& phi, const ForbiddenSets& forbidden, const LogicId& logic,
                               std::size_t bound) {
  Translator tr(logic);
  return modal_post_interpolant(phi, forbidden, tr, bound);
}

Report verify_post_interpolant(const Formula& phi, const Formula& chi, const ForbiddenSets& forbidden,
                               const std::vector<Formula>& psi_pool, Prover& prover) {
  Report r;
  r.header = "post-interpolant " + to_string(chi) + " in " + prover.logic().to_string() +
             " (condition 3 checked on the supplied pool only)";
  SignedVarSet vp = signed_vars(phi), vx = signed_vars(chi);
  auto inclusion = [&](const AtomSet& sub, const AtomSet& sup, const AtomSet& forbid) {
    std::string bad;
    for (const auto& a : sub) {
      if (!sup.count(a) || forbid.count(a)) bad += (bad.empty() ? "" : ",") + to_string(a);
    }
    return bad;
  };
  std::string bp = inclusion(vx.pos, vp.pos, forbidden.ppos);
  std::string bn = inclusion(vx.neg, vp.neg, forbidden.pneg);
  r.add("1. V+(chi) within V+(phi) - P+", bp.empty(), bp.empty() ? "" : "offending: " + bp);
  r.add("1. V-(chi) within V-(phi) - P-", bn.empty(), bn.empty() ? "" : "offending: " + bn);
  r.add("2. |- phi -> chi", prover.provable(Sequent({phi}, {chi})));
  std::size_t tested = 0;
  std::string failed;
  for (const auto& psi : psi_pool) {
    if (!safety(psi, forbidden).plus_safe) continue;
    if (!prover.provable(Sequent({phi}, {psi}))) continue;
    ++tested;
    if (!prover.provable(Sequent({chi}, {psi}))) failed += (failed.empty() ? "" : "; ") + to_string(psi);
  }
  r.add("3. |- chi -> psi for safe consequences psi", failed.empty(),
        std::to_string(tested) + " tested" + (failed.empty() ? "" : ", failing: " + failed));
  return r;
}

Report verify_post_interpolant(const Formula& phi, const Formula& chi, const ForbiddenSets& forbidden,
                               const std::vector<Formula>& psi_pool, const LogicId& logic) {
  Prover prover(logic);
  return verify_post_interpolant(phi, chi, forbidden, psi_pool, prover);
}

AtomSet parse_atom_list(std::string_view text) {
  AtomSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      Formula f = parse_formula(item);
      if (!f.is_var() || f.atom().is_quote()) throw ParseError("expected a variable name, got '" + std::string(item) + "'", start);
      out.insert(f.atom());
    } else if (comma != std::string_view::npos || start > 0) {
      throw ParseError("empty entry in variable list", start);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace nmodal
