// Uniform Lyndon interpolation: a clause-based classical post-interpolant
// engine and the modal pipeline through the flat translation.

#ifndef NMODAL_ULIP_HPP_
#define NMODAL_ULIP_HPP_

#include <vector>

#include "nmodal/formula.hpp"
#include "nmodal/prop18n.hpp"
#include "nmodal/prover.hpp"
#include "nmodal/report.hpp"

namespace nmodal {

struct ForbiddenSets {
  AtomSet ppos;
  AtomSet pneg;
};

inline constexpr std::size_t kDefaultLiteralBound = 14;

// Allowed literals: positive over V+(phi) - P+, negative over V-(phi) - P-.
struct AllowedLiterals {
  std::vector<Atom> pos;
  std::vector<Atom> neg;
};
AllowedLiterals allowed_literals(const Formula& phi, const ForbiddenSets& forbidden);

// A clause as (positive atoms, negated atoms).
struct Clause {
  std::vector<Atom> pos;
  std::vector<Atom> neg;

  std::size_t size() const { return pos.size() + neg.size(); }
  Formula to_formula() const;
  bool operator==(const Clause&) const = default;
};

// Subsumption-minimal allowed clauses entailed by phi, sorted by (length,
// literal order); a literal orders by atom, positive before negative.
std::vector<Clause> entailed_clauses(const Formula& phi, const ForbiddenSets& forbidden,
                                     std::size_t bound = kDefaultLiteralBound);

// Conjunction of entailed_clauses: true if none, false if the empty clause is among them.
Formula classical_post_interpolant(const Formula& phi, const ForbiddenSets& forbidden,
                                   std::size_t bound = kDefaultLiteralBound);

// Every non-tautological allowed clause, shortest first, at most `limit`.
std::vector<Clause> allowed_clauses(const Formula& phi, const ForbiddenSets& forbidden, std::size_t limit = 4096);

struct Safety {
  bool plus_safe;
  bool minus_safe;
};
Safety safety(const Formula& psi, const ForbiddenSets& forbidden);

// P extended by the quote atoms of flat_phi whose payloads are unsafe.
ForbiddenSets quote_forbidden(const Formula& flat_phi, const ForbiddenSets& forbidden);

Formula modal_post_interpolant(const Formula& phi, const ForbiddenSets& forbidden, Translator& tr,
                               std::size_t bound = kDefaultLiteralBound);
Formula modal_post_interpolant(const Formula& phi, const ForbiddenSets& forbidden, const LogicId& logic,
                               std::size_t bound = kDefaultLiteralBound);

// Condition 3 is only checked against the pool members that are safe
// consequences of phi.
Report verify_post_interpolant(const Formula& phi, const Formula& chi, const ForbiddenSets& forbidden,
                               const std::vector<Formula>& psi_pool, Prover& prover);
Report verify_post_interpolant(const Formula& phi, const Formula& chi, const ForbiddenSets& forbidden,
                               const std::vector<Formula>& psi_pool, const LogicId& logic);

// Parses "a,b,c" into base atoms; empty string gives the empty set.
AtomSet parse_atom_list(std::string_view text);

}  // namespace nmodal

#endif  // NMODAL_ULIP_HPP_
