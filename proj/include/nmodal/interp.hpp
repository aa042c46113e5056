// Maehara's method on cut-free GNxAmn proofs, and Craig/Lyndon interpolation.

#ifndef NMODAL_INTERP_HPP_
#define NMODAL_INTERP_HPP_

#include <stdexcept>

#include "nmodal/calculus.hpp"
#include "nmodal/prover.hpp"
#include "nmodal/report.hpp"

namespace nmodal {

class NotProvable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Interpolant for a partition (G1 => D1 ; G2 => D2) of the proof's conclusion:
//   G1 => D1, chi  and  chi, G2 => D2  are provable,
//   V+(chi) within (V+(G1) u V-(D1)) n (V-(G2) u V+(D2)), dually for V-.
Formula maehara(const Proof& proof, const Partition& part, const LogicId& logic);

Formula lyndon_interpolant(const Formula& phi, const Formula& psi, const LogicId& logic);
Formula lyndon_interpolant(const Formula& phi, const Formula& psi, Prover& prover);

// Signed variables of the sequent read as /\ante -> \/succ.
SignedVarSet sequent_signed_vars(const Sequent& s);

// Conditions (a)-(d) for chi against a partition.
Report verify_partition_interpolant(const Partition& part, const Formula& chi, Prover& prover);

enum class InterpolationMode { Craig, Lyndon };

Report verify_interpolant(const Formula& phi, const Formula& psi, const Formula& chi, const LogicId& logic,
                          InterpolationMode mode);
Report verify_interpolant(const Formula& phi, const Formula& psi, const Formula& chi, Prover& prover,
                          InterpolationMode mode);

// Constant folding: false | x = x, true & x = x, etc.
Formula simplify_constants(const Formula& f);

}  // namespace nmodal

#endif  // NMODAL_INTERP_HPP_
