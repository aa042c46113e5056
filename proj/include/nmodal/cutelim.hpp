// Cut elimination for GNxAmn proofs.

#ifndef NMODAL_CUTELIM_HPP_
#define NMODAL_CUTELIM_HPP_

#include <stdexcept>

#include "nmodal/calculus.hpp"

namespace nmodal {

// A reduction reached a state that a valid proof cannot produce
// (e.g. nec against ros, or a derivation of the empty sequent).
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Throws std::invalid_argument if `proof` does not check under `logic`.
Proof eliminate_cuts(const Proof& proof, const LogicId& logic);

// From a cut-free proof of => box^n psi, a cut-free proof of => box^m psi,
// with n, m taken from `logic`. Requires n > m.
Proof lower_box(const Proof& proof, const LogicId& logic);

}  // namespace nmodal

#endif  // NMODAL_CUTELIM_HPP_
