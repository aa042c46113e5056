// The sharp/flat translation of NxAmn into classical logic over base and
// quote atoms, standard substitution, and LK emulation of cut-free proofs.

#ifndef NMODAL_PROP18N_HPP_
#define NMODAL_PROP18N_HPP_

#include <unordered_map>
#include <utility>
#include <vector>

#include "nmodal/calculus.hpp"
#include "nmodal/prover.hpp"
#include "nmodal/report.hpp"

namespace nmodal {

enum class Direction { Sharp, Flat };

// Caches translations and the provability side conditions for one logic.
// Not thread-safe; use one per thread.
class Translator {
 public:
  explicit Translator(LogicId logic, std::size_t budget = kDefaultBudget);

  Formula sharp(const Formula& f);
  Formula flat(const Formula& f);
  Formula translate(const Formula& f, Direction d) { return d == Direction::Sharp ? sharp(f) : flat(f); }
  // Antecedent flat, succedent sharp.
  Sequent translate(const Sequent& s);

  const LogicId& logic() const noexcept { return logic_; }
  Prover& prover() noexcept { return prover_; }

 private:
  Formula sharp_box(const Formula& f);
  Formula flat_box(const Formula& f);
  bool refutable_below(unsigned k, const Formula& core);
  bool condition_c(unsigned k, const Formula& core);

  LogicId logic_;
  Prover prover_;
  std::unordered_map<Formula, Formula> sharp_, flat_;
};

Formula sharp(const Formula& f, const LogicId& logic);
Formula flat(const Formula& f, const LogicId& logic);

// Replaces every quote atom by its payload.
Formula std_subst(const Formula& f);

// LK proof (possibly with cuts) of ante^flat => succ^sharp from a cut-free
// proof of ante => succ.
Proof emulate(const Proof& proof, const LogicId& logic);
Proof emulate(const Proof& proof, Translator& tr);

// (1), (3) and flat-implies-sharp for each formula; (2) for each pair whose
// implication is provable.
Report verify_propositionalization(const std::vector<Formula>& formulas,
                                   const std::vector<std::pair<Formula, Formula>>& pairs, Translator& tr);
Report verify_propositionalization(const std::vector<Formula>& formulas,
                                   const std::vector<std::pair<Formula, Formula>>& pairs, const LogicId& logic);

}  // namespace nmodal

#endif  // NMODAL_PROP18N_HPP_
