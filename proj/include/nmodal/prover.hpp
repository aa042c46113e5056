// Decision procedures: backward cut-free proof search with proof
// reconstruction, a forward saturation oracle, and truth tables.

#ifndef NMODAL_PROVER_HPP_
#define NMODAL_PROVER_HPP_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "nmodal/calculus.hpp"

namespace nmodal {

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultBudget = 4'000'000;

struct ClosureSet {
  FormulaSet formulas;

  bool contains(const Formula& f) const { return set_contains(formulas, f); }
  std::size_t size() const { return formulas.size(); }
};

// Subformulas of every member of s (boxes peeled one at a time).
ClosureSet closure(const Sequent& s);
ClosureSet closure(const std::vector<Formula>& fs);

struct Decision {
  bool provable = false;
  Proof proof;  // null when unprovable

  explicit operator bool() const { return provable; }
};

// Backward search over keep-principal premises. Every propositional and acc
// rule only adds formulas to the sequent, so applying one is never a wrong
// move; nec/ros/rosbox are tried only on saturated sequents. Results are
// memoized per instance; reuse one Prover for many queries on one logic.
class Prover {
 public:
  explicit Prover(LogicId logic, std::size_t budget = kDefaultBudget);

  bool provable(const Sequent& s);
  // Cut-free proof of exactly s, or null.
  Proof prove(const Sequent& s);
  Decision decide(const Sequent& s);

  const LogicId& logic() const noexcept { return logic_; }
  std::size_t explored() const noexcept { return memo_.size(); }

 private:
  enum class Kind : std::uint8_t { Init, InitBot, Extend, Branch, Jump };
  struct Step {
    Kind kind = Kind::Init;
    Rule rule = Rule::Init;
    Formula principal = Formula::bot();
    Sequent first;   // Extend/Jump premise, or left branch
    Sequent second;  // right branch
  };
  struct Entry {
    enum class State : std::uint8_t { Open, Yes, No } state = State::Open;
    Step step;
  };

  bool search(const Sequent& s);
  bool expand(const Sequent& s, Step& step);
  Proof build(const Sequent& s);

  LogicId logic_;
  std::size_t budget_;
  std::unordered_map<Sequent, Entry> memo_;
  std::unordered_map<Sequent, Proof> proofs_;
};

Decision decide(const Sequent& s, const LogicId& logic, std::size_t budget = kDefaultBudget);

// Upward-closed set of sequents over a fixed universe, stored as its
// antichain of minimal members.
class ProvableSet {
 public:
  struct Bits {
    std::uint64_t ante = 0;
    std::uint64_t succ = 0;
    bool operator==(const Bits&) const = default;
  };

  ProvableSet() = default;
  ProvableSet(FormulaSet universe, std::vector<Bits> minimal);

  // Membership; sequents mentioning formulas outside the universe are
  // judged on their in-universe part.
  bool contains(const Sequent& s) const;
  std::vector<Sequent> minimal() const;
  const FormulaSet& universe() const noexcept { return universe_; }

 private:
  Bits encode(const Sequent& s) const;

  FormulaSet universe_;
  std::vector<Bits> minimal_;
};

// Least set of sequents over `universe` containing the initial sequents and
// closed under every active rule (weakening and cut included). At most 64
// formulas.
ProvableSet saturate_forward(const ClosureSet& universe, const LogicId& logic);

// Truth tables; quote atoms are opaque. Throws on Box nodes.
bool decide_classical(const Sequent& s);
bool classically_valid(const Formula& f);
bool classically_entails(const Formula& a, const Formula& b);

}  // namespace nmodal

#endif  // NMODAL_PROVER_HPP_
