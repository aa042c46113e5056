// Modal formulas over base atoms and quote atoms.
//
// Formulas are hash-consed: every structurally distinct formula is stored
// exactly once in a process-wide table, so a Formula is a cheap handle and
// equality is pointer equality. Nodes are never freed.

#ifndef NMODAL_FORMULA_HPP_
#define NMODAL_FORMULA_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace nmodal {

enum class FormulaKind : std::uint8_t { Bot, Var, And, Or, Imp, Box };

namespace detail {
struct FormulaNode;
}

class Atom;

class Formula {
 public:
  static Formula bot();
  // Abbreviation for bot -> bot.
  static Formula top();
  static Formula var(const Atom& atom);
  static Formula base(std::string_view name);
  static Formula quote(Formula payload);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula imp(Formula lhs, Formula rhs);
  // Abbreviation for f -> bot.
  static Formula neg(Formula f);
  static Formula box(Formula body, unsigned times = 1);

  FormulaKind kind() const noexcept;
  bool is_bot() const noexcept { return kind() == FormulaKind::Bot; }
  bool is_var() const noexcept { return kind() == FormulaKind::Var; }
  bool is_box() const noexcept { return kind() == FormulaKind::Box; }
  bool is_binary() const noexcept;
  bool is_top() const noexcept;
  bool is_classical() const noexcept;

  // Children. lhs() is also the body of a Box node.
  Formula lhs() const noexcept;
  Formula rhs() const noexcept;
  Formula body() const noexcept { return lhs(); }
  const Atom& atom() const noexcept;

  std::size_t hash() const noexcept;
  std::size_t size() const noexcept;
  // Number of leading boxes.
  unsigned box_prefix() const noexcept;

  const detail::FormulaNode* node() const noexcept { return node_; }

  bool operator==(const Formula& other) const noexcept { return node_ == other.node_; }
  // Structural order; deterministic across runs.
  std::strong_ordering operator<=>(const Formula& other) const noexcept;

 private:
  explicit Formula(const detail::FormulaNode* node) noexcept : node_(node) {}
  friend class Atom;
  friend struct detail::FormulaNode;

  const detail::FormulaNode* node_;
};

// Either a base variable (identified by name) or a quote atom p_phi
// (identified by the structure of phi).
class Atom {
 public:
  static Atom base(std::string name);
  static Atom quote(Formula payload);

  bool is_quote() const noexcept { return payload_ != nullptr; }
  const std::string& name() const noexcept { return name_; }
  // Only meaningful for quote atoms.
  Formula payload() const noexcept { return Formula(payload_); }

  bool operator==(const Atom& other) const noexcept {
    return payload_ == other.payload_ && name_ == other.name_;
  }
  std::strong_ordering operator<=>(const Atom& other) const noexcept;

 private:
  Atom() = default;
  friend struct detail::FormulaNode;

  std::string name_;
  const detail::FormulaNode* payload_ = nullptr;
};

namespace detail {
struct FormulaNode {
  explicit FormulaNode(FormulaKind k) : kind(k) {}
  void set_quote_payload(const FormulaNode* payload) { atom.payload_ = payload; }

  FormulaKind kind;
  const FormulaNode* lhs = nullptr;
  const FormulaNode* rhs = nullptr;
  Atom atom;
  std::size_t hash = 0;
  std::size_t size = 1;
  bool classical = true;
};
}  // namespace detail

inline FormulaKind Formula::kind() const noexcept { return node_->kind; }
inline Formula Formula::lhs() const noexcept { return Formula(node_->lhs); }
inline Formula Formula::rhs() const noexcept { return Formula(node_->rhs); }
inline const Atom& Formula::atom() const noexcept { return node_->atom; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }
inline std::size_t Formula::size() const noexcept { return node_->size; }
inline bool Formula::is_classical() const noexcept { return node_->classical; }

using AtomSet = std::set<Atom>;

struct SignedVarSet {
  AtomSet pos;
  AtomSet neg;

  AtomSet all() const;
  bool operator==(const SignedVarSet&) const = default;
};

// V+ / V-: implication antecedents swap polarity, box is transparent.
SignedVarSet signed_vars(const Formula& f);
// Accumulates into an existing set; `positive` selects the starting polarity.
void collect_signed_vars(const Formula& f, bool positive, SignedVarSet& out);

struct BoxDecomposition {
  unsigned depth;
  Formula core;
};

// f = box^depth(core) with core not a box.
BoxDecomposition box_decompose(const Formula& f);

// Removes exactly `times` leading boxes; the formula must have at least that many.
Formula unbox(const Formula& f, unsigned times);

// Every atom occurring in f (in base and quote positions, not inside payloads).
AtomSet atoms_of(const Formula& f);
bool contains_quote(const Formula& f);

// Canonical text. `~x` for x -> false, `true` for false -> false,
// binary operands parenthesized unless precedence/associativity makes it
// unambiguous, box operands parenthesized when binary.
std::string to_string(const Formula& f);
std::string to_string(const Atom& a);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

Formula parse_formula(std::string_view text);

}  // namespace nmodal

template <>
struct std::hash<nmodal::Formula> {
  std::size_t operator()(const nmodal::Formula& f) const noexcept { return f.hash(); }
};

#endif  // NMODAL_FORMULA_HPP_
