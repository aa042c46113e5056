// Sequents, logic configuration, proof objects and the proof checker for
// LK and the calculi GNA(m,n), GN+A(m,n), GNRA(m,n).

#ifndef NMODAL_CALCULUS_HPP_
#define NMODAL_CALCULUS_HPP_

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nmodal/formula.hpp"

namespace nmodal {

// ---------------------------------------------------------------------------
// Logics

enum class Variant : std::uint8_t { Plain, Plus, R };

struct LogicId {
  Variant variant = Variant::Plain;
  unsigned m = 0;
  unsigned n = 0;

  bool acc_left() const noexcept { return n > m; }
  bool acc_right() const noexcept { return m > n; }
  bool rosbox() const noexcept { return variant == Variant::Plus && m == 0 && n >= 2; }
  bool ros() const noexcept { return variant == Variant::R; }

  // "NA(m,n)" | "N+A(m,n)" | "NRA(m,n)" | "N"
  static LogicId parse(std::string_view spec);
  std::string to_string() const;

  bool operator==(const LogicId&) const = default;
};

// ---------------------------------------------------------------------------
// Rules

enum class Rule : std::uint8_t {
  Init,
  InitBot,
  AndL,
  AndR,
  OrL,
  OrR,
  ImpL,
  ImpR,
  WeakenL,
  WeakenR,
  Cut,
  Nec,
  AccL,
  AccR,
  RosBox,
  Ros,
  Unknown,
};

std::string_view rule_name(Rule r);
// Accepts the canonical names plus andL1/andL2/orR1/orR2 (index folded into aux).
std::optional<Rule> rule_from_name(std::string_view name);

class RuleSet {
 public:
  RuleSet() = default;
  RuleSet(std::initializer_list<Rule> rules) {
    for (Rule r : rules) insert(r);
  }
  void insert(Rule r) { bits_ |= bit(r); }
  bool contains(Rule r) const { return (bits_ & bit(r)) != 0; }
  std::vector<Rule> rules() const;
  bool operator==(const RuleSet&) const = default;

 private:
  static std::uint32_t bit(Rule r) { return 1u << static_cast<unsigned>(r); }
  std::uint32_t bits_ = 0;
};

// Initial sequents plus the logical, structural and cut rules of LK.
RuleSet lk_rules();
RuleSet rule_set(const LogicId& logic);

// ---------------------------------------------------------------------------
// Sequents

// A pair of finite formula sets, kept sorted in structural order.
class Sequent {
 public:
  Sequent() = default;
  Sequent(std::vector<Formula> ante, std::vector<Formula> succ);

  const std::vector<Formula>& ante() const noexcept { return ante_; }
  const std::vector<Formula>& succ() const noexcept { return succ_; }
  bool empty() const noexcept { return ante_.empty() && succ_.empty(); }
  std::size_t size() const noexcept { return ante_.size() + succ_.size(); }

  bool in_ante(const Formula& f) const;
  bool in_succ(const Formula& f) const;

  Sequent add_ante(const Formula& f) const;
  Sequent add_succ(const Formula& f) const;
  Sequent remove_ante(const Formula& f) const;
  Sequent remove_succ(const Formula& f) const;

  // Componentwise inclusion.
  bool subset_of(const Sequent& other) const;
  Sequent join(const Sequent& other) const;

  std::size_t hash() const noexcept;
  bool operator==(const Sequent&) const = default;

 private:
  std::vector<Formula> ante_;
  std::vector<Formula> succ_;
};

// "phi1, phi2 => psi1, psi2"; either side may be empty.
Sequent parse_sequent(std::string_view text);
std::string to_string(const Sequent& s);

// Sorted, deduplicated formula list helpers shared by the modules.
using FormulaSet = std::vector<Formula>;
FormulaSet make_set(std::vector<Formula> fs);
bool set_contains(const FormulaSet& s, const Formula& f);
FormulaSet set_union(const FormulaSet& a, const FormulaSet& b);
FormulaSet set_minus(const FormulaSet& a, const FormulaSet& b);
bool set_subset(const FormulaSet& a, const FormulaSet& b);

// ---------------------------------------------------------------------------
// Partitions

struct Partition {
  Sequent left;
  Sequent right;
  Sequent of;

  bool valid() const;
};

// All 2^(|ante|+|succ|) partitions. Index bit i (ante members first, then
// succ members, each in sequent order) set means the i-th formula goes right;
// index 0 puts everything on the left.
class PartitionEnumerator {
 public:
  explicit PartitionEnumerator(Sequent s);
  std::uint64_t size() const noexcept { return count_; }
  Partition operator[](std::uint64_t index) const;

 private:
  Sequent seq_;
  std::uint64_t count_;
};

PartitionEnumerator enumerate_partitions(const Sequent& s);

// ---------------------------------------------------------------------------
// Proofs

struct ProofAux {
  // andL / orR: which component (1 or 2).
  unsigned index = 0;
  // impL / cut: the left premise context (Gamma1, Delta1); the right side is inferred.
  FormulaSet left_ante;
  FormulaSet left_succ;
};

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

struct ProofNode {
  Sequent conclusion;
  Rule rule = Rule::Unknown;
  // The principal formula; for cut, the cut formula; for weakening, the
  // weakened formula.
  std::optional<Formula> principal;
  ProofAux aux;
  std::vector<Proof> premises;
  // Set only by the JSON loader when the rule name was not recognized.
  std::string unknown_rule_name;
};

Proof make_proof(Sequent conclusion, Rule rule, std::optional<Formula> principal, std::vector<Proof> premises,
                 ProofAux aux = {});

// Number of nodes counting shared subproofs once per use.
std::size_t proof_size(const Proof& p);
std::size_t proof_height(const Proof& p);
bool contains_rule(const Proof& p, Rule r);
inline bool is_cut_free(const Proof& p) { return !contains_rule(p, Rule::Cut); }

// Extends the conclusion of p to `target` (a superset) by weakening nodes.
Proof weaken_to(const Proof& p, const Sequent& target);

// ---------------------------------------------------------------------------
// Checking

enum class CheckError : std::uint8_t { None, UnknownRule, InactiveRule, SchemaMismatch, PremiseCount };

std::string_view check_error_name(CheckError e);

struct CheckResult {
  CheckError error = CheckError::None;
  // Premise indices from the root to the first offending node.
  std::vector<std::size_t> path;
  std::string detail;

  bool valid() const noexcept { return error == CheckError::None; }
  explicit operator bool() const noexcept { return valid(); }
};

CheckResult check_proof(const Proof& proof, const LogicId& logic);
// Checks against an explicit rule set; `logic` supplies m and n for acc rules.
CheckResult check_proof(const Proof& proof, const LogicId& logic, const RuleSet& allowed);
// LK only (cut allowed).
CheckResult check_lk_proof(const Proof& proof);

// Local schema check of one node, ignoring its premises' own validity.
CheckResult check_node(const ProofNode& node, const LogicId& logic, const RuleSet& allowed);

}  // namespace nmodal

template <>
struct std::hash<nmodal::Sequent> {
  std::size_t operator()(const nmodal::Sequent& s) const noexcept { return s.hash(); }
};

#endif  // NMODAL_CALCULUS_HPP_
