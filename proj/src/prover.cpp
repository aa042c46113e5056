#include "nmodal/prover.hpp"

#include <algorithm>
#include <deque>

namespace nmodal {

// ---------------------------------------------------------------------------
// Closure

namespace {
void add_subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  switch (f.kind()) {
    case FormulaKind::Bot:
    case FormulaKind::Var:
      return;
    case FormulaKind::Box:
      add_subformulas(f.body(), out);
      return;
    default:
      add_subformulas(f.lhs(), out);
      add_subformulas(f.rhs(), out);
  }
}
}  // namespace

ClosureSet closure(const std::vector<Formula>& fs) {
  std::vector<Formula> out;
  for (const auto& f : fs) add_subformulas(f, out);
  return {make_set(std::move(out))};
}

ClosureSet closure(const Sequent& s) {
  std::vector<Formula> fs = s.ante();
  fs.insert(fs.end(), s.succ().begin(), s.succ().end());
  return closure(fs);
}

// ---------------------------------------------------------------------------
// Backward search

Prover::Prover(LogicId logic, std::size_t budget) : logic_(logic), budget_(budget) {}

bool Prover::provable(const Sequent& s) { return search(s); }

Proof Prover::prove(const Sequent& s) { return search(s) ? build(s) : nullptr; }

Decision Prover::decide(const Sequent& s) {
  Proof p = prove(s);
  return {p != nullptr, p};
}

Decision decide(const Sequent& s, const LogicId& logic, std::size_t budget) {
  Prover prover(logic, budget);
  return prover.decide(s);
}

bool Prover::search(const Sequent& s) {
  auto it = memo_.find(s);
  if (it != memo_.end()) {
    if (it->second.state == Entry::State::Open) throw std::logic_error("prover: cyclic search at " + to_string(s));
    return it->second.state == Entry::State::Yes;
  }
  if (memo_.size() >= budget_) throw ResourceLimit("prover: node budget of " + std::to_string(budget_) + " exceeded");
  memo_.emplace(s, Entry{});
  Step step;
  bool ok = expand(s, step);
  Entry& e = memo_[s];
  e.state = ok ? Entry::State::Yes : Entry::State::No;
  e.step = std::move(step);
  return ok;
}

// Rule order: init, initBot, non-branching propositional, branching
// propositional, accL/accR, rosbox/ros, nec.
bool Prover::expand(const Sequent& s, Step& step) {
  for (const auto& f : s.ante()) {
    if (s.in_succ(f)) {
      step = {Kind::Init, Rule::Init, f, {}, {}};
      return true;
    }
  }
  if (s.in_ante(Formula::bot())) {
    step = {Kind::InitBot, Rule::InitBot, Formula::bot(), {}, {}};
    return true;
  }

  auto extend = [&](Rule r, const Formula& principal, Sequent premise) {
    step = {Kind::Extend, r, principal, std::move(premise), {}};
    return search(step.first);
  };

  for (const auto& f : s.ante()) {
    if (f.kind() == FormulaKind::And && !(s.in_ante(f.lhs()) && s.in_ante(f.rhs()))) {
      return extend(Rule::AndL, f, s.add_ante(f.lhs()).add_ante(f.rhs()));
    }
  }
  for (const auto& f : s.succ()) {
    if (f.kind() == FormulaKind::Or && !(s.in_succ(f.lhs()) && s.in_succ(f.rhs()))) {
      return extend(Rule::OrR, f, s.add_succ(f.lhs()).add_succ(f.rhs()));
    }
    if (f.kind() == FormulaKind::Imp && !(s.in_ante(f.lhs()) && s.in_succ(f.rhs()))) {
      return extend(Rule::ImpR, f, s.add_ante(f.lhs()).add_succ(f.rhs()));
    }
  }

  auto branch = [&](Rule r, const Formula& principal, Sequent left, Sequent right) {
    step = {Kind::Branch, r, principal, std::move(left), std::move(right)};
    return search(step.first) && search(step.second);
  };

  for (const auto& f : s.ante()) {
    if (f.kind() == FormulaKind::Or && !s.in_ante(f.lhs()) && !s.in_ante(f.rhs())) {
      return branch(Rule::OrL, f, s.add_ante(f.lhs()), s.add_ante(f.rhs()));
    }
    if (f.kind() == FormulaKind::Imp && !s.in_succ(f.lhs()) && !s.in_ante(f.rhs())) {
      return branch(Rule::ImpL, f, s.add_succ(f.lhs()), s.add_ante(f.rhs()));
    }
  }
  for (const auto& f : s.succ()) {
    if (f.kind() == FormulaKind::And && !s.in_succ(f.lhs()) && !s.in_succ(f.rhs())) {
      return branch(Rule::AndR, f, s.add_succ(f.lhs()), s.add_succ(f.rhs()));
    }
  }

  if (logic_.acc_left()) {
    for (const auto& f : s.ante()) {
      if (f.box_prefix() < logic_.n) continue;
      Formula g = Formula::box(unbox(f, logic_.n), logic_.m);
      if (!s.in_ante(g)) return extend(Rule::AccL, f, s.add_ante(g));
    }
  }
  if (logic_.acc_right()) {
    for (const auto& f : s.succ()) {
      if (f.box_prefix() < logic_.m) continue;
      Formula g = Formula::box(unbox(f, logic_.m), logic_.n);
      if (!s.in_succ(g)) return extend(Rule::AccR, f, s.add_succ(g));
    }
  }

  auto jump = [&](Rule r, const Formula& principal, Sequent premise) {
    if (!search(premise)) return false;
    step = {Kind::Jump, r, principal, std::move(premise), {}};
    return true;
  };

  if (logic_.rosbox()) {
    for (const auto& f : s.ante()) {
      if (f.box_prefix() >= 2 && jump(Rule::RosBox, f, Sequent({f.body()}, {}))) return true;
    }
  }
  if (logic_.ros()) {
    for (const auto& f : s.ante()) {
      if (f.is_box() && jump(Rule::Ros, f, Sequent({f.body()}, {}))) return true;
    }
  }
  for (const auto& f : s.succ()) {
    if (f.is_box() && jump(Rule::Nec, f, Sequent({}, {f.body()}))) return true;
  }
  return false;
}

Proof Prover::build(const Sequent& s) {
  auto cached = proofs_.find(s);
  if (cached != proofs_.end()) return cached->second;
  auto it = memo_.find(s);
  if (it == memo_.end() || it->second.state != Entry::State::Yes) {
    throw std::logic_error("prover: no proof recorded for " + to_string(s));
  }
  const Step step = it->second.step;
  const Formula a = step.principal;
  Proof out;
  switch (step.kind) {
    case Kind::Init:
      out = weaken_to(make_proof(Sequent({a}, {a}), Rule::Init, a, {}), s);
      break;
    case Kind::InitBot:
      out = weaken_to(make_proof(Sequent({a}, {}), Rule::InitBot, std::nullopt, {}), s);
      break;
    case Kind::Extend: {
      Proof top = build(step.first);
      if (step.rule == Rule::AndL || step.rule == Rule::OrR) {
        // One node per component that was missing.
        const bool left = step.rule == Rule::AndL;
        auto has = [&](const Sequent& q, const Formula& f) { return left ? q.in_ante(f) : q.in_succ(f); };
        auto add = [&](const Sequent& q, const Formula& f) { return left ? q.add_ante(f) : q.add_succ(f); };
        std::vector<std::pair<unsigned, Formula>> missing;
        if (!has(s, a.lhs())) missing.emplace_back(1, a.lhs());
        if (!has(s, a.rhs()) && !(a.rhs() == a.lhs())) missing.emplace_back(2, a.rhs());
        std::vector<Sequent> chain{s};
        for (const auto& [idx, f] : missing) chain.push_back(add(chain.back(), f));
        Proof cur = top;
        for (std::size_t i = missing.size(); i-- > 0;) {
          ProofAux aux;
          aux.index = missing[i].first;
          cur = make_proof(chain[i], step.rule, a, {cur}, aux);
        }
        out = cur;
      } else {
        out = make_proof(s, step.rule, a, {top});
      }
      break;
    }
    case Kind::Branch: {
      Proof l = build(step.first);
      Proof r = build(step.second);
      ProofAux aux;
      if (step.rule == Rule::ImpL) {
        aux.left_ante = s.ante();
        aux.left_succ = s.succ();
      }
      out = make_proof(s, step.rule, a, {l, r}, aux);
      break;
    }
    case Kind::Jump: {
      Proof top = build(step.first);
      Sequent concl = step.rule == Rule::Nec ? Sequent({}, {a}) : Sequent({a}, {});
      out = weaken_to(make_proof(concl, step.rule, a, {top}), s);
      break;
    }
  }
  proofs_.emplace(s, out);
  return out;
}

// ---------------------------------------------------------------------------
// Forward saturation

ProvableSet::ProvableSet(FormulaSet universe, std::vector<Bits> minimal)
    : universe_(std::move(universe)), minimal_(std::move(minimal)) {}

ProvableSet::Bits ProvableSet::encode(const Sequent& s) const {
  Bits b;
  auto bit = [&](const Formula& f) -> std::uint64_t {
    auto it = std::lower_bound(universe_.begin(), universe_.end(), f);
    if (it == universe_.end() || !(*it == f)) return 0;
    return std::uint64_t{1} << (it - universe_.begin());
  };
  for (const auto& f : s.ante()) b.ante |= bit(f);
  for (const auto& f : s.succ()) b.succ |= bit(f);
  return b;
}

bool ProvableSet::contains(const Sequent& s) const {
  Bits b = encode(s);
  return std::any_of(minimal_.begin(), minimal_.end(),
                     [&](const Bits& m) { return (m.ante & ~b.ante) == 0 && (m.succ & ~b.succ) == 0; });
}

std::vector<Sequent> ProvableSet::minimal() const {
  std::vector<Sequent> out;
  for (const auto& m : minimal_) {
    std::vector<Formula> a, c;
    for (std::size_t i = 0; i < universe_.size(); ++i) {
      if (m.ante >> i & 1) a.push_back(universe_[i]);
      if (m.succ >> i & 1) c.push_back(universe_[i]);
    }
    out.emplace_back(std::move(a), std::move(c));
  }
  return out;
}

namespace {

using Bits = ProvableSet::Bits;

bool subsumes(const Bits& m, const Bits& b) { return (m.ante & ~b.ante) == 0 && (m.succ & ~b.succ) == 0; }

class Saturator {
 public:
  Saturator(const FormulaSet& u, const LogicId& logic) : u_(u), logic_(logic) {
    auto idx = [&](const Formula& f) -> int {
      auto it = std::lower_bound(u_.begin(), u_.end(), f);
      return it != u_.end() && *it == f ? static_cast<int>(it - u_.begin()) : -1;
    };
    for (std::size_t i = 0; i < u_.size(); ++i) {
      const Formula& f = u_[i];
      Info info;
      if (f.is_binary()) {
        info.lhs = idx(f.lhs());
        info.rhs = idx(f.rhs());
      }
      if (f.is_box()) info.body = idx(f.body());
      if (logic_.acc_left() && f.box_prefix() >= logic_.n) info.acc_l = idx(Formula::box(unbox(f, logic_.n), logic_.m));
      if (logic_.acc_right() && f.box_prefix() >= logic_.m) info.acc_r = idx(Formula::box(unbox(f, logic_.m), logic_.n));
      infos_.push_back(info);
    }
  }

  std::vector<Bits> run() {
    for (std::size_t i = 0; i < u_.size(); ++i) add({bit(i), bit(i)});
    auto bot = std::lower_bound(u_.begin(), u_.end(), Formula::bot());
    if (bot != u_.end() && *bot == Formula::bot()) add({bit(bot - u_.begin()), 0});
    while (!queue_.empty()) {
      Bits m = queue_.front();
      queue_.pop_front();
      if (std::find(minimal_.begin(), minimal_.end(), m) == minimal_.end()) continue;
      unary(m);
      std::vector<Bits> snapshot = minimal_;
      for (const auto& other : snapshot) {
        binary(m, other);
        if (!(other == m)) binary(other, m);
      }
    }
    return minimal_;
  }

 private:
  struct Info {
    int lhs = -1, rhs = -1, body = -1, acc_l = -1, acc_r = -1;
  };

  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }
  static std::uint64_t bit_or_zero(int i) { return i < 0 ? 0 : bit(static_cast<std::size_t>(i)); }
  bool has(std::uint64_t mask, int i) const { return i >= 0 && (mask >> i & 1); }

  void add(Bits c) {
    for (const auto& m : minimal_) {
      if (subsumes(m, c)) return;
    }
    std::erase_if(minimal_, [&](const Bits& m) { return subsumes(c, m); });
    minimal_.push_back(c);
    queue_.push_back(c);
  }

  void unary(const Bits& m) {
    for (std::size_t i = 0; i < u_.size(); ++i) {
      const Formula& f = u_[i];
      const Info& info = infos_[i];
      const std::uint64_t fb = bit(i);
      switch (f.kind()) {
        case FormulaKind::And:
          for (int c : {info.lhs, info.rhs}) {
            if (has(m.ante, c)) add({(m.ante & ~bit_or_zero(c)) | fb, m.succ});
          }
          break;
        case FormulaKind::Or:
          for (int c : {info.lhs, info.rhs}) {
            if (has(m.succ, c)) add({m.ante, (m.succ & ~bit_or_zero(c)) | fb});
          }
          break;
        case FormulaKind::Imp:
          add({m.ante & ~bit_or_zero(info.lhs), (m.succ & ~bit_or_zero(info.rhs)) | fb});
          break;
        case FormulaKind::Box:
          // nec: premise => body
          if (m.ante == 0 && (m.succ & ~bit_or_zero(info.body)) == 0) add({0, fb});
          if (logic_.ros() && m.succ == 0 && (m.ante & ~bit_or_zero(info.body)) == 0) add({fb, 0});
          if (logic_.rosbox() && f.box_prefix() >= 2 && m.succ == 0 && (m.ante & ~bit_or_zero(info.body)) == 0) {
            add({fb, 0});
          }
          if (has(m.ante, info.acc_l)) add({(m.ante & ~bit_or_zero(info.acc_l)) | fb, m.succ});
          if (has(m.succ, info.acc_r)) add({m.ante, (m.succ & ~bit_or_zero(info.acc_r)) | fb});
          break;
        default:
          break;
      }
    }
  }

  // Two-premise rules with m1 as the left and m2 as the right premise.
  void binary(const Bits& m1, const Bits& m2) {
    for (std::size_t i = 0; i < u_.size(); ++i) {
      const Formula& f = u_[i];
      const Info& info = infos_[i];
      const std::uint64_t fb = bit(i);
      switch (f.kind()) {
        case FormulaKind::And:
          add({m1.ante | m2.ante, (m1.succ & ~bit_or_zero(info.lhs)) | (m2.succ & ~bit_or_zero(info.rhs)) | fb});
          break;
        case FormulaKind::Or:
          add({(m1.ante & ~bit_or_zero(info.lhs)) | (m2.ante & ~bit_or_zero(info.rhs)) | fb, m1.succ | m2.succ});
          break;
        case FormulaKind::Imp:
          add({m1.ante | (m2.ante & ~bit_or_zero(info.rhs)) | fb, (m1.succ & ~bit_or_zero(info.lhs)) | m2.succ});
          break;
        default:
          break;
      }
      if ((m1.succ & fb) && (m2.ante & fb)) add({m1.ante | (m2.ante & ~fb), (m1.succ & ~fb) | m2.succ});
    }
  }

  const FormulaSet& u_;
  LogicId logic_;
  std::vector<Info> infos_;
  std::vector<Bits> minimal_;
  std::deque<Bits> queue_;
};

}  // namespace

ProvableSet saturate_forward(const ClosureSet& universe, const LogicId& logic) {
  if (universe.formulas.size() > 64) throw std::length_error("saturate_forward: universe exceeds 64 formulas");
  Saturator sat(universe.formulas, logic);
  return ProvableSet(universe.formulas, sat.run());
}

// ---------------------------------------------------------------------------
// Truth tables

namespace {

class Valuation {
 public:
  explicit Valuation(const std::vector<Formula>& fs) {
    for (const auto& f : fs) collect(f);
    if (index_.size() > 24) throw ResourceLimit("truth table over more than 24 atoms");
  }

  std::size_t atoms() const { return index_.size(); }

  bool eval(const Formula& f, std::uint64_t row) const {
    switch (f.kind()) {
      case FormulaKind::Bot:
        return false;
      case FormulaKind::Var:
        return row >> index_.at(f.node()) & 1;
      case FormulaKind::And:
        return eval(f.lhs(), row) && eval(f.rhs(), row);
      case FormulaKind::Or:
        return eval(f.lhs(), row) || eval(f.rhs(), row);
      case FormulaKind::Imp:
        return !eval(f.lhs(), row) || eval(f.rhs(), row);
      case FormulaKind::Box:
        break;
    }
    throw std::invalid_argument("truth table: formula contains a box");
  }

 private:
  void collect(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Bot:
        return;
      case FormulaKind::Var:
        index_.emplace(f.node(), index_.size());
        return;
      case FormulaKind::Box:
        throw std::invalid_argument("decide_classical: formula contains a box: " + to_string(f));
      default:
        collect(f.lhs());
        collect(f.rhs());
    }
  }

  std::unordered_map<const detail::FormulaNode*, std::size_t> index_;
};

}  // namespace

bool decide_classical(const Sequent& s) {
  std::vector<Formula> all = s.ante();
  all.insert(all.end(), s.succ().begin(), s.succ().end());
  Valuation v(all);
  const std::uint64_t rows = std::uint64_t{1} << v.atoms();
  for (std::uint64_t row = 0; row < rows; ++row) {
    bool ante = std::all_of(s.ante().begin(), s.ante().end(), [&](const Formula& f) { return v.eval(f, row); });
    if (!ante) continue;
    bool succ = std::any_of(s.succ().begin(), s.succ().end(), [&](const Formula& f) { return v.eval(f, row); });
    if (!succ) return false;
  }
  return true;
}

bool classically_valid(const Formula& f) { return decide_classical(Sequent({}, {f})); }

bool classically_entails(const Formula& a, const Formula& b) { return decide_classical(Sequent({a}, {b})); }

}  // namespace nmodal
