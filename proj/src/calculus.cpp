#include "nmodal/calculus.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace nmodal {

// ---------------------------------------------------------------------------
// LogicId

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

unsigned parse_natural(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (s.empty() || s.size() > 6) throw std::invalid_argument("bad logic spec: " + std::string(whole));
  unsigned v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad logic spec: " + std::string(whole));
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

}  // namespace

LogicId LogicId::parse(std::string_view spec) {
  std::string_view s = trim(spec);
  if (s == "N") return {Variant::Plain, 0, 0};
  LogicId id;
  std::string_view rest;
  if (s.starts_with("NA(")) {
    id.variant = Variant::Plain;
    rest = s.substr(3);
  } else if (s.starts_with("N+A(")) {
    id.variant = Variant::Plus;
    rest = s.substr(4);
  } else if (s.starts_with("NRA(")) {
    id.variant = Variant::R;
    rest = s.substr(4);
  } else {
    throw std::invalid_argument("bad logic spec: " + std::string(spec));
  }
  if (!rest.ends_with(")")) throw std::invalid_argument("bad logic spec: " + std::string(spec));
  rest.remove_suffix(1);
  auto comma = rest.find(',');
  if (comma == std::string_view::npos) throw std::invalid_argument("bad logic spec: " + std::string(spec));
  id.m = parse_natural(rest.substr(0, comma), spec);
  id.n = parse_natural(rest.substr(comma + 1), spec);
  return id;
}

std::string LogicId::to_string() const {
  std::string prefix = variant == Variant::Plain ? "NA(" : variant == Variant::Plus ? "N+A(" : "NRA(";
  return prefix + std::to_string(m) + "," + std::to_string(n) + ")";
}

// ---------------------------------------------------------------------------
// Rules

namespace {
constexpr std::string_view kRuleNames[] = {"init", "initBot", "andL", "andR", "orL",   "orR",
                                           "impL", "impR",    "wL",   "wR",   "cut",   "nec",
                                           "accL", "accR",    "rosbox", "ros", "unknown"};
}

std::string_view rule_name(Rule r) { return kRuleNames[static_cast<unsigned>(r)]; }

std::optional<Rule> rule_from_name(std::string_view name) {
  if (name == "andL1" || name == "andL2") return Rule::AndL;
  if (name == "orR1" || name == "orR2") return Rule::OrR;
  for (unsigned i = 0; i < static_cast<unsigned>(Rule::Unknown); ++i) {
    if (kRuleNames[i] == name) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

std::vector<Rule> RuleSet::rules() const {
  std::vector<Rule> out;
  for (unsigned i = 0; i < static_cast<unsigned>(Rule::Unknown); ++i) {
    if (contains(static_cast<Rule>(i))) out.push_back(static_cast<Rule>(i));
  }
  return out;
}

RuleSet lk_rules() {
  return {Rule::Init, Rule::InitBot, Rule::AndL,    Rule::AndR,    Rule::OrL, Rule::OrR,
          Rule::ImpL, Rule::ImpR,    Rule::WeakenL, Rule::WeakenR, Rule::Cut};
}

RuleSet rule_set(const LogicId& logic) {
  RuleSet rs = lk_rules();
  rs.insert(Rule::Nec);
  if (logic.acc_left()) rs.insert(Rule::AccL);
  if (logic.acc_right()) rs.insert(Rule::AccR);
  if (logic.rosbox()) rs.insert(Rule::RosBox);
  if (logic.ros()) rs.insert(Rule::Ros);
  return rs;
}

// ---------------------------------------------------------------------------
// Formula sets

FormulaSet make_set(std::vector<Formula> fs) {
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  return fs;
}

bool set_contains(const FormulaSet& s, const Formula& f) { return std::binary_search(s.begin(), s.end(), f); }

FormulaSet set_union(const FormulaSet& a, const FormulaSet& b) {
  FormulaSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

FormulaSet set_minus(const FormulaSet& a, const FormulaSet& b) {
  FormulaSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_subset(const FormulaSet& a, const FormulaSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// ---------------------------------------------------------------------------
// Sequent

Sequent::Sequent(std::vector<Formula> ante, std::vector<Formula> succ)
    : ante_(make_set(std::move(ante))), succ_(make_set(std::move(succ))) {}

bool Sequent::in_ante(const Formula& f) const { return set_contains(ante_, f); }
bool Sequent::in_succ(const Formula& f) const { return set_contains(succ_, f); }

Sequent Sequent::add_ante(const Formula& f) const {
  Sequent s = *this;
  auto it = std::lower_bound(s.ante_.begin(), s.ante_.end(), f);
  if (it == s.ante_.end() || !(*it == f)) s.ante_.insert(it, f);
  return s;
}

Sequent Sequent::add_succ(const Formula& f) const {
  Sequent s = *this;
  auto it = std::lower_bound(s.succ_.begin(), s.succ_.end(), f);
  if (it == s.succ_.end() || !(*it == f)) s.succ_.insert(it, f);
  return s;
}

Sequent Sequent::remove_ante(const Formula& f) const {
  Sequent s = *this;
  auto it = std::lower_bound(s.ante_.begin(), s.ante_.end(), f);
  if (it != s.ante_.end() && *it == f) s.ante_.erase(it);
  return s;
}

Sequent Sequent::remove_succ(const Formula& f) const {
  Sequent s = *this;
  auto it = std::lower_bound(s.succ_.begin(), s.succ_.end(), f);
  if (it != s.succ_.end() && *it == f) s.succ_.erase(it);
  return s;
}

bool Sequent::subset_of(const Sequent& other) const {
  return set_subset(ante_, other.ante_) && set_subset(succ_, other.succ_);
}

Sequent Sequent::join(const Sequent& other) const {
  Sequent s;
  s.ante_ = set_union(ante_, other.ante_);
  s.succ_ = set_union(succ_, other.succ_);
  return s;
}

std::size_t Sequent::hash() const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& f : ante_) h = (h ^ f.hash()) * 0x100000001b3ULL;
  h = (h ^ 0x5e9) * 0x100000001b3ULL;
  for (const auto& f : succ_) h = (h ^ f.hash()) * 0x100000001b3ULL;
  return h;
}

namespace {

std::vector<Formula> parse_side(std::string_view side, std::size_t offset) {
  std::vector<Formula> out;
  if (trim(side).empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = side.find(',', start);
    auto item = side.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (trim(item).empty()) throw ParseError("empty formula in sequent", offset + start);
    try {
      out.push_back(parse_formula(item));
    } catch (const ParseError& e) {
      throw ParseError(std::string("in sequent: ") + e.what(), offset + start + e.position());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

Sequent parse_sequent(std::string_view text) {
  auto arrow = text.find("=>");
  if (arrow == std::string_view::npos) throw ParseError("sequent must contain '=>'", text.size());
  if (text.find("=>", arrow + 2) != std::string_view::npos) throw ParseError("more than one '=>'", text.find("=>", arrow + 2));
  return Sequent(parse_side(text.substr(0, arrow), 0), parse_side(text.substr(arrow + 2), arrow + 2));
}

std::string to_string(const Sequent& s) {
  auto join = [](const FormulaSet& fs) {
    std::string out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (i > 0) out += ", ";
      out += to_string(fs[i]);
    }
    return out;
  };
  std::string a = join(s.ante());
  std::string b = join(s.succ());
  std::string out = a;
  if (!a.empty()) out += ' ';
  out += "=>";
  if (!b.empty()) out += ' ' + b;
  return out;
}

// ---------------------------------------------------------------------------
// Partitions

bool Partition::valid() const {
  auto disjoint = [](const FormulaSet& a, const FormulaSet& b) {
    FormulaSet i;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(i));
    return i.empty();
  };
  return set_union(left.ante(), right.ante()) == of.ante() && set_union(left.succ(), right.succ()) == of.succ() &&
         disjoint(left.ante(), right.ante()) && disjoint(left.succ(), right.succ());
}

PartitionEnumerator::PartitionEnumerator(Sequent s) : seq_(std::move(s)) {
  if (seq_.size() >= 63) throw std::length_error("sequent too large to enumerate partitions");
  count_ = std::uint64_t{1} << seq_.size();
}

Partition PartitionEnumerator::operator[](std::uint64_t index) const {
  std::vector<Formula> la, ls, ra, rs;
  std::size_t bit = 0;
  for (const auto& f : seq_.ante()) ((index >> bit++) & 1 ? ra : la).push_back(f);
  for (const auto& f : seq_.succ()) ((index >> bit++) & 1 ? rs : ls).push_back(f);
  return {Sequent(std::move(la), std::move(ls)), Sequent(std::move(ra), std::move(rs)), seq_};
}

PartitionEnumerator enumerate_partitions(const Sequent& s) { return PartitionEnumerator(s); }

// ---------------------------------------------------------------------------
// Proof construction helpers

Proof make_proof(Sequent conclusion, Rule rule, std::optional<Formula> principal, std::vector<Proof> premises,
                 ProofAux aux) {
  auto node = std::make_shared<ProofNode>();
  node->conclusion = std::move(conclusion);
  node->rule = rule;
  node->principal = principal;
  node->aux = std::move(aux);
  node->premises = std::move(premises);
  return node;
}

std::size_t proof_size(const Proof& p) {
  std::unordered_map<const ProofNode*, std::size_t> memo;
  auto go = [&](auto&& self, const Proof& q) -> std::size_t {
    auto it = memo.find(q.get());
    if (it != memo.end()) return it->second;
    std::size_t total = 1;
    for (const auto& pr : q->premises) total += self(self, pr);
    memo.emplace(q.get(), total);
    return total;
  };
  return go(go, p);
}

std::size_t proof_height(const Proof& p) {
  std::unordered_map<const ProofNode*, std::size_t> memo;
  auto go = [&](auto&& self, const Proof& q) -> std::size_t {
    auto it = memo.find(q.get());
    if (it != memo.end()) return it->second;
    std::size_t h = 0;
    for (const auto& pr : q->premises) h = std::max(h, self(self, pr));
    memo.emplace(q.get(), h + 1);
    return h + 1;
  };
  return go(go, p);
}

bool contains_rule(const Proof& p, Rule r) {
  std::unordered_set<const ProofNode*> seen;
  std::vector<const ProofNode*> stack{p.get()};
  while (!stack.empty()) {
    const ProofNode* q = stack.back();
    stack.pop_back();
    if (!seen.insert(q).second) continue;
    if (q->rule == r) return true;
    for (const auto& pr : q->premises) stack.push_back(pr.get());
  }
  return false;
}

Proof weaken_to(const Proof& p, const Sequent& target) {
  if (!p->conclusion.subset_of(target)) {
    throw std::logic_error("weaken_to: " + to_string(p->conclusion) + " is not contained in " + to_string(target));
  }
  Proof cur = p;
  for (const auto& f : target.ante()) {
    if (!cur->conclusion.in_ante(f)) cur = make_proof(cur->conclusion.add_ante(f), Rule::WeakenL, f, {cur});
  }
  for (const auto& f : target.succ()) {
    if (!cur->conclusion.in_succ(f)) cur = make_proof(cur->conclusion.add_succ(f), Rule::WeakenR, f, {cur});
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Checker

std::string_view check_error_name(CheckError e) {
  switch (e) {
    case CheckError::None:
      return "ok";
    case CheckError::UnknownRule:
      return "unknown rule";
    case CheckError::InactiveRule:
      return "inactive rule";
    case CheckError::SchemaMismatch:
      return "schema mismatch";
    case CheckError::PremiseCount:
      return "premise-count mismatch";
  }
  return "?";
}

namespace {

struct Side {
  const FormulaSet& set;
  FormulaSet added;
};

// Is there a single context X with X u added_i = set_i for every i?
bool context_exists(std::initializer_list<Side> sides) {
  FormulaSet lower;
  for (const auto& s : sides) {
    FormulaSet added = make_set(s.added);
    if (!set_subset(added, s.set)) return false;
    lower = set_union(lower, set_minus(s.set, added));
  }
  for (const auto& s : sides) {
    if (!set_subset(lower, s.set)) return false;
  }
  return true;
}

std::size_t expected_premises(Rule r) {
  switch (r) {
    case Rule::Init:
    case Rule::InitBot:
      return 0;
    case Rule::AndR:
    case Rule::OrL:
    case Rule::ImpL:
    case Rule::Cut:
      return 2;
    default:
      return 1;
  }
}

CheckResult fail(CheckError e, std::string detail) { return {e, {}, std::move(detail)}; }

bool split_matches(const FormulaSet& concl_ante, const FormulaSet& gamma1, const FormulaSet& p2_ante,
                   const Formula& consumed, const std::optional<Formula>& principal) {
  FormulaSet extra = principal ? FormulaSet{*principal} : FormulaSet{};
  FormulaSet base = set_union(gamma1, extra);
  FormulaSet without = set_minus(p2_ante, {consumed});
  return set_union(base, without) == concl_ante || set_union(base, p2_ante) == concl_ante;
}

}  // namespace

CheckResult check_node(const ProofNode& node, const LogicId& logic, const RuleSet& allowed) {
  const Rule r = node.rule;
  if (r == Rule::Unknown) return fail(CheckError::UnknownRule, "unknown rule '" + node.unknown_rule_name + "'");
  if (!allowed.contains(r)) return fail(CheckError::InactiveRule, std::string(rule_name(r)) + " is not a rule of this calculus");
  if (node.premises.size() != expected_premises(r)) {
    return fail(CheckError::PremiseCount, std::string(rule_name(r)) + " expects " + std::to_string(expected_premises(r)) +
                                              " premise(s), got " + std::to_string(node.premises.size()));
  }
  const Sequent& c = node.conclusion;
  auto mismatch = [&](const std::string& why) {
    return fail(CheckError::SchemaMismatch, std::string(rule_name(r)) + ": " + why + " at " + to_string(c));
  };
  for (const auto& p : node.premises) {
    if (!p) return fail(CheckError::PremiseCount, "null premise");
  }

  if (r == Rule::Init) {
    if (c.ante().size() != 1 || c.succ() != c.ante()) return mismatch("not of the form phi => phi");
    if (node.principal && !(*node.principal == c.ante()[0])) return mismatch("principal differs from the axiom formula");
    return {};
  }
  if (r == Rule::InitBot) {
    if (c.ante() != FormulaSet{Formula::bot()} || !c.succ().empty()) return mismatch("not of the form false =>");
    return {};
  }
  if (!node.principal) return mismatch("missing principal formula");
  const Formula a = *node.principal;
  const Sequent& p0 = node.premises[0]->conclusion;
  const bool same_ante = c.ante() == p0.ante();
  const bool same_succ = c.succ() == p0.succ();

  switch (r) {
    case Rule::AndL: {
      if (a.kind() != FormulaKind::And) return mismatch("principal is not a conjunction");
      if (node.aux.index != 1 && node.aux.index != 2) return mismatch("index must be 1 or 2");
      Formula comp = node.aux.index == 1 ? a.lhs() : a.rhs();
      if (!same_succ || !context_exists({{c.ante(), {a}}, {p0.ante(), {comp}}})) return mismatch("context mismatch");
      return {};
    }
    case Rule::OrR: {
      if (a.kind() != FormulaKind::Or) return mismatch("principal is not a disjunction");
      if (node.aux.index != 1 && node.aux.index != 2) return mismatch("index must be 1 or 2");
      Formula comp = node.aux.index == 1 ? a.lhs() : a.rhs();
      if (!same_ante || !context_exists({{c.succ(), {a}}, {p0.succ(), {comp}}})) return mismatch("context mismatch");
      return {};
    }
    case Rule::AndR: {
      if (a.kind() != FormulaKind::And) return mismatch("principal is not a conjunction");
      const Sequent& p1 = node.premises[1]->conclusion;
      if (!context_exists({{c.ante(), {}}, {p0.ante(), {}}, {p1.ante(), {}}}) ||
          !context_exists({{c.succ(), {a}}, {p0.succ(), {a.lhs()}}, {p1.succ(), {a.rhs()}}})) {
        return mismatch("context mismatch");
      }
      return {};
    }
    case Rule::OrL: {
      if (a.kind() != FormulaKind::Or) return mismatch("principal is not a disjunction");
      const Sequent& p1 = node.premises[1]->conclusion;
      if (!context_exists({{c.succ(), {}}, {p0.succ(), {}}, {p1.succ(), {}}}) ||
          !context_exists({{c.ante(), {a}}, {p0.ante(), {a.lhs()}}, {p1.ante(), {a.rhs()}}})) {
        return mismatch("context mismatch");
      }
      return {};
    }
    case Rule::ImpR: {
      if (a.kind() != FormulaKind::Imp) return mismatch("principal is not an implication");
      if (!context_exists({{c.ante(), {}}, {p0.ante(), {a.lhs()}}}) ||
          !context_exists({{c.succ(), {a}}, {p0.succ(), {a.rhs()}}})) {
        return mismatch("context mismatch");
      }
      return {};
    }
    case Rule::ImpL:
    case Rule::Cut: {
      // impL: Gamma1 => B, Delta1 | Gamma2, C => Delta2  /  Gamma1, Gamma2, B -> C => Delta1, Delta2
      // cut:  Gamma1 => Delta1, A | A, Gamma2 => Delta2  /  Gamma1, Gamma2 => Delta1, Delta2
      if (r == Rule::ImpL && a.kind() != FormulaKind::Imp) return mismatch("principal is not an implication");
      const Formula left_comp = r == Rule::ImpL ? a.lhs() : a;
      const Formula right_comp = r == Rule::ImpL ? a.rhs() : a;
      const Sequent& p1 = node.premises[1]->conclusion;
      const FormulaSet gamma1 = make_set(node.aux.left_ante);
      const FormulaSet delta1 = make_set(node.aux.left_succ);
      if (p0.ante() != gamma1) return mismatch("left premise antecedent differs from recorded split");
      if (p0.succ() != set_union(delta1, {left_comp})) return mismatch("left premise succedent differs from recorded split");
      if (!p1.in_ante(right_comp)) return mismatch("right premise lacks its active formula");
      std::optional<Formula> principal = r == Rule::ImpL ? std::optional<Formula>(a) : std::nullopt;
      if (!split_matches(c.ante(), gamma1, p1.ante(), right_comp, principal)) return mismatch("antecedent split does not reproduce conclusion");
      if (c.succ() != set_union(delta1, p1.succ())) return mismatch("succedent split does not reproduce conclusion");
      return {};
    }
    case Rule::WeakenL:
      if (!same_succ || !context_exists({{c.ante(), {a}}, {p0.ante(), {}}})) return mismatch("context mismatch");
      return {};
    case Rule::WeakenR:
      if (!same_ante || !context_exists({{c.succ(), {a}}, {p0.succ(), {}}})) return mismatch("context mismatch");
      return {};
    case Rule::Nec:
      if (!a.is_box()) return mismatch("principal is not boxed");
      if (!c.ante().empty() || c.succ() != FormulaSet{a}) return mismatch("conclusion must be => box phi");
      if (!p0.ante().empty() || p0.succ() != FormulaSet{a.body()}) return mismatch("premise must be => phi");
      return {};
    case Rule::AccL: {
      if (a.box_prefix() < logic.n) return mismatch("principal has fewer than n boxes");
      Formula g = Formula::box(unbox(a, logic.n), logic.m);
      if (!same_succ || !context_exists({{c.ante(), {a}}, {p0.ante(), {g, a}}})) return mismatch("context mismatch");
      return {};
    }
    case Rule::AccR: {
      if (a.box_prefix() < logic.m) return mismatch("principal has fewer than m boxes");
      Formula g = Formula::box(unbox(a, logic.m), logic.n);
      if (!same_ante || !context_exists({{c.succ(), {a}}, {p0.succ(), {a, g}}})) return mismatch("context mismatch");
      return {};
    }
    case Rule::RosBox:
      if (a.box_prefix() < 2) return mismatch("principal is not of the form box box phi");
      if (c.ante() != FormulaSet{a} || !c.succ().empty()) return mismatch("conclusion must be box box phi =>");
      if (p0.ante() != FormulaSet{a.body()} || !p0.succ().empty()) return mismatch("premise must be box phi =>");
      return {};
    case Rule::Ros:
      if (!a.is_box()) return mismatch("principal is not boxed");
      if (c.ante() != FormulaSet{a} || !c.succ().empty()) return mismatch("conclusion must be box phi =>");
      if (p0.ante() != FormulaSet{a.body()} || !p0.succ().empty()) return mismatch("premise must be phi =>");
      return {};
    default:
      return fail(CheckError::UnknownRule, "unhandled rule");
  }
}

CheckResult check_proof(const Proof& proof, const LogicId& logic, const RuleSet& allowed) {
  std::unordered_set<const ProofNode*> valid;
  std::vector<std::size_t> path;
  auto go = [&](auto&& self, const Proof& p) -> CheckResult {
    if (valid.count(p.get())) return {};
    CheckResult local = check_node(*p, logic, allowed);
    if (!local) {
      local.path = path;
      return local;
    }
    for (std::size_t i = 0; i < p->premises.size(); ++i) {
      path.push_back(i);
      CheckResult sub = self(self, p->premises[i]);
      path.pop_back();
      if (!sub) return sub;
    }
    valid.insert(p.get());
    return {};
  };
  if (!proof) return fail(CheckError::PremiseCount, "null proof");
  return go(go, proof);
}

CheckResult check_proof(const Proof& proof, const LogicId& logic) { return check_proof(proof, logic, rule_set(logic)); }

CheckResult check_lk_proof(const Proof& proof) { return check_proof(proof, LogicId{}, lk_rules()); }

}  // namespace nmodal
