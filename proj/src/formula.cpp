#include "nmodal/formula.hpp"

#include <cctype>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace nmodal {

namespace {

using detail::FormulaNode;

std::size_t mix_hash(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct NodeKey {
  FormulaKind kind;
  const FormulaNode* lhs;
  const FormulaNode* rhs;
  const FormulaNode* payload;
  std::string name;

  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const noexcept {
    std::size_t h = static_cast<std::size_t>(k.kind);
    h = mix_hash(h, std::hash<const void*>{}(k.lhs));
    h = mix_hash(h, std::hash<const void*>{}(k.rhs));
    h = mix_hash(h, std::hash<const void*>{}(k.payload));
    h = mix_hash(h, std::hash<std::string>{}(k.name));
    return h;
  }
};

class Interner {
 public:
  static Interner& instance() {
    static Interner interner;
    return interner;
  }

  const FormulaNode* intern(NodeKey key) {
    std::lock_guard lock(mutex_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second.get();
    auto node = std::make_unique<FormulaNode>(key.kind);
    node->lhs = key.lhs;
    node->rhs = key.rhs;
    std::size_t h = std::hash<int>{}(static_cast<int>(key.kind) + 17);
    switch (key.kind) {
      case FormulaKind::Bot:
        break;
      case FormulaKind::Var:
        if (key.payload != nullptr) {
          node->set_quote_payload(key.payload);
          h = mix_hash(h, key.payload->hash);
          h = mix_hash(h, 0x51);
        } else {
          node->atom = Atom::base(key.name);
          h = mix_hash(h, std::hash<std::string>{}(key.name));
        }
        break;
      case FormulaKind::Box:
        h = mix_hash(h, key.lhs->hash);
        node->size = key.lhs->size + 1;
        node->classical = false;
        break;
      default:
        h = mix_hash(mix_hash(h, key.lhs->hash), key.rhs->hash);
        node->size = key.lhs->size + key.rhs->size + 1;
        node->classical = key.lhs->classical && key.rhs->classical;
        break;
    }
    node->hash = h;
    const FormulaNode* raw = node.get();
    table_.emplace(std::move(key), std::move(node));
    return raw;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<NodeKey, std::unique_ptr<FormulaNode>, NodeKeyHash> table_;
};

std::strong_ordering compare_nodes(const FormulaNode* a, const FormulaNode* b) noexcept;

std::strong_ordering compare_atoms(const Atom& a, const Atom& b) noexcept {
  if (a.is_quote() != b.is_quote()) return a.is_quote() ? std::strong_ordering::greater : std::strong_ordering::less;
  if (a.is_quote()) return compare_nodes(a.payload().node(), b.payload().node());
  int c = a.name().compare(b.name());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering compare_nodes(const FormulaNode* a, const FormulaNode* b) noexcept {
  while (true) {
    if (a == b) return std::strong_ordering::equal;
    if (a->kind != b->kind) return a->kind <=> b->kind;
    switch (a->kind) {
      case FormulaKind::Bot:
        return std::strong_ordering::equal;
      case FormulaKind::Var:
        return compare_atoms(a->atom, b->atom);
      case FormulaKind::Box:
        a = a->lhs;
        b = b->lhs;
        continue;
      default: {
        auto c = compare_nodes(a->lhs, b->lhs);
        if (c != std::strong_ordering::equal) return c;
        a = a->rhs;
        b = b->rhs;
        continue;
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

Formula Formula::bot() {
  static const FormulaNode* node = Interner::instance().intern({FormulaKind::Bot, nullptr, nullptr, nullptr, {}});
  return Formula(node);
}

Formula Formula::top() { return imp(bot(), bot()); }

Formula Formula::var(const Atom& atom) {
  if (atom.is_quote()) return quote(atom.payload());
  return base(atom.name());
}

Formula Formula::base(std::string_view name) {
  return Formula(Interner::instance().intern({FormulaKind::Var, nullptr, nullptr, nullptr, std::string(name)}));
}

Formula Formula::quote(Formula payload) {
  return Formula(Interner::instance().intern({FormulaKind::Var, nullptr, nullptr, payload.node_, {}}));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  return Formula(Interner::instance().intern({FormulaKind::And, lhs.node_, rhs.node_, nullptr, {}}));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  return Formula(Interner::instance().intern({FormulaKind::Or, lhs.node_, rhs.node_, nullptr, {}}));
}

Formula Formula::imp(Formula lhs, Formula rhs) {
  return Formula(Interner::instance().intern({FormulaKind::Imp, lhs.node_, rhs.node_, nullptr, {}}));
}

Formula Formula::neg(Formula f) { return imp(f, bot()); }

Formula Formula::box(Formula body, unsigned times) {
  Formula f = body;
  for (unsigned i = 0; i < times; ++i) {
    f = Formula(Interner::instance().intern({FormulaKind::Box, f.node_, nullptr, nullptr, {}}));
  }
  return f;
}

bool Formula::is_binary() const noexcept {
  auto k = kind();
  return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::Imp;
}

bool Formula::is_top() const noexcept {
  return kind() == FormulaKind::Imp && lhs().is_bot() && rhs().is_bot();
}

unsigned Formula::box_prefix() const noexcept {
  unsigned k = 0;
  for (const FormulaNode* n = node_; n->kind == FormulaKind::Box; n = n->lhs) ++k;
  return k;
}

std::strong_ordering Formula::operator<=>(const Formula& other) const noexcept {
  return compare_nodes(node_, other.node_);
}

Atom Atom::base(std::string name) {
  Atom a;
  a.name_ = std::move(name);
  return a;
}

Atom Atom::quote(Formula payload) {
  Atom a;
  a.payload_ = payload.node();
  return a;
}

std::strong_ordering Atom::operator<=>(const Atom& other) const noexcept { return compare_atoms(*this, other); }

// ---------------------------------------------------------------------------
// Variable analysis

AtomSet SignedVarSet::all() const {
  AtomSet out = pos;
  out.insert(neg.begin(), neg.end());
  return out;
}

void collect_signed_vars(const Formula& f, bool positive, SignedVarSet& out) {
  switch (f.kind()) {
    case FormulaKind::Bot:
      return;
    case FormulaKind::Var:
      (positive ? out.pos : out.neg).insert(f.atom());
      return;
    case FormulaKind::Box:
      collect_signed_vars(f.body(), positive, out);
      return;
    case FormulaKind::Imp:
      collect_signed_vars(f.lhs(), !positive, out);
      collect_signed_vars(f.rhs(), positive, out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      collect_signed_vars(f.lhs(), positive, out);
      collect_signed_vars(f.rhs(), positive, out);
      return;
  }
}

SignedVarSet signed_vars(const Formula& f) {
  SignedVarSet out;
  collect_signed_vars(f, true, out);
  return out;
}

BoxDecomposition box_decompose(const Formula& f) {
  unsigned k = 0;
  Formula core = f;
  while (core.is_box()) {
    core = core.body();
    ++k;
  }
  return {k, core};
}

Formula unbox(const Formula& f, unsigned times) {
  Formula out = f;
  for (unsigned i = 0; i < times; ++i) {
    if (!out.is_box()) throw std::logic_error("unbox: not enough leading boxes in " + to_string(f));
    out = out.body();
  }
  return out;
}

namespace {
void collect_atoms(const Formula& f, AtomSet& out) {
  switch (f.kind()) {
    case FormulaKind::Bot:
      return;
    case FormulaKind::Var:
      out.insert(f.atom());
      return;
    case FormulaKind::Box:
      collect_atoms(f.body(), out);
      return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
  }
}
}  // namespace

AtomSet atoms_of(const Formula& f) {
  AtomSet out;
  collect_atoms(f, out);
  return out;
}

bool contains_quote(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Var:
      return f.atom().is_quote();
    case FormulaKind::Box:
      return contains_quote(f.body());
    default:
      return contains_quote(f.lhs()) || contains_quote(f.rhs());
  }
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum Prec { kImp = 1, kOr = 2, kAnd = 3, kUnary = 4 };

bool is_negation(const Formula& f) { return f.kind() == FormulaKind::Imp && f.rhs().is_bot(); }

int precedence(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Imp:
      return is_negation(f) ? kUnary : kImp;
    case FormulaKind::Or:
      return kOr;
    case FormulaKind::And:
      return kAnd;
    default:
      return kUnary;
  }
}

void print(const Formula& f, std::string& out);

void print_operand(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  print(f, out);
  if (parens) out += ')';
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Bot:
      out += "false";
      return;
    case FormulaKind::Var:
      out += to_string(f.atom());
      return;
    case FormulaKind::Box:
      out += "box ";
      print_operand(f.body(), precedence(f.body()) < kUnary, out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or: {
      int p = precedence(f);
      print_operand(f.lhs(), precedence(f.lhs()) < p, out);
      out += f.kind() == FormulaKind::And ? " & " : " | ";
      print_operand(f.rhs(), precedence(f.rhs()) <= p, out);
      return;
    }
    case FormulaKind::Imp:
      if (f.is_top()) {
        out += "true";
        return;
      }
      if (is_negation(f)) {
        out += '~';
        print_operand(f.lhs(), precedence(f.lhs()) < kUnary, out);
        return;
      }
      print_operand(f.lhs(), precedence(f.lhs()) <= kImp, out);
      out += " -> ";
      print_operand(f.rhs(), precedence(f.rhs()) < kImp, out);
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string to_string(const Atom& a) {
  if (!a.is_quote()) return a.name();
  return "q{" + to_string(a.payload()) + "}";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { End, Ident, Box, False, True, Tilde, And, Or, Arrow, LParen, RParen, QuoteOpen, RBrace };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c >= 'a' && c <= 'z') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word(s.substr(start, i - start));
      if (word == "q" && i < s.size() && s[i] == '{') {
        ++i;
        out.push_back({Tok::QuoteOpen, start, "q{"});
      } else if (word == "box") {
        out.push_back({Tok::Box, start, word});
      } else if (word == "false") {
        out.push_back({Tok::False, start, word});
      } else if (word == "true") {
        out.push_back({Tok::True, start, word});
      } else {
        out.push_back({Tok::Ident, start, word});
      }
      continue;
    }
    auto two = s.substr(i, 2);
    if (two == "->") {
      out.push_back({Tok::Arrow, start, "->"});
      i += 2;
    } else if (two == "[]") {
      out.push_back({Tok::Box, start, "[]"});
      i += 2;
    } else if (c == '~') {
      out.push_back({Tok::Tilde, start, "~"});
      ++i;
    } else if (c == '&') {
      out.push_back({Tok::And, start, "&"});
      ++i;
    } else if (c == '|') {
      out.push_back({Tok::Or, start, "|"});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, start, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, start, ")"});
      ++i;
    } else if (c == '}') {
      out.push_back({Tok::RBrace, start, "}"});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = parse_imp();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::Arrow) {
      next();
      return Formula::imp(lhs, parse_imp());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (peek().kind == Tok::Or) {
      next();
      f = Formula::disj(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (peek().kind == Tok::And) {
      next();
      f = Formula::conj(f, parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Box:
        next();
        return Formula::box(parse_unary());
      case Tok::Tilde:
        next();
        return Formula::neg(parse_unary());
      default:
        return parse_atom();
    }
  }

  Formula parse_atom() {
    Token t = next();
    switch (t.kind) {
      case Tok::False:
        return Formula::bot();
      case Tok::True:
        return Formula::top();
      case Tok::Ident:
        return Formula::base(t.text);
      case Tok::QuoteOpen: {
        Formula payload = parse_imp();
        if (peek().kind != Tok::RBrace) fail("unbalanced quote atom: expected '}'");
        next();
        return Formula::quote(payload);
      }
      case Tok::LParen: {
        Formula inner = parse_imp();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        next();
        return inner;
      }
      case Tok::End:
        throw ParseError("unexpected end of input", t.pos);
      default:
        throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

}  // namespace nmodal
