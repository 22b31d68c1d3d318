#include "bes/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <set>

namespace bes {

ParseError::ParseError(const std::string& msg, std::size_t at)
    : std::runtime_error(msg + " (at offset " + std::to_string(at) + ")"), pos(at) {}

// ---------------------------------------------------------------------------
// Atom interner

namespace {

const std::string* intern_name(std::string_view name) {
  static std::mutex mu;
  static std::set<std::string, std::less<>> pool;
  std::lock_guard<std::mutex> lock(mu);
  auto it = pool.find(name);
  if (it == pool.end()) it = pool.emplace(name).first;
  return &*it;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

Atom Atom::user(std::string_view name) {
  if (name.empty()) throw Error("atom name must be non-empty");
  if (name[0] == '@') throw Error("user atoms must not begin with '@': " + std::string(name));
  if (name == "bot") throw Error("'bot' is reserved and cannot name an atom");
  if (!is_ident_start(name[0])) throw Error("invalid atom name: " + std::string(name));
  for (char c : name.substr(1))
    if (!is_ident_char(c)) throw Error("invalid atom name: " + std::string(name));
  return Atom(intern_name(name));
}

Atom Atom::from_name(std::string_view name) {
  if (name.empty()) throw Error("atom name must be non-empty");
  return Atom(intern_name(name));
}

// ---------------------------------------------------------------------------
// Formula representation

struct Formula::Rep {
  Conn kind;
  std::optional<Atom> atom;                // set iff kind == Atom
  std::shared_ptr<const Rep> left, right;  // set iff binary
  int degree = 0;
  std::string text;
};

namespace {

// Precedence: -> loosest (1), then | (2), then & (3); all right-associative.
int precedence(Conn k) {
  switch (k) {
    case Conn::Imp: return 1;
    case Conn::Or: return 2;
    case Conn::And: return 3;
    default: return 4;
  }
}

void render_rep(const Formula::Rep& r, int min_prec, std::string& out) {
  switch (r.kind) {
    case Conn::Atom:
      out += r.atom->name();
      return;
    case Conn::Bottom:
      out += "bot";
      return;
    default: {
      int p = precedence(r.kind);
      const char* op = r.kind == Conn::And ? " & " : r.kind == Conn::Or ? " | " : " -> ";
      bool parens = p < min_prec;
      if (parens) out += '(';
      render_rep(*r.left, p + 1, out);  // same-level left child gets parens
      out += op;
      render_rep(*r.right, p, out);
      if (parens) out += ')';
      return;
    }
  }
}

std::shared_ptr<const Formula::Rep> make_rep(Conn kind, std::optional<Atom> atom,
                                             std::shared_ptr<const Formula::Rep> l,
                                             std::shared_ptr<const Formula::Rep> r) {
  auto rep = std::make_shared<Formula::Rep>();
  rep->kind = kind;
  rep->atom = atom;
  rep->left = std::move(l);
  rep->right = std::move(r);
  switch (kind) {
    case Conn::Atom: rep->degree = 0; break;
    case Conn::Bottom: rep->degree = 1; break;
    default: rep->degree = 1 + rep->left->degree + rep->right->degree; break;
  }
  render_rep(*rep, 0, rep->text);
  return rep;
}

}  // namespace

Formula Formula::atom(Atom a) { return Formula(make_rep(Conn::Atom, a, nullptr, nullptr)); }

Formula Formula::bottom() {
  static const Formula b(make_rep(Conn::Bottom, std::nullopt, nullptr, nullptr));
  return b;
}

Formula Formula::conj(Formula l, Formula r) {
  return Formula(make_rep(Conn::And, std::nullopt, l.rep_, r.rep_));
}
Formula Formula::disj(Formula l, Formula r) {
  return Formula(make_rep(Conn::Or, std::nullopt, l.rep_, r.rep_));
}
Formula Formula::imp(Formula l, Formula r) {
  return Formula(make_rep(Conn::Imp, std::nullopt, l.rep_, r.rep_));
}

Conn Formula::kind() const { return rep_->kind; }

Atom Formula::as_atom() const {
  assert(rep_->kind == Conn::Atom);
  return *rep_->atom;
}

Formula Formula::left() const {
  assert(rep_->left);
  return Formula(rep_->left);
}

Formula Formula::right() const {
  assert(rep_->right);
  return Formula(rep_->right);
}

int Formula::degree() const { return rep_->degree; }
const std::string& Formula::text() const { return rep_->text; }

bool Formula::operator==(const Formula& o) const {
  return rep_ == o.rep_ || rep_->text == o.rep_->text;
}
std::strong_ordering Formula::operator<=>(const Formula& o) const {
  if (rep_ == o.rep_) return std::strong_ordering::equal;
  return rep_->text <=> o.rep_->text;
}

// ---------------------------------------------------------------------------
// Sequents and closures

std::string Sequent::text() const {
  std::string out;
  bool first = true;
  for (const Formula& f : left) {
    if (!first) out += ", ";
    out += f.text();
    first = false;
  }
  if (!left.empty()) out += ' ';
  out += "=>";
  first = true;
  for (const Formula& f : right) {
    out += first ? " " : ", ";
    out += f.text();
    first = false;
  }
  return out;
}

std::string AtomicSequent::text() const { return to_sequent(*this).text(); }

Sequent to_sequent(const AtomicSequent& s) {
  Sequent out;
  for (const Atom& a : s.left) out.left.insert(Formula::atom(a));
  for (const Atom& a : s.right) out.right.insert(Formula::atom(a));
  return out;
}

std::optional<AtomicSequent> to_atomic(const Sequent& s) {
  AtomicSequent out;
  for (const Formula& f : s.left) {
    if (!f.is_atom()) return std::nullopt;
    out.left.insert(f.as_atom());
  }
  for (const Formula& f : s.right) {
    if (!f.is_atom()) return std::nullopt;
    out.right.insert(f.as_atom());
  }
  return out;
}

FormulaSet subformula_closure(const FormulaSet& set) {
  FormulaSet out;
  std::vector<Formula> stack(set.begin(), set.end());
  while (!stack.empty()) {
    Formula f = stack.back();
    stack.pop_back();
    if (out.contains(f)) continue;
    out.insert(f);
    if (f.kind() == Conn::And || f.kind() == Conn::Or || f.kind() == Conn::Imp) {
      stack.push_back(f.left());
      stack.push_back(f.right());
    }
  }
  return out;
}

int degree(const FormulaSet& set) {
  int d = 0;
  for (const Formula& f : set) d += f.degree();
  return d;
}

namespace {
void collect_atoms(const Formula& f, AtomSet& out) {
  switch (f.kind()) {
    case Conn::Atom: out.insert(f.as_atom()); return;
    case Conn::Bottom: return;
    default:
      collect_atoms(f.left(), out);
      collect_atoms(f.right(), out);
      return;
  }
}
}  // namespace

AtomSet atoms_of(const Formula& f) {
  AtomSet out;
  collect_atoms(f, out);
  return out;
}

AtomSet atoms_of(const Sequent& s) {
  AtomSet out;
  for (const Formula& f : s.left) collect_atoms(f, out);
  for (const Formula& f : s.right) collect_atoms(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

// formula := imp; imp := or ("->" imp)?; or := and ("|" and)*;
// and := unit ("&" unit)*; unit := atom | "bot" | "~" unit | "(" formula ")".
// '|' and '&' lists fold to the right.
class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) pos_++;
  }
  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool try_symbol(std::string_view sym) {
    skip_ws();
    if (text_.substr(pos_).starts_with(sym)) {
      pos_ += sym.size();
      return true;
    }
    return false;
  }
  // Disjunction bar; must not swallow the '|=' judgment or '|-' rule arrows.
  bool try_or_bar() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '|' &&
        (pos_ + 1 >= text_.size() || (text_[pos_ + 1] != '=' && text_[pos_ + 1] != '-'))) {
      pos_++;
      return true;
    }
    return false;
  }
  void expect_symbol(std::string_view sym) {
    if (!try_symbol(sym)) fail("expected '" + std::string(sym) + "'");
  }
  // Maximal identifier token, or empty if none.
  std::string_view try_ident() {
    skip_ws();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) return {};
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) pos_++;
    return text_.substr(start, pos_ - start);
  }
  // Balanced-paren body after "@(", excluding the closing ')'.
  std::string_view mapped_atom_body() {
    expect_symbol("@");
    expect_symbol("(");
    std::size_t start = pos_;
    int depth = 1;
    while (pos_ < text_.size() && depth > 0) {
      if (text_[pos_] == '(') depth++;
      if (text_[pos_] == ')') depth--;
      pos_++;
    }
    if (depth != 0) fail("unterminated mapped atom");
    return text_.substr(start, pos_ - 1 - start);
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Formula parse_imp(Lexer& lx);

Formula parse_unit(Lexer& lx) {
  if (lx.try_symbol("~")) return Formula::neg(parse_unit(lx));
  if (lx.try_symbol("(")) {
    Formula f = parse_imp(lx);
    lx.expect_symbol(")");
    return f;
  }
  if (lx.peek() == '@') lx.fail("user atoms must not begin with '@'");
  std::string_view id = lx.try_ident();
  if (id.empty()) lx.fail("expected formula");
  if (id == "bot") return Formula::bottom();
  return Formula::atom(Atom::user(id));
}

Formula parse_and(Lexer& lx) {
  Formula f = parse_unit(lx);
  if (lx.try_symbol("&")) return Formula::conj(f, parse_and(lx));
  return f;
}

Formula parse_or(Lexer& lx) {
  Formula f = parse_and(lx);
  if (lx.try_or_bar()) return Formula::disj(f, parse_or(lx));
  return f;
}

Formula parse_imp(Lexer& lx) {
  Formula f = parse_or(lx);
  if (lx.try_symbol("->")) return Formula::imp(f, parse_imp(lx));
  return f;
}

// `stop` is the first character of the separator that ends the list.
FormulaSet parse_formula_list(Lexer& lx, char stop) {
  FormulaSet out;
  if (lx.eof() || lx.peek() == stop) return out;
  out.insert(parse_imp(lx));
  while (lx.try_symbol(",")) out.insert(parse_imp(lx));
  return out;
}

Atom parse_one_atom(Lexer& lx) {
  if (lx.peek() == '@') {
    std::string_view body = lx.mapped_atom_body();
    Formula f = parse_formula(body);
    if (f.is_atom())
      lx.fail("mapped atom must wrap a non-atomic formula: @(" + std::string(body) + ")");
    return Atom::from_name("@(" + f.text() + ")");
  }
  std::string_view id = lx.try_ident();
  if (id.empty()) lx.fail("expected atom");
  if (id == "bot") lx.fail("'bot' is not an atom");
  return Atom::user(id);
}

AtomSet parse_atom_list(Lexer& lx, char stop) {
  AtomSet out;
  if (lx.eof() || lx.peek() == stop) return out;
  out.insert(parse_one_atom(lx));
  while (lx.try_symbol(",")) out.insert(parse_one_atom(lx));
  return out;
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Lexer lx(text);
  Formula f = parse_imp(lx);
  if (!lx.eof()) lx.fail("unexpected trailing input");
  return f;
}

Sequent parse_sequent(std::string_view text) {
  Lexer lx(text);
  Sequent s;
  s.left = parse_formula_list(lx, '=');
  lx.expect_symbol("=>");
  s.right = parse_formula_list(lx, '\0');
  if (!lx.eof()) lx.fail("unexpected trailing input");
  return s;
}

AtomicSequent parse_atomic_sequent(std::string_view text) {
  Lexer lx(text);
  AtomicSequent s;
  s.left = parse_atom_list(lx, '=');
  lx.expect_symbol("=>");
  s.right = parse_atom_list(lx, '\0');
  if (!lx.eof()) lx.fail("unexpected trailing input");
  return s;
}

Sequent parse_judgment(std::string_view text) {
  Lexer lx(text);
  Sequent s;
  s.left = parse_formula_list(lx, '|');
  lx.expect_symbol("|=");
  s.right = parse_formula_list(lx, '\0');
  if (!lx.eof()) lx.fail("unexpected trailing input");
  return s;
}

// ---------------------------------------------------------------------------
// LaTeX rendering

namespace {

std::string latex_escape_ident(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == '_')
      out += "\\_";
    else
      out += c;
  }
  return out;
}

void latex_rep(const Formula& f, int min_prec, std::string& out) {
  switch (f.kind()) {
    case Conn::Atom: out += latex(f.as_atom()); return;
    case Conn::Bottom: out += "\\bot"; return;
    default: {
      int p = precedence(f.kind());
      const char* op = f.kind() == Conn::And    ? " \\land "
                       : f.kind() == Conn::Or ? " \\lor "
                                               : " \\to ";
      bool parens = p < min_prec;
      if (parens) out += '(';
      latex_rep(f.left(), p + 1, out);
      out += op;
      latex_rep(f.right(), p, out);
      if (parens) out += ')';
      return;
    }
  }
}

template <typename Side>
std::string latex_side(const Side& side) {
  std::string out;
  bool first = true;
  for (const auto& x : side) {
    if (!first) out += ", ";
    out += latex(x);
    first = false;
  }
  return out;
}

}  // namespace

std::string latex(const Atom& a) {
  if (a.mapped()) {
    // "@(q & r)" prints as the proxy-atom notation p^{q \land r}.
    const std::string& n = a.name();
    Formula f = parse_formula(std::string_view(n).substr(2, n.size() - 3));
    std::string out = "p^{";
    latex_rep(f, 0, out);
    out += "}";
    return out;
  }
  return latex_escape_ident(a.name());
}

std::string latex(const Formula& f) {
  std::string out;
  latex_rep(f, 0, out);
  return out;
}

std::string latex(const Sequent& s) {
  return latex_side(s.left) + " \\Rightarrow " + latex_side(s.right);
}

std::string latex(const AtomicSequent& s) {
  return latex_side(s.left) + " \\Rightarrow " + latex_side(s.right);
}

}  // namespace bes
