#pragma once

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bes {

/// Thrown on malformed input text. `pos` is a 0-based byte offset into the
/// offending string.
struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t at);
};

/// Contract violations that are not parse errors (scope violations, unmapped
/// atoms, underivable queries, ...).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Interned atomic proposition. Equality is pointer comparison on the interned
/// name; ordering compares the names themselves so every container iterates in
/// a stable, serialization-based order. User atoms never begin with '@';
/// mapped atoms always do and carry the serialized source formula in their
/// name. The interner is process-wide and internally synchronized.
class Atom {
 public:
  /// Interns a user-level atom, validating [A-Za-z_][A-Za-z0-9_']*.
  static Atom user(std::string_view name);
  /// Interns any name, including '@'-prefixed mapped names.
  static Atom from_name(std::string_view name);

  const std::string& name() const { return *name_; }
  bool mapped() const { return !name_->empty() && (*name_)[0] == '@'; }

  bool operator==(const Atom& o) const { return name_ == o.name_; }
  std::strong_ordering operator<=>(const Atom& o) const {
    if (name_ == o.name_) return std::strong_ordering::equal;
    return *name_ <=> *o.name_;
  }

 private:
  explicit Atom(const std::string* n) : name_(n) {}
  const std::string* name_;
};

enum class Conn : std::uint8_t { Atom, Bottom, And, Or, Imp };

/// Immutable formula tree over atoms, bot, &, | and ->. The canonical text
/// rendering is cached at construction; it parses back to the same tree, so
/// comparing renderings is exactly structural comparison.
class Formula {
 public:
  static Formula atom(Atom a);
  static Formula atom(std::string_view user_name) { return atom(Atom::user(user_name)); }
  static Formula bottom();
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  static Formula neg(Formula a) { return imp(std::move(a), bottom()); }

  Conn kind() const;
  bool is_atom() const { return kind() == Conn::Atom; }
  Atom as_atom() const;
  Formula left() const;
  Formula right() const;

  /// Number of connective occurrences; bot counts 1, atoms 0.
  int degree() const;
  /// Canonical rendering with minimal parentheses.
  const std::string& text() const;

  bool operator==(const Formula& o) const;
  std::strong_ordering operator<=>(const Formula& o) const;

  struct Rep;  // implementation detail, defined in syntax.cpp

 private:
  explicit Formula(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

/// Duplicate-free collection with ascending canonical order.
template <typename T>
class OrderedSet {
 public:
  OrderedSet() = default;
  OrderedSet(std::initializer_list<T> items) {
    for (const T& t : items) insert(t);
  }

  void insert(const T& t) {
    auto it = std::lower_bound(v_.begin(), v_.end(), t);
    if (it == v_.end() || !(*it == t)) v_.insert(it, t);
  }
  bool contains(const T& t) const {
    auto it = std::lower_bound(v_.begin(), v_.end(), t);
    return it != v_.end() && *it == t;
  }
  bool subset_of(const OrderedSet& o) const {
    for (const T& t : v_)
      if (!o.contains(t)) return false;
    return true;
  }
  OrderedSet unite(const OrderedSet& o) const {
    OrderedSet r = *this;
    for (const T& t : o.v_) r.insert(t);
    return r;
  }
  OrderedSet minus(const OrderedSet& o) const {
    OrderedSet r;
    for (const T& t : v_)
      if (!o.contains(t)) r.v_.push_back(t);
    return r;
  }
  OrderedSet minus(const T& x) const {
    OrderedSet r;
    for (const T& t : v_)
      if (!(t == x)) r.v_.push_back(t);
    return r;
  }
  OrderedSet with(const T& x) const {
    OrderedSet r = *this;
    r.insert(x);
    return r;
  }

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const T& at(std::size_t i) const { return v_[i]; }

  bool operator==(const OrderedSet& o) const { return v_ == o.v_; }
  auto operator<=>(const OrderedSet& o) const { return v_ <=> o.v_; }

 private:
  std::vector<T> v_;
};

using FormulaSet = OrderedSet<Formula>;
using AtomSet = OrderedSet<Atom>;

/// Two-sided sequent over formula sets. Both sides may be empty.
struct Sequent {
  FormulaSet left, right;
  std::string text() const;
  bool operator==(const Sequent& o) const = default;
  auto operator<=>(const Sequent& o) const = default;
};

/// Sequent over atoms only.
struct AtomicSequent {
  AtomSet left, right;
  /// this subsumes o iff left ⊆ o.left and right ⊆ o.right; with weakening
  /// built into derivability, a subsuming sequent entails the subsumed one.
  bool subsumes(const AtomicSequent& o) const {
    return left.subset_of(o.left) && right.subset_of(o.right);
  }
  std::string text() const;
  bool operator==(const AtomicSequent& o) const = default;
  auto operator<=>(const AtomicSequent& o) const = default;
};

Sequent to_sequent(const AtomicSequent& s);
/// Empty result when some formula is not an atom.
std::optional<AtomicSequent> to_atomic(const Sequent& s);

/// Smallest superset of `set` closed under immediate subformulas.
FormulaSet subformula_closure(const FormulaSet& set);
int degree(const FormulaSet& set);

AtomSet atoms_of(const Formula& f);
AtomSet atoms_of(const Sequent& s);

Formula parse_formula(std::string_view text);
Sequent parse_sequent(std::string_view text);
/// Accepts plain atoms plus mapped-atom tokens of the form @(<formula>).
AtomicSequent parse_atomic_sequent(std::string_view text);
/// "Gamma |= Delta" with formula lists on both sides.
Sequent parse_judgment(std::string_view text);

std::string latex(const Atom& a);
std::string latex(const Formula& f);
std::string latex(const Sequent& s);
std::string latex(const AtomicSequent& s);

}  // namespace bes
