#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace rpmc::ltl {

enum class LtlKind { True, False, Atom, Not, And, Or, Next, Eventually, Always };

class Ltl;
using LtlPtr = std::shared_ptr<const Ltl>;

/// Valuation of atoms 0..n-1 at one position of a word.
using Letter = std::vector<bool>;

/// Classical LTL over indexed atoms with next, eventually and always.
///
/// The factories fold constants, idempotent and complementary operands, and
/// apply a few temporal identities (X commutes with F and G, G F and F G
/// absorb X, F and G, like operators merge across & and |). An operand that
/// syntactically implies the other is absorbed, and a shared operand is
/// factored out of (z | x) & (z | y) and its dual. Formulas built by the
/// translations stay small this way.
class Ltl {
 public:
  static LtlPtr make_true();
  static LtlPtr make_false();
  static LtlPtr atom(std::size_t index);
  static LtlPtr negation(LtlPtr operand);
  static LtlPtr conjunction(LtlPtr lhs, LtlPtr rhs);
  static LtlPtr disjunction(LtlPtr lhs, LtlPtr rhs);
  static LtlPtr next(LtlPtr operand);
  static LtlPtr eventually(LtlPtr operand);
  static LtlPtr always(LtlPtr operand);

  LtlKind kind() const { return kind_; }
  std::size_t atom_index() const { return atom_; }
  const std::vector<LtlPtr>& children() const { return children_; }
  const LtlPtr& child(std::size_t i) const { return children_.at(i); }
  std::size_t hash() const { return hash_; }

  friend bool operator==(const Ltl& a, const Ltl& b);

  /// One operand is the negation of the other.
  static bool complementary(const LtlPtr& a, const LtlPtr& b);

  Ltl(LtlKind kind, std::size_t atom, std::vector<LtlPtr> children);

 private:
  LtlKind kind_;
  std::size_t atom_ = 0;
  std::vector<LtlPtr> children_;
  std::size_t hash_ = 0;
};

struct LtlHash {
  std::size_t operator()(const LtlPtr& f) const { return f->hash(); }
};
struct LtlEqual {
  bool operator()(const LtlPtr& a, const LtlPtr& b) const { return a == b || *a == *b; }
};

/// Negation pushed down to atoms (X, F and G dualize).
LtlPtr to_nnf(const LtlPtr& f);

/// Atoms print as "a0", "a1", ...
std::string to_string(const Ltl& f);

/// One more than the largest atom index occurring in `f` (0 without atoms).
std::size_t atom_bound(const Ltl& f);

std::size_t node_count(const Ltl& f);

}  // namespace rpmc::ltl
