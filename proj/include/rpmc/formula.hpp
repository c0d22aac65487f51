#pragma once

#include "rpmc/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rpmc {

enum class Comparison { Less, LessEqual, Equal, GreaterEqual, Greater };

std::string_view to_string(Comparison cmp);

/// Exact `lhs ~ rhs`.
bool compare(const Rational& lhs, Comparison cmp, const Rational& rhs);

/// Robust and classical logics share one syntax; the mode selects semantics
/// and the admissible fragment.
enum class LogicMode { Rpctl, RpctlStar, Pctl, PctlStar };

std::string_view to_string(LogicMode mode);
std::optional<LogicMode> parse_logic_mode(std::string_view text);

constexpr bool is_robust(LogicMode mode) { return mode == LogicMode::Rpctl || mode == LogicMode::RpctlStar; }
constexpr bool is_star(LogicMode mode) { return mode == LogicMode::RpctlStar || mode == LogicMode::PctlStar; }

enum class NodeKind { True, False, Atom, Not, And, Or, Implies, Prob, Next, Eventually, Always };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula node shared by state and path formulas.
///
/// A node is a state formula when no temporal operator occurs outside a
/// probability operator; any other node is a path formula. Structural
/// equality is deep and hash-accelerated, so equal subtrees built separately
/// compare equal.
class Formula {
 public:
  static FormulaPtr make_true();
  static FormulaPtr make_false();
  static FormulaPtr atom(std::string name);
  static FormulaPtr negation(FormulaPtr operand);
  static FormulaPtr conjunction(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr disjunction(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr implication(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr probability(Comparison cmp, Rational threshold, FormulaPtr body);
  static FormulaPtr next(FormulaPtr operand);
  static FormulaPtr eventually(FormulaPtr operand);
  static FormulaPtr always(FormulaPtr operand);

  /// Rebuilds a node of the same kind (and atom/comparison/threshold) over new children.
  static FormulaPtr with_children(const Formula& like, std::vector<FormulaPtr> children);

  NodeKind kind() const { return kind_; }
  const std::string& atom_name() const { return atom_; }
  Comparison comparison() const { return cmp_; }
  const Rational& threshold() const { return threshold_; }

  std::span<const FormulaPtr> children() const { return children_; }
  const FormulaPtr& child(std::size_t i) const { return children_.at(i); }

  bool is_state() const { return is_state_; }
  bool is_temporal() const {
    return kind_ == NodeKind::Next || kind_ == NodeKind::Eventually || kind_ == NodeKind::Always;
  }
  std::size_t hash() const { return hash_; }

  friend bool operator==(const Formula& a, const Formula& b);

  Formula(NodeKind kind, std::string atom, Comparison cmp, Rational threshold, std::vector<FormulaPtr> children);

 private:
  NodeKind kind_;
  std::string atom_;
  Comparison cmp_ = Comparison::GreaterEqual;
  Rational threshold_;
  std::vector<FormulaPtr> children_;
  bool is_state_ = true;
  std::size_t hash_ = 0;
};

struct FormulaHash {
  std::size_t operator()(const FormulaPtr& f) const { return f->hash(); }
};
struct FormulaEqual {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return a == b || *a == *b; }
};

/// A formula together with the logic it is to be read in.
struct TaggedFormula {
  LogicMode mode;
  FormulaPtr formula;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised when a formula is outside the fragment admitted by a logic, or an
/// operation is applied in the wrong logic.
class FormulaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grammar, loosest binding first:
///   implication := disjunction ["->" implication]
///   disjunction := conjunction {"|" conjunction}
///   conjunction := unary {"&" unary}
///   unary       := ("!" | "X" | "F" | "G") unary | primary
///   primary     := "true" | "false" | atom | "P" cmp prob "[" implication "]" | "(" implication ")"
/// with cmp in {<, <=, =, >=, >} and prob either a decimal or "a/b".
TaggedFormula parse_formula(std::string_view text, LogicMode mode);

/// Throws FormulaError if `f` is not a well-formed top-level formula of `mode`.
void check_well_formed(const FormulaPtr& f, LogicMode mode);

/// Concrete syntax with minimal parentheses; parse_formula(print_formula(f)) == f.
std::string print_formula(const Formula& f);
inline std::string print_formula(const FormulaPtr& f) { return print_formula(*f); }

/// Distinct subformulas, children before parents.
std::vector<FormulaPtr> closure(const FormulaPtr& f);

bool is_implication_free(const FormulaPtr& f);

/// Classical rewrite a -> b  ==>  !a | b. Throws FormulaError in robust modes,
/// where implication does not decompose this way.
TaggedFormula rewrite_implications(const TaggedFormula& f);

/// |closure(f)| plus the longest threshold encoding (0 without thresholds).
std::size_t formula_size(const FormulaPtr& f);

/// Number of distinct subformulas; the size measure used for translated formulas.
std::size_t distinct_node_count(const FormulaPtr& f);

}  // namespace rpmc
