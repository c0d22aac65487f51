#pragma once

#include "rpmc/dtmc.hpp"
#include "rpmc/formula.hpp"
#include "rpmc/ltl.hpp"
#include "rpmc/rpctl.hpp"
#include "rpmc/truth_value.hpp"

#include <span>
#include <unordered_map>
#include <vector>

namespace rpmc {

inline constexpr std::size_t kDefaultAutomatonCap = 100000;

/// "State formula evaluates to at least `level`", as a proposition.
struct ThresholdAtom {
  FormulaPtr formula;
  TruthValue level;
};

/// Values of evaluated state subformulas, and the threshold atoms handed out
/// for them. Atom i is labelled by atom_sets()[i].
class ThresholdEnvironment {
 public:
  explicit ThresholdEnvironment(std::size_t states) : states_(states) {}

  void add(const FormulaPtr& state_formula, std::vector<TruthValue> values);
  bool contains(const FormulaPtr& state_formula) const;
  const std::vector<TruthValue>& values(const FormulaPtr& state_formula) const;

  /// Index of the atom for (state_formula, level); the formula must have been
  /// added. Pairs with the same satisfying set share one atom.
  std::size_t atom(const FormulaPtr& state_formula, TruthValue level);

  std::span<const StateSet> atom_sets() const { return sets_; }
  /// The pair that first introduced each atom.
  const std::vector<ThresholdAtom>& atoms() const { return atoms_; }

 private:
  std::size_t states_;
  std::unordered_map<FormulaPtr, std::vector<TruthValue>, FormulaHash, FormulaEqual> values_;
  std::vector<ThresholdAtom> atoms_;
  std::vector<StateSet> sets_;
};

/// Classical LTL over threshold atoms satisfied by exactly the paths on which
/// the robust path formula evaluates to at least `level`. Maximal state
/// subformulas become atoms and must already be in `env`.
ltl::LtlPtr lower_path(const FormulaPtr& path, TruthValue level, ThresholdEnvironment& env);

/// Robust PCTL* evaluation. Each probability operator is resolved by lowering
/// its path formula at the four levels above 0000 and measuring the lowered
/// LTL formulas on the chain; the value is the largest level whose measure
/// meets the threshold (0000 when none does).
CheckResult check_rpctlstar(const Dtmc& m, const TaggedFormula& f, std::size_t max_automaton_states = kDefaultAutomatonCap);

/// Classical PCTL* satisfaction.
StateSet check_pctlstar(const Dtmc& m, const TaggedFormula& f, std::size_t max_automaton_states = kDefaultAutomatonCap);

}  // namespace rpmc
