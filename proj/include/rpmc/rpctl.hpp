#pragma once

#include "rpmc/dtmc.hpp"
#include "rpmc/formula.hpp"
#include "rpmc/truth_value.hpp"

#include <array>
#include <string>
#include <vector>

namespace rpmc {

/// Per-level satisfaction sets of one subformula, indexed like kLevels: entry
/// k-1 holds the states whose value has bit k set. For canonical values this
/// is exactly {s | V(s) >= level k}.
using LevelSets = std::array<StateSet, 4>;

/// One measure per level (bit), per state.
using LevelMeasures = std::array<ProbVector, 4>;

/// Satisfaction sets Sat(psi, t) for every subformula psi and all five
/// levels t; Sat(psi, 0000) is the full state set. For a path subformula
/// (X, F, G) the row at level t holds the states from which the level-t
/// lowering of the path formula holds almost surely.
struct SatTable {
  std::vector<FormulaPtr> subformulas;            // closure order
  std::vector<std::array<StateSet, 5>> sets;      // indexed like kChain
  /// Number of satisfaction sets materialized while building the table.
  std::size_t computations = 0;

  const std::array<StateSet, 5>& of(const FormulaPtr& f) const;
};

struct SubformulaMeasures {
  std::string formula;
  /// Per state, the measure behind each of the four bits (or levels).
  std::vector<std::array<Rational, 4>> per_state;
};

struct CheckResult {
  TruthValue initial_value;
  std::vector<TruthValue> per_state;
  /// True iff every per-state value of the checked formula is canonical.
  bool canonical = true;
  /// Subformulas (printed) that evaluate to a non-canonical vector somewhere.
  std::vector<std::string> non_canonical_subformulas;
  std::vector<SubformulaMeasures> measures;
  SatTable sat;
};

LevelSets sat_prob_next(const TransitionMatrix& matrix, Comparison cmp, const Rational& threshold,
                        const LevelSets& operand, LevelMeasures* measures = nullptr);

/// Level 1111 by safety, 0111 by co-Buchi, 0011 by Buchi, 0001 by reachability.
LevelSets sat_prob_box(const TransitionMatrix& matrix, Comparison cmp, const Rational& threshold,
                       const LevelSets& operand, LevelMeasures* measures = nullptr);

/// Every level by reachability.
LevelSets sat_prob_diamond(const TransitionMatrix& matrix, Comparison cmp, const Rational& threshold,
                           const LevelSets& operand, LevelMeasures* measures = nullptr);

/// Bottom-up satisfaction-set model checking of an rPCTL formula.
CheckResult check_rpctl(const Dtmc& m, const TaggedFormula& f);

/// Classical PCTL with eventually/always/next; the returned set holds the
/// satisfying states.
StateSet check_pctl(const Dtmc& m, const TaggedFormula& f);

}  // namespace rpmc
