#pragma once

#include "rpmc/dtmc.hpp"
#include "rpmc/formula.hpp"
#include "rpmc/ltl.hpp"

#include <random>
#include <span>
#include <string>
#include <vector>

namespace rpmc::testing {

using Rng = std::mt19937_64;

inline const std::vector<std::string> kAtoms = {"a", "b", "c"};

/// Row-stochastic matrix whose entries have denominators at most `max_den`.
TransitionMatrix random_matrix(Rng& rng, std::size_t states, unsigned max_den = 8, std::size_t max_support = 3);

/// Random labelled chain with 1..max_states states over kAtoms, initial state s0.
Dtmc random_dtmc(Rng& rng, std::size_t max_states, unsigned max_den = 8);

/// Chain with exactly `states` states and `edges` transitions (each row gets
/// at least one), labelled over kAtoms.
Dtmc random_sparse_dtmc(Rng& rng, std::size_t states, std::size_t edges);

StateSet random_state_set(Rng& rng, std::size_t states);

Rational random_threshold(Rng& rng);

struct FormulaOptions {
  std::vector<Comparison> comparisons = {Comparison::Less, Comparison::LessEqual, Comparison::Equal,
                                         Comparison::GreaterEqual, Comparison::Greater};
  bool implications = true;
  bool next = true;
  /// Maximum nesting of temporal operators.
  int temporal_depth = 2;
  /// Maximum nesting of boolean connectives between temporal operators.
  int boolean_depth = 2;
};

/// State formula in which every P body is a single X/F/G of a state formula.
FormulaPtr random_pctl_formula(Rng& rng, const FormulaOptions& options);

/// State formula whose P bodies are arbitrary path formulas.
FormulaPtr random_star_formula(Rng& rng, const FormulaOptions& options);

/// LTL over atoms 0..atoms-1 with temporal nesting at most `depth`.
ltl::LtlPtr random_ltl(Rng& rng, std::size_t atoms, int depth);

/// Truth of `f` on the ultimately periodic word prefix·loop^ω.
bool lasso_holds(const ltl::Ltl& f, std::span<const ltl::Letter> prefix, std::span<const ltl::Letter> loop);

/// Reachability probabilities by floating-point value iteration.
std::vector<double> value_iteration_reach(const TransitionMatrix& matrix, const StateSet& target,
                                          int iterations = 200000, double tolerance = 1e-14);

}  // namespace rpmc::testing
