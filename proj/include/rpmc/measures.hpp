#pragma once

#include "rpmc/dtmc.hpp"

#include <vector>

namespace rpmc {

/// Strongly connected components, sinks first (reverse topological order).
std::vector<std::vector<StateId>> sccs(const TransitionMatrix& matrix);

/// SCCs without outgoing edges.
std::vector<StateSet> bsccs(const TransitionMatrix& matrix);

/// States from which `target` is reachable in the transition graph.
StateSet can_reach(const TransitionMatrix& matrix, const StateSet& target);

/// States reachable from `sources` (including them).
StateSet reachable_from(const TransitionMatrix& matrix, const StateSet& sources);

/// Probability of eventually visiting `target`.
///
/// Prob0/Prob1 graph precomputation fixes the 0 and 1 entries; the remaining
/// states are solved exactly, one SCC block at a time in reverse topological
/// order, each block by kernels::solve (elimination or p-adic lifting).
ProbVector prob_reach(const TransitionMatrix& matrix, const StateSet& target);

/// Reference route: Prob0 only, then a single elimination over every
/// undecided state. Serial and deliberately unoptimized; used as a test oracle.
ProbVector prob_reach_reference(const TransitionMatrix& matrix, const StateSet& target);

/// Probability of staying in `allowed` forever.
ProbVector prob_safe(const TransitionMatrix& matrix, const StateSet& allowed);

/// Probability of visiting `target` infinitely often.
ProbVector prob_buchi(const TransitionMatrix& matrix, const StateSet& target);

/// Probability of eventually staying in `allowed` forever.
ProbVector prob_cobuchi(const TransitionMatrix& matrix, const StateSet& allowed);

}  // namespace rpmc
