#pragma once

#include "rpmc/automata.hpp"
#include "rpmc/dtmc.hpp"
#include "rpmc/ltl.hpp"

#include <span>
#include <vector>

namespace rpmc {

/// Product of a chain with a deterministic Rabin automaton reading the label
/// of each visited chain state.
struct ProductChain {
  TransitionMatrix matrix;
  std::vector<StateId> chain_state;  // projection of product states
  std::vector<int> automaton_state;
  /// Product state of the run that starts in chain state s.
  std::vector<StateId> entry;
  /// Union of the product BSCCs that satisfy some Rabin pair.
  StateSet accepting;
};

/// The atoms of an LTL formula are interpreted through `atom_sets`: atom i
/// holds in state s iff atom_sets[i] contains s.
ProductChain build_product(const TransitionMatrix& chain, std::span<const StateSet> atom_sets, ltl::Dra& dra);

/// Exact probability, per chain state, of the paths satisfying `f`.
/// Throws ltl::AutomatonLimitError when an automaton exceeds `max_states`.
ProbVector ltl_probability(const TransitionMatrix& chain, std::span<const StateSet> atom_sets, const ltl::LtlPtr& f,
                           std::size_t max_states = 100000);

}  // namespace rpmc
