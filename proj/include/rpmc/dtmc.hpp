#pragma once

#include "rpmc/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rpmc {

using StateId = std::size_t;
using StateSet = boost::dynamic_bitset<>;
using ProbVector = std::vector<Rational>;

struct Transition {
  StateId target;
  Rational probability;
};

/// Sparse row-stochastic matrix; rows hold only positive entries, sorted by target.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  explicit TransitionMatrix(std::size_t states) : rows_(states) {}

  std::size_t size() const { return rows_.size(); }
  std::span<const Transition> row(StateId s) const { return rows_[s]; }

  /// Adds `p` to entry (from, to); zero contributions are dropped.
  void add(StateId from, StateId to, Rational p);

  Rational probability(StateId from, StateId to) const;
  Rational row_sum(StateId s) const;
  std::size_t edge_count() const;

 private:
  std::vector<std::vector<Transition>> rows_;
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite labeled discrete-time Markov chain.
class Dtmc {
 public:
  /// Validates stochasticity and the initial state; throws ModelError.
  Dtmc(std::vector<std::string> names, std::vector<std::set<std::string>> labels, StateId initial, TransitionMatrix matrix);

  std::size_t size() const { return names_.size(); }
  StateId initial() const { return initial_; }
  const TransitionMatrix& matrix() const { return matrix_; }
  const std::string& name(StateId s) const { return names_[s]; }
  const std::set<std::string>& labels(StateId s) const { return labels_[s]; }

  /// Throws ModelError for an unknown name.
  StateId index_of(std::string_view name) const;

  /// States whose label contains `atom`.
  StateSet states_with(std::string_view atom) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::set<std::string>> labels_;
  StateId initial_;
  TransitionMatrix matrix_;
};

/// Line format:
///   dtmc
///   state NAME { atom, atom, ... }
///   init NAME
///   trans NAME -> NAME : PROB
/// PROB is "a/b" or a decimal; '#' starts a comment; unlisted transitions are 0.
Dtmc parse_dtmc(std::string_view text);

struct CylinderProbability {
  Rational probability;
  /// False when some step has probability zero, i.e. the prefix extends to no path.
  bool is_path_prefix;
};

/// Probability of the cylinder set of a nonempty prefix; 1 for a single state.
CylinderProbability cylinder_prob(const TransitionMatrix& matrix, std::span<const StateId> prefix);

/// Sum over all state pairs of the binary encoding length of delta(s, s').
std::size_t model_size(const Dtmc& m);

StateSet full_set(std::size_t n);

}  // namespace rpmc
