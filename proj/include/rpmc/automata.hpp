#pragma once

#include "rpmc/ltl.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpmc::ltl {

/// Raised when an automaton construction exceeds its configured state cap.
class AutomatonLimitError : public std::runtime_error {
 public:
  explicit AutomatonLimitError(std::size_t cap)
      : std::runtime_error("formula too large: automaton exceeds " + std::to_string(cap) + " states"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

/// State-based nondeterministic Buchi automaton for an LTL formula, built on
/// demand by tableau expansion.
///
/// A state is a set of obligations plus a degeneralization counter. Expanding
/// the obligations against a concrete letter yields covers (next obligations,
/// fulfilled eventualities); covers subsumed by another cover are dropped.
/// The generalized acceptance (one set per eventuality) is degeneralized by
/// the counter, and a state is accepting when the counter is full.
class Nba {
 public:
  explicit Nba(const LtlPtr& f, std::size_t max_states = 100000);
  ~Nba();
  Nba(Nba&&) noexcept;
  Nba& operator=(Nba&&) noexcept;

  std::span<const int> initial() const;
  bool accepting(int state) const;
  /// States built so far.
  std::size_t size() const;

  /// Letters are interned; the id form of successors() skips hashing.
  int letter_id(const Letter& letter);

  /// Sorted successors; throws AutomatonLimitError past the cap.
  const std::vector<int>& successors(int state, const Letter& letter);
  const std::vector<int>& successors(int state, int letter);
  /// Sorted, duplicate-free successors of a set of states.
  std::vector<int> successors(std::span<const int> states, const Letter& letter);
  std::vector<int> successors(std::span<const int> states, int letter);

  /// Builds every state reachable over `alphabet`.
  void explore(std::span<const Letter> alphabet);

  /// Builds every state reachable over `alphabet`, then drops transitions
  /// into states with an empty language or simulated by a sibling. The
  /// language over words from `alphabet` is unchanged; other letters must
  /// not be used afterwards.
  void prune(std::span<const Letter> alphabet);

  /// Membership of the ultimately periodic word prefix . loop^omega.
  bool accepts_lasso(std::span<const Letter> prefix, std::span<const Letter> loop);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Deterministic Rabin automaton obtained from an NBA by Safra's construction.
///
/// States are explored on demand: successor() builds the Safra tree for a
/// (state, letter) pair the first time it is asked for. State 0 is the
/// initial tree. Each node name i gives a Rabin pair, accepting on a set of
/// states visited infinitely often when name i occurs in every tree of the
/// set and is marked in at least one.
class Dra {
 public:
  explicit Dra(Nba nba, std::size_t max_states = 100000);
  ~Dra();
  Dra(Dra&&) noexcept;
  Dra& operator=(Dra&&) noexcept;

  static constexpr int kInitial = 0;

  /// Throws AutomatonLimitError when a new state would exceed the cap.
  int successor(int state, const Letter& letter);

  std::size_t size() const;

  /// Builds every state reachable over `alphabet`.
  void explore(std::span<const Letter> alphabet);

  bool accepting(std::span<const int> recurrent_states) const;

  bool accepts_lasso(std::span<const Letter> prefix, std::span<const Letter> loop);

  std::string describe(int state) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// All 2^n valuations of n atoms.
std::vector<Letter> full_alphabet(std::size_t atoms);

}  // namespace rpmc::ltl
