#include "rpmc/measures.hpp"

#include "rpmc/kernels.hpp"

#include <algorithm>
#include <limits>

namespace rpmc {

std::vector<std::vector<StateId>> sccs(const TransitionMatrix& matrix) {
  // Iterative Tarjan.
  const std::size_t n = matrix.size();
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  std::vector<std::vector<StateId>> out;
  std::size_t counter = 0;

  struct Frame {
    StateId state;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (StateId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      auto row = matrix.row(f.state);
      if (f.edge < row.size()) {
        StateId t = row[f.edge++].target;
        if (index[t] == kUnvisited) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = true;
          call.push_back({t, 0});
        } else if (on_stack[t]) {
          low[f.state] = std::min(low[f.state], index[t]);
        }
        continue;
      }
      StateId v = f.state;
      call.pop_back();
      if (!call.empty()) {
        low[call.back().state] = std::min(low[call.back().state], low[v]);
      }
      if (low[v] == index[v]) {
        std::vector<StateId> component;
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        out.push_back(std::move(component));
      }
    }
  }
  return out;
}

std::vector<StateSet> bsccs(const TransitionMatrix& matrix) {
  std::vector<StateSet> out;
  for (const auto& component : sccs(matrix)) {
    StateSet members(matrix.size());
    for (StateId s : component) members.set(s);
    bool closed = std::all_of(component.begin(), component.end(), [&](StateId s) {
      auto row = matrix.row(s);
      return std::all_of(row.begin(), row.end(), [&](const Transition& t) { return members.test(t.target); });
    });
    if (closed) out.push_back(std::move(members));
  }
  return out;
}

namespace {

std::vector<std::vector<StateId>> predecessors(const TransitionMatrix& matrix) {
  std::vector<std::vector<StateId>> pred(matrix.size());
  for (StateId s = 0; s < matrix.size(); ++s) {
    for (const auto& t : matrix.row(s)) pred[t.target].push_back(s);
  }
  return pred;
}

// Backward closure of `seed` where only states in `through` may be added.
StateSet backward_closure(const std::vector<std::vector<StateId>>& pred, const StateSet& seed, const StateSet& through) {
  StateSet result = seed;
  std::vector<StateId> work;
  for (auto s = seed.find_first(); s != StateSet::npos; s = seed.find_next(s)) work.push_back(s);
  while (!work.empty()) {
    StateId v = work.back();
    work.pop_back();
    for (StateId u : pred[v]) {
      if (!result.test(u) && through.test(u)) {
        result.set(u);
        work.push_back(u);
      }
    }
  }
  return result;
}

kernels::LinearSystem block_system(const TransitionMatrix& matrix, const std::vector<StateId>& block,
                                   const std::vector<std::size_t>& position, const StateSet& in_block,
                                   const ProbVector& known) {
  kernels::LinearSystem sys(block.size());
  for (std::size_t i = 0; i < block.size(); ++i) {
    sys.at(i, i) = 1;
    for (const auto& t : matrix.row(block[i])) {
      if (in_block.test(t.target)) {
        sys.at(i, position[t.target]) -= t.probability;
      } else {
        sys.b[i] += t.probability * known[t.target];
      }
    }
  }
  return sys;
}

}  // namespace

StateSet can_reach(const TransitionMatrix& matrix, const StateSet& target) {
  return backward_closure(predecessors(matrix), target, full_set(matrix.size()));
}

StateSet reachable_from(const TransitionMatrix& matrix, const StateSet& sources) {
  StateSet seen = sources;
  std::vector<StateId> work;
  for (auto s = sources.find_first(); s != StateSet::npos; s = sources.find_next(s)) work.push_back(s);
  while (!work.empty()) {
    StateId v = work.back();
    work.pop_back();
    for (const auto& t : matrix.row(v)) {
      if (!seen.test(t.target)) {
        seen.set(t.target);
        work.push_back(t.target);
      }
    }
  }
  return seen;
}

ProbVector prob_reach(const TransitionMatrix& matrix, const StateSet& target) {
  const std::size_t n = matrix.size();
  const auto pred = predecessors(matrix);
  const StateSet positive = backward_closure(pred, target, full_set(n));
  const StateSet zero = ~positive;
  // States that can hit a zero state before the target have probability < 1.
  const StateSet below_one = backward_closure(pred, zero, ~target);
  const StateSet maybe = positive & below_one & ~target;

  ProbVector x(n);
  for (StateId s = 0; s < n; ++s) {
    if (!below_one.test(s)) x[s] = 1;
  }
  if (maybe.none()) return x;

  std::vector<std::size_t> position(n, 0);
  for (const auto& component : sccs(matrix)) {
    std::vector<StateId> block;
    for (StateId s : component) {
      if (maybe.test(s)) block.push_back(s);
    }
    if (block.empty()) continue;
    StateSet in_block(n);
    for (std::size_t i = 0; i < block.size(); ++i) {
      position[block[i]] = i;
      in_block.set(block[i]);
    }
    auto solution = kernels::solve(block_system(matrix, block, position, in_block, x));
    for (std::size_t i = 0; i < block.size(); ++i) x[block[i]] = std::move(solution[i]);
  }
  return x;
}

ProbVector prob_reach_reference(const TransitionMatrix& matrix, const StateSet& target) {
  const std::size_t n = matrix.size();
  const StateSet positive = can_reach(matrix, target);
  ProbVector x(n);
  std::vector<StateId> unknown;
  for (StateId s = 0; s < n; ++s) {
    if (target.test(s)) {
      x[s] = 1;
    } else if (positive.test(s)) {
      unknown.push_back(s);
    }
  }
  if (unknown.empty()) return x;

  StateSet in_system(n);
  std::vector<std::size_t> position(n, 0);
  for (std::size_t i = 0; i < unknown.size(); ++i) {
    position[unknown[i]] = i;
    in_system.set(unknown[i]);
  }
  auto solution = kernels::solve_serial(block_system(matrix, unknown, position, in_system, x));
  for (std::size_t i = 0; i < unknown.size(); ++i) x[unknown[i]] = std::move(solution[i]);
  return x;
}

ProbVector prob_safe(const TransitionMatrix& matrix, const StateSet& allowed) {
  ProbVector x = prob_reach(matrix, ~allowed);
  for (auto& v : x) v = 1 - v;
  return x;
}

ProbVector prob_buchi(const TransitionMatrix& matrix, const StateSet& target) {
  StateSet good(matrix.size());
  for (const auto& b : bsccs(matrix)) {
    if ((b & target).any()) good |= b;
  }
  return prob_reach(matrix, good);
}

ProbVector prob_cobuchi(const TransitionMatrix& matrix, const StateSet& allowed) {
  StateSet good(matrix.size());
  for (const auto& b : bsccs(matrix)) {
    if (b.is_subset_of(allowed)) good |= b;
  }
  return prob_reach(matrix, good);
}

}  // namespace rpmc
