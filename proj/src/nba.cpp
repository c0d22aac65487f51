#include "rpmc/automata.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace rpmc::ltl {

namespace {

// A transition of the generalized automaton: next obligations and, per
// eventuality, whether it is fulfilled (not postponed) on this step.
struct Cover {
  std::vector<int> next;
  std::vector<bool> fulfilled;

  // Every run through `other` can take this transition instead.
  bool subsumes(const Cover& other) const {
    if (!std::includes(other.next.begin(), other.next.end(), next.begin(), next.end())) return false;
    for (std::size_t i = 0; i < fulfilled.size(); ++i) {
      if (other.fulfilled[i] && !fulfilled[i]) return false;
    }
    return true;
  }

  friend bool operator<(const Cover& a, const Cover& b) {
    return std::tie(a.next, a.fulfilled) < std::tie(b.next, b.fulfilled);
  }
  friend bool operator==(const Cover&, const Cover&) = default;
};

// Hash-consed NNF subformulas of the input.
class Tableau {
 public:
  explicit Tableau(const LtlPtr& root) { root_ = intern(root); }

  int root() const { return root_; }
  bool is_true(int id) const { return nodes_[id]->kind() == LtlKind::True; }
  std::size_t eventuality_count() const { return eventualities_.size(); }

  std::vector<Cover> expand(const std::vector<int>& obligations, const Letter& letter) const {
    std::vector<Cover> raw;
    Branch start;
    start.todo = obligations;
    expand(std::move(start), letter, raw);
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    std::vector<Cover> out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < raw.size() && !dominated; ++j) {
        // Ties between equal covers were removed above.
        dominated = j != i && raw[j].subsumes(raw[i]);
      }
      if (!dominated) out.push_back(raw[i]);
    }
    return out;
  }

 private:
  struct Branch {
    std::vector<int> todo;
    std::vector<int> done;
    std::vector<int> next;
    std::vector<int> postponed;
  };

  static bool add(std::vector<int>& set, int x) {
    auto it = std::lower_bound(set.begin(), set.end(), x);
    if (it != set.end() && *it == x) return false;
    set.insert(it, x);
    return true;
  }

  int intern(const LtlPtr& f) {
    if (auto it = ids_.find(f); it != ids_.end()) return it->second;
    std::vector<int> kids;
    for (const auto& c : f->children()) kids.push_back(intern(c));
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(f);
    children_.push_back(std::move(kids));
    ids_.emplace(f, id);
    if (f->kind() == LtlKind::Eventually) {
      eventuality_index_.emplace(id, eventualities_.size());
      eventualities_.push_back(id);
    }
    return id;
  }

  static bool holds(const Letter& letter, std::size_t atom) { return atom < letter.size() && letter[atom]; }

  void expand(Branch b, const Letter& letter, std::vector<Cover>& out) const {
    while (!b.todo.empty()) {
      int f = b.todo.back();
      b.todo.pop_back();
      if (!add(b.done, f)) continue;
      const Ltl& n = *nodes_[f];
      switch (n.kind()) {
        case LtlKind::True:
          break;
        case LtlKind::False:
          return;
        case LtlKind::Atom:
          if (!holds(letter, n.atom_index())) return;
          break;
        case LtlKind::Not:
          if (holds(letter, nodes_[children_[f][0]]->atom_index())) return;
          break;
        case LtlKind::And:
          b.todo.push_back(children_[f][0]);
          b.todo.push_back(children_[f][1]);
          break;
        case LtlKind::Or: {
          Branch left = b;
          left.todo.push_back(children_[f][0]);
          expand(std::move(left), letter, out);
          b.todo.push_back(children_[f][1]);
          break;
        }
        case LtlKind::Next:
          if (!is_true(children_[f][0])) add(b.next, children_[f][0]);
          break;
        case LtlKind::Eventually: {
          Branch now = b;
          now.todo.push_back(children_[f][0]);
          expand(std::move(now), letter, out);
          add(b.next, f);
          add(b.postponed, f);
          break;
        }
        case LtlKind::Always:
          b.todo.push_back(children_[f][0]);
          add(b.next, f);
          break;
      }
    }
    Cover c;
    c.next = std::move(b.next);
    c.fulfilled.assign(eventualities_.size(), true);
    for (int g : b.postponed) c.fulfilled[eventuality_index_.at(g)] = false;
    out.push_back(std::move(c));
  }

  std::vector<LtlPtr> nodes_;
  std::vector<std::vector<int>> children_;
  std::unordered_map<LtlPtr, int, LtlHash, LtlEqual> ids_;
  std::vector<int> eventualities_;
  std::unordered_map<int, std::size_t> eventuality_index_;
  int root_ = 0;
};

}  // namespace

struct Nba::Impl {
  Tableau tableau;
  std::size_t cap;
  std::size_t k;  // eventualities

  using Key = std::pair<std::vector<int>, std::size_t>;  // obligations, counter
  std::map<Key, int> ids;
  std::vector<Key> keys;
  std::vector<int> initial;
  std::unordered_map<Letter, int> letter_ids;
  std::vector<Letter> letters;
  std::vector<std::vector<int>> slot;  // [state][letter] index into `successor_lists`, or -1
  std::vector<std::vector<int>> successor_lists;

  Impl(const LtlPtr& nnf, std::size_t max_states) : tableau(nnf), cap(max_states), k(tableau.eventuality_count()) {}

  int state_of(Key key) {
    auto [it, inserted] = ids.emplace(key, static_cast<int>(keys.size()));
    if (inserted) {
      if (keys.size() >= cap) {
        ids.erase(it);
        throw AutomatonLimitError(cap);
      }
      keys.push_back(std::move(key));
    }
    return it->second;
  }
};

Nba::Nba(const LtlPtr& f, std::size_t max_states) {
  const LtlPtr normal = to_nnf(f);
  impl_ = std::make_unique<Impl>(normal, max_states);
  std::vector<int> start;
  if (normal->kind() != LtlKind::True) start.push_back(impl_->tableau.root());
  impl_->initial.push_back(impl_->state_of({start, 0}));
}

Nba::~Nba() = default;
Nba::Nba(Nba&&) noexcept = default;
Nba& Nba::operator=(Nba&&) noexcept = default;

std::span<const int> Nba::initial() const { return impl_->initial; }

bool Nba::accepting(int state) const { return impl_->keys[state].second == impl_->k; }

std::size_t Nba::size() const { return impl_->keys.size(); }

int Nba::letter_id(const Letter& letter) {
  auto [it, inserted] = impl_->letter_ids.emplace(letter, static_cast<int>(impl_->letters.size()));
  if (inserted) impl_->letters.push_back(letter);
  return it->second;
}

const std::vector<int>& Nba::successors(int state, const Letter& letter) { return successors(state, letter_id(letter)); }

const std::vector<int>& Nba::successors(int state, int letter) {
  auto& slots = impl_->slot;
  if (slots.size() <= static_cast<std::size_t>(state)) slots.resize(state + 1);
  if (slots[state].size() <= static_cast<std::size_t>(letter)) slots[state].resize(letter + 1, -1);
  if (int i = slots[state][letter]; i >= 0) return impl_->successor_lists[i];
  // Copy: state_of() may grow `keys`.
  const auto [obligations, counter] = impl_->keys[state];
  std::vector<int> out;
  for (const auto& cover : impl_->tableau.expand(obligations, impl_->letters[letter])) {
    std::size_t c = counter == impl_->k ? 0 : counter;
    while (c < impl_->k && cover.fulfilled[c]) ++c;
    out.push_back(impl_->state_of({cover.next, c}));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  slots[state][letter] = static_cast<int>(impl_->successor_lists.size());
  impl_->successor_lists.push_back(std::move(out));
  return impl_->successor_lists.back();
}

std::vector<int> Nba::successors(std::span<const int> states, const Letter& letter) {
  return successors(states, letter_id(letter));
}

std::vector<int> Nba::successors(std::span<const int> states, int letter) {
  std::vector<int> out;
  for (int q : states) {
    const auto& succ = successors(q, letter);
    out.insert(out.end(), succ.begin(), succ.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void Nba::explore(std::span<const Letter> alphabet) {
  for (std::size_t q = 0; q < size(); ++q) {
    for (const auto& letter : alphabet) successors(static_cast<int>(q), letter);
  }
}

void Nba::prune(std::span<const Letter> alphabet) {
  explore(alphabet);
  const std::size_t n = size();
  std::vector<int> ids;
  for (const auto& letter : alphabet) ids.push_back(letter_id(letter));
  auto succ = [&](std::size_t q, int a) -> const std::vector<int>& { return impl_->successor_lists[impl_->slot[q][a]]; };

  // Live states: those from which an accepting state is reachable that lies
  // on a cycle. Everything else has an empty language.
  std::vector<std::vector<int>> pred(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (int a : ids) {
      for (int t : succ(q, a)) pred[t].push_back(static_cast<int>(q));
    }
  }
  auto backward = [&](std::vector<int> seeds) {
    std::vector<bool> seen(n, false);
    while (!seeds.empty()) {
      int q = seeds.back();
      seeds.pop_back();
      for (int p : pred[q]) {
        if (!seen[p]) {
          seen[p] = true;
          seeds.push_back(p);
        }
      }
    }
    return seen;
  };
  std::vector<bool> live(n, false);
  for (std::size_t q = 0; q < n; ++q) {
    if (accepting(static_cast<int>(q)) && backward({static_cast<int>(q)})[q]) live[q] = true;
  }
  {
    std::vector<int> seeds;
    for (std::size_t q = 0; q < n; ++q) {
      if (live[q]) seeds.push_back(static_cast<int>(q));
    }
    auto reach = backward(seeds);
    for (std::size_t q = 0; q < n; ++q) live[q] = live[q] || reach[q];
  }

  // Direct simulation: le[q][r] when r simulates q step by step, matching
  // every accepting visit of q. Greatest fixpoint from the acceptance test.
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t r = 0; r < n; ++r) {
      le[q][r] = live[q] && live[r] && (!accepting(static_cast<int>(q)) || accepting(static_cast<int>(r)));
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t r = 0; r < n; ++r) {
        if (!le[q][r] || q == r) continue;
        bool ok = true;
        for (std::size_t i = 0; i < ids.size() && ok; ++i) {
          for (int qs : succ(q, ids[i])) {
            if (!live[qs]) continue;
            bool matched = false;
            for (int rs : succ(r, ids[i])) {
              if (le[qs][rs]) {
                matched = true;
                break;
              }
            }
            if (!matched) {
              ok = false;
              break;
            }
          }
        }
        if (!ok) {
          le[q][r] = false;
          changed = true;
        }
      }
    }
  }

  // Keep, in each successor set, only live states not simulated by another
  // member; of mutually simulating members the smallest id survives.
  auto keep = [&](const std::vector<int>& set) {
    std::vector<int> out;
    for (int q : set) {
      if (!live[q]) continue;
      bool dominated = false;
      for (int r : set) {
        if (r != q && live[r] && le[q][r] && (!le[r][q] || r < q)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) out.push_back(q);
    }
    return out;
  };
  for (std::size_t q = 0; q < n; ++q) {
    for (int a : ids) {
      auto& list = impl_->successor_lists[impl_->slot[q][a]];
      list = keep(list);
    }
  }
  impl_->initial = keep(impl_->initial);
}

bool Nba::accepts_lasso(std::span<const Letter> prefix, std::span<const Letter> loop) {
  if (loop.empty()) throw std::invalid_argument("accepts_lasso: empty loop");
  // Subset construction over the prefix, then a search of the product of the
  // automaton with the loop positions for a reachable accepting cycle.
  std::vector<int> current(initial().begin(), initial().end());
  for (const auto& letter : prefix) current = successors(current, letter);

  const std::size_t period = loop.size();
  using Node = std::pair<int, std::size_t>;
  std::map<Node, std::vector<Node>> succ;
  std::vector<Node> work;
  for (int q : current) work.push_back({q, 0});
  std::vector<Node> reached;
  while (!work.empty()) {
    Node v = work.back();
    work.pop_back();
    if (succ.contains(v)) continue;
    auto& out = succ[v];
    reached.push_back(v);
    for (int t : successors(v.first, loop[v.second])) {
      out.push_back({t, (v.second + 1) % period});
      work.push_back(out.back());
    }
  }

  // An accepting node lies on a cycle iff it reaches itself in one or more steps.
  for (const Node& v : reached) {
    if (!accepting(v.first)) continue;
    std::map<Node, bool> seen;
    std::vector<Node> stack(succ[v].begin(), succ[v].end());
    while (!stack.empty()) {
      Node w = stack.back();
      stack.pop_back();
      if (w == v) return true;
      if (seen[w]) continue;
      seen[w] = true;
      for (const auto& x : succ[w]) stack.push_back(x);
    }
  }
  return false;
}

std::vector<Letter> full_alphabet(std::size_t atoms) {
  std::vector<Letter> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << atoms); ++mask) {
    Letter l(atoms);
    for (std::size_t i = 0; i < atoms; ++i) l[i] = ((mask >> i) & 1) != 0;
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace rpmc::ltl
