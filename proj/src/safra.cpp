#include "rpmc/automata.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <unordered_map>

namespace rpmc::ltl {
namespace {

using Label = std::vector<int>;  // sorted NBA states

struct SafraNode {
  int name = 0;
  bool marked = false;
  Label label;
  std::vector<SafraNode> children;  // oldest first
};

Label set_union(const Label& a, const Label& b) {
  Label out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Label set_difference(const Label& a, const Label& b) {
  Label out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void collect_names(const SafraNode& n, std::vector<bool>& used) {
  if (used.size() <= static_cast<std::size_t>(n.name)) used.resize(n.name + 1, false);
  used[n.name] = true;
  for (const auto& c : n.children) collect_names(c, used);
}

void unmark(SafraNode& n) {
  n.marked = false;
  for (auto& c : n.children) unmark(c);
}

// New youngest child labelled with the accepting states of every node that
// existed before this step.
void spawn(SafraNode& n, const Nba& nba, std::vector<bool>& used) {
  const std::size_t existing = n.children.size();
  for (std::size_t i = 0; i < existing; ++i) spawn(n.children[i], nba, used);
  Label hit;
  for (int q : n.label) {
    if (nba.accepting(q)) hit.push_back(q);
  }
  if (hit.empty()) return;
  auto free = std::find(used.begin() + 1, used.end(), false);
  int name = static_cast<int>(free - used.begin());
  if (free == used.end()) used.push_back(true);
  used[name] = true;
  n.children.push_back(SafraNode{name, false, std::move(hit), {}});
}

void step(SafraNode& n, Nba& nba, int letter) {
  n.label = nba.successors(n.label, letter);
  for (auto& c : n.children) step(c, nba, letter);
}

void remove_states(SafraNode& n, const Label& states) {
  n.label = set_difference(n.label, states);
  for (auto& c : n.children) remove_states(c, states);
}

// A state kept by an older sibling is dropped from every younger subtree.
void horizontal_merge(SafraNode& n) {
  Label older;
  for (auto& c : n.children) {
    remove_states(c, older);
    older = set_union(older, c.label);
  }
  for (auto& c : n.children) horizontal_merge(c);
}

void prune_empty(SafraNode& n) {
  std::erase_if(n.children, [](const SafraNode& c) { return c.label.empty(); });
  for (auto& c : n.children) prune_empty(c);
}

// A node whose children cover its label absorbs them and is marked.
void vertical_merge(SafraNode& n) {
  if (n.children.empty()) return;
  Label covered;
  for (const auto& c : n.children) covered = set_union(covered, c.label);
  if (covered == n.label) {
    n.children.clear();
    n.marked = true;
    return;
  }
  for (auto& c : n.children) vertical_merge(c);
}

void encode(const SafraNode& n, std::vector<int>& out) {
  out.push_back(n.name);
  out.push_back(n.marked ? 1 : 0);
  out.push_back(static_cast<int>(n.label.size()));
  out.insert(out.end(), n.label.begin(), n.label.end());
  out.push_back(static_cast<int>(n.children.size()));
  for (const auto& c : n.children) encode(c, out);
}

void describe_node(const SafraNode& n, std::string& out) {
  out += std::to_string(n.name) + (n.marked ? "!" : "") + "{";
  for (std::size_t i = 0; i < n.label.size(); ++i) out += (i ? "," : "") + std::to_string(n.label[i]);
  out += "}";
  if (!n.children.empty()) {
    out += "(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) out += " ";
      describe_node(n.children[i], out);
    }
    out += ")";
  }
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = v.size();
    for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct LetterHash {
  std::size_t operator()(const std::pair<int, Letter>& key) const {
    std::size_t h = std::hash<int>{}(key.first);
    return h ^ (std::hash<Letter>{}(key.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

}  // namespace

struct Dra::Impl {
  explicit Impl(Nba automaton) : nba(std::move(automaton)) {}

  Nba nba;
  std::size_t cap = 0;

  std::vector<std::optional<SafraNode>> trees;
  std::vector<std::vector<int>> present;  // per state, sorted names
  std::vector<std::vector<int>> marked;
  std::unordered_map<std::vector<int>, int, VectorHash> ids;
  std::unordered_map<std::pair<int, Letter>, int, LetterHash> transitions;

  int intern(std::optional<SafraNode> tree) {
    std::vector<int> key;
    if (tree) encode(*tree, key);
    if (auto it = ids.find(key); it != ids.end()) return it->second;
    if (trees.size() >= cap) throw AutomatonLimitError(cap);
    int id = static_cast<int>(trees.size());
    std::vector<int> has, mark;
    if (tree) {
      std::vector<const SafraNode*> work{&*tree};
      while (!work.empty()) {
        const SafraNode* n = work.back();
        work.pop_back();
        has.push_back(n->name);
        if (n->marked) mark.push_back(n->name);
        for (const auto& c : n->children) work.push_back(&c);
      }
    }
    std::sort(has.begin(), has.end());
    std::sort(mark.begin(), mark.end());
    ids.emplace(std::move(key), id);
    trees.push_back(std::move(tree));
    present.push_back(std::move(has));
    marked.push_back(std::move(mark));
    return id;
  }

  std::optional<SafraNode> successor_tree(const std::optional<SafraNode>& from, const Letter& letter) {
    if (!from) return std::nullopt;
    SafraNode root = *from;
    std::vector<bool> used(1, true);
    collect_names(root, used);
    unmark(root);
    spawn(root, nba, used);
    step(root, nba, nba.letter_id(letter));
    horizontal_merge(root);
    if (root.label.empty()) return std::nullopt;
    prune_empty(root);
    vertical_merge(root);
    return root;
  }
};

Dra::Dra(Nba nba, std::size_t max_states) : impl_(std::make_unique<Impl>(std::move(nba))) {
  impl_->cap = max_states;
  Label start(impl_->nba.initial().begin(), impl_->nba.initial().end());
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  std::optional<SafraNode> root;
  if (!start.empty()) root = SafraNode{1, false, std::move(start), {}};
  impl_->intern(std::move(root));
}

Dra::~Dra() = default;
Dra::Dra(Dra&&) noexcept = default;
Dra& Dra::operator=(Dra&&) noexcept = default;

int Dra::successor(int state, const Letter& letter) {
  auto key = std::make_pair(state, letter);
  if (auto it = impl_->transitions.find(key); it != impl_->transitions.end()) return it->second;
  int target = impl_->intern(impl_->successor_tree(impl_->trees[state], letter));
  impl_->transitions.emplace(std::move(key), target);
  return target;
}

std::size_t Dra::size() const { return impl_->trees.size(); }

void Dra::explore(std::span<const Letter> alphabet) {
  for (std::size_t q = 0; q < impl_->trees.size(); ++q) {
    for (const auto& letter : alphabet) successor(static_cast<int>(q), letter);
  }
}

bool Dra::accepting(std::span<const int> recurrent_states) const {
  if (recurrent_states.empty()) return false;
  auto contains = [](const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); };
  for (int name : impl_->present[recurrent_states[0]]) {
    bool always_present = true;
    bool some_marked = false;
    for (int q : recurrent_states) {
      always_present = always_present && contains(impl_->present[q], name);
      some_marked = some_marked || contains(impl_->marked[q], name);
    }
    if (always_present && some_marked) return true;
  }
  return false;
}

bool Dra::accepts_lasso(std::span<const Letter> prefix, std::span<const Letter> loop) {
  if (loop.empty()) throw std::invalid_argument("accepts_lasso: empty loop");
  int q = kInitial;
  for (const auto& letter : prefix) q = successor(q, letter);
  // Iterate the loop until the state at the loop start repeats; the states
  // seen from the first repetition on are exactly those visited infinitely often.
  std::vector<int> starts;
  while (std::find(starts.begin(), starts.end(), q) == starts.end()) {
    starts.push_back(q);
    for (const auto& letter : loop) q = successor(q, letter);
  }
  std::vector<int> recurrent;
  const int cycle_start = q;
  do {
    for (const auto& letter : loop) {
      recurrent.push_back(q);
      q = successor(q, letter);
    }
  } while (q != cycle_start);
  std::sort(recurrent.begin(), recurrent.end());
  recurrent.erase(std::unique(recurrent.begin(), recurrent.end()), recurrent.end());
  return accepting(recurrent);
}

std::string Dra::describe(int state) const {
  const auto& tree = impl_->trees.at(state);
  if (!tree) return "empty";
  std::string out;
  describe_node(*tree, out);
  return out;
}

}  // namespace rpmc::ltl
