#include "rpmc/dtmc.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace rpmc {

void TransitionMatrix::add(StateId from, StateId to, Rational p) {
  p.canonicalize();
  if (p == 0) return;
  auto& r = rows_.at(from);
  auto it = std::lower_bound(r.begin(), r.end(), to, [](const Transition& t, StateId id) { return t.target < id; });
  if (it != r.end() && it->target == to) {
    it->probability += p;
  } else {
    r.insert(it, Transition{to, p});
  }
}

Rational TransitionMatrix::probability(StateId from, StateId to) const {
  const auto& r = rows_.at(from);
  auto it = std::lower_bound(r.begin(), r.end(), to, [](const Transition& t, StateId id) { return t.target < id; });
  return it != r.end() && it->target == to ? it->probability : Rational(0);
}

Rational TransitionMatrix::row_sum(StateId s) const {
  Rational sum = 0;
  for (const auto& t : rows_.at(s)) sum += t.probability;
  return sum;
}

std::size_t TransitionMatrix::edge_count() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

Dtmc::Dtmc(std::vector<std::string> names, std::vector<std::set<std::string>> labels, StateId initial,
           TransitionMatrix matrix)
    : names_(std::move(names)), labels_(std::move(labels)), initial_(initial), matrix_(std::move(matrix)) {
  if (names_.empty()) {
    throw ModelError("chain has no states");
  }
  if (labels_.size() != names_.size() || matrix_.size() != names_.size()) {
    throw ModelError("state, label and matrix dimensions disagree");
  }
  if (initial_ >= names_.size()) {
    throw ModelError("initial state out of range");
  }
  for (StateId s = 0; s < names_.size(); ++s) {
    for (const auto& t : matrix_.row(s)) {
      if (t.probability < 0 || t.probability > 1) {
        throw ModelError("transition " + names_[s] + " -> " + names_[t.target] + " has probability " +
                         to_string(t.probability) + " outside [0,1]");
      }
    }
    Rational sum = matrix_.row_sum(s);
    if (sum != 1) {
      throw ModelError("row sum of state " + names_[s] + " is " + to_string(sum) + ", expected 1");
    }
  }
}

StateId Dtmc::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw ModelError("unknown state '" + std::string(name) + "'");
  }
  return static_cast<StateId>(it - names_.begin());
}

StateSet Dtmc::states_with(std::string_view atom) const {
  StateSet out(size());
  for (StateId s = 0; s < size(); ++s) {
    if (labels_[s].contains(std::string(atom))) out.set(s);
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw ModelError("line " + std::to_string(line) + ": " + message);
}

}  // namespace

Dtmc parse_dtmc(std::string_view text) {
  std::vector<std::string> names;
  std::vector<std::set<std::string>> labels;
  std::map<std::string, StateId, std::less<>> ids;
  std::optional<std::string> init_name;
  std::size_t init_line = 0;
  struct PendingTransition {
    std::size_t line;
    std::string from, to;
    Rational p;
  };
  std::vector<PendingTransition> pending;

  bool header_seen = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;

    if (!header_seen) {
      if (line != "dtmc") fail(line_no, "expected header 'dtmc'");
      header_seen = true;
      continue;
    }

    std::istringstream words(line);
    std::string keyword;
    words >> keyword;
    std::string rest = trim(line.substr(keyword.size()));

    if (keyword == "state") {
      auto brace = rest.find('{');
      auto close = rest.rfind('}');
      if (brace == std::string::npos || close == std::string::npos || close < brace || !trim(rest.substr(close + 1)).empty()) {
        fail(line_no, "expected 'state NAME { atoms }'");
      }
      std::string name = trim(rest.substr(0, brace));
      if (!valid_name(name)) fail(line_no, "invalid state name '" + name + "'");
      if (ids.contains(name)) fail(line_no, "duplicate state '" + name + "'");
      std::set<std::string> atoms;
      std::string inner = rest.substr(brace + 1, close - brace - 1);
      std::istringstream parts(inner);
      std::string atom;
      bool any = !trim(inner).empty();
      while (any && std::getline(parts, atom, ',')) {
        atom = trim(atom);
        if (!valid_name(atom)) fail(line_no, "invalid atom '" + atom + "'");
        atoms.insert(atom);
      }
      ids.emplace(name, names.size());
      names.push_back(name);
      labels.push_back(std::move(atoms));
    } else if (keyword == "init") {
      if (init_name) fail(line_no, "duplicate 'init'");
      if (!valid_name(rest)) fail(line_no, "invalid state name '" + rest + "'");
      init_name = rest;
      init_line = line_no;
    } else if (keyword == "trans") {
      auto arrow = rest.find("->");
      auto colon = rest.find(':');
      if (arrow == std::string::npos || colon == std::string::npos || colon < arrow) {
        fail(line_no, "expected 'trans NAME -> NAME : PROB'");
      }
      PendingTransition t{line_no, trim(rest.substr(0, arrow)), trim(rest.substr(arrow + 2, colon - arrow - 2)), 0};
      try {
        t.p = parse_rational(trim(rest.substr(colon + 1)));
      } catch (const std::invalid_argument& e) {
        fail(line_no, e.what());
      }
      if (t.p > 1) fail(line_no, "probability " + to_string(t.p) + " exceeds 1");
      pending.push_back(std::move(t));
    } else {
      fail(line_no, "unknown keyword '" + keyword + "'");
    }
  }

  if (!header_seen) throw ModelError("empty model: expected header 'dtmc'");
  if (names.empty()) throw ModelError("model declares no states");
  if (!init_name) throw ModelError("missing 'init' line");

  auto lookup = [&](const std::string& name, std::size_t line) {
    auto it = ids.find(name);
    if (it == ids.end()) fail(line, "unknown state '" + name + "'");
    return it->second;
  };
  StateId initial = lookup(*init_name, init_line);
  TransitionMatrix matrix(names.size());
  for (const auto& t : pending) {
    matrix.add(lookup(t.from, t.line), lookup(t.to, t.line), t.p);
  }
  return Dtmc(std::move(names), std::move(labels), initial, std::move(matrix));
}

CylinderProbability cylinder_prob(const TransitionMatrix& matrix, std::span<const StateId> prefix) {
  if (prefix.empty()) {
    throw std::invalid_argument("cylinder_prob: empty prefix");
  }
  Rational p = 1;
  for (std::size_t i = 0; i + 1 < prefix.size(); ++i) {
    p *= matrix.probability(prefix[i], prefix[i + 1]);
  }
  return {p, p != 0};
}

std::size_t model_size(const Dtmc& m) {
  std::size_t total = 0;
  for (StateId s = 0; s < m.size(); ++s) {
    for (StateId t = 0; t < m.size(); ++t) {
      total += encoding_length(m.matrix().probability(s, t));
    }
  }
  return total;
}

StateSet full_set(std::size_t n) {
  StateSet s(n);
  s.set();
  return s;
}

}  // namespace rpmc
