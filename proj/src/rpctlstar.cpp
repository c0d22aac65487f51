#include "rpmc/rpctlstar.hpp"

#include "rpmc/product.hpp"

#include <functional>

namespace rpmc {

void ThresholdEnvironment::add(const FormulaPtr& state_formula, std::vector<TruthValue> values) {
  values_.insert_or_assign(state_formula, std::move(values));
}

bool ThresholdEnvironment::contains(const FormulaPtr& state_formula) const { return values_.contains(state_formula); }

const std::vector<TruthValue>& ThresholdEnvironment::values(const FormulaPtr& state_formula) const {
  return values_.at(state_formula);
}

std::size_t ThresholdEnvironment::atom(const FormulaPtr& state_formula, TruthValue level) {
  const auto& v = values_.at(state_formula);
  StateSet holds(states_);
  for (StateId s = 0; s < states_; ++s) {
    if (leq(level, v[s])) holds.set(s);
  }
  // Atoms are read only through their state sets, so equal sets share an atom.
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (sets_[i] == holds) return i;
  }
  atoms_.push_back({state_formula, level});
  sets_.push_back(std::move(holds));
  return atoms_.size() - 1;
}

ltl::LtlPtr lower_path(const FormulaPtr& path, TruthValue level, ThresholdEnvironment& env) {
  using ltl::Ltl;
  if (level == kFalse0000) return Ltl::make_true();
  if (path->is_state()) {
    if (path->kind() == NodeKind::True) return Ltl::make_true();
    if (path->kind() == NodeKind::False) return Ltl::make_false();
    return Ltl::atom(env.atom(path, level));
  }
  const auto& c = path->children();
  switch (path->kind()) {
    case NodeKind::Not:
      return Ltl::negation(lower_path(c[0], kTrue1111, env));
    case NodeKind::And:
      return Ltl::conjunction(lower_path(c[0], level, env), lower_path(c[1], level, env));
    case NodeKind::Or:
      return Ltl::disjunction(lower_path(c[0], level, env), lower_path(c[1], level, env));
    case NodeKind::Implies: {
      ltl::LtlPtr top = Ltl::make_true();
      for (TruthValue u : kLevels) {
        top = Ltl::conjunction(top, Ltl::disjunction(lower_path(c[1], u, env), Ltl::negation(lower_path(c[0], u, env))));
      }
      return level == kTrue1111 ? top : Ltl::disjunction(top, lower_path(c[1], level, env));
    }
    case NodeKind::Next:
      return Ltl::next(lower_path(c[0], level, env));
    case NodeKind::Eventually:
      return Ltl::eventually(lower_path(c[0], level, env));
    case NodeKind::Always: {
      ltl::LtlPtr inner = lower_path(c[0], level, env);
      if (level == kTrue1111) return Ltl::always(inner);
      if (level == kTrue0111) return Ltl::eventually(Ltl::always(inner));
      if (level == kTrue0011) return Ltl::always(Ltl::eventually(inner));
      return Ltl::eventually(inner);
    }
    default:
      throw std::logic_error("lower_path: unexpected state node");
  }
}

namespace {

// Calls `visit` on every maximal state subformula of a path formula.
void for_each_maximal_state(const FormulaPtr& path, const std::function<void(const FormulaPtr&)>& visit) {
  if (path->is_state()) {
    visit(path);
    return;
  }
  for (const auto& c : path->children()) for_each_maximal_state(c, visit);
}

class RobustEvaluator {
 public:
  RobustEvaluator(const Dtmc& m, std::size_t cap, CheckResult& result) : m_(m), cap_(cap), env_(m.size()), result_(result) {}

  const std::vector<TruthValue>& eval(const FormulaPtr& f) {
    if (env_.contains(f)) return env_.values(f);
    const std::size_t n = m_.size();
    std::vector<TruthValue> v(n);
    auto child = [&](std::size_t i) -> const std::vector<TruthValue>& { return eval(f->child(i)); };
    switch (f->kind()) {
      case NodeKind::True: v.assign(n, kTrue1111); break;
      case NodeKind::False: v.assign(n, kFalse0000); break;
      case NodeKind::Atom: {
        StateSet holds = m_.states_with(f->atom_name());
        for (StateId s = 0; s < n; ++s) v[s] = holds.test(s) ? kTrue1111 : kFalse0000;
        break;
      }
      case NodeKind::Not: {
        const auto& a = child(0);
        for (StateId s = 0; s < n; ++s) v[s] = robust_not(a[s]);
        break;
      }
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Implies: {
        const auto a = child(0);
        const auto& b = child(1);
        for (StateId s = 0; s < n; ++s) {
          v[s] = f->kind() == NodeKind::And ? meet(a[s], b[s])
                 : f->kind() == NodeKind::Or ? join(a[s], b[s])
                                              : robust_implies(a[s], b[s]);
        }
        break;
      }
      case NodeKind::Prob:
        v = probability(f);
        break;
      default:
        throw std::logic_error("state evaluation of a path formula");
    }
    env_.add(f, std::move(v));
    return env_.values(f);
  }

  ThresholdEnvironment& env() { return env_; }

 private:
  std::vector<TruthValue> probability(const FormulaPtr& f) {
    const FormulaPtr& body = f->child(0);
    for_each_maximal_state(body, [&](const FormulaPtr& g) { eval(g); });
    const std::size_t n = m_.size();
    std::array<ProbVector, 4> measures;
    for (std::size_t k = 0; k < 4; ++k) {
      ltl::LtlPtr lowered = lower_path(body, kLevels[k], env_);
      measures[k] = ltl_probability(m_.matrix(), env_.atom_sets(), lowered, cap_);
    }
    std::vector<TruthValue> v(n, kFalse0000);
    SubformulaMeasures diag{print_formula(f), std::vector<std::array<Rational, 4>>(n)};
    for (StateId s = 0; s < n; ++s) {
      for (std::size_t k = 0; k < 4; ++k) {
        if (compare(measures[k][s], f->comparison(), f->threshold())) {
          v[s] = kLevels[k];
          break;
        }
      }
    }
    for (StateId s = 0; s < n; ++s) {
      for (std::size_t k = 0; k < 4; ++k) diag.per_state[s][k] = measures[k][s];
    }
    result_.measures.push_back(std::move(diag));
    return v;
  }

  const Dtmc& m_;
  std::size_t cap_;
  ThresholdEnvironment env_;
  CheckResult& result_;
};

ltl::LtlPtr classical_path(const FormulaPtr& path, const std::function<std::size_t(const FormulaPtr&)>& atom_of) {
  using ltl::Ltl;
  if (path->is_state()) {
    if (path->kind() == NodeKind::True) return Ltl::make_true();
    if (path->kind() == NodeKind::False) return Ltl::make_false();
    return Ltl::atom(atom_of(path));
  }
  const auto& c = path->children();
  switch (path->kind()) {
    case NodeKind::Not: return Ltl::negation(classical_path(c[0], atom_of));
    case NodeKind::And: return Ltl::conjunction(classical_path(c[0], atom_of), classical_path(c[1], atom_of));
    case NodeKind::Or: return Ltl::disjunction(classical_path(c[0], atom_of), classical_path(c[1], atom_of));
    case NodeKind::Implies:
      return Ltl::disjunction(Ltl::negation(classical_path(c[0], atom_of)), classical_path(c[1], atom_of));
    case NodeKind::Next: return Ltl::next(classical_path(c[0], atom_of));
    case NodeKind::Eventually: return Ltl::eventually(classical_path(c[0], atom_of));
    case NodeKind::Always: return Ltl::always(classical_path(c[0], atom_of));
    default: throw std::logic_error("classical_path: unexpected state node");
  }
}

}  // namespace

CheckResult check_rpctlstar(const Dtmc& m, const TaggedFormula& f, std::size_t max_automaton_states) {
  if (f.mode != LogicMode::Rpctl && f.mode != LogicMode::RpctlStar) {
    throw FormulaError("check_rpctlstar expects a robust formula, got " + std::string(to_string(f.mode)));
  }
  check_well_formed(f.formula, LogicMode::RpctlStar);

  CheckResult result;
  RobustEvaluator evaluator(m, max_automaton_states, result);
  result.per_state = evaluator.eval(f.formula);
  result.initial_value = result.per_state[m.initial()];

  for (const auto& node : closure(f.formula)) {
    if (!node->is_state()) continue;
    const auto& v = evaluator.eval(node);
    std::array<StateSet, 5> sat;
    for (std::size_t k = 0; k < 5; ++k) {
      sat[k].resize(m.size());
      for (StateId s = 0; s < m.size(); ++s) {
        if (leq(kChain[k], v[s])) sat[k].set(s);
      }
      ++result.sat.computations;
    }
    bool flagged = false;
    for (const auto& t : v) flagged |= !t.canonical();
    if (flagged) result.non_canonical_subformulas.push_back(print_formula(node));
    result.sat.subformulas.push_back(node);
    result.sat.sets.push_back(std::move(sat));
  }
  for (const auto& t : result.per_state) result.canonical &= t.canonical();
  return result;
}

StateSet check_pctlstar(const Dtmc& m, const TaggedFormula& f, std::size_t max_automaton_states) {
  if (f.mode != LogicMode::Pctl && f.mode != LogicMode::PctlStar) {
    throw FormulaError("check_pctlstar expects a classical formula, got " + std::string(to_string(f.mode)));
  }
  check_well_formed(f.formula, LogicMode::PctlStar);

  const std::size_t n = m.size();
  std::unordered_map<FormulaPtr, StateSet, FormulaHash, FormulaEqual> sat;
  std::function<const StateSet&(const FormulaPtr&)> eval = [&](const FormulaPtr& g) -> const StateSet& {
    if (auto it = sat.find(g); it != sat.end()) return it->second;
    StateSet v(n);
    switch (g->kind()) {
      case NodeKind::True: v.set(); break;
      case NodeKind::False: break;
      case NodeKind::Atom: v = m.states_with(g->atom_name()); break;
      case NodeKind::Not: v = ~eval(g->child(0)); break;
      case NodeKind::And: v = eval(g->child(0)) & eval(g->child(1)); break;
      case NodeKind::Or: v = eval(g->child(0)) | eval(g->child(1)); break;
      case NodeKind::Implies: v = ~eval(g->child(0)) | eval(g->child(1)); break;
      case NodeKind::Prob: {
        std::vector<StateSet> sets;
        auto atom_of = [&](const FormulaPtr& h) -> std::size_t {
          StateSet holds = eval(h);
          for (std::size_t i = 0; i < sets.size(); ++i) {
            if (sets[i] == holds) return i;
          }
          sets.push_back(std::move(holds));
          return sets.size() - 1;
        };
        ltl::LtlPtr path = classical_path(g->child(0), atom_of);
        ProbVector p = ltl_probability(m.matrix(), sets, path, max_automaton_states);
        for (StateId s = 0; s < n; ++s) {
          if (compare(p[s], g->comparison(), g->threshold())) v.set(s);
        }
        break;
      }
      default:
        throw std::logic_error("state evaluation of a path formula");
    }
    return sat.emplace(g, std::move(v)).first->second;
  };
  return eval(f.formula);
}

}  // namespace rpmc
