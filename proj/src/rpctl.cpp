#include "rpmc/rpctl.hpp"

#include "rpmc/kernels.hpp"
#include "rpmc/measures.hpp"

#include <unordered_map>

namespace rpmc {

const std::array<StateSet, 5>& SatTable::of(const FormulaPtr& f) const {
  for (std::size_t i = 0; i < subformulas.size(); ++i) {
    if (FormulaEqual{}(subformulas[i], f)) return sets[i];
  }
  throw std::out_of_range("subformula not in table: " + print_formula(f));
}

namespace {

LevelSets compare_levels(const LevelMeasures& measures, Comparison cmp, const Rational& threshold) {
  LevelSets out;
  for (std::size_t k = 0; k < 4; ++k) {
    out[k].resize(measures[k].size());
    for (StateId s = 0; s < measures[k].size(); ++s) {
      if (compare(measures[k][s], cmp, threshold)) out[k].set(s);
    }
  }
  return out;
}

LevelSets finish(LevelMeasures computed, Comparison cmp, const Rational& threshold, LevelMeasures* measures) {
  LevelSets out = compare_levels(computed, cmp, threshold);
  if (measures) *measures = std::move(computed);
  return out;
}

}  // namespace

LevelSets sat_prob_next(const TransitionMatrix& matrix, Comparison cmp, const Rational& threshold,
                        const LevelSets& operand, LevelMeasures* measures) {
  LevelMeasures m;
  for (std::size_t k = 0; k < 4; ++k) m[k] = kernels::one_step_parallel(matrix, operand[k]);
  return finish(std::move(m), cmp, threshold, measures);
}

LevelSets sat_prob_box(const TransitionMatrix& matrix, Comparison cmp, const Rational& threshold,
                       const LevelSets& operand, LevelMeasures* measures) {
  LevelMeasures m;
  m[0] = prob_safe(matrix, operand[0]);
  m[1] = prob_cobuchi(matrix, operand[1]);
  m[2] = prob_buchi(matrix, operand[2]);
  m[3] = prob_reach(matrix, operand[3]);
  return finish(std::move(m), cmp, threshold, measures);
}

LevelSets sat_prob_diamond(const TransitionMatrix& matrix, Comparison cmp, const Rational& threshold,
                           const LevelSets& operand, LevelMeasures* measures) {
  LevelMeasures m;
  for (std::size_t k = 0; k < 4; ++k) m[k] = prob_reach(matrix, operand[k]);
  return finish(std::move(m), cmp, threshold, measures);
}

namespace {

using Values = std::vector<TruthValue>;

LevelSets level_sets(const Values& values) {
  LevelSets out;
  for (std::size_t k = 0; k < 4; ++k) {
    out[k].resize(values.size());
    for (StateId s = 0; s < values.size(); ++s) {
      if (values[s].bit(static_cast<int>(k) + 1)) out[k].set(s);
    }
  }
  return out;
}

Values assemble(const LevelSets& sets, std::size_t n) {
  Values out(n);
  for (StateId s = 0; s < n; ++s) {
    out[s] = TruthValue::from_bits(sets[0].test(s), sets[1].test(s), sets[2].test(s), sets[3].test(s));
  }
  return out;
}

template <typename Op>
Values pointwise(const Values& a, const Values& b, Op op) {
  Values out(a.size());
  for (std::size_t s = 0; s < a.size(); ++s) out[s] = op(a[s], b[s]);
  return out;
}

}  // namespace

CheckResult check_rpctl(const Dtmc& m, const TaggedFormula& f) {
  if (f.mode != LogicMode::Rpctl) {
    throw FormulaError("check_rpctl expects an rpctl formula, got " + std::string(to_string(f.mode)));
  }
  check_well_formed(f.formula, LogicMode::Rpctl);

  const std::size_t n = m.size();
  const auto& matrix = m.matrix();
  CheckResult result;
  result.sat.subformulas = closure(f.formula);
  std::unordered_map<FormulaPtr, std::size_t, FormulaHash, FormulaEqual> index;
  std::vector<Values> values;
  values.reserve(result.sat.subformulas.size());

  std::unordered_map<FormulaPtr, LevelMeasures, FormulaHash, FormulaEqual> path_measures;

  auto value_of = [&](const FormulaPtr& g) -> const Values& { return values[index.at(g)]; };

  for (const auto& node : result.sat.subformulas) {
    Values v(n);
    switch (node->kind()) {
      case NodeKind::True:
        v.assign(n, kTrue1111);
        break;
      case NodeKind::False:
        v.assign(n, kFalse0000);
        break;
      case NodeKind::Atom: {
        StateSet holds = m.states_with(node->atom_name());
        for (StateId s = 0; s < n; ++s) v[s] = holds.test(s) ? kTrue1111 : kFalse0000;
        break;
      }
      case NodeKind::Not: {
        const Values& a = value_of(node->child(0));
        for (StateId s = 0; s < n; ++s) v[s] = robust_not(a[s]);
        break;
      }
      case NodeKind::And:
        v = pointwise(value_of(node->child(0)), value_of(node->child(1)), meet);
        break;
      case NodeKind::Or:
        v = pointwise(value_of(node->child(0)), value_of(node->child(1)), join);
        break;
      case NodeKind::Implies:
        v = pointwise(value_of(node->child(0)), value_of(node->child(1)), robust_implies);
        break;
      case NodeKind::Next:
      case NodeKind::Eventually:
      case NodeKind::Always: {
        // A path node stores its four level measures; its satisfaction rows
        // are the states where the level event holds almost surely.
        LevelSets operand = level_sets(value_of(node->child(0)));
        LevelMeasures measures;
        const Rational one(1);
        switch (node->kind()) {
          case NodeKind::Next:
            sat_prob_next(matrix, Comparison::Equal, one, operand, &measures);
            break;
          case NodeKind::Eventually:
            sat_prob_diamond(matrix, Comparison::Equal, one, operand, &measures);
            break;
          default:
            sat_prob_box(matrix, Comparison::Equal, one, operand, &measures);
            break;
        }
        v = assemble(compare_levels(measures, Comparison::Equal, one), n);
        path_measures.emplace(node, std::move(measures));
        break;
      }
      case NodeKind::Prob: {
        const LevelMeasures& measures = path_measures.at(node->child(0));
        v = assemble(compare_levels(measures, node->comparison(), node->threshold()), n);
        SubformulaMeasures diag{print_formula(node), std::vector<std::array<Rational, 4>>(n)};
        for (StateId s = 0; s < n; ++s) {
          for (std::size_t k = 0; k < 4; ++k) diag.per_state[s][k] = measures[k][s];
        }
        result.measures.push_back(std::move(diag));
        break;
      }
    }

    if (!node->is_temporal()) {
      bool flagged = false;
      for (const auto& t : v) flagged |= !t.canonical();
      if (flagged) result.non_canonical_subformulas.push_back(print_formula(node));
    }

    std::array<StateSet, 5> sat;
    LevelSets levels = level_sets(v);
    for (std::size_t k = 0; k < 4; ++k) {
      sat[k] = std::move(levels[k]);
      ++result.sat.computations;
    }
    sat[4] = full_set(n);
    ++result.sat.computations;
    result.sat.sets.push_back(std::move(sat));

    index.emplace(node, values.size());
    values.push_back(std::move(v));
  }

  result.per_state = values.back();
  result.initial_value = result.per_state[m.initial()];
  for (const auto& t : result.per_state) result.canonical &= t.canonical();
  return result;
}

StateSet check_pctl(const Dtmc& m, const TaggedFormula& f) {
  if (f.mode != LogicMode::Pctl) {
    throw FormulaError("check_pctl expects a pctl formula, got " + std::string(to_string(f.mode)));
  }
  check_well_formed(f.formula, LogicMode::Pctl);

  const std::size_t n = m.size();
  const auto& matrix = m.matrix();
  std::unordered_map<FormulaPtr, StateSet, FormulaHash, FormulaEqual> sat;
  for (const auto& node : closure(f.formula)) {
    StateSet v(n);
    auto child = [&](std::size_t i) -> const StateSet& { return sat.at(node->child(i)); };
    switch (node->kind()) {
      case NodeKind::True: v.set(); break;
      case NodeKind::False: break;
      case NodeKind::Atom: v = m.states_with(node->atom_name()); break;
      case NodeKind::Not: v = ~child(0); break;
      case NodeKind::And: v = child(0) & child(1); break;
      case NodeKind::Or: v = child(0) | child(1); break;
      case NodeKind::Implies: v = ~child(0) | child(1); break;
      case NodeKind::Prob: {
        const FormulaPtr& body = node->child(0);
        const StateSet& operand = sat.at(body->child(0));
        ProbVector p = body->kind() == NodeKind::Next         ? kernels::one_step_parallel(matrix, operand)
                       : body->kind() == NodeKind::Eventually ? prob_reach(matrix, operand)
                                                              : prob_safe(matrix, operand);
        for (StateId s = 0; s < n; ++s) {
          if (compare(p[s], node->comparison(), node->threshold())) v.set(s);
        }
        break;
      }
      case NodeKind::Next:
      case NodeKind::Eventually:
      case NodeKind::Always:
        break;
    }
    sat.emplace(node, std::move(v));
  }
  return sat.at(f.formula);
}

}  // namespace rpmc
