#include "rpmc/translate.hpp"

#include <unordered_map>

namespace rpmc {

TaggedFormula dot(const TaggedFormula& f) {
  if (is_robust(f.mode)) {
    throw FormulaError("dot expects a classical formula, got " + std::string(to_string(f.mode)));
  }
  if (!is_implication_free(f.formula)) {
    throw FormulaError("dot requires an implication-free formula; rewrite implications first");
  }
  LogicMode robust = f.mode == LogicMode::Pctl ? LogicMode::Rpctl : LogicMode::RpctlStar;
  check_well_formed(f.formula, robust);
  return {robust, f.formula};
}

namespace {

FormulaPtr mk_not(FormulaPtr a) {
  if (a->kind() == NodeKind::True) return Formula::make_false();
  if (a->kind() == NodeKind::False) return Formula::make_true();
  return Formula::negation(std::move(a));
}

FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
  if (a->kind() == NodeKind::False || b->kind() == NodeKind::False) return Formula::make_false();
  if (a->kind() == NodeKind::True) return b;
  if (b->kind() == NodeKind::True || *a == *b) return a;
  return Formula::conjunction(std::move(a), std::move(b));
}

FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
  if (a->kind() == NodeKind::True || b->kind() == NodeKind::True) return Formula::make_true();
  if (a->kind() == NodeKind::False) return b;
  if (b->kind() == NodeKind::False || *a == *b) return a;
  return Formula::disjunction(std::move(a), std::move(b));
}

class Lowering {
 public:
  FormulaPtr run(const FormulaPtr& f, TruthValue level) {
    if (level == kFalse0000) return Formula::make_true();
    const Key key{f.get(), chain_index(level)};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    FormulaPtr out = compute(f, level);
    memo_.emplace(key, out);
    return out;
  }

 private:
  struct Key {
    const Formula* node;
    std::size_t level;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return std::hash<const void*>{}(k.node) * 5 + k.level; }
  };

  FormulaPtr implication_top(const FormulaPtr& f) {
    FormulaPtr out = Formula::make_true();
    for (TruthValue u : kLevels) {
      out = mk_and(out, mk_or(run(f->child(1), u), mk_not(run(f->child(0), u))));
    }
    return out;
  }

  FormulaPtr compute(const FormulaPtr& f, TruthValue level) {
    switch (f->kind()) {
      case NodeKind::True:
      case NodeKind::False:
      case NodeKind::Atom:
        return f;
      case NodeKind::Not:
        return mk_not(run(f->child(0), kTrue1111));
      case NodeKind::And:
        return mk_and(run(f->child(0), level), run(f->child(1), level));
      case NodeKind::Or:
        return mk_or(run(f->child(0), level), run(f->child(1), level));
      case NodeKind::Implies: {
        FormulaPtr top = implication_top(f);
        return level == kTrue1111 ? top : mk_or(top, run(f->child(1), level));
      }
      case NodeKind::Prob:
        return Formula::probability(f->comparison(), f->threshold(), run(f->child(0), level));
      case NodeKind::Next:
        return Formula::next(run(f->child(0), level));
      case NodeKind::Eventually:
        return Formula::eventually(run(f->child(0), level));
      case NodeKind::Always: {
        FormulaPtr inner = run(f->child(0), level);
        if (level == kTrue1111) return Formula::always(inner);
        if (level == kTrue0111) return Formula::eventually(Formula::always(inner));
        if (level == kTrue0011) return Formula::always(Formula::eventually(inner));
        return Formula::eventually(inner);
      }
    }
    return f;
  }

  std::unordered_map<Key, FormulaPtr, KeyHash> memo_;
};

}  // namespace

TaggedFormula lower(const TaggedFormula& f, TruthValue level) {
  if (!is_robust(f.mode)) {
    throw FormulaError("lower expects a robust formula, got " + std::string(to_string(f.mode)));
  }
  if (!level.canonical()) {
    throw FormulaError("lowering level must be canonical, got " + level.to_string());
  }
  return {LogicMode::PctlStar, Lowering{}.run(f.formula, level)};
}

}  // namespace rpmc
