#include "generators.hpp"
#include "rpmc/automata.hpp"
#include "rpmc/ltl.hpp"
#include "rpmc/measures.hpp"
#include "rpmc/product.hpp"
#include "test_models.hpp"

#include <gtest/gtest.h>

namespace rpmc::ltl {
namespace {

struct Lasso {
  std::vector<Letter> prefix;
  std::vector<Letter> loop;
};

// Every word u v^omega over `alphabet` with |u| <= max_prefix, 1 <= |v| <= max_loop.
std::vector<Lasso> all_lassos(const std::vector<Letter>& alphabet, std::size_t max_prefix, std::size_t max_loop) {
  std::vector<std::vector<Letter>> words = {{}};
  std::vector<std::vector<Letter>> by_length[8];
  by_length[0] = words;
  for (std::size_t len = 1; len <= std::max(max_prefix, max_loop); ++len) {
    for (const auto& w : by_length[len - 1]) {
      for (const auto& l : alphabet) {
        auto longer = w;
        longer.push_back(l);
        by_length[len].push_back(longer);
      }
    }
  }
  std::vector<Lasso> out;
  for (std::size_t p = 0; p <= max_prefix; ++p) {
    for (std::size_t q = 1; q <= max_loop; ++q) {
      for (const auto& u : by_length[p]) {
        for (const auto& v : by_length[q]) out.push_back({u, v});
      }
    }
  }
  return out;
}

const LtlPtr a0 = Ltl::atom(0);
const LtlPtr a1 = Ltl::atom(1);

TEST(Ltl, FactoriesSimplify) {
  EXPECT_EQ(to_string(*Ltl::conjunction(a0, Ltl::negation(a0))), "false");
  EXPECT_EQ(to_string(*Ltl::disjunction(a0, Ltl::negation(a0))), "true");
  EXPECT_EQ(to_string(*Ltl::always(Ltl::always(a0))), "G a0");
  EXPECT_EQ(to_string(*Ltl::eventually(Ltl::next(a0))), to_string(*Ltl::next(Ltl::eventually(a0))));
  EXPECT_EQ(to_string(*Ltl::conjunction(Ltl::always(a0), Ltl::eventually(Ltl::always(a0)))), "G a0");
  EXPECT_EQ(to_string(*Ltl::disjunction(Ltl::always(a0), Ltl::eventually(a0))), "F a0");
}

// Reference LTL terms built without any simplification.
struct Term {
  LtlKind kind;
  std::size_t atom = 0;
  std::vector<Term> kids;
};

Term random_term(testing::Rng& rng, int depth) {
  int pick = static_cast<int>(rng() % (depth > 0 ? 9 : 3));
  switch (pick) {
    case 0:
    case 1:
      return {LtlKind::Atom, rng() % 2, {}};
    case 2:
      return {rng() % 4 == 0 ? LtlKind::True : LtlKind::Atom, rng() % 2, {}};
    case 3:
      return {LtlKind::Not, 0, {random_term(rng, depth - 1)}};
    case 4:
      return {LtlKind::And, 0, {random_term(rng, depth - 1), random_term(rng, depth - 1)}};
    case 5:
      return {LtlKind::Or, 0, {random_term(rng, depth - 1), random_term(rng, depth - 1)}};
    case 6:
      return {LtlKind::Next, 0, {random_term(rng, depth - 1)}};
    case 7:
      return {LtlKind::Eventually, 0, {random_term(rng, depth - 1)}};
    default:
      return {LtlKind::Always, 0, {random_term(rng, depth - 1)}};
  }
}

LtlPtr build(const Term& t) {
  switch (t.kind) {
    case LtlKind::True:
      return Ltl::make_true();
    case LtlKind::Atom:
      return Ltl::atom(t.atom);
    case LtlKind::Not:
      return Ltl::negation(build(t.kids[0]));
    case LtlKind::And:
      return Ltl::conjunction(build(t.kids[0]), build(t.kids[1]));
    case LtlKind::Or:
      return Ltl::disjunction(build(t.kids[0]), build(t.kids[1]));
    case LtlKind::Next:
      return Ltl::next(build(t.kids[0]));
    case LtlKind::Eventually:
      return Ltl::eventually(build(t.kids[0]));
    default:
      return Ltl::always(build(t.kids[0]));
  }
}

// Truth of a term at every position of the lasso graph (positions wrap into
// the loop), by direct recursion on the positions reachable from each one.
std::vector<bool> eval(const Term& t, const Lasso& w) {
  const std::size_t n = w.prefix.size() + w.loop.size();
  auto letter = [&](std::size_t i) -> const Letter& {
    return i < w.prefix.size() ? w.prefix[i] : w.loop[i - w.prefix.size()];
  };
  auto next = [&](std::size_t i) { return i + 1 < n ? i + 1 : w.prefix.size(); };
  auto reachable = [&](std::size_t i) {
    std::vector<std::size_t> out = {i};
    for (std::size_t j = next(i); std::find(out.begin(), out.end(), j) == out.end(); j = next(j)) out.push_back(j);
    return out;
  };
  std::vector<bool> out(n);
  std::vector<std::vector<bool>> kids;
  for (const auto& k : t.kids) kids.push_back(eval(k, w));
  for (std::size_t i = 0; i < n; ++i) {
    switch (t.kind) {
      case LtlKind::True:
        out[i] = true;
        break;
      case LtlKind::Atom:
        out[i] = letter(i)[t.atom];
        break;
      case LtlKind::Not:
        out[i] = !kids[0][i];
        break;
      case LtlKind::And:
        out[i] = kids[0][i] && kids[1][i];
        break;
      case LtlKind::Or:
        out[i] = kids[0][i] || kids[1][i];
        break;
      case LtlKind::Next:
        out[i] = kids[0][next(i)];
        break;
      case LtlKind::Eventually:
        out[i] = false;
        for (std::size_t j : reachable(i)) out[i] = out[i] || kids[0][j];
        break;
      default:
        out[i] = true;
        for (std::size_t j : reachable(i)) out[i] = out[i] && kids[0][j];
        break;
    }
  }
  return out;
}

TEST(Ltl, SimplificationPreservesSemantics) {
  testing::Rng rng(41);
  auto words = all_lassos(full_alphabet(2), 2, 2);
  for (int i = 0; i < 400; ++i) {
    Term t = random_term(rng, 4);
    LtlPtr f = build(t);
    LtlPtr nnf = to_nnf(f);
    for (const auto& w : words) {
      bool expected = eval(t, w)[0];
      ASSERT_EQ(testing::lasso_holds(*f, w.prefix, w.loop), expected) << to_string(*f);
      ASSERT_EQ(testing::lasso_holds(*nnf, w.prefix, w.loop), expected) << to_string(*nnf);
    }
  }
}

TEST(Automata, TextbookSizes) {
  Nba eventually(Ltl::eventually(a0));
  eventually.explore(full_alphabet(1));
  EXPECT_EQ(eventually.size(), 2u);
  Nba universal(Ltl::make_true());
  universal.explore(full_alphabet(1));
  EXPECT_EQ(universal.size(), 1u);
  Dra det(Nba(Ltl::eventually(a0)));
  det.explore(full_alphabet(1));
  // waiting, just fulfilled, and fulfilled with the node marked
  EXPECT_LE(det.size(), 3u);
}

TEST(Automata, LassoMembershipMatchesTheSemantics) {
  testing::Rng rng(42);
  const auto alphabet = full_alphabet(1);
  const auto words = all_lassos(alphabet, 3, 3);
  std::vector<LtlPtr> formulas = {Ltl::always(Ltl::eventually(a0)), Ltl::eventually(Ltl::always(a0)),
                                  Ltl::conjunction(Ltl::always(Ltl::eventually(a0)),
                                                   Ltl::always(Ltl::eventually(Ltl::negation(a0))))};
  for (int i = 0; i < 120; ++i) formulas.push_back(testing::random_ltl(rng, 1, 3));
  for (const auto& f : formulas) {
    Nba nba(f);
    Dra dra{Nba(f)};
    Nba pruned(f);
    pruned.prune(alphabet);
    for (const auto& w : words) {
      bool expected = testing::lasso_holds(*f, w.prefix, w.loop);
      ASSERT_EQ(nba.accepts_lasso(w.prefix, w.loop), expected) << to_string(*f);
      ASSERT_EQ(dra.accepts_lasso(w.prefix, w.loop), expected) << to_string(*f);
      ASSERT_EQ(pruned.accepts_lasso(w.prefix, w.loop), expected) << to_string(*f);
    }
  }
}

TEST(Automata, PruningPreservesTheLanguageOverTwoAtoms) {
  testing::Rng rng(43);
  const auto alphabet = full_alphabet(2);
  const auto words = all_lassos(alphabet, 2, 2);
  for (int i = 0; i < 80; ++i) {
    LtlPtr f = testing::random_ltl(rng, 2, 3);
    Nba pruned(f);
    pruned.prune(alphabet);
    Dra dra(std::move(pruned));
    for (const auto& w : words) {
      ASSERT_EQ(dra.accepts_lasso(w.prefix, w.loop), testing::lasso_holds(*f, w.prefix, w.loop)) << to_string(*f);
    }
  }
}

TEST(Automata, CapIsEnforced) {
  LtlPtr f = Ltl::make_true();
  for (std::size_t i = 0; i < 6; ++i) f = Ltl::conjunction(f, Ltl::always(Ltl::eventually(Ltl::atom(i))));
  Nba nba(f, 3);
  EXPECT_THROW(nba.explore(full_alphabet(6)), AutomatonLimitError);
}

TEST(LtlProbability, CrossChecksAgainstGraphMeasures) {
  Dtmc m = testing::m1();
  std::vector<StateSet> atoms = {m.states_with("a"), m.states_with("b")};
  EXPECT_EQ(ltl_probability(m.matrix(), atoms, Ltl::eventually(a1))[0], 1);
  EXPECT_EQ(ltl_probability(m.matrix(), atoms, Ltl::always(Ltl::eventually(a0)))[0], 0);
  for (const auto& p : ltl_probability(m.matrix(), atoms, Ltl::make_true())) EXPECT_EQ(p, 1);

  testing::Rng rng(44);
  for (int i = 0; i < 60; ++i) {
    Dtmc chain = testing::random_dtmc(rng, 7);
    std::vector<StateSet> sets = {testing::random_state_set(rng, chain.size())};
    const auto& p = chain.matrix();
    EXPECT_EQ(ltl_probability(p, sets, Ltl::eventually(a0)), prob_reach(p, sets[0]));
    EXPECT_EQ(ltl_probability(p, sets, Ltl::always(a0)), prob_safe(p, sets[0]));
    EXPECT_EQ(ltl_probability(p, sets, Ltl::always(Ltl::eventually(a0))), prob_buchi(p, sets[0]));
    EXPECT_EQ(ltl_probability(p, sets, Ltl::eventually(Ltl::always(a0))), prob_cobuchi(p, sets[0]));
  }
}

TEST(LtlProbability, ComplementsSumToOne) {
  testing::Rng rng(45);
  for (int i = 0; i < 60; ++i) {
    Dtmc chain = testing::random_dtmc(rng, 6);
    std::vector<StateSet> sets = {testing::random_state_set(rng, chain.size()),
                                  testing::random_state_set(rng, chain.size())};
    LtlPtr f = testing::random_ltl(rng, 2, 3);
    auto yes = ltl_probability(chain.matrix(), sets, f);
    auto no = ltl_probability(chain.matrix(), sets, Ltl::negation(f));
    for (StateId s = 0; s < chain.size(); ++s) EXPECT_EQ(yes[s] + no[s], 1) << to_string(*f);
  }
}

TEST(LtlProbability, NextStepIsTheOneStepSum) {
  testing::Rng rng(46);
  for (int i = 0; i < 40; ++i) {
    Dtmc chain = testing::random_dtmc(rng, 6);
    std::vector<StateSet> sets = {testing::random_state_set(rng, chain.size())};
    auto p = ltl_probability(chain.matrix(), sets, Ltl::next(a0));
    for (StateId s = 0; s < chain.size(); ++s) {
      Rational sum = 0;
      for (const auto& t : chain.matrix().row(s)) {
        if (sets[0].test(t.target)) sum += t.probability;
      }
      EXPECT_EQ(p[s], sum);
    }
  }
}

}  // namespace
}  // namespace rpmc::ltl
