#include "generators.hpp"
#include "rpmc/dtmc.hpp"
#include "rpmc/kernels.hpp"
#include "rpmc/measures.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace rpmc {
namespace {

const char* kM1 = R"(dtmc
state s0 { a }
state s1 { b }
init s0
trans s0 -> s0 : 1/2
trans s0 -> s1 : 1/2
trans s1 -> s1 : 1
)";

const char* kGambler = R"(dtmc
state s0 { }
state g { goal }
state b { broke }
init s0
trans s0 -> s0 : 1/2
trans s0 -> g : 1/4
trans s0 -> b : 1/4
trans g -> g : 1
trans b -> b : 1
)";

StateSet set_of(std::size_t n, std::initializer_list<StateId> members) {
  StateSet s(n);
  for (StateId x : members) s.set(x);
  return s;
}

TEST(Dtmc, ParsesM1) {
  Dtmc m = parse_dtmc(kM1);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.initial(), 0u);
  EXPECT_EQ(m.matrix().row_sum(0), 1);
  EXPECT_EQ(m.matrix().row_sum(1), 1);
  EXPECT_EQ(m.states_with("a"), set_of(2, {0}));
  EXPECT_EQ(m.index_of("s1"), 1u);
}

TEST(Dtmc, DecimalProbabilities) {
  std::string text = kM1;
  text.replace(text.find("trans s0 -> s1 : 1/2"), 20, "trans s0 -> s1 : 0.5");
  EXPECT_EQ(parse_dtmc(text).matrix().probability(0, 1), Rational(1, 2));
}

TEST(Dtmc, ValidationErrors) {
  EXPECT_THROW(parse_dtmc("dtmc\nstate s0 { }\ninit s0\ntrans s0 -> s0 : 3/4\n"), ModelError);
  EXPECT_THROW(parse_dtmc("dtmc\nstate s0 { }\ntrans s0 -> s0 : 1\n"), ModelError);
  EXPECT_THROW(parse_dtmc("dtmc\nstate s0 { }\nstate s0 { }\ninit s0\ntrans s0 -> s0 : 1\n"), ModelError);
  EXPECT_THROW(parse_dtmc("dtmc\nstate s0 { }\ninit s0\ntrans s0 -> s9 : 1\n"), ModelError);
  EXPECT_THROW(parse_dtmc("dtmc\nstate s0 { }\ninit s0\ntrans s0 s0 1\n"), ModelError);
}

TEST(Dtmc, CylinderProbability) {
  Dtmc m = parse_dtmc(kM1);
  std::vector<StateId> single = {0}, two_steps = {0, 0, 1}, impossible = {1, 0};
  EXPECT_EQ(cylinder_prob(m.matrix(), single).probability, 1);
  EXPECT_EQ(cylinder_prob(m.matrix(), two_steps).probability, Rational(1, 4));
  auto none = cylinder_prob(m.matrix(), impossible);
  EXPECT_EQ(none.probability, 0);
  EXPECT_FALSE(none.is_path_prefix);
}

TEST(Measures, Bsccs) {
  Dtmc m1 = parse_dtmc(kM1);
  auto b = bsccs(m1.matrix());
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], set_of(2, {1}));

  TransitionMatrix cycle(3);
  for (StateId s = 0; s < 3; ++s) cycle.add(s, (s + 1) % 3, 1);
  ASSERT_EQ(bsccs(cycle).size(), 1u);
  EXPECT_EQ(bsccs(cycle)[0].count(), 3u);

  EXPECT_EQ(bsccs(parse_dtmc(kGambler).matrix()).size(), 2u);
}

TEST(Measures, HandSolvedValues) {
  Dtmc m1 = parse_dtmc(kM1);
  const auto& p = m1.matrix();
  EXPECT_EQ(prob_reach(p, set_of(2, {1}))[0], 1);
  EXPECT_EQ(prob_reach(p, set_of(2, {0}))[0], 1);
  EXPECT_EQ(prob_safe(p, set_of(2, {0}))[0], 0);
  EXPECT_EQ(prob_safe(p, full_set(2))[0], 1);
  EXPECT_EQ(prob_safe(p, set_of(2, {0}))[1], 0);
  EXPECT_EQ(prob_buchi(p, set_of(2, {0}))[0], 0);
  EXPECT_EQ(prob_buchi(p, set_of(2, {1}))[0], 1);
  EXPECT_EQ(prob_buchi(p, StateSet(2))[0], 0);
  EXPECT_EQ(prob_cobuchi(p, set_of(2, {1}))[0], 1);
  EXPECT_EQ(prob_cobuchi(p, set_of(2, {0}))[0], 0);
  EXPECT_EQ(prob_cobuchi(p, full_set(2))[0], 1);

  Dtmc g = parse_dtmc(kGambler);
  EXPECT_EQ(prob_reach(g.matrix(), g.states_with("goal"))[0], Rational(1, 2));
}

TEST(Measures, RandomChainsObeyTheIdentities) {
  testing::Rng rng(21);
  for (int i = 0; i < 150; ++i) {
    Dtmc m = testing::random_dtmc(rng, 8);
    const auto& p = m.matrix();
    const std::size_t n = m.size();
    StateSet a = testing::random_state_set(rng, n);
    StateSet b = a | testing::random_state_set(rng, n);
    auto safe = prob_safe(p, a), cob = prob_cobuchi(p, a), buchi = prob_buchi(p, a), reach = prob_reach(p, a);
    auto escape = prob_reach(p, ~a), bigger = prob_reach(p, b);
    StateSet absorbing(n);
    for (const auto& bs : bsccs(p)) absorbing |= bs;
    auto absorbed = prob_reach(p, absorbing);
    for (StateId s = 0; s < n; ++s) {
      EXPECT_EQ(safe[s] + escape[s], 1);
      EXPECT_LE(safe[s], cob[s]);
      EXPECT_LE(cob[s], buchi[s]);
      EXPECT_LE(buchi[s], reach[s]);
      EXPECT_LE(reach[s], bigger[s]);
      EXPECT_EQ(absorbed[s], 1);
    }
  }
}

TEST(Measures, ReachAgreesWithValueIteration) {
  testing::Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    Dtmc m = testing::random_dtmc(rng, 10);
    StateSet target = testing::random_state_set(rng, m.size());
    auto exact = prob_reach(m.matrix(), target);
    auto approx = testing::value_iteration_reach(m.matrix(), target);
    for (StateId s = 0; s < m.size(); ++s) EXPECT_NEAR(exact[s].get_d(), approx[s], 1e-9);
  }
}

TEST(Measures, ReachMatchesTheReferenceRoute) {
  testing::Rng rng(23);
  for (int i = 0; i < 30; ++i) {
    Dtmc m = testing::random_sparse_dtmc(rng, 120, 360);
    StateSet target = testing::random_state_set(rng, m.size());
    EXPECT_EQ(prob_reach(m.matrix(), target), prob_reach_reference(m.matrix(), target));
  }
}

kernels::LinearSystem random_system(testing::Rng& rng, std::size_t n) {
  // Diagonally dominant, hence regular.
  kernels::LinearSystem sys(n);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 7);
  for (std::size_t r = 0; r < n; ++r) {
    Rational off = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (c == r || rng() % 3 != 0) continue;
      sys.at(r, c) = Rational(num(rng), den(rng));
      sys.at(r, c).canonicalize();
      off += abs(sys.at(r, c));
    }
    sys.at(r, r) = off + Rational(1, den(rng));
    sys.at(r, r).canonicalize();
    sys.b[r] = Rational(num(rng), den(rng));
    sys.b[r].canonicalize();
  }
  return sys;
}

void expect_solution(const kernels::LinearSystem& sys, const std::vector<Rational>& x) {
  ASSERT_EQ(x.size(), sys.n);
  for (std::size_t r = 0; r < sys.n; ++r) {
    Rational lhs = 0;
    for (std::size_t c = 0; c < sys.n; ++c) lhs += sys.at(r, c) * x[c];
    EXPECT_EQ(lhs, sys.b[r]);
  }
}

TEST(Kernels, SolversAgreeExactly) {
  testing::Rng rng(24);
  for (std::size_t n : {1u, 2u, 5u, 17u, 60u, 90u}) {
    auto sys = random_system(rng, n);
    auto x = kernels::solve_serial(sys);
    expect_solution(sys, x);
    EXPECT_EQ(kernels::solve_parallel(sys), x);
    EXPECT_EQ(kernels::solve_dixon_serial(sys), x);
    EXPECT_EQ(kernels::solve_dixon_parallel(sys), x);
    EXPECT_EQ(kernels::solve(sys), x);
  }
}

TEST(Kernels, SingularSystemIsReported) {
  kernels::LinearSystem sys(2);
  sys.at(0, 0) = 1;
  sys.at(0, 1) = 2;
  sys.at(1, 0) = 2;
  sys.at(1, 1) = 4;
  sys.b = {1, 1};
  EXPECT_THROW(kernels::solve_serial(sys), kernels::SingularSystemError);
}

TEST(Kernels, OneStepSerialMatchesParallel) {
  testing::Rng rng(25);
  Dtmc m = testing::random_sparse_dtmc(rng, 500, 2000);
  StateSet target = testing::random_state_set(rng, m.size());
  auto serial = kernels::one_step_serial(m.matrix(), target);
  EXPECT_EQ(serial, kernels::one_step_parallel(m.matrix(), target));
  for (StateId s = 0; s < m.size(); ++s) {
    Rational sum = 0;
    for (const auto& t : m.matrix().row(s)) {
      if (target.test(t.target)) sum += t.probability;
    }
    EXPECT_EQ(serial[s], sum);
  }
}

}  // namespace
}  // namespace rpmc
