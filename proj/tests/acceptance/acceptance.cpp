// Acceptance suite: one pass/fail line per criterion.
//
//   rpmc_acceptance            run every criterion
//   rpmc_acceptance c2 c5      run a selection

#include "generators.hpp"

#include "rpmc/dtmc.hpp"
#include "rpmc/formula.hpp"
#include "rpmc/ltl.hpp"
#include "rpmc/measures.hpp"
#include "rpmc/product.hpp"
#include "rpmc/rpctl.hpp"
#include "rpmc/rpctlstar.hpp"
#include "rpmc/translate.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace rpmc;
using namespace rpmc::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool is_monotone(Comparison c) { return c == Comparison::GreaterEqual || c == Comparison::Greater; }

// True when every comparison in the formula is >= or >.
bool monotone_only(const FormulaPtr& f) {
  for (const auto& g : closure(f)) {
    if (g->kind() == NodeKind::Prob && !is_monotone(g->comparison())) return false;
  }
  return true;
}

std::string fmt_ratio(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

Dtmc load_fixture(const std::string& name) {
  std::ifstream in(std::string(RPMC_FIXTURE_DIR) + "/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dtmc(buf.str());
}

// Classical satisfaction at the initial state versus a top robust value for
// the embedded formula; all five comparisons.
Outcome classical_embedding() {
  auto start = Clock::now();
  Rng rng(1001);
  FormulaOptions o;
  o.implications = false;
  o.next = false;
  o.temporal_depth = 3;
  std::vector<FormulaPtr> formulas;
  for (int i = 0; i < 500; ++i) formulas.push_back(random_pctl_formula(rng, o));
  std::vector<Dtmc> chains;
  for (int i = 0; i < 50; ++i) chains.push_back(random_dtmc(rng, 8, 8));

  std::size_t total = 0, agree = 0, mono_total = 0, mono_agree = 0, disagree_flagged = 0;
  for (const auto& f : formulas) {
    TaggedFormula classical{LogicMode::Pctl, f};
    TaggedFormula robust = dot(classical);
    bool mono = monotone_only(f);
    for (const auto& m : chains) {
      bool holds = check_pctl(m, classical).test(m.initial());
      CheckResult r = check_rpctl(m, robust);
      bool ok = holds == (r.initial_value == kTrue1111);
      ++total;
      agree += ok;
      if (mono) {
        ++mono_total;
        mono_agree += ok;
      }
      if (!ok && !r.non_canonical_subformulas.empty()) ++disagree_flagged;
    }
  }
  double t = seconds_since(start);
  std::size_t disagreements = total - agree;
  std::ostringstream d;
  d << "agreement " << fmt_ratio(agree, total) << ", {>=,>} slice " << fmt_ratio(mono_agree, mono_total)
    << ", disagreements with a non-canonical subformula " << fmt_ratio(disagree_flagged, disagreements) << ", "
    << t << " s";
  return {agree == total && t < 60, d.str()};
}

// Robust value dominates t iff the lowered classical formula holds, for all t.
Outcome lowering_agreement() {
  auto start = Clock::now();
  Rng rng(2002);
  FormulaOptions o;
  o.comparisons = {Comparison::GreaterEqual, Comparison::Greater};
  o.temporal_depth = 3;
  o.boolean_depth = 2;
  const std::size_t cap = 50000;
  std::vector<FormulaPtr> formulas;
  for (int i = 0; i < 300; ++i) formulas.push_back(random_star_formula(rng, o));
  std::vector<Dtmc> chains;
  for (int i = 0; i < 30; ++i) chains.push_back(random_dtmc(rng, 6, 8));

  std::size_t total = 0, agree = 0, capped = 0;
  for (const auto& f : formulas) {
    TaggedFormula robust{LogicMode::RpctlStar, f};
    std::array<TaggedFormula, 5> lowered;
    for (std::size_t k = 0; k < 5; ++k) lowered[k] = lower(robust, kChain[k]);
    for (const auto& m : chains) {
      try {
        TruthValue v = check_rpctlstar(m, robust, cap).initial_value;
        for (std::size_t k = 0; k < 5; ++k) {
          bool classical = check_pctlstar(m, lowered[k], cap).test(m.initial());
          ++total;
          agree += classical == leq(kChain[k], v);
        }
      } catch (const ltl::AutomatonLimitError&) {
        ++capped;
        total += 5;
      }
    }
  }
  double t = seconds_since(start);
  std::ostringstream d;
  d << "agreement " << fmt_ratio(agree, total) << " (" << capped << " capped), " << t << " s";
  return {agree == total && t < 600, d.str()};
}

// check_rpctl and check_rpctlstar agree per state on rpctl formulas.
Outcome engine_consistency() {
  auto start = Clock::now();
  Rng rng(3003);
  FormulaOptions o;
  o.temporal_depth = 2;
  std::size_t total = 0, agree = 0, mono_total = 0, mono_agree = 0, disagree_flagged = 0;
  for (int i = 0; i < 500; ++i) {
    FormulaPtr f = random_pctl_formula(rng, o);
    bool mono = monotone_only(f);
    TaggedFormula tagged{LogicMode::Rpctl, f};
    for (int j = 0; j < 4; ++j) {
      Dtmc m = random_dtmc(rng, 6, 8);
      CheckResult a = check_rpctl(m, tagged);
      CheckResult b = check_rpctlstar(m, tagged);
      bool ok = a.per_state == b.per_state;
      ++total;
      agree += ok;
      if (mono) {
        ++mono_total;
        mono_agree += ok;
      }
      if (!ok && !a.non_canonical_subformulas.empty()) ++disagree_flagged;
    }
  }
  std::size_t disagreements = total - agree;
  std::ostringstream d;
  d << "agreement " << fmt_ratio(agree, total) << ", {>=,>} slice " << fmt_ratio(mono_agree, mono_total)
    << ", disagreements with a non-canonical rpctl subformula " << fmt_ratio(disagree_flagged, disagreements)
    << ", " << seconds_since(start) << " s";
  return {agree == total, d.str()};
}

Outcome measure_identities() {
  Rng rng(4004);
  std::size_t failures = 0;
  for (int i = 0; i < 200; ++i) {
    TransitionMatrix m = random_matrix(rng, 1 + rng() % 10, 8);
    const std::size_t n = m.size();
    StateSet a = random_state_set(rng, n);
    ProbVector safe = prob_safe(m, a), reach_c = prob_reach(m, ~a);
    ProbVector cob = prob_cobuchi(m, a), buchi = prob_buchi(m, a), reach = prob_reach(m, a);
    StateSet bottom(n);
    for (const auto& b : bsccs(m)) bottom |= b;
    ProbVector absorb = prob_reach(m, bottom);
    for (StateId s = 0; s < n; ++s) {
      bool ok = safe[s] + reach_c[s] == 1 && safe[s] <= cob[s] && cob[s] <= buchi[s] && buchi[s] <= reach[s] &&
                absorb[s] == 1;
      failures += !ok;
    }
  }
  return {failures == 0, std::to_string(failures) + " violating states over 200 chains"};
}

Outcome four_patterns() {
  Rng rng(5005);
  using ltl::Ltl;
  std::size_t failures = 0;
  for (int i = 0; i < 100; ++i) {
    Dtmc m = random_dtmc(rng, 8, 8);
    std::vector<StateSet> atoms = {m.states_with("a")};
    auto a = Ltl::atom(0);
    const auto& t = m.matrix();
    failures += ltl_probability(t, atoms, Ltl::eventually(a)) != prob_reach(t, atoms[0]);
    failures += ltl_probability(t, atoms, Ltl::always(a)) != prob_safe(t, atoms[0]);
    failures += ltl_probability(t, atoms, Ltl::always(Ltl::eventually(a))) != prob_buchi(t, atoms[0]);
    failures += ltl_probability(t, atoms, Ltl::eventually(Ltl::always(a))) != prob_cobuchi(t, atoms[0]);
  }
  return {failures == 0, std::to_string(failures) + " mismatching patterns over 100 chains"};
}

Outcome fixtures() {
  std::vector<std::string> problems;
  Dtmc m1 = load_fixture("m1.dtmc");
  auto value = [&](const Dtmc& m, const std::string& text) {
    return check_rpctl(m, parse_formula(text, LogicMode::Rpctl)).initial_value;
  };
  if (value(m1, "P>=1/2 [ G a ]") != kTrue0001) problems.push_back("M1 P>=1/2[G a]");
  if (value(m1, "P>=1/2 [ F b ]") != kTrue1111) problems.push_back("M1 P>=1/2[F b]");
  Dtmc gambler = load_fixture("gambler.dtmc");
  if (prob_reach(gambler.matrix(), gambler.states_with("goal"))[gambler.initial()] != Rational(1, 2)) {
    problems.push_back("gambler reach");
  }
  std::string d = problems.empty() ? "M1 and gambler values exact" : "wrong:";
  for (const auto& p : problems) d += " " + p;
  return {problems.empty(), d};
}

Outcome large_chain() {
  Rng rng(7007);
  Dtmc m = random_sparse_dtmc(rng, 1000, 4000);
  std::size_t edges = 0;
  for (StateId s = 0; s < m.size(); ++s) edges += m.matrix().row(s).size();
  TaggedFormula f = parse_formula(
      "P>=1/2 [ G (a | P>3/10 [ F (b & !c) ]) ] & (P<1/4 [ X c ] | !P>=9/10 [ F P>0 [ G b ] ])", LogicMode::Rpctl);
  const std::size_t cl = closure(f.formula).size();
  auto start = Clock::now();
  CheckResult r = check_rpctl(m, f);
  double t = seconds_since(start);
  std::ostringstream d;
  d << m.size() << " states, " << edges << " edges, |cl| = " << cl << ", " << r.sat.computations
    << " Sat sets (expected " << 5 * cl << "), value " << r.initial_value.to_string() << ", " << t << " s";
  return {r.sat.computations == 5 * cl && t < 30, d.str()};
}

Outcome complementation() {
  Rng rng(8008);
  std::size_t failures = 0;
  for (int i = 0; i < 100; ++i) {
    Dtmc m = random_dtmc(rng, 8, 8);
    std::vector<StateSet> atoms;
    for (const auto& a : kAtoms) atoms.push_back(m.states_with(a));
    ltl::LtlPtr f = random_ltl(rng, atoms.size(), 3);
    ProbVector p = ltl_probability(m.matrix(), atoms, f);
    ProbVector q = ltl_probability(m.matrix(), atoms, ltl::Ltl::negation(f));
    for (StateId s = 0; s < m.size(); ++s) failures += p[s] + q[s] != 1;
  }
  return {failures == 0, std::to_string(failures) + " violating states over 100 pairs"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"c1", {"classical formulas embed with value 1111", classical_embedding}},
      {"c2", {"lowering agrees with robust values at every level", lowering_agreement}},
      {"c3", {"rpctl and rpctl-star engines agree", engine_consistency}},
      {"c4", {"measure identities", measure_identities}},
      {"c5", {"LTL patterns match graph measures", four_patterns}},
      {"c6", {"hand-computed fixtures", fixtures}},
      {"c7", {"1000-state chain in polynomial time", large_chain}},
      {"c8", {"complementation sums to one", complementation}},
  };
  std::vector<std::string> selected(argv + 1, argv + argc);
  if (selected.empty()) {
    for (const auto& [id, c] : criteria) selected.push_back(id);
  }
  bool all = true;
  for (const auto& id : selected) {
    auto it = criteria.find(id);
    if (it == criteria.end()) {
      std::cerr << "unknown criterion " << id << '\n';
      return 2;
    }
    Outcome o;
    try {
      o = it->second.second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << id << "  " << it->second.first << ": " << o.detail << std::endl;
    all &= o.pass;
  }
  return all ? 0 : 1;
}
