#include "rpmc/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace rpmc;

// Sparse substochastic rows: each state keeps a local neighbourhood and
// leaks a little mass, so I - P is regular. This is the shape of the
// transient blocks solved for reachability.
kernels::LinearSystem reach_system(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  kernels::LinearSystem sys(n);
  for (std::size_t r = 0; r < n; ++r) {
    sys.at(r, r) = 1;
    const unsigned degree = 3;
    const unsigned den = degree + 1 + static_cast<unsigned>(rng() % 5);
    for (unsigned k = 0; k < degree; ++k) {
      std::size_t c = (r + 1 + rng() % 6) % n;
      sys.at(r, c) -= Rational(1, den);
    }
    sys.b[r] = Rational(den - degree, den);
    sys.b[r].canonicalize();
  }
  return sys;
}

TransitionMatrix random_chain(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  TransitionMatrix m(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (unsigned k = 0; k < 4; ++k) m.add(s, rng() % n, Rational(1, 4));
  }
  return m;
}

StateSet random_set(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  StateSet s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = rng() % 2;
  return s;
}

template <auto Solve>
void BM_Solve(benchmark::State& state) {
  const auto sys = reach_system(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(Solve(sys));
}

std::vector<Rational> gauss_serial(const kernels::LinearSystem& s) { return kernels::solve_serial(s); }
std::vector<Rational> gauss_parallel(const kernels::LinearSystem& s) { return kernels::solve_parallel(s); }

template <auto Step>
void BM_OneStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = random_chain(n, 11);
  const auto target = random_set(n, 13);
  for (auto _ : state) benchmark::DoNotOptimize(Step(m, target));
}

BENCHMARK(BM_Solve<gauss_serial>)->Name("gauss_serial")->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solve<gauss_parallel>)->Name("gauss_parallel")->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solve<kernels::solve_dixon_serial>)
    ->Name("dixon_serial")
    ->Arg(32)->Arg(64)->Arg(128)->Arg(512)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Solve<kernels::solve_dixon_parallel>)
    ->Name("dixon_parallel")
    ->Arg(32)->Arg(64)->Arg(128)->Arg(512)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OneStep<kernels::one_step_serial>)->Name("one_step_serial")->Arg(1000)->Arg(100000);
BENCHMARK(BM_OneStep<kernels::one_step_parallel>)->Name("one_step_parallel")->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
