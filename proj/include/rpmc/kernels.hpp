#pragma once

// Data-parallel exact kernels. Every OpenMP kernel has a serial reference
// with identical arithmetic, kept for testing and benchmarking; both must
// return bit-identical results.

#include "rpmc/dtmc.hpp"
#include "rpmc/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpmc::kernels {

/// Dense square system A x = b over the rationals.
struct LinearSystem {
  std::size_t n = 0;
  std::vector<Rational> a;  // row-major n*n
  std::vector<Rational> b;

  explicit LinearSystem(std::size_t size = 0) : n(size), a(size * size), b(size) {}
  Rational& at(std::size_t row, std::size_t col) { return a[row * n + col]; }
  const Rational& at(std::size_t row, std::size_t col) const { return a[row * n + col]; }
};

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gauss-Jordan elimination. The pivot of each column is the nonzero entry of
/// smallest encoding length among the remaining rows.
std::vector<Rational> solve_serial(LinearSystem system);

/// Same elimination with the per-pivot row updates distributed over threads.
std::vector<Rational> solve_parallel(LinearSystem system);

/// Dixon's p-adic lifting: LU factorization modulo a word-sized prime, lifted
/// until rational reconstruction yields a vector that satisfies the system
/// exactly. Much faster than elimination over the rationals on large blocks,
/// where fractions grow with every pivot.
std::vector<Rational> solve_dixon_serial(const LinearSystem& system);
std::vector<Rational> solve_dixon_parallel(const LinearSystem& system);

/// Systems below this size go to Gauss-Jordan elimination.
inline constexpr std::size_t kDixonThreshold = 48;

/// Picks elimination or lifting by size.
std::vector<Rational> solve(LinearSystem system);

/// out[s] = sum of delta(s, s') over s' in `target`.
ProbVector one_step_serial(const TransitionMatrix& matrix, const StateSet& target);
ProbVector one_step_parallel(const TransitionMatrix& matrix, const StateSet& target);

}  // namespace rpmc::kernels
