#include "rpmc/kernels.hpp"

#include <limits>

namespace rpmc::kernels {
namespace {

// Below this size the threading overhead dominates the rational arithmetic.
constexpr std::size_t kParallelRowThreshold = 24;
constexpr std::size_t kParallelStateThreshold = 512;

std::size_t choose_pivot(const LinearSystem& sys, std::size_t col) {
  std::size_t best = sys.n;
  std::size_t best_len = std::numeric_limits<std::size_t>::max();
  for (std::size_t r = col; r < sys.n; ++r) {
    const Rational& v = sys.at(r, col);
    if (v == 0) continue;
    std::size_t len = encoding_length(v);
    if (len < best_len) {
      best = r;
      best_len = len;
    }
  }
  if (best == sys.n) {
    throw SingularSystemError("singular linear system at column " + std::to_string(col));
  }
  return best;
}

void swap_rows(LinearSystem& sys, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  for (std::size_t c = 0; c < sys.n; ++c) {
    std::swap(sys.at(r1, c), sys.at(r2, c));
  }
  std::swap(sys.b[r1], sys.b[r2]);
}

// Scales the pivot row so the pivot becomes 1.
void normalize_pivot_row(LinearSystem& sys, std::size_t col) {
  const Rational inv = 1 / sys.at(col, col);
  for (std::size_t c = col; c < sys.n; ++c) {
    if (sys.at(col, c) != 0) sys.at(col, c) *= inv;
  }
  sys.b[col] *= inv;
}

void eliminate_row(LinearSystem& sys, std::size_t row, std::size_t col) {
  if (row == col || sys.at(row, col) == 0) return;
  const Rational factor = sys.at(row, col);
  for (std::size_t c = col; c < sys.n; ++c) {
    const Rational& pivot_entry = sys.at(col, c);
    if (pivot_entry != 0) sys.at(row, c) -= factor * pivot_entry;
  }
  sys.b[row] -= factor * sys.b[col];
}

}  // namespace

std::vector<Rational> solve_serial(LinearSystem sys) {
  for (std::size_t col = 0; col < sys.n; ++col) {
    swap_rows(sys, col, choose_pivot(sys, col));
    normalize_pivot_row(sys, col);
    for (std::size_t row = 0; row < sys.n; ++row) {
      eliminate_row(sys, row, col);
    }
  }
  return std::move(sys.b);
}

std::vector<Rational> solve_parallel(LinearSystem sys) {
  const bool threaded = sys.n >= kParallelRowThreshold;
  const auto n = static_cast<std::ptrdiff_t>(sys.n);
  for (std::size_t col = 0; col < sys.n; ++col) {
    swap_rows(sys, col, choose_pivot(sys, col));
    normalize_pivot_row(sys, col);
#pragma omp parallel for schedule(dynamic, 4) if (threaded)
    for (std::ptrdiff_t row = 0; row < n; ++row) {
      eliminate_row(sys, static_cast<std::size_t>(row), col);
    }
  }
  return std::move(sys.b);
}

ProbVector one_step_serial(const TransitionMatrix& matrix, const StateSet& target) {
  ProbVector out(matrix.size());
  for (StateId s = 0; s < matrix.size(); ++s) {
    for (const auto& t : matrix.row(s)) {
      if (target.test(t.target)) out[s] += t.probability;
    }
  }
  return out;
}

ProbVector one_step_parallel(const TransitionMatrix& matrix, const StateSet& target) {
  ProbVector out(matrix.size());
  const auto n = static_cast<std::ptrdiff_t>(matrix.size());
#pragma omp parallel for schedule(static) if (matrix.size() >= kParallelStateThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto s = static_cast<StateId>(i);
    for (const auto& t : matrix.row(s)) {
      if (target.test(t.target)) out[s] += t.probability;
    }
  }
  return out;
}

}  // namespace rpmc::kernels
