#include "rpmc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

namespace rpmc::kernels {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Integer form of the system: row i scaled by the lcm of its denominators.
struct IntegerSystem {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, mpz_class>>> rows;  // nonzeros
  std::vector<mpz_class> b;
};

IntegerSystem integerize(const LinearSystem& sys) {
  IntegerSystem out;
  out.n = sys.n;
  out.rows.resize(sys.n);
  out.b.resize(sys.n);
  for (std::size_t i = 0; i < sys.n; ++i) {
    mpz_class scale = sys.b[i].get_den();
    for (std::size_t j = 0; j < sys.n; ++j) {
      if (sgn(sys.at(i, j)) != 0) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), sys.at(i, j).get_den_mpz_t());
    }
    for (std::size_t j = 0; j < sys.n; ++j) {
      const Rational& q = sys.at(i, j);
      if (sgn(q) != 0) out.rows[i].emplace_back(j, mpz_class(q.get_num() * (scale / q.get_den())));
    }
    out.b[i] = sys.b[i].get_num() * (scale / sys.b[i].get_den());
  }
  return out;
}

template <u64 P>
u64 power(u64 base, u64 e) {
  u64 r = 1;
  for (base %= P; e; e >>= 1, base = base * base % P) {
    if (e & 1) r = r * base % P;
  }
  return r;
}

template <u64 P>
u64 reduce(const mpz_class& v) {
  return mpz_fdiv_ui(v.get_mpz_t(), P);
}

// PA = LU modulo P, stored in place; multipliers below the diagonal.
template <u64 P>
struct ModularLu {
  std::size_t n = 0;
  std::vector<u64> lu;
  std::vector<std::size_t> perm;  // row i of PA is row perm[i] of A
  std::vector<u64> inv_diag;

  bool factor(const IntegerSystem& sys, bool threaded) {
    n = sys.n;
    lu.assign(n * n, 0);
    perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      perm[i] = i;
      for (const auto& [j, v] : sys.rows[i]) lu[i * n + j] = reduce<P>(v);
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t pivot = k;
      while (pivot < n && lu[pivot * n + k] == 0) ++pivot;
      if (pivot == n) return false;
      if (pivot != k) {
        std::swap_ranges(lu.begin() + static_cast<long>(k * n), lu.begin() + static_cast<long>((k + 1) * n),
                         lu.begin() + static_cast<long>(pivot * n));
        std::swap(perm[k], perm[pivot]);
      }
      const u64 inv = power<P>(lu[k * n + k], P - 2);
      const u64* pivot_row = &lu[k * n];
      const long rows = static_cast<long>(n);
#pragma omp parallel for schedule(static) if (threaded && n - k > 64)
      for (long j = static_cast<long>(k) + 1; j < rows; ++j) {
        u64* row = &lu[static_cast<std::size_t>(j) * n];
        if (row[k] == 0) continue;
        const u64 l = row[k] * inv % P;
        row[k] = l;
        const u64 neg = P - l;
        for (std::size_t c = k + 1; c < n; ++c) row[c] = (row[c] + neg * pivot_row[c]) % P;
      }
    }
    inv_diag.resize(n);
    for (std::size_t i = 0; i < n; ++i) inv_diag[i] = power<P>(lu[i * n + i], P - 2);
    return true;
  }

  // Solves A x = r modulo P.
  std::vector<u64> solve(const std::vector<u64>& r) const {
    std::vector<u64> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      u128 acc = 0;
      const u64* row = &lu[i * n];
      for (std::size_t j = 0; j < i; ++j) acc += static_cast<u128>(row[j]) * y[j];
      y[i] = (r[perm[i]] + P - static_cast<u64>(acc % P)) % P;
    }
    for (std::size_t i = n; i-- > 0;) {
      u128 acc = 0;
      const u64* row = &lu[i * n];
      for (std::size_t j = i + 1; j < n; ++j) acc += static_cast<u128>(row[j]) * y[j];
      y[i] = (y[i] + P - static_cast<u64>(acc % P)) % P * inv_diag[i] % P;
    }
    return y;
  }
};

// Smallest-denominator rational n/d congruent to x modulo m with |n|, d <= bound.
std::optional<std::pair<mpz_class, mpz_class>> reconstruct(const mpz_class& x, const mpz_class& m,
                                                           const mpz_class& bound) {
  mpz_class r0 = m, r1 = x, s0 = 0, s1 = 1, q, t;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  if (s1 < 0) return std::make_pair(mpz_class(-r1), mpz_class(-s1));
  return std::make_pair(r1, s1);
}

// Candidate solution with a common denominator, checked exactly against the
// integer system.
std::optional<std::vector<Rational>> try_reconstruct(const IntegerSystem& sys, const std::vector<mpz_class>& x,
                                                     const mpz_class& modulus, bool threaded) {
  const std::size_t n = sys.n;
  mpz_class bound = sqrt(mpz_class(modulus / 2));
  mpz_class half = modulus / 2;
  mpz_class den = 1;
  std::vector<mpz_class> num(n);
  for (std::size_t j = 0; j < n; ++j) {
    mpz_class t = den * x[j] % modulus;
    if (t > half) t -= modulus;
    if (abs(t) <= bound) {
      num[j] = t;
      continue;
    }
    if (t < 0) t += modulus;
    auto rec = reconstruct(t, modulus, bound);
    if (!rec) return std::nullopt;
    // den * x = n'/d' so x = n' / (den * d'); rescale earlier numerators.
    for (std::size_t k = 0; k < j; ++k) num[k] *= rec->second;
    den *= rec->second;
    num[j] = rec->first;
  }
  bool ok = true;
  const long rows = static_cast<long>(n);
#pragma omp parallel for schedule(static) if (threaded) reduction(&& : ok)
  for (long i = 0; i < rows; ++i) {
    mpz_class lhs = 0;
    for (const auto& [j, v] : sys.rows[static_cast<std::size_t>(i)]) lhs += v * num[j];
    ok = ok && lhs == sys.b[static_cast<std::size_t>(i)] * den;
  }
  if (!ok) return std::nullopt;
  std::vector<Rational> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = Rational(num[j], den);
    out[j].canonicalize();
  }
  return out;
}

// Bits needed for p^k to exceed 2 |num| |den| of every solution entry
// (Hadamard bound on the determinant and on the Cramer numerators).
std::size_t lifting_bits(const IntegerSystem& sys) {
  double log_det = 0, log_b = 0;
  for (std::size_t i = 0; i < sys.n; ++i) {
    std::size_t bits = 0;
    for (const auto& [j, v] : sys.rows[i]) bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
    log_det += static_cast<double>(bits) + 0.5 * std::log2(static_cast<double>(sys.rows[i].size()) + 1);
    log_b = std::max(log_b, static_cast<double>(mpz_sizeinbase(sys.b[i].get_mpz_t(), 2)));
  }
  return static_cast<std::size_t>(2 * (log_det + log_b + std::log2(static_cast<double>(sys.n) + 1))) + 8;
}

template <u64 P>
std::optional<std::vector<Rational>> dixon(const IntegerSystem& sys, bool threaded) {
  ModularLu<P> lu;
  if (!lu.factor(sys, threaded)) return std::nullopt;
  const std::size_t n = sys.n;
  const std::size_t max_steps = lifting_bits(sys) / 30 + 2;

  std::vector<mpz_class> residual = sys.b, x(n);
  std::vector<u64> rm(n);
  mpz_class modulus = 1;
  std::size_t next_attempt = 4;
  for (std::size_t step = 1; step <= max_steps; ++step) {
    for (std::size_t i = 0; i < n; ++i) rm[i] = reduce<P>(residual[i]);
    std::vector<u64> digit = lu.solve(rm);
    for (std::size_t j = 0; j < n; ++j) mpz_addmul_ui(x[j].get_mpz_t(), modulus.get_mpz_t(), digit[j]);
    const long rows = static_cast<long>(n);
#pragma omp parallel for schedule(static) if (threaded)
    for (long i = 0; i < rows; ++i) {
      mpz_class& r = residual[static_cast<std::size_t>(i)];
      for (const auto& [j, v] : sys.rows[static_cast<std::size_t>(i)]) {
        mpz_submul_ui(r.get_mpz_t(), v.get_mpz_t(), digit[j]);
      }
      mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), P);
    }
    modulus *= P;
    if (step == next_attempt || step == max_steps) {
      if (auto solution = try_reconstruct(sys, x, modulus, threaded)) return solution;
      next_attempt = std::max(next_attempt + 4, next_attempt * 5 / 4);
    }
  }
  throw std::logic_error("p-adic lifting did not converge within the determinant bound");
}

std::vector<Rational> solve_dixon_impl(const LinearSystem& system, bool threaded) {
  IntegerSystem sys = integerize(system);
  if (auto x = dixon<2147483647>(sys, threaded)) return *x;
  if (auto x = dixon<2147483629>(sys, threaded)) return *x;
  if (auto x = dixon<2147483587>(sys, threaded)) return *x;
  // Singular modulo three primes: almost surely singular. Elimination decides.
  return threaded ? solve_parallel(system) : solve_serial(system);
}

}  // namespace

std::vector<Rational> solve_dixon_serial(const LinearSystem& system) { return solve_dixon_impl(system, false); }

std::vector<Rational> solve_dixon_parallel(const LinearSystem& system) { return solve_dixon_impl(system, true); }

std::vector<Rational> solve(LinearSystem system) {
  if (system.n < kDixonThreshold) return solve_parallel(std::move(system));
  return solve_dixon_parallel(system);
}

}  // namespace rpmc::kernels
