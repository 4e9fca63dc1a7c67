#pragma once

#include "lpbfs/errors.hpp"
#include "lpbfs/numerics.hpp"
#include "lpbfs/problem.hpp"
#include "lpbfs/tableau.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace lpbfs {

enum class InstanceScheme { Random, InfeasibleBiased, NegativeB };

inline const char *to_string(InstanceScheme s) {
  switch (s) {
  case InstanceScheme::Random:
    return "random";
  case InstanceScheme::InfeasibleBiased:
    return "infeasible-biased";
  case InstanceScheme::NegativeB:
    return "negative-b";
  }
  return "unknown";
}

inline InstanceScheme scheme_of_string(std::string_view s) {
  if (s == "random")
    return InstanceScheme::Random;
  if (s == "infeasible-biased")
    return InstanceScheme::InfeasibleBiased;
  if (s == "negative-b")
    return InstanceScheme::NegativeB;
  throw ParseError("scheme", "unknown instance scheme '" + std::string(s) + "'");
}

struct EntryRange {
  int lo = -5;
  int hi = 5;
};

/// Stable per-instance seed derivation (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t id) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (id + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace detail {

inline Problem<Rational> draw_uniform(std::mt19937_64 &rng, std::size_t m, std::size_t n,
                                      EntryRange r) {
  std::uniform_int_distribution<int> d(r.lo, r.hi);
  Problem<Rational> p{Matrix<Rational>(m, n), Vector<Rational>(m), Vector<Rational>(n)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      p.a(i, j) = d(rng);
    p.b[i] = d(rng);
  }
  for (std::size_t j = 0; j < n; ++j)
    p.c[j] = d(rng);
  return p;
}

// Rows lean nonnegative while right-hand sides lean negative, so a
// nonnegative combination of rows frequently certifies infeasibility.
inline Problem<Rational> draw_biased(std::mt19937_64 &rng, std::size_t m, std::size_t n,
                                     EntryRange r) {
  if (r.lo >= 0 || r.hi <= 0)
    return draw_uniform(rng, m, n, r);
  std::uniform_int_distribution<int> pos(0, r.hi), neg(r.lo, -1), any(r.lo, r.hi);
  std::bernoulli_distribution lean(0.75);
  Problem<Rational> p{Matrix<Rational>(m, n), Vector<Rational>(m), Vector<Rational>(n)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      p.a(i, j) = lean(rng) ? pos(rng) : neg(rng);
    p.b[i] = lean(rng) ? neg(rng) : pos(rng);
  }
  for (std::size_t j = 0; j < n; ++j)
    p.c[j] = any(rng);
  return p;
}

inline bool has_negative_start(const Problem<Rational> &p) {
  try {
    const auto start = initial_tableau(p);
    for (const auto &v : start.tableau.tilde_b())
      if (v < 0)
        return true;
  } catch (const InconsistentSystem &) {
  }
  return false;
}

} // namespace detail

/// Deterministic random instance with integer entries in [lo, hi].
///
/// The negative-b scheme redraws until the Gaussian start has some b~_i < 0;
/// after 1000 failed draws it plants an identity block with b_1 = lo.
inline Problem<Rational> generate_instance(std::uint64_t seed, std::size_t m, std::size_t n,
                                           EntryRange range, InstanceScheme scheme) {
  if (m < 1 || m > n)
    throw ContractViolation("instance shape needs 1 <= m <= n");
  if (range.lo > range.hi)
    throw ContractViolation("entry range is empty");
  std::mt19937_64 rng(seed);
  switch (scheme) {
  case InstanceScheme::Random:
    return detail::draw_uniform(rng, m, n, range);
  case InstanceScheme::InfeasibleBiased:
    return detail::draw_biased(rng, m, n, range);
  case InstanceScheme::NegativeB:
    break;
  }
  if (range.lo >= 0 || range.hi < 1)
    throw ContractViolation("negative-b scheme needs lo < 0 and hi >= 1");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto p = detail::draw_uniform(rng, m, n, range);
    if (detail::has_negative_start(p))
      return p;
  }
  auto p = detail::draw_uniform(rng, m, n, range);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      p.a(i, k) = i == k ? 1 : 0;
  p.b[0] = range.lo;
  return p;
}

} // namespace lpbfs
