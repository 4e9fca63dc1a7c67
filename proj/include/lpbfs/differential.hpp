#pragma once

#include "lpbfs/generate.hpp"
#include "lpbfs/oracles.hpp"
#include "lpbfs/phase1.hpp"
#include "lpbfs/phase2.hpp"
#include "lpbfs/problem.hpp"
#include "lpbfs/solver.hpp"
#include "lpbfs/tableau.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace lpbfs {

enum class Verdict { Feasible, Infeasible };

inline const char *to_string(Verdict v) {
  return v == Verdict::Feasible ? "feasible" : "infeasible";
}

struct DifferentialOptions {
  bool aux = true;
  bool enumerate = true;
  bool check_float = false;
  Tolerance float_tol{};
  std::size_t enumeration_limit = 100'000;
};

/// Everything measured on one generated instance.
struct DifferentialRecord {
  std::size_t id = 0;
  std::uint64_t seed = 0;
  std::size_t m = 0, n = 0;
  InstanceScheme scheme = InstanceScheme::Random;

  std::optional<Verdict> sorted, unsorted, aux, enumerated;
  std::size_t phase1_iterations = 0;
  std::size_t iteration_bound = 0;
  bool no_repeat = true;
  bool sound = true; // basic solution / certificate verified by multiplication
  std::optional<bool> optimum_match;

  bool mild = true; // every rational pivot magnitude >= 1e-3
  std::optional<Verdict> float_verdict;
  bool float_suspect = false;

  std::string error;

  bool agree() const {
    std::optional<Verdict> ref = sorted;
    for (const auto &v : {unsorted, aux, enumerated})
      if (v && ref && *v != *ref)
        return false;
    return ref.has_value();
  }
  bool ok() const {
    return error.empty() && agree() && no_repeat && sound && optimum_match.value_or(true) &&
           phase1_iterations <= iteration_bound;
  }
};

namespace detail {

template <class T>
bool certificate_holds_exactly(const Problem<T> &p, const Vector<T> &y) {
  for (std::size_t j = 0; j < p.cols(); ++j) {
    T acc(0);
    for (std::size_t i = 0; i < p.rows(); ++i)
      acc += y[i] * p.a(i, j);
    if (acc < 0)
      return false;
  }
  return dot<T>(y, p.b) < 0;
}

template <class T> bool feasible_point_holds_exactly(const Problem<T> &p, const Vector<T> &x) {
  for (const auto &v : x)
    if (v < 0)
      return false;
  for (const auto &r : residual(p, x))
    if (r != 0)
      return false;
  return true;
}

inline bool no_repeated_basis(const std::vector<Phase1TraceEntry<Rational>> &trace) {
  std::set<Basis> seen;
  for (const auto &e : trace)
    if (!seen.insert(e.basis).second)
      return false;
  return true;
}

} // namespace detail

/// Runs both Phase-1 rules, the oracles, Phase 2 and optionally the float
/// path on one problem, recording agreement and soundness checks.
inline DifferentialRecord check_problem(const Problem<Rational> &p,
                                        const DifferentialOptions &opt = {}) {
  DifferentialRecord rec;
  rec.m = p.rows();
  rec.n = p.cols();
  try {
    std::optional<InitialTableau<Rational>> start;
    try {
      start.emplace(initial_tableau(p));
    } catch (const InconsistentSystem &) {
      rec.sorted = rec.unsorted = Verdict::Infeasible;
    }

    std::optional<Phase1Report<Rational>> sorted;
    if (start) {
      const auto &t0 = start->tableau;
      rec.mild = start->rank.smallest_pivot >= 1e-3;
      rec.iteration_bound = binomial_capped(t0.cols(), t0.rows(), 1'000'000);

      Phase1Options o;
      o.rule = Rule::Sorted;
      sorted = run_phase1(t0, o);
      o.rule = Rule::Unsorted;
      auto unsorted = run_phase1(t0, o);

      rec.sorted = sorted->feasible() ? Verdict::Feasible : Verdict::Infeasible;
      rec.unsorted = unsorted.feasible() ? Verdict::Feasible : Verdict::Infeasible;
      rec.phase1_iterations = std::max(sorted->iterations, unsorted.iterations);
      rec.no_repeat = detail::no_repeated_basis(sorted->trace) &&
                      detail::no_repeated_basis(unsorted.trace);
      for (const auto &e : sorted->trace)
        if (const auto *s = std::get_if<PivotStep>(&e.decision); s && s->pivot_magnitude < 1e-3)
          rec.mild = false;

      for (const auto *r : {&*sorted, &unsorted}) {
        const auto &reduced = t0.problem();
        if (r->feasible())
          rec.sound = rec.sound && detail::feasible_point_holds_exactly(
                                       reduced, basic_solution(r->tableau()));
        else
          rec.sound = rec.sound && detail::certificate_holds_exactly(reduced, r->certificate().y);
      }
    }

    if (opt.aux)
      rec.aux = auxiliary_phase1(p).feasible ? Verdict::Feasible : Verdict::Infeasible;

    std::optional<EnumerationResult<Rational>> en;
    if (opt.enumerate) {
      en = enumerate_bases(p, opt.enumeration_limit);
      rec.enumerated = en->feasible() ? Verdict::Feasible : Verdict::Infeasible;
    }

    if (sorted && sorted->feasible()) {
      auto run = run_simplex(sorted->tableau(), p.c);
      if (en && en->feasible()) {
        if (en->bounded())
          rec.optimum_match = run.optimal() &&
                              std::get<Optimal<Rational>>(run.status).objective == *en->min_objective();
        else
          rec.optimum_match = !run.optimal();
      }
    }

    if (opt.check_float) {
      SolveOptions so;
      so.tol = opt.float_tol;
      so.optimize = false;
      try {
        auto fr = solve(convert<double>(p), so);
        rec.float_verdict = (fr.status == SolveStatus::Feasible) ? Verdict::Feasible
                                                                  : Verdict::Infeasible;
        rec.float_suspect = fr.numerically_suspect;
      } catch (const std::exception &) {
        rec.float_suspect = true;
      }
    }
  } catch (const std::exception &e) {
    rec.error = e.what();
  }
  return rec;
}

struct FuzzConfig {
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::size_t max_m = 6;
  std::size_t max_n = 12;
  EntryRange range{};
  DifferentialOptions checks{};
  unsigned threads = 0; // 0: hardware concurrency
};

/// Instance `id`: m uniform in [1, max_m], n uniform in [m, max(m, max_n)],
/// scheme cycling random / infeasible-biased / negative-b. `seed` in the
/// record reproduces the instance through generate_instance.
inline DifferentialRecord fuzz_instance(const FuzzConfig &cfg, std::size_t id) {
  const std::uint64_t s = mix_seed(cfg.seed, id);
  std::mt19937_64 rng(s);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(1, cfg.max_m)(rng);
  const std::size_t n =
      std::uniform_int_distribution<std::size_t>(m, std::max(m, cfg.max_n))(rng);
  const auto scheme = static_cast<InstanceScheme>(id % 3);
  const std::uint64_t gen_seed = mix_seed(s, 0);
  DifferentialRecord rec;
  try {
    rec = check_problem(generate_instance(gen_seed, m, n, cfg.range, scheme), cfg.checks);
  } catch (const std::exception &e) {
    rec.error = e.what();
  }
  rec.id = id;
  rec.seed = gen_seed;
  rec.m = m;
  rec.n = n;
  rec.scheme = scheme;
  return rec;
}

/// Records come back ordered by instance id whatever the thread count.
inline std::vector<DifferentialRecord> run_fuzz(const FuzzConfig &cfg) {
  std::vector<DifferentialRecord> out(cfg.count);
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, cfg.count)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.count; i = next++)
      out[i] = fuzz_instance(cfg, i);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k)
    pool.emplace_back(worker);
  worker();
  for (auto &th : pool)
    th.join();
  return out;
}

} // namespace lpbfs
