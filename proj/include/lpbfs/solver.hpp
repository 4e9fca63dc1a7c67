#pragma once

#include "lpbfs/phase1.hpp"
#include "lpbfs/phase2.hpp"
#include "lpbfs/problem.hpp"
#include "lpbfs/tableau.hpp"

#include <cstddef>
#include <optional>

namespace lpbfs {

enum class SolveStatus { Feasible, Optimal, Infeasible, Unbounded, Inconsistent };

inline const char *to_string(SolveStatus s) {
  switch (s) {
  case SolveStatus::Feasible:
    return "feasible";
  case SolveStatus::Optimal:
    return "optimal";
  case SolveStatus::Infeasible:
    return "infeasible";
  case SolveStatus::Unbounded:
    return "unbounded";
  case SolveStatus::Inconsistent:
    return "inconsistent";
  }
  return "unknown";
}

struct SolveOptions {
  Rule rule = Rule::Sorted;
  Tolerance tol{};
  std::optional<std::size_t> max_iter;
  bool optimize = true; // false stops after phase 1
  bool record_tableaus = false;
};

template <class T> struct SolveResult {
  SolveStatus status = SolveStatus::Feasible;
  RankReport rank;
  std::optional<std::size_t> inconsistent_row;
  std::optional<Phase1Report<T>> phase1;
  std::optional<Phase2Report<T>> phase2;
  bool numerically_suspect = false;

  /// Reduced problem the tableaus and certificates refer to.
  std::shared_ptr<const Problem<T>> reduced;
};

/// Gaussian start, Phase 1 with the selected rule, then (optionally) the
/// Bland simplex on the original objective.
template <class T> SolveResult<T> solve(const Problem<T> &p, const SolveOptions &opt = {}) {
  SolveResult<T> out;
  std::optional<InitialTableau<T>> start;
  try {
    start.emplace(initial_tableau(p, opt.tol));
  } catch (const InconsistentSystem &e) {
    out.status = SolveStatus::Inconsistent;
    out.rank = e.report();
    out.inconsistent_row = e.row();
    return out;
  }
  out.rank = start->rank;
  out.reduced = start->tableau.problem_handle();

  Phase1Options p1;
  p1.rule = opt.rule;
  p1.tol = opt.tol;
  p1.max_iter = opt.max_iter;
  p1.record_tableaus = opt.record_tableaus;
  out.phase1 = run_phase1(std::move(start->tableau), p1);
  out.numerically_suspect = out.phase1->numerically_suspect;
  if (!out.phase1->feasible()) {
    out.status = SolveStatus::Infeasible;
    return out;
  }
  if (!opt.optimize) {
    out.status = SolveStatus::Feasible;
    return out;
  }

  Phase2Options p2;
  p2.tol = opt.tol;
  p2.max_iter = opt.max_iter;
  p2.record_tableaus = opt.record_tableaus;
  out.phase2 = run_simplex(out.phase1->tableau(), p.c, p2);
  if (out.phase2->optimal()) {
    out.status = SolveStatus::Optimal;
    if constexpr (!ScalarTraits<T>::exact) {
      const auto &x = std::get<Optimal<T>>(out.phase2->status).x;
      if (!detail::residual_ok(*out.reduced, x))
        out.numerically_suspect = true;
    }
  } else {
    out.status = SolveStatus::Unbounded;
  }
  return out;
}

} // namespace lpbfs
