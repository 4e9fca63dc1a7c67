#pragma once

#include "lpbfs/errors.hpp"
#include "lpbfs/numerics.hpp"
#include "lpbfs/phase1.hpp"
#include "lpbfs/problem.hpp"
#include "lpbfs/tableau.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <variant>
#include <vector>

namespace lpbfs {

template <class T> struct Optimal {
  SolutionVector<T> x;
  T objective;
};

/// x + s * ray stays feasible for every s >= 0 and the objective decreases
/// along it.
template <class T> struct Unbounded {
  SolutionVector<T> x;
  Vector<T> ray;
  std::size_t entering;
};

enum class Phase2Event { Pivot, Optimal, Unbounded };

template <class T> struct Phase2TraceEntry {
  std::size_t iteration;
  Basis basis;
  Vector<T> tilde_b;
  std::optional<Matrix<T>> tilde_a;
  Phase2Event event;
  std::optional<std::size_t> row;
  std::optional<std::size_t> entering;
  std::optional<std::size_t> leaving;
  std::optional<T> reduced_cost; // of the entering column
};

template <class T> struct Phase2Report {
  std::variant<Optimal<T>, Unbounded<T>> status;
  std::size_t iterations = 0;
  std::vector<Phase2TraceEntry<T>> trace;
  Tableau<T> final_tableau;

  bool optimal() const { return std::holds_alternative<Optimal<T>>(status); }
};

struct Phase2Options {
  Tolerance tol{};
  std::optional<std::size_t> max_iter;
  std::size_t ceiling = 1'000'000;
  bool record_tableaus = false;
};

/// c_j - c_J' A~_j for every column; zero on basic columns.
template <class T> Vector<T> reduced_costs(const Tableau<T> &t, const Vector<T> &c) {
  Vector<T> r(c);
  for (std::size_t k = 0; k < t.rows(); ++k) {
    const T &cb = c[t.basic_column(k)];
    if (cb == T(0))
      continue;
    const auto row = t.tilde_a().row(k);
    for (std::size_t j = 0; j < t.cols(); ++j)
      r[j] -= cb * row[j];
  }
  for (std::size_t k = 0; k < t.rows(); ++k)
    r[t.basic_column(k)] = T(0);
  return r;
}

/// Primal simplex with Bland's rule from a feasible scheme: enter the
/// smallest column with negative reduced cost; among minimal ratios, leave
/// the smallest basic column.
template <class T>
Phase2Report<T> run_simplex(Tableau<T> t, const Vector<T> &c, const Phase2Options &opt = {}) {
  if (c.size() != t.cols())
    throw ShapeError("c", "objective length does not match the tableau");
  for (const auto &v : t.tilde_b())
    if (is_negative(v, opt.tol))
      throw ContractViolation("simplex needs a feasible starting scheme");
  t.sort_rows();
  const std::size_t max_iter =
      opt.max_iter.value_or(binomial_capped(t.cols(), t.rows(), opt.ceiling));

  Phase2Report<T> report{Optimal<T>{}, 0, {}, {}};
  std::set<Basis> seen;
  for (;;) {
    Basis current = t.basis();
    if (!seen.insert(current).second)
      throw AntiCyclingViolation("column base repeated in phase 2");
    Phase2TraceEntry<T> entry{report.iterations, std::move(current), t.tilde_b(),
                              opt.record_tableaus ? std::optional(t.tilde_a()) : std::nullopt,
                              Phase2Event::Optimal, {}, {}, {}, {}};

    const auto rc = reduced_costs(t, c);
    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j < t.cols() && !entering; ++j)
      if (!t.is_basic(j) && is_negative(rc[j], opt.tol))
        entering = j;

    if (!entering) {
      auto x = basic_solution(t);
      T objective = dot<T>(c, x);
      report.trace.push_back(std::move(entry));
      report.status = Optimal<T>{std::move(x), std::move(objective)};
      report.final_tableau = std::move(t);
      return report;
    }
    const std::size_t j = *entering;
    entry.entering = j;
    entry.reduced_cost = rc[j];

    std::optional<std::size_t> leave_row;
    T best_ratio(0);
    for (std::size_t k = 0; k < t.rows(); ++k) {
      const T &a = t.tilde_a()(k, j);
      if (!is_positive(a, opt.tol))
        continue;
      T ratio = t.tilde_b()[k] / a;
      if (!leave_row) {
        leave_row = k;
        best_ratio = std::move(ratio);
        continue;
      }
      const Sign cmp = classify_sign(T(ratio - best_ratio), opt.tol);
      if (cmp == Sign::Negative ||
          (cmp == Sign::Zero && t.basic_column(k) < t.basic_column(*leave_row))) {
        leave_row = k;
        best_ratio = std::move(ratio);
      }
    }

    if (!leave_row) {
      auto x = basic_solution(t);
      Vector<T> ray(t.cols(), T(0));
      ray[j] = T(1);
      for (std::size_t k = 0; k < t.rows(); ++k)
        ray[t.basic_column(k)] = -t.tilde_a()(k, j);
      entry.event = Phase2Event::Unbounded;
      report.trace.push_back(std::move(entry));
      report.status = Unbounded<T>{std::move(x), std::move(ray), j};
      report.final_tableau = std::move(t);
      return report;
    }

    if (report.iterations >= max_iter)
      throw AntiCyclingViolation("phase 2 exceeded " + std::to_string(max_iter) + " exchanges");
    entry.event = Phase2Event::Pivot;
    entry.row = *leave_row;
    entry.leaving = t.basic_column(*leave_row);
    report.trace.push_back(std::move(entry));
    t.exchange(*leave_row, j, opt.tol, RowOrder::Sorted);
    ++report.iterations;
  }
}

} // namespace lpbfs
