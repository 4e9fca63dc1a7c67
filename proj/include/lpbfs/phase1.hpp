#pragma once

#include "lpbfs/errors.hpp"
#include "lpbfs/numerics.hpp"
#include "lpbfs/problem.hpp"
#include "lpbfs/tableau.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <variant>
#include <vector>

namespace lpbfs {

/// Which Phase-1 selection rule drives the run.
///
/// `Sorted` keeps the column base sorted and picks the first row with a
/// negative right-hand side. `Unsorted` never moves rows; it picks, among
/// rows with a negative right-hand side, the one whose basic column is
/// smallest. Both then enter the smallest column with a negative entry in
/// that row, so on equivalent schemes they make the same exchange.
enum class Rule { Sorted, Unsorted };

struct AlreadyFeasible {
  friend bool operator==(const AlreadyFeasible &, const AlreadyFeasible &) = default;
};

struct PivotStep {
  std::size_t row;      // stored row of the scheme
  std::size_t entering; // column entering the base
  std::size_t leaving;  // basic column of `row`, leaving the base
  double pivot_magnitude = 0;

  friend bool operator==(const PivotStep &x, const PivotStep &y) {
    return x.row == y.row && x.entering == y.entering && x.leaving == y.leaving;
  }
};

/// b~_row < 0 while row `row` of the scheme has no negative entry.
struct InfeasibleRow {
  std::size_t row;
  friend bool operator==(const InfeasibleRow &, const InfeasibleRow &) = default;
};

using PivotDecision = std::variant<AlreadyFeasible, PivotStep, InfeasibleRow>;

/// Farkas witness: y'A >= 0 and y'b < 0, so Ax = b, x >= 0 has no solution.
/// `y` is indexed by the rows of the reduced problem.
template <class T> struct InfeasibilityCertificate {
  std::size_t row;
  Vector<T> y;
};

template <class T> struct Phase1TraceEntry {
  std::size_t iteration; // exchanges performed before this decision
  Basis basis;           // sorted snapshot
  Vector<T> tilde_b;     // in stored row order
  std::optional<Matrix<T>> tilde_a;
  PivotDecision decision;
};

template <class T> struct Phase1Feasible {
  Tableau<T> tableau;
};

template <class T> struct Phase1Infeasible {
  InfeasibilityCertificate<T> certificate;
};

template <class T> struct Phase1Report {
  std::variant<Phase1Feasible<T>, Phase1Infeasible<T>> outcome;
  std::size_t iterations = 0;
  std::vector<Phase1TraceEntry<T>> trace;
  bool numerically_suspect = false;

  bool feasible() const { return std::holds_alternative<Phase1Feasible<T>>(outcome); }
  const Tableau<T> &tableau() const { return std::get<Phase1Feasible<T>>(outcome).tableau; }
  const InfeasibilityCertificate<T> &certificate() const {
    return std::get<Phase1Infeasible<T>>(outcome).certificate;
  }
};

struct Phase1Options {
  Rule rule = Rule::Sorted;
  Tolerance tol{};
  std::optional<std::size_t> max_iter; // default: C(n, m), capped at ceiling
  std::size_t ceiling = 1'000'000;
  bool record_tableaus = false;
};

/// C(n, k), saturating at `cap`.
inline std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  // Exact running product: r * (n - k + i) / i stays integral at each step.
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r >= cap)
      return cap;
  }
  return static_cast<std::size_t>(r);
}

namespace detail {

template <class T>
std::optional<std::size_t> first_negative_in_row(const Tableau<T> &t, std::size_t row,
                                                 const Tolerance &tol) {
  const auto r = t.tilde_a().row(row);
  for (std::size_t j = 0; j < r.size(); ++j)
    if (is_negative(r[j], tol)) {
      if (t.is_basic(j))
        throw InvariantViolation("negative entry in a basic column");
      return j;
    }
  return std::nullopt;
}

template <class T>
PivotDecision decide_for_row(const Tableau<T> &t, std::size_t row, const Tolerance &tol) {
  if (auto j = first_negative_in_row(t, row, tol))
    return PivotStep{row, *j, t.basic_column(row),
                     ScalarTraits<T>::to_double(ScalarTraits<T>::abs(t.tilde_a()(row, *j)))};
  return InfeasibleRow{row};
}

} // namespace detail

/// First row with b~_i < 0, then the first column with a negative entry in
/// that row. Requires a sorted tableau.
template <class T>
PivotDecision select_pivot_sorted(const Tableau<T> &t, const Tolerance &tol = {}) {
  if (!t.is_sorted())
    throw ContractViolation("sorted rule needs a sorted column base");
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (is_negative(t.tilde_b()[i], tol))
      return detail::decide_for_row(t, i, tol);
  return AlreadyFeasible{};
}

/// Rows may be in any order: the leaving column is fixed first as the
/// smallest basic column whose row has b~_i < 0.
template <class T>
PivotDecision select_pivot_unsorted(const Tableau<T> &t, const Tolerance &tol = {}) {
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (is_negative(t.tilde_b()[i], tol) &&
        (!chosen || t.basic_column(i) < t.basic_column(*chosen)))
      chosen = i;
  if (!chosen)
    return AlreadyFeasible{};
  return detail::decide_for_row(t, *chosen, tol);
}

template <class T>
InfeasibilityCertificate<T> make_certificate(const Tableau<T> &t, std::size_t i,
                                             const Tolerance &tol = {}) {
  if (i >= t.rows())
    throw ContractViolation("row index out of range");
  if (!is_negative(t.tilde_b()[i], tol))
    throw ContractViolation("certificate row must have a negative right-hand side");
  for (const auto &v : t.tilde_a().row(i))
    if (is_negative(v, tol))
      throw ContractViolation("certificate row must be componentwise nonnegative");
  return {i, basis_inverse_row(t, i, tol)};
}

namespace detail {

template <class T> double max_abs(std::span<const T> v) {
  double m = 0;
  for (const auto &x : v)
    m = std::max(m, ScalarTraits<T>::to_double(ScalarTraits<T>::abs(x)));
  return m;
}

/// ||Ax - b||_inf <= 1e-6 (1 + ||b||_inf).
template <class T> bool residual_ok(const Problem<T> &p, const SolutionVector<T> &x) {
  const auto r = residual(p, x);
  return max_abs<T>(r) <= 1e-6 * (1.0 + max_abs<T>(p.b));
}

/// Certificate inequalities with a margin scaled like the residual test.
template <class T>
bool certificate_ok(const Problem<T> &p, const Vector<T> &y) {
  double scale = 1.0 + max_abs<T>(p.b);
  for (std::size_t i = 0; i < p.rows(); ++i)
    scale = std::max(scale, 1.0 + max_abs<T>(p.a.row(i)));
  const double margin = 1e-6 * scale * (1.0 + max_abs<T>(y)) * static_cast<double>(p.rows());
  for (std::size_t j = 0; j < p.cols(); ++j) {
    T acc(0);
    for (std::size_t i = 0; i < p.rows(); ++i)
      acc += y[i] * p.a(i, j);
    if (ScalarTraits<T>::to_double(acc) < -margin)
      return false;
  }
  return ScalarTraits<T>::to_double(dot<T>(y, p.b)) < -margin;
}

} // namespace detail

/// Repeats select + exchange until the basic solution is nonnegative or a
/// row proves infeasibility. A repeated column base or exceeding the
/// iteration cap raises AntiCyclingViolation.
template <class T>
Phase1Report<T> run_phase1(Tableau<T> t, const Phase1Options &opt = {}) {
  const RowOrder order = opt.rule == Rule::Sorted ? RowOrder::Sorted : RowOrder::Stored;
  if (opt.rule == Rule::Sorted)
    t.sort_rows();
  const std::size_t max_iter =
      opt.max_iter.value_or(binomial_capped(t.cols(), t.rows(), opt.ceiling));

  Phase1Report<T> report{Phase1Feasible<T>{}, 0, {}, false};
  std::set<Basis> seen;
  for (;;) {
    Basis current = t.basis();
    if (!seen.insert(current).second)
      throw AntiCyclingViolation("column base repeated in phase 1");
    PivotDecision d = opt.rule == Rule::Sorted ? select_pivot_sorted(t, opt.tol)
                                               : select_pivot_unsorted(t, opt.tol);
    report.trace.push_back({report.iterations, std::move(current), t.tilde_b(),
                            opt.record_tableaus ? std::optional(t.tilde_a()) : std::nullopt, d});

    if (std::holds_alternative<AlreadyFeasible>(d)) {
      t.sort_rows();
      if constexpr (!ScalarTraits<T>::exact)
        report.numerically_suspect = !detail::residual_ok(t.problem(), basic_solution(t));
      report.outcome = Phase1Feasible<T>{std::move(t)};
      return report;
    }
    if (const auto *bad = std::get_if<InfeasibleRow>(&d)) {
      auto cert = make_certificate(t, bad->row, opt.tol);
      if constexpr (!ScalarTraits<T>::exact)
        report.numerically_suspect = !detail::certificate_ok(t.problem(), cert.y);
      report.outcome = Phase1Infeasible<T>{std::move(cert)};
      return report;
    }
    if (report.iterations >= max_iter)
      throw AntiCyclingViolation("phase 1 exceeded " + std::to_string(max_iter) + " exchanges");
    const auto &step = std::get<PivotStep>(d);
    t.exchange(step.row, step.entering, opt.tol, order);
    ++report.iterations;
  }
}

} // namespace lpbfs
