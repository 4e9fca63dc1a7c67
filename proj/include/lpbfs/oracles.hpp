#pragma once

#include "lpbfs/errors.hpp"
#include "lpbfs/numerics.hpp"
#include "lpbfs/phase1.hpp"
#include "lpbfs/phase2.hpp"
#include "lpbfs/problem.hpp"
#include "lpbfs/tableau.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace lpbfs {

// ---------------------------------------------------------------------------
// Auxiliary problem: min sum(t) s.t. Ax + t = b, x, t >= 0 with b made
// nonnegative by negating rows.
// ---------------------------------------------------------------------------

template <class T> struct AuxiliaryProblem {
  Problem<T> extended;        // [diag(s) A | I], |b|, (0, ..., 0, 1, ..., 1)
  std::vector<bool> negated;  // s_i = -1
  std::size_t original_cols = 0;

  /// Artificial columns, one per row, in row order.
  std::vector<std::size_t> artificial_basis() const {
    std::vector<std::size_t> cols(extended.rows());
    for (std::size_t i = 0; i < cols.size(); ++i)
      cols[i] = original_cols + i;
    return cols;
  }
};

template <class T>
AuxiliaryProblem<T> make_auxiliary(const Problem<T> &p, const Tolerance &tol = {}) {
  validate(p);
  const std::size_t m = p.rows(), n = p.cols();
  AuxiliaryProblem<T> aux;
  aux.original_cols = n;
  aux.negated.assign(m, false);
  aux.extended.a = Matrix<T>(m, n + m);
  aux.extended.b.resize(m);
  aux.extended.c.assign(n + m, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    const bool neg = is_negative(p.b[i], tol);
    aux.negated[i] = neg;
    for (std::size_t j = 0; j < n; ++j)
      aux.extended.a(i, j) = neg ? T(-p.a(i, j)) : p.a(i, j);
    aux.extended.a(i, n + i) = T(1);
    aux.extended.b[i] = neg ? T(-p.b[i]) : p.b[i];
    aux.extended.c[n + i] = T(1);
  }
  return aux;
}

template <class T> struct AuxiliaryResult {
  bool feasible = false;
  T aux_optimum{};
  std::size_t simplex_iterations = 0;
  std::size_t dropped_rows = 0;
  /// Feasible scheme over the original columns of an equivalent full-rank
  /// system (present iff feasible).
  std::optional<Tableau<T>> tableau;
};

/// Classical Phase 1 through the auxiliary problem, solved with the Bland
/// simplex from the all-artificial base. On a zero optimum, artificial
/// columns left at zero level are driven out through the first nonzero
/// original-column entry of their row; rows without one are redundant and
/// dropped.
template <class T>
AuxiliaryResult<T> auxiliary_phase1(const Problem<T> &p, const Tolerance &tol = {}) {
  auto aux = make_auxiliary(p, tol);
  const std::size_t n = aux.original_cols;
  auto ext = std::make_shared<const Problem<T>>(aux.extended);
  auto start = Tableau<T>::from_basis(ext, aux.artificial_basis(), tol);

  Phase2Options opt;
  opt.tol = tol;
  auto run = run_simplex(std::move(start), ext->c, opt);
  if (!run.optimal())
    throw InvariantViolation("auxiliary problem reported unbounded");

  AuxiliaryResult<T> out;
  out.aux_optimum = std::get<Optimal<T>>(run.status).objective;
  out.simplex_iterations = run.iterations;
  if (is_positive(out.aux_optimum, tol))
    return out;

  Tableau<T> t = std::move(run.final_tableau);
  std::vector<bool> redundant(t.rows(), false);
  for (std::size_t k = 0; k < t.rows(); ++k) {
    if (t.basic_column(k) < n)
      continue;
    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j < n && !entering; ++j)
      if (!t.is_basic(j) && !is_zero(t.tilde_a()(k, j), tol))
        entering = j;
    if (entering)
      t.exchange(k, *entering, tol, RowOrder::Stored);
    else
      redundant[k] = true;
  }

  auto reduced = std::make_shared<Problem<T>>();
  std::vector<std::size_t> kept, basis;
  for (std::size_t k = 0; k < t.rows(); ++k)
    if (!redundant[k]) {
      kept.push_back(k);
      basis.push_back(t.basic_column(k));
    }
  out.dropped_rows = t.rows() - kept.size();
  reduced->a = Matrix<T>(kept.size(), n);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j)
      reduced->a(r, j) = t.tilde_a()(kept[r], j);
    reduced->b.push_back(t.tilde_b()[kept[r]]);
  }
  reduced->c = p.c;
  auto scheme = Tableau<T>::from_basis(std::move(reduced), std::move(basis), tol);
  scheme.sort_rows();
  out.feasible = true;
  out.tableau = std::move(scheme);
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive basis enumeration
// ---------------------------------------------------------------------------

template <class T> struct BasisRecord {
  Basis basis;
  SolutionVector<T> x;
  bool feasible = false;
  T objective{};
  /// Feasible base with a nonbasic column of negative reduced cost and no
  /// positive entry: the objective is unbounded below.
  bool improving_ray = false;
};

template <class T> struct EnumerationResult {
  bool consistent = true;
  RankReport rank;
  std::size_t singular = 0;
  std::vector<BasisRecord<T>> records;

  bool feasible() const {
    for (const auto &r : records)
      if (r.feasible)
        return true;
    return false;
  }
  bool bounded() const {
    for (const auto &r : records)
      if (r.feasible && r.improving_ray)
        return false;
    return true;
  }
  std::optional<T> min_objective() const {
    std::optional<T> best;
    for (const auto &r : records)
      if (r.feasible && (!best || r.objective < *best))
        best = r.objective;
    return best;
  }
};

namespace detail {

/// Gauss-Jordan on [B | R]; returns B^-1 R or nullopt if B is singular.
template <class T>
std::optional<Matrix<T>> left_divide(const Matrix<T> &base, const Matrix<T> &rhs,
                                     const Tolerance &tol) {
  const std::size_t m = base.rows(), k = rhs.cols();
  Matrix<T> w(m, m + k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      w(i, j) = base(i, j);
    for (std::size_t j = 0; j < k; ++j)
      w(i, m + j) = rhs(i, j);
  }
  for (std::size_t col = 0; col < m; ++col) {
    auto r = choose_pivot_row(w, col, col, tol);
    if (!r)
      return std::nullopt;
    w.swap_rows(col, *r);
    eliminate(w, col, col);
  }
  Matrix<T> out(m, k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out(i, j) = w(i, m + j);
  return out;
}

inline bool next_combination(std::vector<std::size_t> &idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j)
        idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

} // namespace detail

/// Visits every m-subset of columns of the rank-reduced system. A problem is
/// feasible iff some regular subset yields x_J >= 0.
template <class T>
EnumerationResult<T> enumerate_bases(const Problem<T> &p, std::size_t limit = 100'000,
                                     const Tolerance &tol = {}) {
  EnumerationResult<T> out;
  Problem<T> q;
  try {
    auto start = initial_tableau(p, tol);
    out.rank = start.rank;
    q = start.tableau.problem();
  } catch (const InconsistentSystem &e) {
    out.consistent = false;
    out.rank = e.report();
    return out;
  }
  const std::size_t m = q.rows(), n = q.cols();
  if (binomial_capped(n, m, limit + 1) > limit)
    throw OracleTooLarge("C(" + std::to_string(n) + ", " + std::to_string(m) +
                         ") exceeds enumeration limit " + std::to_string(limit));

  Matrix<T> rhs_b(m, 1);
  for (std::size_t i = 0; i < m; ++i)
    rhs_b(i, 0) = q.b[i];

  std::vector<std::size_t> cols(m);
  for (std::size_t k = 0; k < m; ++k)
    cols[k] = k;
  do {
    Matrix<T> base(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        base(i, k) = q.a(i, cols[k]);
    auto xj = detail::left_divide(base, rhs_b, tol);
    if (!xj) {
      ++out.singular;
      continue;
    }
    BasisRecord<T> rec;
    rec.basis = Basis(cols, n);
    rec.x.assign(n, T(0));
    rec.feasible = true;
    for (std::size_t k = 0; k < m; ++k) {
      rec.x[cols[k]] = (*xj)(k, 0);
      if (is_negative((*xj)(k, 0), tol))
        rec.feasible = false;
    }
    rec.objective = dot<T>(q.c, rec.x);
    if (rec.feasible) {
      auto z = detail::left_divide(base, q.a, tol); // B^-1 A
      for (std::size_t j = 0; j < n && !rec.improving_ray; ++j) {
        if (rec.basis.contains(j))
          continue;
        T rc = q.c[j];
        bool has_positive = false;
        for (std::size_t k = 0; k < m; ++k) {
          rc -= q.c[cols[k]] * (*z)(k, j);
          if (is_positive((*z)(k, j), tol))
            has_positive = true;
        }
        rec.improving_ray = is_negative(rc, tol) && !has_positive;
      }
    }
    out.records.push_back(std::move(rec));
  } while (detail::next_combination(cols, n));
  return out;
}

} // namespace lpbfs
