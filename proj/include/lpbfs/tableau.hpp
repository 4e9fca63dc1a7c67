#pragma once

#include "lpbfs/errors.hpp"
#include "lpbfs/matrix.hpp"
#include "lpbfs/numerics.hpp"
#include "lpbfs/problem.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lpbfs {

/// Column base: strictly increasing column indices (0-based internally).
class Basis {
public:
  Basis() = default;
  Basis(std::vector<std::size_t> cols, std::size_t n) : cols_(std::move(cols)) {
    for (std::size_t k = 0; k < cols_.size(); ++k) {
      if (cols_[k] >= n)
        throw ContractViolation("basis column " + std::to_string(cols_[k] + 1) +
                                " out of range");
      if (k > 0 && cols_[k - 1] >= cols_[k])
        throw ContractViolation("basis columns must be strictly increasing");
    }
  }

  std::span<const std::size_t> columns() const noexcept { return cols_; }
  std::size_t size() const noexcept { return cols_.size(); }
  std::size_t operator[](std::size_t k) const { return cols_[k]; }

  bool contains(std::size_t j) const {
    return std::binary_search(cols_.begin(), cols_.end(), j);
  }

  std::vector<std::size_t> one_based() const {
    std::vector<std::size_t> out(cols_);
    for (auto &j : out)
      ++j;
    return out;
  }

  auto operator<=>(const Basis &) const = default;

private:
  std::vector<std::size_t> cols_;
};

/// Outcome of rank detection during the Gaussian-elimination start.
struct RankReport {
  std::size_t rank = 0;
  std::vector<std::size_t> dropped_rows; // original 0-based row indices
  std::vector<std::size_t> kept_rows;    // original rows forming the reduced system
  bool consistent = true;
  double smallest_pivot = std::numeric_limits<double>::infinity();
};

/// A dependent row reduced to 0 = beta with beta != 0: Ax = b has no solution
/// at all, regardless of x >= 0.
class InconsistentSystem : public std::runtime_error {
public:
  InconsistentSystem(std::size_t row, RankReport report)
      : std::runtime_error("row " + std::to_string(row + 1) +
                           " reduces to 0 = nonzero; Ax = b is inconsistent"),
        row_(row), report_(std::move(report)) {}
  std::size_t row() const noexcept { return row_; }
  const RankReport &report() const noexcept { return report_; }

private:
  std::size_t row_;
  RankReport report_;
};

enum class RowOrder {
  Sorted, // rows permuted after each exchange so basic columns ascend
  Stored  // rows never move
};

template <class T> class Tableau;
template <class T> struct InitialTableau;
template <class T>
InitialTableau<T> initial_tableau(const Problem<T> &p, const Tolerance &tol = {});

namespace detail {

template <class T>
std::optional<std::size_t> choose_pivot_row(const Matrix<T> &w, std::size_t col,
                                                   std::size_t from, const Tolerance &tol) {
  std::optional<std::size_t> best;
  for (std::size_t r = from; r < w.rows(); ++r) {
    if (is_zero(w(r, col), tol))
      continue;
    if constexpr (ScalarTraits<T>::exact) {
      return r;
    } else {
      if (!best || ScalarTraits<T>::abs(w(r, col)) > ScalarTraits<T>::abs(w(*best, col)))
        best = r;
    }
  }
  return best;
}

template <class T>
void eliminate(Matrix<T> &w, std::size_t row, std::size_t col) {
  const T piv = w(row, col);
  auto prow = w.row(row);
  for (auto &v : prow)
    v /= piv;
  prow[col] = T(1);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    if (r == row || w(r, col) == T(0))
      continue;
    const T f = w(r, col);
    auto target = w.row(r);
    for (std::size_t j = 0; j < w.cols(); ++j)
      target[j] -= f * prow[j];
    target[col] = T(0);
  }
}

} // namespace detail

/// The scheme (A_J^-1 A, A_J^-1 b) together with its column base. Row k
/// carries the unit vector e_k in column basic_column(k).
template <class T> class Tableau {
public:
  Tableau() = default;

  /// Scheme for an explicit column base given in row order. Throws
  /// ContractViolation if A_J is singular.
  static Tableau from_basis(std::shared_ptr<const Problem<T>> problem,
                            std::vector<std::size_t> row_columns,
                            const Tolerance &tol = {}) {
    const std::size_t m = problem->rows(), n = problem->cols();
    if (row_columns.size() != m)
      throw ContractViolation("column base must have one column per row");
    Matrix<T> w(m, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        w(i, j) = problem->a(i, j);
      w(i, n) = problem->b[i];
    }
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t col = row_columns[k];
      if (col >= n)
        throw ContractViolation("basis column out of range");
      auto r = detail::choose_pivot_row(w, col, k, tol);
      if (!r)
        throw ContractViolation("column base is singular");
      w.swap_rows(k, *r);
      detail::eliminate(w, k, col);
    }
    Tableau t;
    t.problem_ = std::move(problem);
    t.tilde_a_ = Matrix<T>(m, n);
    t.tilde_b_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        t.tilde_a_(i, j) = w(i, j);
      t.tilde_b_[i] = w(i, n);
    }
    t.basic_ = std::move(row_columns);
    t.rebuild_flags();
    return t;
  }

  const Problem<T> &problem() const { return *problem_; }
  std::shared_ptr<const Problem<T>> problem_handle() const { return problem_; }

  std::size_t rows() const noexcept { return tilde_a_.rows(); }
  std::size_t cols() const noexcept { return tilde_a_.cols(); }

  const Matrix<T> &tilde_a() const noexcept { return tilde_a_; }
  const Vector<T> &tilde_b() const noexcept { return tilde_b_; }

  /// Basic column carried by stored row `row`.
  std::size_t basic_column(std::size_t row) const { return basic_[row]; }
  std::span<const std::size_t> row_columns() const noexcept { return basic_; }

  bool is_basic(std::size_t j) const { return j < is_basic_.size() && is_basic_[j]; }

  bool is_sorted() const { return std::is_sorted(basic_.begin(), basic_.end()); }

  Basis basis() const {
    std::vector<std::size_t> cols(basic_);
    std::sort(cols.begin(), cols.end());
    return Basis(std::move(cols), cols_or_zero());
  }

  /// Exchanges basic column basic_column(row) for `col` by eliminating on
  /// entry (row, col).
  void exchange(std::size_t row, std::size_t col, const Tolerance &tol = {},
                RowOrder order = RowOrder::Sorted) {
    if (row >= rows() || col >= cols())
      throw ContractViolation("pivot position out of range");
    if (is_basic(col))
      throw ContractViolation("entering column " + std::to_string(col + 1) +
                              " is already basic");
    if (is_zero(tilde_a_(row, col), tol))
      throw PivotDegenerate("pivot entry at row " + std::to_string(row + 1) +
                            ", column " + std::to_string(col + 1) + " is zero");
    const T piv = tilde_a_(row, col);
    auto pivot_row = tilde_a_.row(row);
    for (auto &v : pivot_row)
      v /= piv;
    tilde_b_[row] /= piv;
    pivot_row[col] = T(1);
    for (std::size_t r = 0; r < rows(); ++r) {
      if (r == row)
        continue;
      const T f = tilde_a_(r, col);
      if (f == T(0))
        continue;
      auto target = tilde_a_.row(r);
      for (std::size_t j = 0; j < cols(); ++j)
        target[j] -= f * pivot_row[j];
      target[col] = T(0);
      tilde_b_[r] -= f * tilde_b_[row];
    }
    is_basic_[basic_[row]] = 0;
    is_basic_[col] = 1;
    basic_[row] = col;
    if (order == RowOrder::Sorted)
      sort_rows();
  }

  /// Permutes rows so basic columns ascend.
  void sort_rows() {
    if (is_sorted())
      return;
    std::vector<std::size_t> perm(rows());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t x, std::size_t y) { return basic_[x] < basic_[y]; });
    tilde_a_ = tilde_a_.select_rows(perm);
    Vector<T> b(rows());
    std::vector<std::size_t> basic(rows());
    for (std::size_t k = 0; k < perm.size(); ++k) {
      b[k] = tilde_b_[perm[k]];
      basic[k] = basic_[perm[k]];
    }
    tilde_b_ = std::move(b);
    basic_ = std::move(basic);
  }

  /// Stored row r moves to position perm[r]. Only for exercising the
  /// unsorted rule.
  Tableau permuted(std::span<const std::size_t> perm) const {
    Tableau t(*this);
    for (std::size_t r = 0; r < rows(); ++r) {
      for (std::size_t j = 0; j < cols(); ++j)
        t.tilde_a_(perm[r], j) = tilde_a_(r, j);
      t.tilde_b_[perm[r]] = tilde_b_[r];
      t.basic_[perm[r]] = basic_[r];
    }
    return t;
  }

private:
  std::size_t cols_or_zero() const { return problem_ ? problem_->cols() : 0; }

  void rebuild_flags() {
    is_basic_.assign(cols(), 0);
    for (auto j : basic_)
      is_basic_[j] = 1;
  }

  template <class U>
  friend InitialTableau<U> initial_tableau(const Problem<U> &, const Tolerance &);

  std::shared_ptr<const Problem<T>> problem_;
  Matrix<T> tilde_a_;
  Vector<T> tilde_b_;
  std::vector<std::size_t> basic_;
  std::vector<char> is_basic_;
};

template <class T> struct InitialTableau {
  Tableau<T> tableau;
  RankReport rank;
};

/// Gaussian elimination over columns left to right. Within a column the pivot
/// row is the first nonzero (exact) or the largest magnitude (floating
/// point). Dependent rows reducing to 0 = 0 are dropped; the tableau then
/// refers to the reduced problem made of the kept rows in original order.
template <class T>
InitialTableau<T> initial_tableau(const Problem<T> &p, const Tolerance &tol) {
  validate(p);
  const std::size_t m = p.rows(), n = p.cols();
  Matrix<T> w(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      w(i, j) = p.a(i, j);
    w(i, n) = p.b[i];
  }
  std::vector<std::size_t> origin(m);
  std::iota(origin.begin(), origin.end(), std::size_t{0});

  RankReport report;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    auto r = detail::choose_pivot_row(w, col, rank, tol);
    if (!r)
      continue;
    w.swap_rows(rank, *r);
    std::swap(origin[rank], origin[*r]);
    report.smallest_pivot =
        std::min(report.smallest_pivot, ScalarTraits<T>::to_double(ScalarTraits<T>::abs(w(rank, col))));
    detail::eliminate(w, rank, col);
    pivot_cols.push_back(col);
    ++rank;
  }
  report.rank = rank;

  std::optional<std::size_t> offending;
  for (std::size_t r = rank; r < m; ++r) {
    report.dropped_rows.push_back(origin[r]);
    if (!is_zero(w(r, n), tol) && (!offending || origin[r] < *offending))
      offending = origin[r];
  }
  std::sort(report.dropped_rows.begin(), report.dropped_rows.end());
  report.kept_rows.assign(origin.begin(), origin.begin() + static_cast<std::ptrdiff_t>(rank));
  std::sort(report.kept_rows.begin(), report.kept_rows.end());
  if (offending) {
    report.consistent = false;
    throw InconsistentSystem(*offending, std::move(report));
  }

  auto reduced = std::make_shared<Problem<T>>();
  if (report.dropped_rows.empty()) {
    *reduced = p;
  } else {
    reduced->a = p.a.select_rows(report.kept_rows);
    for (auto r : report.kept_rows)
      reduced->b.push_back(p.b[r]);
    reduced->c = p.c;
  }

  Tableau<T> t;
  t.problem_ = std::move(reduced);
  t.tilde_a_ = Matrix<T>(rank, n);
  t.tilde_b_.resize(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      t.tilde_a_(i, j) = w(i, j);
    t.tilde_b_[i] = w(i, n);
  }
  t.basic_ = std::move(pivot_cols);
  t.rebuild_flags();
  return {std::move(t), std::move(report)};
}

/// Exchange at (i, j) on a copy, keeping rows sorted.
template <class T>
Tableau<T> pivot(Tableau<T> t, std::size_t i, std::size_t j, const Tolerance &tol = {}) {
  t.exchange(i, j, tol, RowOrder::Sorted);
  return t;
}

/// x with x_J = b~ and zeros elsewhere.
template <class T> SolutionVector<T> basic_solution(const Tableau<T> &t) {
  SolutionVector<T> x(t.cols(), T(0));
  for (std::size_t k = 0; k < t.rows(); ++k)
    x[t.basic_column(k)] = t.tilde_b()[k];
  return x;
}

namespace detail {

/// Solves M z = rhs by Gaussian elimination; nullopt when M is singular.
template <class T>
std::optional<Vector<T>> solve_square(Matrix<T> mat, Vector<T> rhs, const Tolerance &tol) {
  const std::size_t n = mat.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::optional<std::size_t> best;
    for (std::size_t r = k; r < n; ++r) {
      if (is_zero(mat(r, k), tol))
        continue;
      if constexpr (ScalarTraits<T>::exact) {
        best = r;
        break;
      } else if (!best || ScalarTraits<T>::abs(mat(r, k)) > ScalarTraits<T>::abs(mat(*best, k))) {
        best = r;
      }
    }
    if (!best)
      return std::nullopt;
    mat.swap_rows(k, *best);
    std::swap(rhs[k], rhs[*best]);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (mat(r, k) == T(0))
        continue;
      const T f = mat(r, k) / mat(k, k);
      for (std::size_t j = k; j < n; ++j)
        mat(r, j) -= f * mat(k, j);
      rhs[r] -= f * rhs[k];
    }
  }
  Vector<T> z(n);
  for (std::size_t k = n; k-- > 0;) {
    T acc = rhs[k];
    for (std::size_t j = k + 1; j < n; ++j)
      acc -= mat(k, j) * z[j];
    z[k] = acc / mat(k, k);
  }
  return z;
}

} // namespace detail

/// Row `i` of A_J^-1, found by solving A_J' y = e_i against the original
/// (reduced) data. Hence y'A equals row i of the scheme and y'b equals b~_i.
template <class T>
Vector<T> basis_inverse_row(const Tableau<T> &t, std::size_t i, const Tolerance &tol = {}) {
  const std::size_t m = t.rows();
  if (i >= m)
    throw ContractViolation("row index out of range");
  const auto &a = t.problem().a;
  Matrix<T> transposed(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t r = 0; r < m; ++r)
      transposed(k, r) = a(r, t.basic_column(k));
  Vector<T> e(m, T(0));
  e[i] = T(1);
  auto y = detail::solve_square(std::move(transposed), std::move(e), tol);
  if (!y)
    throw InvariantViolation("column base became singular");
  return *y;
}

} // namespace lpbfs
