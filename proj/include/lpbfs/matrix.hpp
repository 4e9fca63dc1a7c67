#pragma once

#include "lpbfs/errors.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace lpbfs {

template <class T> using Vector = std::vector<T>;

/// Dense row-major matrix. Deliberately small: the solver only needs element
/// access, row views and row swaps.
template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T &fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Builds from nested rows; throws ShapeError("A") if they are ragged.
  static Matrix from_rows(const std::vector<std::vector<T>> &rows) {
    Matrix m;
    m.rows_ = rows.size();
    m.cols_ = rows.empty() ? 0 : rows.front().size();
    m.data_.reserve(m.rows_ * m.cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw ShapeError("A", "row " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[i].size()) +
                                  " entries, expected " + std::to_string(m.cols_));
      m.data_.insert(m.data_.end(), rows[i].begin(), rows[i].end());
    }
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    std::vector<std::vector<T>> v;
    for (const auto &r : rows)
      v.emplace_back(r);
    return from_rows(v);
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vector<T> column(std::size_t j) const {
    Vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      c[i] = (*this)(i, j);
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }

  /// Keeps only the listed rows, in the listed order.
  Matrix select_rows(std::span<const std::size_t> keep) const {
    Matrix m(keep.size(), cols_);
    for (std::size_t k = 0; k < keep.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j)
        m(k, j) = (*this)(keep[k], j);
    return m;
  }

  template <class U> Matrix<U> cast() const {
    Matrix<U> m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        m(i, j) = static_cast<U>((*this)(i, j));
    return m;
  }

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

} // namespace lpbfs
