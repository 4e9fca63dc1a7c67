#pragma once

#include "lpbfs/errors.hpp"
#include "lpbfs/matrix.hpp"
#include "lpbfs/numerics.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace lpbfs {

/// Standard-form linear program: minimize c'x subject to Ax = b, x >= 0.
template <class T> struct Problem {
  Matrix<T> a;
  Vector<T> b;
  Vector<T> c;

  std::size_t rows() const noexcept { return a.rows(); }
  std::size_t cols() const noexcept { return a.cols(); }

  friend bool operator==(const Problem &, const Problem &) = default;
};

template <class T> using SolutionVector = Vector<T>;

/// Throws ShapeError naming the first inconsistent field.
template <class T> void validate(const Problem<T> &p) {
  if (p.a.rows() == 0)
    throw ShapeError("A", "matrix has no rows");
  if (p.a.cols() == 0)
    throw ShapeError("A", "matrix has no columns");
  if (p.b.size() != p.a.rows())
    throw ShapeError("b", "length " + std::to_string(p.b.size()) + " does not match " +
                              std::to_string(p.a.rows()) + " rows of A");
  if (p.c.size() != p.a.cols())
    throw ShapeError("c", "length " + std::to_string(p.c.size()) + " does not match " +
                              std::to_string(p.a.cols()) + " columns of A");
}

/// Assembles and validates a problem from nested rows.
template <class T>
Problem<T> make_problem(const std::vector<std::vector<T>> &a, Vector<T> b, Vector<T> c) {
  Problem<T> p{Matrix<T>::from_rows(a), std::move(b), std::move(c)};
  validate(p);
  return p;
}

/// Ax - b. Over rationals an all-zero result certifies Ax = b.
template <class T> Vector<T> residual(const Problem<T> &p, const SolutionVector<T> &x) {
  if (x.size() != p.cols())
    throw ShapeError("x", "length " + std::to_string(x.size()) + " does not match " +
                              std::to_string(p.cols()) + " columns of A");
  Vector<T> r(p.rows());
  for (std::size_t i = 0; i < p.rows(); ++i) {
    T acc(0);
    const auto row = p.a.row(i);
    for (std::size_t j = 0; j < p.cols(); ++j)
      acc += row[j] * x[j];
    r[i] = acc - p.b[i];
  }
  return r;
}

template <class T> T dot(std::span<const T> u, std::span<const T> v) {
  T acc(0);
  for (std::size_t k = 0; k < u.size(); ++k)
    acc += u[k] * v[k];
  return acc;
}

/// Same problem in another arithmetic.
template <class U, class T> Problem<U> convert(const Problem<T> &p) {
  auto conv = [](const T &v) {
    if constexpr (std::is_same_v<T, Rational>)
      return ScalarTraits<U>::from_rational(v);
    else
      return static_cast<U>(v);
  };
  Problem<U> q{Matrix<U>(p.rows(), p.cols()), Vector<U>(p.rows()), Vector<U>(p.cols())};
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j)
      q.a(i, j) = conv(p.a(i, j));
    q.b[i] = conv(p.b[i]);
  }
  for (std::size_t j = 0; j < p.cols(); ++j)
    q.c[j] = conv(p.c[j]);
  return q;
}

} // namespace lpbfs
