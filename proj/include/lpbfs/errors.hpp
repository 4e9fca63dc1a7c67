#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpbfs {

/// Problem data with inconsistent dimensions. `field()` names the culprit
/// ("A", "b" or "c").
class ShapeError : public std::invalid_argument {
public:
  ShapeError(std::string field, const std::string &what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string &field() const noexcept { return field_; }

private:
  std::string field_;
};

/// Malformed scalar text or problem document. `path()` is a JSON-pointer-ish
/// location such as "A[1][2]" (empty for bare scalars).
class ParseError : public std::runtime_error {
public:
  ParseError(std::string path, const std::string &what)
      : std::runtime_error(path.empty() ? what : path + ": " + what),
        path_(std::move(path)) {}
  const std::string &path() const noexcept { return path_; }

private:
  std::string path_;
};

/// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Pivoting on an entry that is zero (or classifies as zero).
class PivotDegenerate : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An iteration cap was hit or a column base repeated. Unreachable in exact
/// arithmetic; in floating point it signals tolerance breakdown.
class AntiCyclingViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Something that must hold by construction did not.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// NaN or infinity showed up in floating-point arithmetic.
class NumericalBreakdown : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration was asked to visit more bases than allowed.
class OracleTooLarge : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace lpbfs
