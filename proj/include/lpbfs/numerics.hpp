#pragma once

#include "lpbfs/errors.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>

namespace lpbfs {

/// Exact rational number, always stored in canonical form (den > 0,
/// gcd(|num|, den) = 1). GMP does the arithmetic.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

enum class Sign { Negative, Zero, Positive };

constexpr Sign flip(Sign s) noexcept {
  switch (s) {
  case Sign::Negative:
    return Sign::Positive;
  case Sign::Positive:
    return Sign::Negative;
  default:
    return Sign::Zero;
  }
}

/// Absolute threshold under which a floating-point value counts as zero.
/// Ignored by exact arithmetic.
class Tolerance {
public:
  static constexpr double kDefaultEps = 1e-9;

  constexpr Tolerance() = default;
  explicit Tolerance(double eps) : eps_(eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps))
      throw ContractViolation("tolerance must be a finite value >= 0");
  }

  constexpr double eps() const noexcept { return eps_; }

  static Tolerance exact() { return Tolerance(0.0); }

private:
  double eps_ = kDefaultEps;
};

inline Sign classify_sign(const Rational &x, const Tolerance & = {}) {
  const int s = x.sign();
  return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero);
}

inline Sign classify_sign(double x, const Tolerance &tol = {}) {
  if (!std::isfinite(x))
    throw NumericalBreakdown("non-finite value in sign test");
  if (x < -tol.eps())
    return Sign::Negative;
  if (x > tol.eps())
    return Sign::Positive;
  return Sign::Zero;
}

template <class T> bool is_negative(const T &x, const Tolerance &tol) {
  return classify_sign(x, tol) == Sign::Negative;
}
template <class T> bool is_positive(const T &x, const Tolerance &tol) {
  return classify_sign(x, tol) == Sign::Positive;
}
template <class T> bool is_zero(const T &x, const Tolerance &tol) {
  return classify_sign(x, tol) == Sign::Zero;
}

/// Per-scalar glue so the algorithms can be written once for both
/// arithmetics.
template <class T> struct ScalarTraits;

template <> struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational &r) { return r; }
  static double to_double(const Rational &r) { return r.convert_to<double>(); }
  static Rational abs(const Rational &r) { return boost::multiprecision::abs(r); }
};

template <> struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double from_rational(const Rational &r) { return r.convert_to<double>(); }
  static double to_double(double d) { return d; }
  static double abs(double d) { return std::fabs(d); }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty())
    return false;
  for (char ch : s)
    if (ch < '0' || ch > '9')
      return false;
  return true;
}

/// Base-10 digits only; GMP would read a leading zero as octal.
inline BigInt decimal_bigint(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0')
    digits.remove_prefix(1);
  return BigInt(std::string(digits));
}

inline BigInt pow10(unsigned k) {
  return boost::multiprecision::pow(BigInt(10), k);
}

inline BigInt parse_signed_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s))
    throw ParseError("", "malformed number '" + std::string(whole) + "'");
  BigInt v = decimal_bigint(s);
  return negative ? BigInt(-v) : v;
}

} // namespace detail

/// Parses "p", "p/q", or a decimal with optional exponent ("-0.25", "1e-3")
/// into an exact rational.
inline Rational rational_of_string(std::string_view s) {
  const std::string_view whole = s;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt p = detail::parse_signed_integer(s.substr(0, slash), whole);
    std::string_view qs = s.substr(slash + 1);
    if (!detail::all_digits(qs))
      throw ParseError("", "malformed denominator in '" + std::string(whole) + "'");
    BigInt q = detail::decimal_bigint(qs);
    if (q == 0)
      throw ParseError("", "zero denominator in '" + std::string(whole) + "'");
    return Rational(p, q);
  }

  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = s.substr(e + 1);
    s = s.substr(0, e);
    std::string_view digits = es;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
      digits.remove_prefix(1);
    if (!detail::all_digits(digits) || digits.size() > 6)
      throw ParseError("", "malformed exponent in '" + std::string(whole) + "'");
    auto [ptr, ec] = std::from_chars(es.data() + (es.front() == '+' ? 1 : 0),
                                     es.data() + es.size(), exponent);
    if (ec != std::errc())
      throw ParseError("", "malformed exponent in '" + std::string(whole) + "'");
    (void)ptr;
  }

  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view int_part = s, frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) ||
      (!int_part.empty() && !detail::all_digits(int_part)) ||
      (!frac_part.empty() && !detail::all_digits(frac_part)))
    throw ParseError("", "malformed number '" + std::string(whole) + "'");

  BigInt mantissa = detail::decimal_bigint(std::string(int_part) + std::string(frac_part));
  if (negative)
    mantissa = -mantissa;
  const long scale = static_cast<long>(frac_part.size()) - exponent;
  if (scale >= 0)
    return Rational(mantissa, detail::pow10(static_cast<unsigned>(scale)));
  return Rational(mantissa * detail::pow10(static_cast<unsigned>(-scale)));
}

/// Canonical text: "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational &r) { return r.str(); }

/// Shortest round-tripping decimal form.
inline std::string to_string(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
  if (ec != std::errc())
    throw NumericalBreakdown("cannot format double");
  return std::string(buf, ptr);
}

} // namespace lpbfs
