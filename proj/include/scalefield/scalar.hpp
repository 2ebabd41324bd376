#pragma once

// Exact and high-precision scalars used by the scaled number structures.
//
// Rational and complex-rational arithmetic is exact (GMP-backed). Reals are
// 50-significant-digit decimals; they never mix with non-real complex values.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace scalefield {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline constexpr unsigned kRealDigits = 50;
using Real = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<kRealDigits>>;

/// Parses "7", "-7/3", "1.25", "-2.5e-3" into an exact rational.
/// Throws Error(kInvalidArgument) on malformed text or a zero denominator.
Rational ParseRational(std::string_view text);

struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational re_part, Rational im_part = 0)
      : re(std::move(re_part)), im(std::move(im_part)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  ComplexRational conj() const { return {re, -im}; }
  Rational norm_squared() const { return re * re + im * im; }

  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

ComplexRational operator+(const ComplexRational& a, const ComplexRational& b);
ComplexRational operator-(const ComplexRational& a, const ComplexRational& b);
ComplexRational operator-(const ComplexRational& a);
ComplexRational operator*(const ComplexRational& a, const ComplexRational& b);
/// Throws Error(kDivisionByZero) when b is zero.
ComplexRational operator/(const ComplexRational& a, const ComplexRational& b);

/// A number value: exact rational, exact complex rational, or decimal real.
///
/// Mixed arithmetic promotes Rational to whichever richer type the other
/// operand has. Real combined with a complex value whose imaginary part is
/// nonzero is rejected with kInvalidArgument.
class Scalar {
 public:
  using Storage = std::variant<Rational, ComplexRational, Real>;

  Scalar() : storage_(Rational(0)) {}
  Scalar(int v) : storage_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational v) : storage_(std::move(v)) {}  // NOLINT
  Scalar(ComplexRational v) : storage_(std::move(v)) {}  // NOLINT
  Scalar(Real v) : storage_(std::move(v)) {}  // NOLINT

  const Storage& storage() const { return storage_; }

  bool is_rational() const { return std::holds_alternative<Rational>(storage_); }
  bool is_complex() const { return std::holds_alternative<ComplexRational>(storage_); }
  bool is_decimal() const { return std::holds_alternative<Real>(storage_); }

  bool is_zero() const;
  /// True when the value has no imaginary part (rationals and reals always do).
  bool is_real() const;
  bool is_integer() const;

  /// Exact rational value when the scalar is real and exact.
  std::optional<Rational> as_rational() const;
  /// The value as a complex rational; throws for decimal reals.
  ComplexRational as_complex_rational() const;

  Scalar conj() const;
  /// -1, 0 or +1. Throws Error(kOrderUndefined) for non-real values.
  int sign() const;
  Scalar abs() const;

  std::complex<double> to_complex() const;
  double to_double() const;
  std::string to_string() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);

  /// Numeric equality across representations.
  friend bool operator==(const Scalar& a, const Scalar& b);
  /// Throws Error(kOrderUndefined) unless both operands are real.
  friend bool operator<(const Scalar& a, const Scalar& b);

 private:
  Storage storage_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& v);

}  // namespace scalefield
