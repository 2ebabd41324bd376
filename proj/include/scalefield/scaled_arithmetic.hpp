#pragma once

// Scaled number structures.
//
// A structure S^t_s is the number structure with scaling factor t whose values
// are written in the frame of the structure with factor s. With r = t/s:
//
//   add(A, B) = A + B
//   mul(A, B) = (1/r) A B
//   identity  = r
//   inv(A)    = r^2 A^-1         (kUniformFactor: r A^-1)
//   conj(A)   = (r / conj r) A*  (kUniformFactor: r A*)
//   A <' B    = A < B, reversed when r < 0
//
// A base-set element a has value a/s in S^s, and relabelling a value from frame
// t to frame s multiplies it by t/s.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scalefield/scalar.hpp"

namespace scalefield {

enum class NumberKind { kNatural, kRational, kReal, kComplex };

std::string_view NumberKindName(NumberKind kind);
std::optional<NumberKind> ParseNumberKind(std::string_view name);

/// Nonzero exact scaling factor (rational or complex rational).
class ScalingFactor {
 public:
  /// Throws kZeroScaling for zero and kInvalidArgument for decimal values.
  explicit ScalingFactor(Scalar value);
  ScalingFactor(int value) : ScalingFactor(Scalar(value)) {}  // NOLINT(google-explicit-constructor)

  /// Accepts "A/B", decimals, or "re:im" for complex factors.
  static ScalingFactor Parse(std::string_view text);

  const Scalar& value() const { return value_; }
  bool is_real() const { return value_.is_real(); }
  bool is_positive_integer() const;
  ScalingFactor inverse() const;
  std::string to_string() const { return value_.to_string(); }

  friend bool operator==(const ScalingFactor& a, const ScalingFactor& b) { return a.value_ == b.value_; }

 private:
  Scalar value_;
};

/// An element of a base set. Identity is structure-independent: two base
/// numbers are the same element exactly when kind and payload agree.
class BaseNumber {
 public:
  static BaseNumber Natural(const Integer& n);
  static BaseNumber Natural(std::string_view digits);
  static BaseNumber FromRational(const Rational& q);
  static BaseNumber FromReal(const Real& x);
  static BaseNumber FromComplex(const ComplexRational& z);
  /// Builds a number of the given kind from a scalar payload, enforcing the
  /// kind's invariants (naturals: nonnegative integers, rationals: real).
  static BaseNumber Make(NumberKind kind, const Scalar& payload);

  NumberKind kind() const { return kind_; }
  const Scalar& payload() const { return payload_; }
  std::string to_string() const;

  friend bool operator==(const BaseNumber& a, const BaseNumber& b) {
    return a.kind_ == b.kind_ && a.payload_ == b.payload_;
  }

 private:
  BaseNumber(NumberKind kind, Scalar payload) : kind_(kind), payload_(std::move(payload)) {}

  NumberKind kind_;
  Scalar payload_;
};

class ScaledStructure {
 public:
  /// Validates the combination: naturals need positive-integer factors, reals
  /// need real factors. Complex factors are allowed for rational and complex kinds.
  ScaledStructure(NumberKind kind, ScalingFactor factor_t, ScalingFactor level_s);

  NumberKind kind() const { return kind_; }
  const ScalingFactor& factor_t() const { return factor_t_; }
  const ScalingFactor& level_s() const { return level_s_; }

  /// t/s, the factor relating the structure's own frame to the display frame.
  const Scalar& ratio() const { return ratio_; }

  /// The n of N_n (naturals only).
  std::optional<Integer> base_set_stride() const;
  bool in_base_set(const BaseNumber& a) const;

  /// An order relation exists for non-complex kinds with a real ratio.
  bool is_ordered() const;

 private:
  NumberKind kind_;
  ScalingFactor factor_t_;
  ScalingFactor level_s_;
  Scalar ratio_;
};

struct ScaledValue {
  ScaledStructure structure;
  Scalar value;
};

/// Value of base number `a` in S^s. Throws kNotInBaseSet for naturals that are
/// not multiples of s.
ScaledValue ValueOf(const BaseNumber& a, const ScalingFactor& s);

/// Inverse of ValueOf: the base number whose value in S^s is `v`.
/// Throws kNotRepresentable when s*v is not in the kind's base set.
BaseNumber NumberOf(NumberKind kind, const Scalar& v, const ScalingFactor& s);
BaseNumber NumberOf(const ScaledValue& v);

/// Re-expresses a value from frame `from` in frame `to`: multiplies by from/to.
Scalar Relabel(const Scalar& v, const ScalingFactor& from, const ScalingFactor& to);
ScaledValue Relabel(const ScaledValue& v, const ScalingFactor& to);

/// Structure-group action on levels: W(t) maps level c to t*c.
ScalingFactor GroupAction(const ScalingFactor& t, const ScalingFactor& level);

enum class Convention {
  kAxiomConsistent,
  /// Every non-additive operation uses the plain ratio r (mul 1/r, inverse
  /// and conjugation r). Breaks the inverse and conjugation axioms when t != s.
  kUniformFactor,
};

struct OperationFactors {
  Scalar mul;
  Scalar identity;
  Scalar inv;
  Scalar conj;
};

OperationFactors FactorsFor(const ScaledStructure& structure, Convention convention);

class ScaledOps {
 public:
  explicit ScaledOps(ScaledStructure structure, Convention convention = Convention::kAxiomConsistent);
  /// Arbitrary operation factors; used to probe what the axiom suite detects.
  ScaledOps(ScaledStructure structure, OperationFactors factors);

  const ScaledStructure& structure() const { return structure_; }
  const OperationFactors& factors() const { return factors_; }

  Scalar zero() const { return Scalar(0); }
  Scalar identity() const { return factors_.identity; }
  Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
  /// Additive inverse; kInvalidArgument for naturals.
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const { return factors_.mul * a * b; }
  /// kDivisionByZero for zero; kInvalidArgument for naturals.
  Scalar inv(const Scalar& a) const;
  /// Complex kind only.
  Scalar conj(const Scalar& a) const;
  /// kOrderUndefined for complex kinds or non-real ratios.
  bool less(const Scalar& a, const Scalar& b) const;

 private:
  ScaledStructure structure_;
  OperationFactors factors_;
};

ScaledOps MakeScaledOps(const ScaledStructure& structure, Convention convention = Convention::kAxiomConsistent);

struct AxiomResult {
  std::string name;
  bool applicable = true;
  bool passed = true;
  std::size_t checked = 0;
  std::string counterexample;
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;

  bool all_passed() const;
  const AxiomResult* find(std::string_view name) const;
};

/// Checks the structure's axioms on `samples` randomly drawn exact values.
/// Numerators and denominators are uniform in [-10^6, 10^6]; the same seed
/// always draws the same values.
AxiomReport AxiomSuite(const ScaledOps& ops, std::size_t samples, std::uint64_t seed);
AxiomReport AxiomSuite(const ScaledStructure& structure, std::size_t samples, std::uint64_t seed,
                       Convention convention = Convention::kAxiomConsistent);

/// Normed vector space V^t_s over a scaled scalar structure. Requires t/s to
/// be a positive real so that the norm stays a nonnegative real.
class ScaledVectorSpace {
 public:
  using Vector = std::vector<Scalar>;

  ScaledVectorSpace(std::size_t dimension, NumberKind kind, ScalingFactor factor_t, ScalingFactor level_s,
                    Convention convention = Convention::kAxiomConsistent);

  std::size_t dimension() const { return dimension_; }
  const ScaledOps& scalars() const { return scalars_; }
  const Scalar& scale_factor() const { return scale_factor_; }
  const Scalar& norm_factor() const { return norm_factor_; }

  Vector zero() const { return Vector(dimension_, Scalar(0)); }
  Vector add(const Vector& a, const Vector& b) const;
  Vector neg(const Vector& a) const;
  Vector scale(const Scalar& a, const Vector& v) const;
  /// Exact square of the norm.
  Scalar norm_squared(const Vector& v) const;
  Real norm(const Vector& v) const;

 private:
  void CheckDimension(const Vector& v) const;

  std::size_t dimension_;
  ScaledOps scalars_;
  Scalar scale_factor_;
  Scalar norm_factor_;
};

AxiomReport VectorAxiomSuite(const ScaledVectorSpace& space, std::size_t samples, std::uint64_t seed);

}  // namespace scalefield
