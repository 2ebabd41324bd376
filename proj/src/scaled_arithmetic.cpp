#include "scalefield/scaled_arithmetic.hpp"

#include <deque>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>

#include "scalefield/error.hpp"

namespace scalefield {
namespace {

constexpr long long kSampleBound = 1'000'000;

bool IsExact(const Scalar& v) { return !v.is_decimal(); }

Scalar Square(const Scalar& v) { return v * v; }

// Draws exact values in a structure's own (t) frame.
class SampleSource {
 public:
  SampleSource(NumberKind kind, std::uint64_t seed)
      : kind_(kind), rng_(seed), numer_(-kSampleBound, kSampleBound), natural_(0, kSampleBound) {}

  Scalar Next() {
    switch (kind_) {
      case NumberKind::kNatural:
        return Scalar(Rational(natural_(rng_)));
      case NumberKind::kRational:
      case NumberKind::kReal:
        return Scalar(NextRational());
      case NumberKind::kComplex:
        return Scalar(ComplexRational(NextRational(), NextRational()));
    }
    return Scalar();
  }

 private:
  Rational NextRational() {
    long long num = numer_(rng_);
    long long den = 0;
    while (den == 0) den = numer_(rng_);
    return Rational(Integer(num), Integer(den));
  }

  NumberKind kind_;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<long long> numer_;
  std::uniform_int_distribution<long long> natural_;
};

class AxiomRecorder {
 public:
  AxiomResult& Add(std::string name, bool applicable = true) {
    AxiomResult r;
    r.name = std::move(name);
    r.applicable = applicable;
    axioms_.push_back(std::move(r));
    return axioms_.back();
  }

  static void Check(AxiomResult& axiom, bool holds, const std::function<std::string()>& describe) {
    ++axiom.checked;
    if (!holds && axiom.passed) {
      axiom.passed = false;
      axiom.counterexample = describe();
    }
  }

  AxiomReport Take() {
    AxiomReport report;
    report.axioms.assign(std::make_move_iterator(axioms_.begin()), std::make_move_iterator(axioms_.end()));
    return report;
  }

 private:
  std::deque<AxiomResult> axioms_;  // stable references while checks run
};

std::string Describe(std::initializer_list<std::pair<const char*, const Scalar*>> values) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, value] : values) {
    if (!first) os << ", ";
    os << name << "=" << *value;
    first = false;
  }
  return os.str();
}

}  // namespace

std::string_view NumberKindName(NumberKind kind) {
  switch (kind) {
    case NumberKind::kNatural: return "natural";
    case NumberKind::kRational: return "rational";
    case NumberKind::kReal: return "real";
    case NumberKind::kComplex: return "complex";
  }
  return "unknown";
}

std::optional<NumberKind> ParseNumberKind(std::string_view name) {
  if (name == "natural") return NumberKind::kNatural;
  if (name == "rational") return NumberKind::kRational;
  if (name == "real") return NumberKind::kReal;
  if (name == "complex") return NumberKind::kComplex;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// ScalingFactor

ScalingFactor::ScalingFactor(Scalar value) : value_(std::move(value)) {
  if (!IsExact(value_)) Throw(ErrorCode::kInvalidArgument, "scaling factors must be exact");
  if (value_.is_zero()) Throw(ErrorCode::kZeroScaling, "scaling factor is zero");
}

ScalingFactor ScalingFactor::Parse(std::string_view text) {
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    Rational re = ParseRational(text.substr(0, colon));
    Rational im = ParseRational(text.substr(colon + 1));
    if (im == 0) return ScalingFactor(Scalar(re));
    return ScalingFactor(Scalar(ComplexRational(re, im)));
  }
  return ScalingFactor(Scalar(ParseRational(text)));
}

bool ScalingFactor::is_positive_integer() const { return value_.is_integer() && value_.sign() > 0; }

ScalingFactor ScalingFactor::inverse() const { return ScalingFactor(Scalar(1) / value_); }

// ---------------------------------------------------------------------------
// BaseNumber

BaseNumber BaseNumber::Natural(const Integer& n) {
  if (n < 0) Throw(ErrorCode::kInvalidArgument, "natural numbers are nonnegative");
  return BaseNumber(NumberKind::kNatural, Scalar(Rational(n)));
}

BaseNumber BaseNumber::Natural(std::string_view digits) {
  return Make(NumberKind::kNatural, Scalar(ParseRational(digits)));
}

BaseNumber BaseNumber::FromRational(const Rational& q) { return BaseNumber(NumberKind::kRational, Scalar(q)); }

BaseNumber BaseNumber::FromReal(const Real& x) { return BaseNumber(NumberKind::kReal, Scalar(x)); }

BaseNumber BaseNumber::FromComplex(const ComplexRational& z) {
  return BaseNumber(NumberKind::kComplex, Scalar(z));
}

BaseNumber BaseNumber::Make(NumberKind kind, const Scalar& payload) {
  switch (kind) {
    case NumberKind::kNatural:
      if (!payload.is_integer() || payload.sign() < 0) {
        Throw(ErrorCode::kInvalidArgument, "natural payload must be a nonnegative integer, got " + payload.to_string());
      }
      return BaseNumber(kind, Scalar(*payload.as_rational()));
    case NumberKind::kRational:
      if (!payload.as_rational()) {
        Throw(ErrorCode::kInvalidArgument, "rational payload must be an exact real, got " + payload.to_string());
      }
      return BaseNumber(kind, Scalar(*payload.as_rational()));
    case NumberKind::kReal:
      if (!payload.is_real()) Throw(ErrorCode::kInvalidArgument, "real payload must be real");
      if (payload.is_decimal()) return BaseNumber(kind, payload);
      return BaseNumber(kind, Scalar(Real(*payload.as_rational())));
    case NumberKind::kComplex:
      if (payload.is_decimal()) Throw(ErrorCode::kInvalidArgument, "complex payload must be exact");
      return BaseNumber(kind, Scalar(payload.as_complex_rational()));
  }
  Throw(ErrorCode::kInvalidArgument, "unknown number kind");
}

std::string BaseNumber::to_string() const { return "\"" + payload_.to_string() + "\""; }

// ---------------------------------------------------------------------------
// ScaledStructure

ScaledStructure::ScaledStructure(NumberKind kind, ScalingFactor factor_t, ScalingFactor level_s)
    : kind_(kind),
      factor_t_(std::move(factor_t)),
      level_s_(std::move(level_s)),
      ratio_(factor_t_.value() / level_s_.value()) {
  if (kind_ == NumberKind::kNatural &&
      (!factor_t_.is_positive_integer() || !level_s_.is_positive_integer())) {
    Throw(ErrorCode::kInvalidArgument, "natural-number structures need positive integer factors");
  }
  if (kind_ == NumberKind::kReal && (!factor_t_.is_real() || !level_s_.is_real())) {
    Throw(ErrorCode::kInvalidArgument, "real structures need real scaling factors");
  }
}

std::optional<Integer> ScaledStructure::base_set_stride() const {
  if (kind_ != NumberKind::kNatural) return std::nullopt;
  return boost::multiprecision::numerator(*factor_t_.value().as_rational());
}

bool ScaledStructure::in_base_set(const BaseNumber& a) const {
  if (a.kind() != kind_) return false;
  if (auto stride = base_set_stride()) {
    Integer n = boost::multiprecision::numerator(*a.payload().as_rational());
    return n % *stride == 0;
  }
  return true;
}

bool ScaledStructure::is_ordered() const { return kind_ != NumberKind::kComplex && ratio_.is_real(); }

// ---------------------------------------------------------------------------
// Value maps

ScaledValue ValueOf(const BaseNumber& a, const ScalingFactor& s) {
  ScaledStructure structure(a.kind(), s, s);
  if (!structure.in_base_set(a)) {
    Throw(ErrorCode::kNotInBaseSet, a.to_string() + " is not a multiple of " + s.to_string());
  }
  return ScaledValue{structure, a.payload() / s.value()};
}

BaseNumber NumberOf(NumberKind kind, const Scalar& v, const ScalingFactor& s) {
  Scalar number = s.value() * v;
  switch (kind) {
    case NumberKind::kNatural:
      if (!number.is_integer() || number.sign() < 0) {
        Throw(ErrorCode::kNotRepresentable, s.to_string() + " * " + v.to_string() + " is not a natural number");
      }
      break;
    case NumberKind::kRational:
      if (!number.as_rational()) {
        Throw(ErrorCode::kNotRepresentable, s.to_string() + " * " + v.to_string() + " is not rational");
      }
      break;
    case NumberKind::kReal:
      if (!number.is_real()) {
        Throw(ErrorCode::kNotRepresentable, s.to_string() + " * " + v.to_string() + " is not real");
      }
      break;
    case NumberKind::kComplex:
      break;
  }
  return BaseNumber::Make(kind, number);
}

BaseNumber NumberOf(const ScaledValue& v) {
  // The value is written in the frame of level_s whatever the structure's own factor.
  return NumberOf(v.structure.kind(), v.value, v.structure.level_s());
}

Scalar Relabel(const Scalar& v, const ScalingFactor& from, const ScalingFactor& to) {
  return from.value() / to.value() * v;
}

ScaledValue Relabel(const ScaledValue& v, const ScalingFactor& to) {
  ScaledStructure structure(v.structure.kind(), v.structure.factor_t(), to);
  return ScaledValue{structure, Relabel(v.value, v.structure.level_s(), to)};
}

ScalingFactor GroupAction(const ScalingFactor& t, const ScalingFactor& level) {
  return ScalingFactor(t.value() * level.value());
}

// ---------------------------------------------------------------------------
// Operations

OperationFactors FactorsFor(const ScaledStructure& structure, Convention convention) {
  const Scalar& r = structure.ratio();
  OperationFactors f;
  f.mul = Scalar(1) / r;
  f.identity = r;
  if (convention == Convention::kUniformFactor) {
    f.inv = r;
    f.conj = r;
  } else {
    f.inv = r * r;
    f.conj = r / r.conj();
  }
  return f;
}

ScaledOps::ScaledOps(ScaledStructure structure, Convention convention)
    : structure_(std::move(structure)), factors_(FactorsFor(structure_, convention)) {}

ScaledOps::ScaledOps(ScaledStructure structure, OperationFactors factors)
    : structure_(std::move(structure)), factors_(std::move(factors)) {}

Scalar ScaledOps::neg(const Scalar& a) const {
  if (structure_.kind() == NumberKind::kNatural) {
    Throw(ErrorCode::kInvalidArgument, "natural numbers have no additive inverse");
  }
  return -a;
}

Scalar ScaledOps::inv(const Scalar& a) const {
  if (structure_.kind() == NumberKind::kNatural) {
    Throw(ErrorCode::kInvalidArgument, "natural numbers have no multiplicative inverse");
  }
  if (a.is_zero()) Throw(ErrorCode::kDivisionByZero, "inverse of zero");
  return factors_.inv / a;
}

Scalar ScaledOps::conj(const Scalar& a) const {
  if (structure_.kind() != NumberKind::kComplex) {
    Throw(ErrorCode::kInvalidArgument, "conjugation is a complex-structure operation");
  }
  return factors_.conj * a.conj();
}

bool ScaledOps::less(const Scalar& a, const Scalar& b) const {
  if (!structure_.is_ordered()) {
    Throw(ErrorCode::kOrderUndefined, "no order relation for this structure");
  }
  return structure_.ratio().sign() > 0 ? a < b : b < a;
}

ScaledOps MakeScaledOps(const ScaledStructure& structure, Convention convention) {
  return ScaledOps(structure, convention);
}

// ---------------------------------------------------------------------------
// Axiom suites

bool AxiomReport::all_passed() const {
  for (const auto& a : axioms) {
    if (a.applicable && !a.passed) return false;
  }
  return true;
}

const AxiomResult* AxiomReport::find(std::string_view name) const {
  for (const auto& a : axioms) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

AxiomReport AxiomSuite(const ScaledOps& ops, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) Throw(ErrorCode::kInvalidArgument, "axiom suite needs at least one sample");

  const ScaledStructure& st = ops.structure();
  const bool natural = st.kind() == NumberKind::kNatural;
  const bool complex = st.kind() == NumberKind::kComplex;
  const bool ordered = st.is_ordered();

  AxiomRecorder rec;
  auto& add_comm = rec.Add("add_commutative");
  auto& add_assoc = rec.Add("add_associative");
  auto& mul_comm = rec.Add("mul_commutative");
  auto& mul_assoc = rec.Add("mul_associative");
  auto& distrib = rec.Add("distributive");
  auto& add_id = rec.Add("add_identity");
  auto& mul_id = rec.Add("mul_identity");
  auto& mul_zero = rec.Add("mul_zero");
  auto& add_inv = rec.Add("add_inverse", !natural);
  auto& mul_inv = rec.Add("mul_inverse", !natural);
  auto& trichotomy = rec.Add("order_trichotomy", ordered);
  auto& transitive = rec.Add("order_transitive", ordered);
  auto& order_add = rec.Add("order_add_compatible", ordered);
  auto& order_mul = rec.Add("order_mul_compatible", ordered);
  auto& conj_inv = rec.Add("conj_involution", complex);
  auto& conj_id = rec.Add("conj_identity", complex);
  auto& conj_add = rec.Add("conj_additive", complex);
  auto& conj_mul = rec.Add("conj_multiplicative", complex);

  // Elements are drawn in the t frame and shown in the s frame.
  SampleSource source(st.kind(), seed);
  const Scalar& r = st.ratio();
  const Scalar e = ops.identity();
  const Scalar zero = ops.zero();

  for (std::size_t i = 0; i < samples; ++i) {
    const Scalar a = r * source.Next();
    const Scalar b = r * source.Next();
    const Scalar c = r * source.Next();
    auto abc = [&] { return Describe({{"A", &a}, {"B", &b}, {"C", &c}}); };
    auto just_a = [&] { return Describe({{"A", &a}, {"e", &e}}); };

    AxiomRecorder::Check(add_comm, ops.add(a, b) == ops.add(b, a), abc);
    AxiomRecorder::Check(add_assoc, ops.add(ops.add(a, b), c) == ops.add(a, ops.add(b, c)), abc);
    const Scalar ab = ops.mul(a, b);
    AxiomRecorder::Check(mul_comm, ab == ops.mul(b, a), abc);
    AxiomRecorder::Check(mul_assoc, ops.mul(ab, c) == ops.mul(a, ops.mul(b, c)), abc);
    AxiomRecorder::Check(distrib, ops.mul(a, ops.add(b, c)) == ops.add(ab, ops.mul(a, c)), abc);
    AxiomRecorder::Check(add_id, ops.add(a, zero) == a, just_a);
    AxiomRecorder::Check(mul_id, ops.mul(a, e) == a && ops.mul(e, a) == a, just_a);
    AxiomRecorder::Check(mul_zero, ops.mul(a, zero).is_zero(), just_a);

    if (!natural) {
      AxiomRecorder::Check(add_inv, ops.add(a, ops.neg(a)).is_zero(), just_a);
      if (!a.is_zero()) AxiomRecorder::Check(mul_inv, ops.mul(a, ops.inv(a)) == e, just_a);
    }

    if (ordered) {
      const bool lt = ops.less(a, b);
      const bool gt = ops.less(b, a);
      const bool eq = a == b;
      AxiomRecorder::Check(trichotomy, (lt ? 1 : 0) + (gt ? 1 : 0) + (eq ? 1 : 0) == 1, abc);
      if (ops.less(a, b) && ops.less(b, c)) AxiomRecorder::Check(transitive, ops.less(a, c), abc);
      if (ops.less(c, b) && ops.less(b, a)) AxiomRecorder::Check(transitive, ops.less(c, a), abc);
      if (lt) AxiomRecorder::Check(order_add, ops.less(ops.add(a, c), ops.add(b, c)), abc);
      if (gt) AxiomRecorder::Check(order_add, ops.less(ops.add(b, c), ops.add(a, c)), abc);
      // a <' b and 0 <' c  =>  a c <' b c
      if (ops.less(zero, c)) {
        if (lt) AxiomRecorder::Check(order_mul, ops.less(ops.mul(a, c), ops.mul(b, c)), abc);
        if (gt) AxiomRecorder::Check(order_mul, ops.less(ops.mul(b, c), ops.mul(a, c)), abc);
      }
    }

    if (complex) {
      AxiomRecorder::Check(conj_inv, ops.conj(ops.conj(a)) == a, just_a);
      AxiomRecorder::Check(conj_id, ops.conj(e) == e, just_a);
      AxiomRecorder::Check(conj_add, ops.conj(ops.add(a, b)) == ops.add(ops.conj(a), ops.conj(b)), abc);
      AxiomRecorder::Check(conj_mul, ops.conj(ab) == ops.mul(ops.conj(a), ops.conj(b)), abc);
    }
  }
  return rec.Take();
}

AxiomReport AxiomSuite(const ScaledStructure& structure, std::size_t samples, std::uint64_t seed,
                       Convention convention) {
  return AxiomSuite(ScaledOps(structure, convention), samples, seed);
}

// ---------------------------------------------------------------------------
// Vector spaces

ScaledVectorSpace::ScaledVectorSpace(std::size_t dimension, NumberKind kind, ScalingFactor factor_t,
                                     ScalingFactor level_s, Convention convention)
    : dimension_(dimension), scalars_(ScaledStructure(kind, factor_t, level_s), convention) {
  if (dimension_ == 0) Throw(ErrorCode::kInvalidArgument, "vector space dimension must be positive");
  if (kind == NumberKind::kNatural) Throw(ErrorCode::kInvalidArgument, "vector spaces need field scalars");
  const Scalar& r = scalars_.structure().ratio();
  if (!r.is_real() || r.sign() <= 0) {
    Throw(ErrorCode::kInvalidArgument, "vector-space scaling ratio must be a positive real");
  }
  if (convention == Convention::kUniformFactor) {
    scale_factor_ = r;
    norm_factor_ = Scalar(1) / r;
  } else {
    // r (a v) in the s frame equals (1/r) A V, and r |v| equals |V| for r > 0.
    scale_factor_ = Scalar(1) / r;
    norm_factor_ = Scalar(1);
  }
}

void ScaledVectorSpace::CheckDimension(const Vector& v) const {
  if (v.size() != dimension_) Throw(ErrorCode::kInvalidArgument, "vector dimension mismatch");
}

ScaledVectorSpace::Vector ScaledVectorSpace::add(const Vector& a, const Vector& b) const {
  CheckDimension(a);
  CheckDimension(b);
  Vector out(dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) out[i] = a[i] + b[i];
  return out;
}

ScaledVectorSpace::Vector ScaledVectorSpace::neg(const Vector& a) const {
  CheckDimension(a);
  Vector out(dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) out[i] = -a[i];
  return out;
}

ScaledVectorSpace::Vector ScaledVectorSpace::scale(const Scalar& a, const Vector& v) const {
  CheckDimension(v);
  Vector out(dimension_);
  const Scalar k = scale_factor_ * a;
  for (std::size_t i = 0; i < dimension_; ++i) out[i] = k * v[i];
  return out;
}

Scalar ScaledVectorSpace::norm_squared(const Vector& v) const {
  CheckDimension(v);
  Scalar sum(0);
  for (const auto& x : v) sum = sum + x * x.conj();
  return Square(norm_factor_) * sum;
}

Real ScaledVectorSpace::norm(const Vector& v) const {
  Scalar sq = norm_squared(v);
  const auto& st = sq.storage();
  Real value = std::holds_alternative<Real>(st) ? std::get<Real>(st) : Real(*sq.as_rational());
  return boost::multiprecision::sqrt(value);
}

AxiomReport VectorAxiomSuite(const ScaledVectorSpace& space, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) Throw(ErrorCode::kInvalidArgument, "axiom suite needs at least one sample");
  const ScaledOps& ops = space.scalars();
  const Scalar& r = ops.structure().ratio();
  SampleSource source(ops.structure().kind(), seed);

  auto draw_vector = [&] {
    ScaledVectorSpace::Vector v(space.dimension());
    for (auto& x : v) x = r * source.Next();
    return v;
  };
  auto show = [](const ScaledVectorSpace::Vector& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "]";
    return os.str();
  };

  AxiomRecorder rec;
  auto& add_comm = rec.Add("vector_add_commutative");
  auto& add_assoc = rec.Add("vector_add_associative");
  auto& add_id = rec.Add("vector_add_identity");
  auto& add_inv = rec.Add("vector_add_inverse");
  auto& scal_id = rec.Add("scalar_identity");
  auto& scal_compat = rec.Add("scalar_compatible");
  auto& dist_vec = rec.Add("distributive_vector");
  auto& dist_scal = rec.Add("distributive_scalar");
  auto& norm_nonneg = rec.Add("norm_nonnegative");
  auto& norm_homog = rec.Add("norm_homogeneous");
  auto& triangle = rec.Add("norm_triangle");

  const Scalar e = ops.identity();
  const Real slack = Real("1e-40");
  for (std::size_t i = 0; i < samples; ++i) {
    const auto u = draw_vector();
    const auto v = draw_vector();
    const auto w = draw_vector();
    const Scalar a = r * source.Next();
    const Scalar b = r * source.Next();
    auto uvw = [&] { return "u=" + show(u) + ", v=" + show(v) + ", w=" + show(w); };
    auto av = [&] { return "a=" + a.to_string() + ", b=" + b.to_string() + ", v=" + show(v); };

    AxiomRecorder::Check(add_comm, space.add(u, v) == space.add(v, u), uvw);
    AxiomRecorder::Check(add_assoc, space.add(space.add(u, v), w) == space.add(u, space.add(v, w)), uvw);
    AxiomRecorder::Check(add_id, space.add(u, space.zero()) == u, uvw);
    AxiomRecorder::Check(add_inv, space.add(u, space.neg(u)) == space.zero(), uvw);
    AxiomRecorder::Check(scal_id, space.scale(e, v) == v, av);
    AxiomRecorder::Check(scal_compat, space.scale(ops.mul(a, b), v) == space.scale(a, space.scale(b, v)), av);
    AxiomRecorder::Check(dist_vec, space.scale(a, space.add(u, v)) == space.add(space.scale(a, u), space.scale(a, v)),
                         av);
    AxiomRecorder::Check(dist_scal, space.scale(ops.add(a, b), v) == space.add(space.scale(a, v), space.scale(b, v)),
                         av);

    const Scalar nsq = space.norm_squared(v);
    AxiomRecorder::Check(norm_nonneg, nsq.is_real() && nsq.sign() >= 0 && (nsq.is_zero() == (v == space.zero())), av);

    // |a.v| = |a| x |v| with the scaled product; compared exactly via squares.
    const Scalar m = ops.factors().mul;
    const Scalar expected = m * m * (a * a.conj()) * nsq;
    AxiomRecorder::Check(norm_homog, space.norm_squared(space.scale(a, v)) == expected, av);

    const Real lhs = space.norm(space.add(u, v));
    const Real rhs = space.norm(u) + space.norm(v);
    AxiomRecorder::Check(triangle, lhs <= rhs * (1 + slack), uvw);
  }
  return rec.Take();
}

}  // namespace scalefield
