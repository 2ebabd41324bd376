#include "scalefield/scalar.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "scalefield/error.hpp"

namespace scalefield {
namespace {

bool AllDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer PowerOfTen(long exponent) {
  Integer p = 1;
  for (long i = 0; i < exponent; ++i) p *= 10;
  return p;
}

// [sign] digits [. digits] [e [sign] digits]
Rational ParseDecimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!AllDigits(exp_text) || exp_text.size() > 6) {
      Throw(ErrorCode::kInvalidArgument, "malformed exponent in '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !AllDigits(whole)) || (!frac.empty() && !AllDigits(frac)) ||
        (whole.empty() && frac.empty())) {
      Throw(ErrorCode::kInvalidArgument, "malformed number '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!AllDigits(s)) {
      Throw(ErrorCode::kInvalidArgument, "malformed number '" + std::string(text) + "'");
    }
    digits = std::string(s);
  }
  Integer mantissa(digits);
  if (negative) mantissa = -mantissa;
  if (exponent >= 0) return Rational(mantissa * PowerOfTen(exponent));
  return Rational(mantissa, PowerOfTen(-exponent));
}

Real ToReal(const Scalar& v) {
  const auto& st = v.storage();
  if (const auto* r = std::get_if<Rational>(&st)) return Real(*r);
  if (const auto* d = std::get_if<Real>(&st)) return *d;
  const auto& c = std::get<ComplexRational>(st);
  if (c.im != 0) {
    Throw(ErrorCode::kInvalidArgument, "decimal reals cannot be combined with non-real complex values");
  }
  return Real(c.re);
}

enum class Rank { kRational, kComplex, kDecimal };

Rank RankOf(const Scalar& v) {
  if (v.is_rational()) return Rank::kRational;
  if (v.is_complex()) return Rank::kComplex;
  return Rank::kDecimal;
}

Rank Promote(const Scalar& a, const Scalar& b) {
  Rank ra = RankOf(a);
  Rank rb = RankOf(b);
  if (ra == Rank::kDecimal || rb == Rank::kDecimal) return Rank::kDecimal;
  if (ra == Rank::kComplex || rb == Rank::kComplex) return Rank::kComplex;
  return Rank::kRational;
}

template <typename Op>
Scalar Apply(const Scalar& a, const Scalar& b, Op op) {
  switch (Promote(a, b)) {
    case Rank::kRational:
      return Scalar(Rational(op(std::get<Rational>(a.storage()), std::get<Rational>(b.storage()))));
    case Rank::kComplex:
      return Scalar(op(a.as_complex_rational(), b.as_complex_rational()));
    case Rank::kDecimal:
      return Scalar(Real(op(ToReal(a), ToReal(b))));
  }
  return Scalar();
}

}  // namespace

Rational ParseRational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) Throw(ErrorCode::kInvalidArgument, "empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = ParseDecimal(text.substr(0, slash));
    Rational den = ParseDecimal(text.substr(slash + 1));
    if (den == 0) Throw(ErrorCode::kInvalidArgument, "zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  return ParseDecimal(text);
}

ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
  return {a.re - b.re, a.im - b.im};
}

ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }

ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
  Rational den = b.norm_squared();
  if (den == 0) Throw(ErrorCode::kDivisionByZero, "complex division by zero");
  ComplexRational num = a * b.conj();
  return {num.re / den, num.im / den};
}

bool Scalar::is_zero() const {
  return std::visit(
      [](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ComplexRational>) {
          return v.is_zero();
        } else {
          return v == 0;
        }
      },
      storage_);
}

bool Scalar::is_real() const {
  if (const auto* c = std::get_if<ComplexRational>(&storage_)) return c->im == 0;
  return true;
}

bool Scalar::is_integer() const {
  auto r = as_rational();
  return r && boost::multiprecision::denominator(*r) == 1;
}

std::optional<Rational> Scalar::as_rational() const {
  if (const auto* r = std::get_if<Rational>(&storage_)) return *r;
  if (const auto* c = std::get_if<ComplexRational>(&storage_)) {
    if (c->im == 0) return c->re;
  }
  return std::nullopt;
}

ComplexRational Scalar::as_complex_rational() const {
  if (const auto* r = std::get_if<Rational>(&storage_)) return ComplexRational(*r);
  if (const auto* c = std::get_if<ComplexRational>(&storage_)) return *c;
  Throw(ErrorCode::kInvalidArgument, "decimal real has no exact complex-rational form");
}

Scalar Scalar::conj() const {
  if (const auto* c = std::get_if<ComplexRational>(&storage_)) return Scalar(c->conj());
  return *this;
}

int Scalar::sign() const {
  if (const auto* r = std::get_if<Rational>(&storage_)) return r->sign();
  if (const auto* d = std::get_if<Real>(&storage_)) return d->sign();
  const auto& c = std::get<ComplexRational>(storage_);
  if (c.im != 0) Throw(ErrorCode::kOrderUndefined, "sign of a non-real complex value");
  return c.re.sign();
}

Scalar Scalar::abs() const {
  if (const auto* r = std::get_if<Rational>(&storage_)) return Scalar(Rational(boost::multiprecision::abs(*r)));
  if (const auto* d = std::get_if<Real>(&storage_)) return Scalar(Real(boost::multiprecision::abs(*d)));
  const auto& c = std::get<ComplexRational>(storage_);
  if (c.im == 0) return Scalar(ComplexRational(boost::multiprecision::abs(c.re)));
  return Scalar(Real(boost::multiprecision::sqrt(Real(c.norm_squared()))));
}

std::complex<double> Scalar::to_complex() const {
  if (const auto* r = std::get_if<Rational>(&storage_)) return {r->convert_to<double>(), 0.0};
  if (const auto* d = std::get_if<Real>(&storage_)) return {d->convert_to<double>(), 0.0};
  const auto& c = std::get<ComplexRational>(storage_);
  return {c.re.convert_to<double>(), c.im.convert_to<double>()};
}

double Scalar::to_double() const {
  if (!is_real()) Throw(ErrorCode::kInvalidArgument, "non-real value has no real double form");
  return to_complex().real();
}

std::string Scalar::to_string() const {
  std::ostringstream os;
  if (const auto* r = std::get_if<Rational>(&storage_)) {
    os << *r;
  } else if (const auto* d = std::get_if<Real>(&storage_)) {
    os << d->str(kRealDigits);
  } else {
    const auto& c = std::get<ComplexRational>(storage_);
    os << "(" << c.re << "," << c.im << ")";
  }
  return os.str();
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  return Apply(a, b, [](const auto& x, const auto& y) { return x + y; });
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  return Apply(a, b, [](const auto& x, const auto& y) { return x - y; });
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return Apply(a, b, [](const auto& x, const auto& y) { return x * y; });
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) Throw(ErrorCode::kDivisionByZero, "division by zero");
  return Apply(a, b, [](const auto& x, const auto& y) { return x / y; });
}

Scalar operator-(const Scalar& a) {
  return std::visit([](const auto& v) { return Scalar(std::decay_t<decltype(v)>(-v)); }, a.storage());
}

bool operator==(const Scalar& a, const Scalar& b) {
  switch (Promote(a, b)) {
    case Rank::kRational:
      return std::get<Rational>(a.storage()) == std::get<Rational>(b.storage());
    case Rank::kComplex:
      return a.as_complex_rational() == b.as_complex_rational();
    case Rank::kDecimal:
      if (!a.is_real() || !b.is_real()) return false;
      return ToReal(a) == ToReal(b);
  }
  return false;
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (!a.is_real() || !b.is_real()) Throw(ErrorCode::kOrderUndefined, "order on non-real values");
  if (Promote(a, b) == Rank::kDecimal) return ToReal(a) < ToReal(b);
  return *a.as_rational() < *b.as_rational();
}

std::ostream& operator<<(std::ostream& os, const Scalar& v) { return os << v.to_string(); }

}  // namespace scalefield
