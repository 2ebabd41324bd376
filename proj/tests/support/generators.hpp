#pragma once

// Small seeded generators for property tests.

#include <cstdint>
#include <random>

#include "scalefield/scalar.hpp"

namespace scalefield::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t Int(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
  double Uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Rational Q(std::int64_t bound = 1000) {
    std::int64_t den = 0;
    while (den == 0) den = Int(-bound, bound);
    return Rational(Integer(Int(-bound, bound)), Integer(den));
  }
  Rational NonzeroQ(std::int64_t bound = 1000) {
    Rational q = 0;
    while (q == 0) q = Q(bound);
    return q;
  }
  ComplexRational NonzeroC(std::int64_t bound = 1000) {
    ComplexRational z;
    while (z.is_zero()) z = ComplexRational(Q(bound), Q(bound));
    return z;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace scalefield::testing
