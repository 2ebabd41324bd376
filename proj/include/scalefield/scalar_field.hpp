#pragma once

#include <memory>
#include <string_view>
#include <variant>
#include <vector>

#include "scalefield/manifold.hpp"

namespace scalefield {

class ScalarFieldSpec;

namespace family {

struct Constant {
  double value = 0.0;
};

/// a . x + b
struct Linear {
  Covector slope{};
  double offset = 0.0;
};

/// A exp(-|x - x0|^2 / (2 sigma^2))
struct Gaussian {
  double amplitude = 1.0;
  Point center{};
  double sigma = 1.0;
};

/// g(|x|) with g(r) = sum_k c_k r^k
struct Radial {
  std::vector<double> coefficients;
};

/// Grid samples, multilinearly interpolated between nodes.
struct Tabulated {
  std::shared_ptr<const Manifold> grid;
  std::shared_ptr<const std::vector<double>> values;
};

struct Term {
  double weight = 1.0;
  std::shared_ptr<const ScalarFieldSpec> field;
};

/// sum_i w_i F_i
struct Sum {
  std::vector<Term> terms;
};

/// dF / dx^axis of another field, using its analytic gradient.
struct Partial {
  std::size_t axis = 0;
  std::shared_ptr<const ScalarFieldSpec> field;
};

}  // namespace family

/// A real scalar field on coordinates, given by an analytic family or a table.
class ScalarFieldSpec {
 public:
  using Family = std::variant<family::Constant, family::Linear, family::Gaussian, family::Radial,
                              family::Tabulated, family::Sum, family::Partial>;

  ScalarFieldSpec() : family_(family::Constant{0.0}) {}

  static ScalarFieldSpec Constant(double k);
  static ScalarFieldSpec Linear(Covector slope, double offset = 0.0);
  static ScalarFieldSpec Gaussian(double amplitude, Point center, double sigma);
  static ScalarFieldSpec Radial(std::vector<double> coefficients);
  /// Throws kInvalidArgument on NaN entries or a size mismatch with the grid.
  static ScalarFieldSpec Tabulated(const Manifold& grid, std::vector<double> values);
  static ScalarFieldSpec Combination(std::vector<std::pair<double, ScalarFieldSpec>> terms);
  static ScalarFieldSpec PartialDerivative(const ScalarFieldSpec& field, std::size_t axis);

  /// this + k
  ScalarFieldSpec Shifted(double k) const;
  /// this + w * other
  ScalarFieldSpec Plus(double weight, const ScalarFieldSpec& other) const;

  const Family& family() const { return family_; }
  std::string_view family_name() const;

  double value(const Point& x) const;
  /// Exact gradient for analytic families. Tabulated fields (and derivatives
  /// of fields) fall back to central differences.
  Covector gradient(const Point& x) const;

  /// True when the field is constant by construction (zero slope, zero
  /// amplitude, ...). May return false for fields that happen to be constant.
  bool is_constant() const;

 private:
  explicit ScalarFieldSpec(Family f) : family_(std::move(f)) {}

  Family family_;
};

}  // namespace scalefield
