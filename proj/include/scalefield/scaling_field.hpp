#pragma once

// The scaling field f(x) = exp(theta(x) + i phi(x)) over a flat manifold.
//
// Gamma = grad theta and Delta = grad phi are the real and imaginary parts of
// (d_mu f) / f. Values at x and y are related by the connection factor
// f(y) / f(x), which is path independent.

#include <complex>
#include <cstddef>

#include "scalefield/manifold.hpp"
#include "scalefield/scalar_field.hpp"

namespace scalefield {

enum class GradientMode { kAnalytic, kCentralDifference };

struct Gradients {
  Covector gamma{};  // grad theta
  Covector delta{};  // grad phi
};

class ScalingField {
 public:
  /// `step` is the central-difference step h_g; zero selects the grid spacing.
  ScalingField(Manifold manifold, ScalarFieldSpec theta, ScalarFieldSpec phi,
               GradientMode mode = GradientMode::kAnalytic, double step = 0.0);

  /// f = 1 everywhere.
  static ScalingField Unscaled(Manifold manifold);

  const Manifold& manifold() const { return manifold_; }
  const ScalarFieldSpec& theta() const { return theta_; }
  const ScalarFieldSpec& phi() const { return phi_; }
  GradientMode mode() const { return mode_; }
  double step(std::size_t mu) const;

  ScalingField WithPotentials(ScalarFieldSpec theta, ScalarFieldSpec phi) const;
  ScalingField WithMode(GradientMode mode, double step = 0.0) const;

  /// exp(theta + i phi). Throws kOutOfBounds outside the grid.
  std::complex<double> eval_f(const Point& x) const;
  double theta_at(const Point& x) const;
  double phi_at(const Point& x) const;

  /// Gamma and Delta at x. In central-difference mode throws kBoundaryPoint
  /// when a stencil point leaves the grid.
  Gradients gradients(const Point& x) const;

  /// Gradient of an arbitrary scalar field using this field's gradient mode.
  Covector GradientOf(const ScalarFieldSpec& spec, const Point& x) const;

  /// f(y) / f(x).
  std::complex<double> connection_factor(const Point& y, const Point& x) const;

  /// (d_mu f) / f = Gamma_mu + i Delta_mu: the full derivative of a
  /// structure-valued field, whose position part vanishes.
  std::complex<double> structure_derivative(const Point& x, std::size_t mu) const;

 private:
  Manifold manifold_;
  ScalarFieldSpec theta_;
  ScalarFieldSpec phi_;
  GradientMode mode_;
  double step_;
};

/// Second-order central difference of psi along mu at an interior grid point.
std::complex<double> GridDerivative(const FieldSample& psi, const GridIndex& x, std::size_t mu);

/// D_mu psi = (d_mu + Gamma_mu + i Delta_mu) psi at an interior grid point.
std::complex<double> CovariantDerivative(const FieldSample& psi, const ScalingField& field, const GridIndex& x,
                                         std::size_t mu);

}  // namespace scalefield
