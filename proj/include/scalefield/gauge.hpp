#pragma once

// U(1) gauge covariance with scaling fields.
//
//   D_mu psi = (d_mu + g_r Gamma_mu + i g_i Delta_mu + i h_i B_mu) psi
//
// A local phase exp(i beta) with beta = alpha + gamma is absorbed by
//   B'     = B     - (1/h_i) grad alpha
//   Delta' = Delta - (1/g_i) grad gamma     (phi' = phi - gamma / g_i)
//   Gamma' = Gamma

#include <array>
#include <complex>

#include "scalefield/manifold.hpp"
#include "scalefield/scalar_field.hpp"
#include "scalefield/scaling_field.hpp"

namespace scalefield {

struct GaugeConfig {
  double g_r = 0.0;
  double g_i = 0.0;
  double h_i = 0.0;
  std::array<ScalarFieldSpec, kMaxDim> photon{};  // B_mu, one field per axis
};

struct GaugeTransform {
  ScalarFieldSpec alpha;
  ScalarFieldSpec gamma;

  /// beta = alpha + gamma
  ScalarFieldSpec beta() const { return alpha.Plus(1.0, gamma); }
};

struct TransformedFields {
  ScalingField field;
  GaugeConfig config;
};

/// Connection coefficient g_r Gamma_mu + i g_i Delta_mu + i h_i B_mu at x.
std::complex<double> GaugeConnection(const ScalingField& field, const GaugeConfig& cfg, const Point& x,
                                     std::size_t mu);

std::complex<double> GaugeCovariantDerivative(const FieldSample& psi, const ScalingField& field,
                                              const GaugeConfig& cfg, const GridIndex& x, std::size_t mu);

/// Throws kZeroCoupling when a nonconstant alpha (gamma) meets h_i = 0 (g_i = 0).
TransformedFields ApplyTransform(const ScalingField& field, const GaugeConfig& cfg, const GaugeTransform& t);

/// |LHS - RHS| of the invariance identity on each axis, comparing the
/// transformed fields plus i d_mu beta with the original fields.
Covector InvarianceResiduals(const ScalingField& field, const GaugeConfig& cfg, const TransformedFields& primed,
                             const ScalarFieldSpec& beta, const Point& x);

/// Maximum over axes of the invariance residual after ApplyTransform.
double InvarianceResidual(const ScalingField& field, const GaugeConfig& cfg, const GaugeTransform& t,
                          const Point& x);

}  // namespace scalefield
