#include "scalefield/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "scalefield/error.hpp"

namespace scalefield {

std::complex<double> GaugeConnection(const ScalingField& field, const GaugeConfig& cfg, const Point& x,
                                     std::size_t mu) {
  if (mu >= static_cast<std::size_t>(field.manifold().dimension())) {
    Throw(ErrorCode::kInvalidArgument, "axis out of range");
  }
  const Gradients g = field.gradients(x);
  const double b = cfg.photon[mu].value(x);
  return {cfg.g_r * g.gamma[mu], cfg.g_i * g.delta[mu] + cfg.h_i * b};
}

std::complex<double> GaugeCovariantDerivative(const FieldSample& psi, const ScalingField& field,
                                              const GaugeConfig& cfg, const GridIndex& x, std::size_t mu) {
  const std::complex<double> d = GridDerivative(psi, x, mu);
  const Point p = psi.manifold.point_at(x);
  return d + GaugeConnection(field, cfg, p, mu) * psi.at(x);
}

TransformedFields ApplyTransform(const ScalingField& field, const GaugeConfig& cfg, const GaugeTransform& t) {
  const bool alpha_varies = !t.alpha.is_constant();
  const bool gamma_varies = !t.gamma.is_constant();
  if (alpha_varies && cfg.h_i == 0.0) {
    Throw(ErrorCode::kZeroCoupling, "nonconstant alpha needs h_i != 0");
  }
  if (gamma_varies && cfg.g_i == 0.0) {
    Throw(ErrorCode::kZeroCoupling, "nonconstant gamma needs g_i != 0");
  }

  ScalarFieldSpec phi = field.phi();
  if (gamma_varies) phi = phi.Plus(-1.0 / cfg.g_i, t.gamma);

  GaugeConfig primed = cfg;
  if (alpha_varies) {
    for (int mu = 0; mu < field.manifold().dimension(); ++mu) {
      primed.photon[mu] = cfg.photon[mu].Plus(-1.0 / cfg.h_i, ScalarFieldSpec::PartialDerivative(t.alpha, mu));
    }
  }
  return {field.WithPotentials(field.theta(), std::move(phi)), std::move(primed)};
}

Covector InvarianceResiduals(const ScalingField& field, const GaugeConfig& cfg, const TransformedFields& primed,
                             const ScalarFieldSpec& beta, const Point& x) {
  const Covector dbeta = field.GradientOf(beta, x);
  Covector out{};
  for (int mu = 0; mu < field.manifold().dimension(); ++mu) {
    const std::complex<double> lhs =
        GaugeConnection(primed.field, primed.config, x, mu) + std::complex<double>(0.0, dbeta[mu]);
    const std::complex<double> rhs = GaugeConnection(field, cfg, x, mu);
    out[mu] = std::abs(lhs - rhs);
  }
  return out;
}

double InvarianceResidual(const ScalingField& field, const GaugeConfig& cfg, const GaugeTransform& t,
                          const Point& x) {
  const TransformedFields primed = ApplyTransform(field, cfg, t);
  const Covector r = InvarianceResiduals(field, cfg, primed, t.beta(), x);
  return *std::max_element(r.begin(), r.end());
}

}  // namespace scalefield
