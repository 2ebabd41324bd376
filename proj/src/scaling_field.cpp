#include "scalefield/scaling_field.hpp"

#include <cmath>
#include <string>

#include "scalefield/error.hpp"

namespace scalefield {

ScalingField::ScalingField(Manifold manifold, ScalarFieldSpec theta, ScalarFieldSpec phi, GradientMode mode,
                           double step)
    : manifold_(std::move(manifold)), theta_(std::move(theta)), phi_(std::move(phi)), mode_(mode), step_(step) {
  if (step_ < 0.0 || !std::isfinite(step_)) Throw(ErrorCode::kInvalidArgument, "gradient step must be positive");
}

ScalingField ScalingField::Unscaled(Manifold manifold) {
  return ScalingField(std::move(manifold), ScalarFieldSpec::Constant(0.0), ScalarFieldSpec::Constant(0.0));
}

double ScalingField::step(std::size_t mu) const { return step_ > 0.0 ? step_ : manifold_.axis(mu).spacing; }

ScalingField ScalingField::WithPotentials(ScalarFieldSpec theta, ScalarFieldSpec phi) const {
  return ScalingField(manifold_, std::move(theta), std::move(phi), mode_, step_);
}

ScalingField ScalingField::WithMode(GradientMode mode, double step) const {
  return ScalingField(manifold_, theta_, phi_, mode, step);
}

double ScalingField::theta_at(const Point& x) const {
  manifold_.require_contains(x);
  return theta_.value(x);
}

double ScalingField::phi_at(const Point& x) const {
  manifold_.require_contains(x);
  return phi_.value(x);
}

std::complex<double> ScalingField::eval_f(const Point& x) const {
  manifold_.require_contains(x);
  return std::exp(theta_.value(x)) * std::polar(1.0, phi_.value(x));
}

Covector ScalingField::GradientOf(const ScalarFieldSpec& spec, const Point& x) const {
  manifold_.require_contains(x);
  if (mode_ == GradientMode::kAnalytic) return spec.gradient(x);

  Covector g{};
  for (int mu = 0; mu < manifold_.dimension(); ++mu) {
    const double h = step(mu);
    Point plus = x;
    Point minus = x;
    plus[mu] += h;
    minus[mu] -= h;
    if (!manifold_.contains(plus) || !manifold_.contains(minus)) {
      Throw(ErrorCode::kBoundaryPoint, "central difference along axis " + std::to_string(mu) + " leaves the grid");
    }
    g[mu] = (spec.value(plus) - spec.value(minus)) / (2.0 * h);
  }
  return g;
}

Gradients ScalingField::gradients(const Point& x) const { return {GradientOf(theta_, x), GradientOf(phi_, x)}; }

std::complex<double> ScalingField::connection_factor(const Point& y, const Point& x) const {
  manifold_.require_contains(x);
  manifold_.require_contains(y);
  const double dtheta = theta_.value(y) - theta_.value(x);
  const double dphi = phi_.value(y) - phi_.value(x);
  return std::exp(dtheta) * std::polar(1.0, dphi);
}

std::complex<double> ScalingField::structure_derivative(const Point& x, std::size_t mu) const {
  if (mu >= static_cast<std::size_t>(manifold_.dimension())) {
    Throw(ErrorCode::kInvalidArgument, "axis out of range");
  }
  const Gradients g = gradients(x);
  return {g.gamma[mu], g.delta[mu]};
}

std::complex<double> GridDerivative(const FieldSample& psi, const GridIndex& x, std::size_t mu) {
  const Manifold& m = psi.manifold;
  if (mu >= static_cast<std::size_t>(m.dimension())) Throw(ErrorCode::kInvalidArgument, "axis out of range");
  if (psi.values.size() != m.point_count()) Throw(ErrorCode::kInvalidArgument, "field sample does not cover its grid");
  const GridIndex shape = m.shape();
  if (x[mu] == 0 || x[mu] + 1 >= shape[mu]) {
    Throw(ErrorCode::kBoundaryPoint, "grid derivative needs an interior point along axis " + std::to_string(mu));
  }
  GridIndex plus = x;
  GridIndex minus = x;
  plus[mu] += 1;
  minus[mu] -= 1;
  return (psi.at(plus) - psi.at(minus)) / (2.0 * m.axis(mu).spacing);
}

std::complex<double> CovariantDerivative(const FieldSample& psi, const ScalingField& field, const GridIndex& x,
                                         std::size_t mu) {
  const std::complex<double> d = GridDerivative(psi, x, mu);
  const Point p = psi.manifold.point_at(x);
  return d + field.structure_derivative(p, mu) * psi.at(x);
}

}  // namespace scalefield
