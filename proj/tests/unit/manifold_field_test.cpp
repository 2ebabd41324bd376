#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "scalefield/error.hpp"
#include "scalefield/manifold.hpp"
#include "scalefield/scalar_field.hpp"
#include "scalefield/scaling_field.hpp"
#include "support/error_code.hpp"
#include "support/generators.hpp"

namespace scalefield {
namespace {

using testing::CodeOf;
using testing::Gen;

Manifold Box3(double lo = -1.0, double hi = 1.0, double h = 0.1) {
  return Manifold::Euclidean3({lo, lo, lo, 0}, {hi, hi, hi, 0}, h);
}

ScalingField Field(const Manifold& m, ScalarFieldSpec theta, ScalarFieldSpec phi = ScalarFieldSpec::Constant(0)) {
  return ScalingField(m, std::move(theta), std::move(phi));
}

// A smooth but nontrivial random field: linear part plus a Gaussian bump.
ScalarFieldSpec RandomSmooth(Gen& g) {
  const Covector slope{g.Uniform(-1, 1), g.Uniform(-1, 1), g.Uniform(-1, 1), 0};
  const Point center{g.Uniform(-0.5, 0.5), g.Uniform(-0.5, 0.5), g.Uniform(-0.5, 0.5), 0};
  return ScalarFieldSpec::Linear(slope, g.Uniform(-1, 1))
      .Plus(g.Uniform(-1, 1), ScalarFieldSpec::Gaussian(1.0, center, g.Uniform(0.3, 1.0)));
}

Point RandomPoint(Gen& g, const Manifold& m, double margin = 0.0) {
  Point x{};
  for (int mu = 0; mu < m.dimension(); ++mu) {
    x[mu] = g.Uniform(m.axis(mu).lower + margin, m.axis(mu).upper - margin);
  }
  return x;
}

TEST(Manifold, RejectsBadGrids) {
  EXPECT_EQ(CodeOf([] { Manifold::Euclidean3({0, 0, 0, 0}, {1, 1, 1, 0}, 0.0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { Manifold::Euclidean3({0, 0, 0, 0}, {1, -1, 1, 0}, 0.1); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { Manifold(5, Signature::kEuclidean, {}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { Manifold(3, Signature::kMinkowski, {Axis{}, Axis{}, Axis{}, Axis{}}); }),
            ErrorCode::kInvalidArgument);
}

TEST(Manifold, MetricSigns) {
  const Manifold e = Box3();
  const Manifold m = Manifold::Minkowski4({0, 0, 0, 0}, {1, 1, 1, 1}, 0.5);
  for (std::size_t mu = 0; mu < 3; ++mu) EXPECT_EQ(e.metric(mu), 1.0);
  EXPECT_EQ(m.metric(0), 1.0);
  for (std::size_t mu = 1; mu < 4; ++mu) EXPECT_EQ(m.metric(mu), -1.0);
}

TEST(Manifold, GridIndexing) {
  const Manifold m = Manifold::Minkowski4({0, 0, 0, 0}, {1, 2, 1, 1}, 0.5);
  EXPECT_EQ(m.point_count(), 3u * 5u * 3u * 3u);
  for (std::size_t k = 0; k < m.point_count(); ++k) EXPECT_EQ(m.flat_index(m.unflatten(k)), k);
  const Point p = m.point_at({1, 4, 2, 0});
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 2.0);
  EXPECT_DOUBLE_EQ(p[2], 1.0);
  EXPECT_DOUBLE_EQ(p[3], 0.0);
  EXPECT_TRUE(m.is_interior({1, 1, 1, 1}));
  EXPECT_FALSE(m.is_interior({1, 4, 1, 1}));
  std::size_t visited = 0;
  m.for_each_point([&](const GridIndex&, const Point&) { ++visited; });
  EXPECT_EQ(visited, m.point_count());
}

TEST(Manifold, ChartIsTheIdentityInEveryFiber) {
  const Manifold m = Box3();
  Gen g(11);
  for (int i = 0; i < 100; ++i) {
    const Point x = RandomPoint(g, m);
    const Point y = RandomPoint(g, m);
    const Point z = RandomPoint(g, m);
    EXPECT_EQ(m.chart(x, z), z);
    EXPECT_EQ(m.chart(x, z), m.chart(y, z));
  }
}

TEST(EvalF, UnscaledIsOne) {
  const ScalingField f = ScalingField::Unscaled(Box3());
  Gen g(1);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(f.eval_f(RandomPoint(g, f.manifold())), std::complex<double>(1.0, 0.0));
}

TEST(EvalF, LinearThetaGivesE) {
  const ScalingField f = Field(Box3(), ScalarFieldSpec::Linear({1, 0, 0, 0}));
  const std::complex<double> v = f.eval_f({1, 0, 0, 0});
  EXPECT_NEAR(v.real(), 2.718281828459045, 1e-15);
  EXPECT_EQ(v.imag(), 0.0);
}

TEST(EvalF, PhasePiGivesMinusOne) {
  const ScalingField f = Field(Box3(), ScalarFieldSpec::Constant(0), ScalarFieldSpec::Constant(std::numbers::pi));
  const std::complex<double> v = f.eval_f({0.3, 0.2, 0.1, 0});
  EXPECT_NEAR(v.real(), -1.0, 1e-15);
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);
}

TEST(EvalF, OutOfBounds) {
  const ScalingField f = ScalingField::Unscaled(Box3());
  EXPECT_EQ(CodeOf([&] { f.eval_f({1.5, 0, 0, 0}); }), ErrorCode::kOutOfBounds);
  EXPECT_EQ(CodeOf([&] { f.eval_f({std::numeric_limits<double>::quiet_NaN(), 0, 0, 0}); }),
            ErrorCode::kOutOfBounds);
}

TEST(EvalF, ModulusIsExpTheta) {
  Gen g(2);
  const Manifold m = Box3();
  for (int i = 0; i < 20; ++i) {
    const ScalingField f = Field(m, RandomSmooth(g), RandomSmooth(g));
    for (int j = 0; j < 20; ++j) {
      const Point x = RandomPoint(g, m);
      const double expected = std::exp(f.theta_at(x));
      EXPECT_NEAR(std::abs(f.eval_f(x)), expected, 1e-14 * expected);
      EXPECT_GT(std::abs(f.eval_f(x)), 0.0);
    }
  }
}

TEST(Gradients, LinearThetaIsConstantSlope) {
  const Covector a{0.5, -2.0, 3.0, 0};
  const ScalingField f = Field(Box3(), ScalarFieldSpec::Linear(a, 4.0), ScalarFieldSpec::Linear({0, 1, 0, 0}));
  Gen g(3);
  for (int i = 0; i < 20; ++i) {
    const Gradients gr = f.gradients(RandomPoint(g, f.manifold()));
    EXPECT_EQ(gr.gamma, a);
    EXPECT_EQ(gr.delta, (Covector{0, 1, 0, 0}));
  }
}

TEST(Gradients, ConstantThetaIsZero) {
  const ScalingField f = Field(Box3(), ScalarFieldSpec::Constant(7.0));
  EXPECT_EQ(f.gradients({0.1, 0.2, 0.3, 0}).gamma, Covector{});
  EXPECT_EQ(f.WithMode(GradientMode::kCentralDifference).gradients({0.1, 0.2, 0.3, 0}).gamma, Covector{});
}

TEST(Gradients, RadialMatchesDerivativeOfPolynomial) {
  // g(r) = 1 + 2r^2 so grad g = 4 x
  const ScalingField f = Field(Box3(), ScalarFieldSpec::Radial({1.0, 0.0, 2.0}));
  const Point x{0.3, -0.4, 0.5, 0};
  const Gradients gr = f.gradients(x);
  for (int mu = 0; mu < 3; ++mu) EXPECT_NEAR(gr.gamma[mu], 4.0 * x[mu], 1e-14);
}

TEST(Gradients, CentralDifferenceNeedsInteriorPoint) {
  const ScalingField f = Field(Box3(), ScalarFieldSpec::Linear({1, 0, 0, 0}));
  const ScalingField fd = f.WithMode(GradientMode::kCentralDifference);
  EXPECT_EQ(CodeOf([&] { fd.gradients({1.0, 0, 0, 0}); }), ErrorCode::kBoundaryPoint);
  EXPECT_EQ(CodeOf([&] { fd.gradients({0.95, 0, 0, 0}); }), ErrorCode::kBoundaryPoint);
  EXPECT_NO_THROW(fd.gradients({0.9, 0, 0, 0}));
  EXPECT_EQ(CodeOf([&] { f.gradients({1.2, 0, 0, 0}); }), ErrorCode::kOutOfBounds);
}

// Measured order of |central difference - analytic| over h, h/2, h/4.
TEST(Gradients, CentralDifferenceConvergesAtSecondOrder) {
  const Manifold m = Box3(-1.0, 1.0, 0.1);
  Gen g(4);
  for (int trial = 0; trial < 10; ++trial) {
    const ScalingField f = Field(m, ScalarFieldSpec::Gaussian(g.Uniform(0.5, 2.0), RandomPoint(g, m, 0.5), 0.6),
                                 ScalarFieldSpec::Gaussian(g.Uniform(0.5, 2.0), RandomPoint(g, m, 0.5), 0.8));
    const Point x = RandomPoint(g, m, 0.3);
    const Gradients exact = f.gradients(x);
    double previous = 0.0;
    for (int level = 0; level < 3; ++level) {
      const double h = 0.1 / std::pow(2.0, level);
      const Gradients fd = f.WithMode(GradientMode::kCentralDifference, h).gradients(x);
      double err = 0.0;
      for (int mu = 0; mu < 3; ++mu) {
        err = std::max({err, std::abs(fd.gamma[mu] - exact.gamma[mu]), std::abs(fd.delta[mu] - exact.delta[mu])});
      }
      if (level > 0) EXPECT_GE(std::log2(previous / err), 1.9) << "trial " << trial << " level " << level;
      previous = err;
    }
  }
}

TEST(ConnectionFactor, Examples) {
  const ScalingField f = Field(Box3(), ScalarFieldSpec::Linear({1, 0, 0, 0}));
  const Point x{0.2, 0.3, -0.4, 0};
  EXPECT_EQ(f.connection_factor(x, x), std::complex<double>(1.0, 0.0));
  const std::complex<double> c = f.connection_factor({1, 0, 0, 0}, {0, 0, 0, 0});
  EXPECT_NEAR(c.real(), std::numbers::e, 1e-15);
  EXPECT_EQ(c.imag(), 0.0);
}

TEST(ConnectionFactor, CocycleLaw) {
  Gen g(5);
  const Manifold m = Box3();
  for (int i = 0; i < 50; ++i) {
    const ScalingField f = Field(m, RandomSmooth(g), RandomSmooth(g));
    const Point x = RandomPoint(g, m);
    const Point y = RandomPoint(g, m);
    const Point z = RandomPoint(g, m);
    const std::complex<double> direct = f.connection_factor(z, x);
    const std::complex<double> composed = f.connection_factor(z, y) * f.connection_factor(y, x);
    EXPECT_LE(std::abs(direct - composed), 1e-12 * std::abs(direct));
  }
}

TEST(ConnectionFactor, OutOfBounds) {
  const ScalingField f = ScalingField::Unscaled(Box3());
  EXPECT_EQ(CodeOf([&] { f.connection_factor({0, 0, 0, 0}, {0, 3, 0, 0}); }), ErrorCode::kOutOfBounds);
}

TEST(ScalingField, ConstantShiftLeavesGradientsAndRatiosUnchanged) {
  Gen g(6);
  const Manifold m = Box3();
  for (int i = 0; i < 30; ++i) {
    const ScalarFieldSpec theta = RandomSmooth(g);
    const ScalarFieldSpec phi = RandomSmooth(g);
    const double k1 = g.Uniform(-3, 3);
    const double k2 = g.Uniform(-3, 3);
    const ScalingField f = Field(m, theta, phi);
    const ScalingField shifted = Field(m, theta.Shifted(k1), phi.Shifted(k2));
    const Point x = RandomPoint(g, m);
    const Point y = RandomPoint(g, m);
    const Gradients a = f.gradients(x);
    const Gradients b = shifted.gradients(x);
    EXPECT_EQ(a.gamma, b.gamma);
    EXPECT_EQ(a.delta, b.delta);
    const std::complex<double> r1 = f.connection_factor(y, x);
    const std::complex<double> r2 = shifted.connection_factor(y, x);
    EXPECT_LE(std::abs(r1 - r2), 1e-12 * std::abs(r1));
  }
}

TEST(CovariantDerivative, UnscaledIsPlainDerivative) {
  const Manifold m = Box3();
  const ScalingField f = ScalingField::Unscaled(m);
  const FieldSample psi = FieldSample::FromFunction(m, [](const Point& x) {
    return std::complex<double>(x[0] * x[0], x[1]);
  });
  const GridIndex idx{5, 7, 9, 0};
  for (std::size_t mu = 0; mu < 3; ++mu) {
    EXPECT_EQ(CovariantDerivative(psi, f, idx, mu), GridDerivative(psi, idx, mu));
  }
  // second-order central difference is exact on quadratics
  EXPECT_NEAR(GridDerivative(psi, idx, 0).real(), 2.0 * m.point_at(idx)[0], 1e-13);
  EXPECT_NEAR(GridDerivative(psi, idx, 1).imag(), 1.0, 1e-13);
}

TEST(CovariantDerivative, ConstantFieldPicksUpSlope) {
  const Manifold m = Box3();
  const Covector a{0.7, -1.1, 2.0, 0};
  const ScalingField f = Field(m, ScalarFieldSpec::Linear(a));
  const std::complex<double> c(2.0, -3.0);
  const FieldSample psi = FieldSample::FromFunction(m, [&](const Point&) { return c; });
  for (std::size_t mu = 0; mu < 3; ++mu) {
    const std::complex<double> d = CovariantDerivative(psi, f, {3, 4, 5, 0}, mu);
    EXPECT_NEAR(std::abs(d - a[mu] * c), 0.0, 1e-14);
  }
}

// exp(-theta - i phi) psi0 is covariantly constant; only the O(h^2) stencil error remains.
TEST(CovariantDerivative, LeibnizCompatibility) {
  const Manifold m = Box3(0.0, 0.005, 2.5e-4);
  const ScalarFieldSpec theta = ScalarFieldSpec::Linear({0.3, -0.2, 0.1, 0}, 0.5)
                                    .Plus(0.05, ScalarFieldSpec::Gaussian(1.0, {0.002, 0.001, 0.003, 0}, 0.5));
  const ScalarFieldSpec phi = ScalarFieldSpec::Linear({-0.1, 0.25, 0.2, 0});
  const ScalingField f = Field(m, theta, phi);
  const std::complex<double> psi0(1.5, 0.5);
  const FieldSample psi = FieldSample::FromFunction(
      m, [&](const Point& x) { return psi0 * std::exp(std::complex<double>(-theta.value(x), -phi.value(x))); });
  double worst = 0.0;
  m.for_each_point([&](const GridIndex& idx, const Point&) {
    if (!m.is_interior(idx)) return;
    for (std::size_t mu = 0; mu < 3; ++mu) worst = std::max(worst, std::abs(CovariantDerivative(psi, f, idx, mu)));
  });
  EXPECT_LT(worst, 1e-8);
}

TEST(CovariantDerivative, BoundaryPoint) {
  const Manifold m = Box3();
  const FieldSample psi = FieldSample::FromFunction(m, [](const Point&) { return std::complex<double>(1.0); });
  EXPECT_EQ(CodeOf([&] { CovariantDerivative(psi, ScalingField::Unscaled(m), {0, 5, 5, 0}, 0); }),
            ErrorCode::kBoundaryPoint);
  EXPECT_EQ(CodeOf([&] { GridDerivative(psi, {5, 20, 5, 0}, 1); }), ErrorCode::kBoundaryPoint);
}

TEST(StructureDerivative, Examples) {
  const Manifold m = Box3();
  EXPECT_EQ(Field(m, ScalarFieldSpec::Constant(3)).structure_derivative({0, 0, 0, 0}, 1), std::complex<double>());
  const Covector a{0.5, 1.5, -2.5, 0};
  const ScalingField f = Field(m, ScalarFieldSpec::Linear(a), ScalarFieldSpec::Linear({0, 0, 4, 0}));
  for (std::size_t mu = 0; mu < 3; ++mu) {
    EXPECT_EQ(f.structure_derivative({0.1, 0.1, 0.1, 0}, mu), std::complex<double>(a[mu], mu == 2 ? 4.0 : 0.0));
  }
}

TEST(StructureDerivative, EqualsCovariantDerivativeOfOne) {
  Gen g(7);
  const Manifold m = Box3();
  const FieldSample one = FieldSample::FromFunction(m, [](const Point&) { return std::complex<double>(1.0); });
  for (int i = 0; i < 20; ++i) {
    const ScalingField f = Field(m, RandomSmooth(g), RandomSmooth(g));
    const GridIndex idx{static_cast<std::size_t>(g.Int(1, 19)), static_cast<std::size_t>(g.Int(1, 19)),
                        static_cast<std::size_t>(g.Int(1, 19)), 0};
    for (std::size_t mu = 0; mu < 3; ++mu) {
      const std::complex<double> a = f.structure_derivative(m.point_at(idx), mu);
      const std::complex<double> b = CovariantDerivative(one, f, idx, mu);
      EXPECT_NEAR(std::abs(a - b), 0.0, 1e-14);
    }
  }
}

TEST(Tabulated, RejectsNaNAndWrongSize) {
  const Manifold m = Box3(0.0, 1.0, 0.5);
  std::vector<double> values(m.point_count(), 1.0);
  EXPECT_NO_THROW(ScalarFieldSpec::Tabulated(m, values));
  values[4] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(CodeOf([&] { ScalarFieldSpec::Tabulated(m, values); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { ScalarFieldSpec::Tabulated(m, std::vector<double>(3, 0.0)); }),
            ErrorCode::kInvalidArgument);
}

TEST(Tabulated, InterpolatesLinearDataExactly) {
  const Manifold m = Box3(0.0, 1.0, 0.25);
  const Covector a{1.0, -2.0, 0.5, 0};
  std::vector<double> values(m.point_count());
  m.for_each_point([&](const GridIndex& idx, const Point& x) {
    values[m.flat_index(idx)] = a[0] * x[0] + a[1] * x[1] + a[2] * x[2];
  });
  const ScalarFieldSpec t = ScalarFieldSpec::Tabulated(m, values);
  Gen g(8);
  for (int i = 0; i < 50; ++i) {
    const Point x = RandomPoint(g, m);
    EXPECT_NEAR(t.value(x), a[0] * x[0] + a[1] * x[1] + a[2] * x[2], 1e-13);
  }
  const Covector grad = t.gradient({0.5, 0.5, 0.5, 0});
  for (int mu = 0; mu < 3; ++mu) EXPECT_NEAR(grad[mu], a[mu], 1e-12);
  EXPECT_EQ(CodeOf([&] { t.gradient({0.0, 0.5, 0.5, 0}); }), ErrorCode::kBoundaryPoint);
}

}  // namespace
}  // namespace scalefield
