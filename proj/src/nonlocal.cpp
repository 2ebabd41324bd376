#include "scalefield/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "scalefield/error.hpp"
#include "scalefield/quadrature.hpp"

namespace scalefield {
namespace {

Point EmbedPacketPoint(const Manifold& field_manifold, const Point& w, const Point& x0) {
  if (field_manifold.dimension() == 3) return w;
  return Point{x0[0], w[0], w[1], w[2]};
}

bool IsGridFailure(const Error& e) {
  return e.code() == ErrorCode::kOutOfBounds || e.code() == ErrorCode::kBoundaryPoint;
}

// Integrates weight(q(s)) |eta(q', q')|^{1/2} piece by piece.
template <typename Weight>
double WeightedLength(const Path& q, const Manifold& m, std::size_t steps, Weight&& weight) {
  if (steps < 2) Throw(ErrorCode::kInvalidArgument, "path length needs at least 2 steps");
  const auto dim = static_cast<std::size_t>(m.dimension());
  const std::vector<double> breaks = q.breakpoints();
  bool moved = false;
  double total = 0.0;
  for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
    const double a = breaks[piece];
    const double b = breaks[piece + 1];
    const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(static_cast<double>(steps) * (b - a))));
    total += Simpson(
        [&](double s) {
          const Point t = q.tangent_on_piece(s, piece);
          double contraction = 0.0;
          for (std::size_t mu = 0; mu < dim; ++mu) {
            if (t[mu] != 0.0) moved = true;
            contraction += m.metric(mu) * t[mu] * t[mu];
          }
          return weight(q.position(s)) * std::sqrt(std::abs(contraction));
        },
        a, b, n);
  }
  if (!moved) Throw(ErrorCode::kDegenerateParameterization, "path tangent vanishes everywhere");
  return total;
}

}  // namespace

WavePacket WavePacket::Gaussian(const Manifold& grid, const Point& center, double sigma, const Covector& momentum) {
  if (grid.dimension() != 3) Throw(ErrorCode::kInvalidArgument, "wave packets live on a 3-dimensional grid");
  if (!(sigma > 0.0)) Throw(ErrorCode::kInvalidArgument, "packet width must be positive");
  WavePacket psi{grid, std::vector<std::complex<double>>(grid.point_count())};
  grid.for_each_point([&](const GridIndex& idx, const Point& w) {
    double r2 = 0.0;
    double phase = 0.0;
    for (std::size_t mu = 0; mu < 3; ++mu) {
      const double d = w[mu] - center[mu];
      r2 += d * d;
      phase += momentum[mu] * w[mu];
    }
    psi.amplitudes[grid.flat_index(idx)] = std::polar(std::exp(-r2 / (4.0 * sigma * sigma)), phase);
  });
  return psi;
}

double WavePacket::norm_squared() const {
  double cell = 1.0;
  for (std::size_t mu = 0; mu < 3; ++mu) cell *= grid.axis(mu).spacing;
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return sum * cell;
}

Level::Level(std::complex<double> c) : c_(c) {
  if (c == std::complex<double>(0.0, 0.0)) Throw(ErrorCode::kZeroLevel, "level c must be nonzero");
}

WavePacket ScaleWavePacket(const WavePacket& psi, const ScalingField& field, const Point& x0, const Level& c) {
  (void)c;  // c f(w) / (c f(x0)) does not depend on c
  const Manifold& fm = field.manifold();
  if (psi.grid.dimension() != 3) Throw(ErrorCode::kInvalidArgument, "wave packets live on a 3-dimensional grid");
  fm.require_contains(x0);
  const double theta0 = field.theta_at(x0);
  const double phi0 = field.phi_at(x0);

  WavePacket out = psi;
  psi.grid.for_each_point([&](const GridIndex& idx, const Point& w) {
    const Point z = EmbedPacketPoint(fm, w, x0);
    const std::complex<double> factor =
        std::polar(std::exp(field.theta_at(z) - theta0), field.phi_at(z) - phi0);
    const std::size_t k = psi.grid.flat_index(idx);
    out.amplitudes[k] = factor * psi.amplitudes[k];
  });
  return out;
}

double LocalPathLength(const Path& q, const Manifold& m, std::size_t steps) {
  return WeightedLength(q, m, steps, [](const Point&) { return 1.0; });
}

double ScaledPathLength(const Path& q, const ScalingField& field, const Point& x_ref, std::size_t steps) {
  const double theta_ref = field.theta_at(x_ref);
  return WeightedLength(q, field.manifold(), steps,
                        [&](const Point& x) { return std::exp(field.theta_at(x) - theta_ref); });
}

double ChangeReference(double length, const ScalingField& field, const Point& from, const Point& to) {
  return length * std::exp(field.theta_at(from) - field.theta_at(to));
}

std::string_view DragContractionName(DragContraction c) {
  return c == DragContraction::kEuclidean ? "euclidean" : "minkowski";
}

std::string_view GeodesicFormName(GeodesicForm f) {
  return f == GeodesicForm::kEulerLagrange ? "euler-lagrange" : "flipped-pull";
}

Point GeodesicAcceleration(const ScalingField& field, const Point& q, const Point& v, const GeodesicOptions& options) {
  const Manifold& m = field.manifold();
  const auto dim = static_cast<std::size_t>(m.dimension());
  m.require_contains(q);
  const Covector gamma = field.gradients(q).gamma;

  double drag = 0.0;
  double speed2 = 0.0;
  for (std::size_t mu = 0; mu < dim; ++mu) {
    const double c = options.contraction == DragContraction::kMinkowski ? m.metric(mu) : 1.0;
    drag += c * gamma[mu] * v[mu];
    speed2 += m.metric(mu) * v[mu] * v[mu];
  }
  const double pull = options.form == GeodesicForm::kEulerLagrange ? speed2 : -1.0;

  Point a{};
  for (std::size_t mu = 0; mu < dim; ++mu) a[mu] = -drag * v[mu] + pull * m.metric(mu) * gamma[mu];
  return a;
}

GeodesicResult IntegrateGeodesic(const GeodesicState& start, const ScalingField& field, double tau_end,
                                 double step, const GeodesicOptions& options) {
  if (!(step > 0.0)) Throw(ErrorCode::kInvalidArgument, "geodesic step must be positive");
  if (!(tau_end > start.tau)) Throw(ErrorCode::kInvalidArgument, "tau_end must exceed the initial proper time");
  for (double c : start.velocity) {
    if (!std::isfinite(c)) Throw(ErrorCode::kInvalidArgument, "initial velocity must be finite");
  }
  const Manifold& m = field.manifold();
  m.require_contains(start.position);

  const double span = tau_end - start.tau;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(span / step - 1e-9)));
  const double h = span / static_cast<double>(n);

  GeodesicResult result;
  result.trajectory.reserve(n + 1);
  result.trajectory.push_back(start);

  auto advance = [](const Point& base, const Point& d, double scale) {
    Point out = base;
    for (std::size_t mu = 0; mu < kMaxDim; ++mu) out[mu] += scale * d[mu];
    return out;
  };

  Point q = start.position;
  Point v = start.velocity;
  for (std::size_t k = 1; k <= n; ++k) {
    try {
      const Point a1 = GeodesicAcceleration(field, q, v, options);
      const Point q2 = advance(q, v, h / 2);
      const Point v2 = advance(v, a1, h / 2);
      const Point a2 = GeodesicAcceleration(field, q2, v2, options);
      const Point q3 = advance(q, v2, h / 2);
      const Point v3 = advance(v, a2, h / 2);
      const Point a3 = GeodesicAcceleration(field, q3, v3, options);
      const Point q4 = advance(q, v3, h);
      const Point v4 = advance(v, a3, h);
      const Point a4 = GeodesicAcceleration(field, q4, v4, options);
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) {
        q[mu] += h / 6.0 * (v[mu] + 2.0 * v2[mu] + 2.0 * v3[mu] + v4[mu]);
        v[mu] += h / 6.0 * (a1[mu] + 2.0 * a2[mu] + 2.0 * a3[mu] + a4[mu]);
      }
    } catch (const Error& e) {
      if (!IsGridFailure(e)) throw;
      result.left_domain = true;
      break;
    }
    if (!m.contains(q)) {
      result.left_domain = true;
      break;
    }
    const double tau = k == n ? tau_end : start.tau + static_cast<double>(k) * h;
    result.trajectory.push_back({q, v, tau});
  }
  return result;
}

Path TrajectoryPath(const GeodesicResult& result) {
  const auto& states = result.trajectory;
  if (states.size() < 2) Throw(ErrorCode::kInvalidArgument, "trajectory needs at least two states");
  const double span = states.back().tau - states.front().tau;
  std::vector<Point> samples;
  std::vector<Point> derivatives;
  samples.reserve(states.size());
  derivatives.reserve(states.size());
  for (const auto& st : states) {
    samples.push_back(st.position);
    Point d{};
    for (std::size_t mu = 0; mu < kMaxDim; ++mu) d[mu] = span * st.velocity[mu];
    derivatives.push_back(d);
  }
  return Path::MakeHermite(std::move(samples), std::move(derivatives));
}

VariationalReport VariationalCheck(const Path& q, const ScalingField& field, std::size_t perturbations,
                                   double amplitude, std::uint64_t seed, const VariationalOptions& options) {
  const auto dim = static_cast<std::size_t>(field.manifold().dimension());
  const Point ref = q.start();

  VariationalReport report;
  report.perturbations = perturbations;
  report.reference_length = ScaledPathLength(q, field, ref, options.steps);
  report.min_length = std::numeric_limits<double>::infinity();
  report.min_excess = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coefficient(-1.0, 1.0);
  for (std::size_t i = 0; i < perturbations; ++i) {
    SineModes modes(options.modes, std::array<double, kMaxDim>{});
    for (auto& mode : modes) {
      for (std::size_t mu = 0; mu < dim; ++mu) mode[mu] = amplitude * coefficient(rng);
    }
    double length = 0.0;
    try {
      length = ScaledPathLength(q.Perturbed(std::move(modes)), field, ref, options.steps);
    } catch (const Error& e) {
      if (!IsGridFailure(e)) throw;
      continue;
    }
    ++report.evaluated;
    if (length >= report.reference_length - options.tolerance) ++report.not_shorter;
    report.min_length = std::min(report.min_length, length);
    report.min_excess = std::min(report.min_excess, length - report.reference_length);
  }
  report.fraction =
      report.evaluated == 0 ? 0.0 : static_cast<double>(report.not_shorter) / static_cast<double>(report.evaluated);
  return report;
}

ComplexCovector CanonicalMomentumShift(const Covector& p, const ScalingField& field, const Point& x) {
  field.manifold().require_contains(x);
  const Gradients g = field.gradients(x);
  ComplexCovector out{};
  for (int mu = 0; mu < field.manifold().dimension(); ++mu) out[mu] = {p[mu] + g.gamma[mu], g.delta[mu]};
  return out;
}

std::string_view ComparisonModeName(ComparisonMode m) {
  return m == ComparisonMode::kPhysicalTransmission ? "physical-transmission" : "parallel-transform";
}

bool ComparisonReport::agrees() const {
  if (mode == ComparisonMode::kPhysicalTransmission) return numbers_equal;
  return std::abs(transported - target) <= 1e-12 * std::max(1.0, std::abs(target));
}

ComparisonReport CompareOutcomes(const Outcome& r, const Outcome& t, const ScalingField& field, ComparisonMode mode) {
  field.manifold().require_contains(r.location);
  field.manifold().require_contains(t.location);

  ComparisonReport report;
  report.mode = mode;
  report.numbers_equal = r.number == t.number;
  if (mode == ComparisonMode::kParallelTransform) report.ratio = field.connection_factor(t.location, r.location);
  report.transported = report.ratio * r.number.payload().to_complex();
  report.target = t.number.payload().to_complex();
  if (report.target != std::complex<double>(0.0, 0.0)) report.mismatch = report.transported / report.target;
  return report;
}

}  // namespace scalefield
