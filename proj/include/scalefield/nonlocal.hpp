#pragma once

// Nonlocal quantities under a scaling field: wave packets, path lengths,
// geodesics and the comparison of outcomes made at different points.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "scalefield/manifold.hpp"
#include "scalefield/path.hpp"
#include "scalefield/scaled_arithmetic.hpp"
#include "scalefield/scaling_field.hpp"

namespace scalefield {

// ---------------------------------------------------------------- packets

/// Amplitudes on every point of a three-dimensional spatial grid.
struct WavePacket {
  Manifold grid;
  std::vector<std::complex<double>> amplitudes;

  /// exp(-|w - center|^2 / (4 sigma^2) + i k.w)
  static WavePacket Gaussian(const Manifold& grid, const Point& center, double sigma, const Covector& momentum);

  /// Sum of |psi|^2 times the cell volume.
  double norm_squared() const;
};

/// Nonzero complex level c. Throws kZeroLevel for c = 0.
class Level {
 public:
  Level(std::complex<double> c);  // NOLINT(google-explicit-constructor)
  std::complex<double> value() const { return c_; }

 private:
  std::complex<double> c_;
};

/// Multiplies each amplitude by c f(w) / (c f(x0)). On a four-dimensional
/// field manifold the packet grid is placed at the time coordinate of x0.
WavePacket ScaleWavePacket(const WavePacket& psi, const ScalingField& field, const Point& x0, const Level& c);

// ----------------------------------------------------------- path lengths

/// Integral of |eta(q', q')|^{1/2} over s with composite Simpson per smooth piece.
double LocalPathLength(const Path& q, const Manifold& m, std::size_t steps);

/// Same integrand weighted by exp(theta(q(s)) - theta(x_ref)).
double ScaledPathLength(const Path& q, const ScalingField& field, const Point& x_ref, std::size_t steps);

/// length * exp(theta(from) - theta(to)).
double ChangeReference(double length, const ScalingField& field, const Point& from, const Point& to);

// -------------------------------------------------------------- geodesics

struct GeodesicState {
  Point position{};
  Point velocity{};
  double tau = 0.0;
};

enum class DragContraction { kEuclidean, kMinkowski };

/// kEulerLagrange:  q''^mu = -(Gamma.q') q'^mu + eta(q', q') eta^{mu mu} Gamma_mu
/// kFlippedPull:    q''^mu = -(Gamma.q') q'^mu - eta^{mu mu} Gamma_mu
/// For a unit timelike or Euclidean velocity the two differ only in the sign
/// of the last term. Only the first one makes the scaled length stationary.
enum class GeodesicForm { kEulerLagrange, kFlippedPull };

struct GeodesicOptions {
  DragContraction contraction = DragContraction::kEuclidean;
  GeodesicForm form = GeodesicForm::kEulerLagrange;
};

struct GeodesicResult {
  std::vector<GeodesicState> trajectory;  // includes the initial state
  bool left_domain = false;
};

std::string_view DragContractionName(DragContraction c);
std::string_view GeodesicFormName(GeodesicForm f);

/// Second derivative of the position for the given state.
Point GeodesicAcceleration(const ScalingField& field, const Point& q, const Point& v, const GeodesicOptions& options);

/// Classical RK4 with fixed step. The last step is shortened to land on
/// tau_end. Leaving the grid stops the integration with left_domain set.
GeodesicResult IntegrateGeodesic(const GeodesicState& start, const ScalingField& field, double tau_end,
                                 double step, const GeodesicOptions& options = {});

/// Cubic Hermite path through the trajectory, reparameterised to s in [0, 1].
Path TrajectoryPath(const GeodesicResult& result);

struct VariationalOptions {
  std::size_t steps = 2000;
  double tolerance = 1e-7;
  std::size_t modes = 5;
};

struct VariationalReport {
  std::size_t perturbations = 0;
  std::size_t evaluated = 0;      // perturbed paths that stayed on the grid
  std::size_t not_shorter = 0;    // L >= L* - tolerance
  double fraction = 0.0;          // not_shorter / evaluated
  double reference_length = 0.0;  // L*
  double min_length = 0.0;
  double min_excess = 0.0;  // min over perturbations of L - L*
};

/// Compares q against random endpoint-fixed sine perturbations. Lengths are
/// scaled with reference q(0).
VariationalReport VariationalCheck(const Path& q, const ScalingField& field, std::size_t perturbations,
                                   double amplitude, std::uint64_t seed, const VariationalOptions& options = {});

/// p + Gamma(x) + i Delta(x).
ComplexCovector CanonicalMomentumShift(const Covector& p, const ScalingField& field, const Point& x);

// ------------------------------------------------------------ comparison

struct Outcome {
  Point location{};
  BaseNumber number;
};

enum class ComparisonMode { kPhysicalTransmission, kParallelTransform };

std::string_view ComparisonModeName(ComparisonMode m);

struct ComparisonReport {
  ComparisonMode mode = ComparisonMode::kPhysicalTransmission;
  bool numbers_equal = false;
  std::complex<double> ratio{1.0, 0.0};  // f(t.location) / f(r.location); 1 for physical transmission
  std::complex<double> transported{};    // ratio * value of r
  std::complex<double> target{};         // value of t
  std::optional<std::complex<double>> mismatch;  // transported / target, absent when target is 0

  /// Physical transmission: base-number equality. Parallel transform: the
  /// transported value matches the target value.
  bool agrees() const;
};

ComparisonReport CompareOutcomes(const Outcome& r, const Outcome& t, const ScalingField& field, ComparisonMode mode);

}  // namespace scalefield
