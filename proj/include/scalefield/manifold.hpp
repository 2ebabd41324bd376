#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace scalefield {

inline constexpr std::size_t kMaxDim = 4;

/// Coordinates on the manifold. Only the first `dimension` entries are used;
/// on a space-time manifold index 0 is the time coordinate.
using Point = std::array<double, kMaxDim>;
using Covector = std::array<double, kMaxDim>;
using ComplexCovector = std::array<std::complex<double>, kMaxDim>;
using GridIndex = std::array<std::size_t, kMaxDim>;

enum class Signature {
  kEuclidean,  // identity metric
  kMinkowski,  // diag(+1, -1, -1, -1)
};

struct Axis {
  double lower = 0.0;
  double upper = 1.0;
  double spacing = 0.1;

  std::size_t points() const;
};

/// Flat manifold of dimension 3 (Euclidean) or 4 (Minkowski) with a uniform
/// grid. Each fiber's chart is the identity coordinate map, so the same
/// coordinates name the same point in every fiber.
class Manifold {
 public:
  Manifold(int dimension, Signature signature, std::array<Axis, kMaxDim> axes);

  static Manifold Euclidean3(Point lower, Point upper, double spacing);
  static Manifold Minkowski4(Point lower, Point upper, double spacing);

  int dimension() const { return dimension_; }
  Signature signature() const { return signature_; }
  const Axis& axis(std::size_t mu) const { return axes_[mu]; }

  /// Diagonal metric entry eta^{mu mu}.
  double metric(std::size_t mu) const;

  bool contains(const Point& x) const;
  /// Throws kOutOfBounds when x is outside the grid box.
  void require_contains(const Point& x) const;

  std::size_t point_count() const;
  GridIndex shape() const;
  Point point_at(const GridIndex& index) const;
  std::size_t flat_index(const GridIndex& index) const;
  GridIndex unflatten(std::size_t flat) const;
  bool is_interior(const GridIndex& index) const;

  void for_each_point(const std::function<void(const GridIndex&, const Point&)>& fn) const;

  /// Identity chart of the fiber at `fiber_base`; independent of the fiber.
  Point chart(const Point& fiber_base, const Point& z) const;

 private:
  int dimension_;
  Signature signature_;
  std::array<Axis, kMaxDim> axes_;
};

enum class SampleRole { kScalar, kVectorComponent };

/// Complex values on every grid point of a manifold.
struct FieldSample {
  Manifold manifold;
  std::vector<std::complex<double>> values;
  SampleRole role = SampleRole::kScalar;

  static FieldSample FromFunction(const Manifold& m, const std::function<std::complex<double>(const Point&)>& fn,
                                  SampleRole role = SampleRole::kScalar);

  const std::complex<double>& at(const GridIndex& index) const { return values[manifold.flat_index(index)]; }
};

}  // namespace scalefield
