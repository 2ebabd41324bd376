#include "scalefield/manifold.hpp"

#include <cmath>
#include <string>

#include "scalefield/error.hpp"

namespace scalefield {
namespace {

constexpr double kBoundsSlack = 1e-12;

double Slack(const Axis& a) { return kBoundsSlack * std::max(1.0, a.upper - a.lower); }

}  // namespace

std::size_t Axis::points() const {
  return static_cast<std::size_t>(std::floor((upper - lower) / spacing + 1e-9)) + 1;
}

Manifold::Manifold(int dimension, Signature signature, std::array<Axis, kMaxDim> axes)
    : dimension_(dimension), signature_(signature), axes_(axes) {
  if (dimension_ != 3 && dimension_ != 4) {
    Throw(ErrorCode::kInvalidArgument, "manifold dimension must be 3 or 4");
  }
  if (signature_ == Signature::kMinkowski && dimension_ != 4) {
    Throw(ErrorCode::kInvalidArgument, "Minkowski signature needs dimension 4");
  }
  for (int mu = 0; mu < dimension_; ++mu) {
    const Axis& a = axes_[mu];
    if (!(a.spacing > 0.0) || !std::isfinite(a.spacing)) {
      Throw(ErrorCode::kInvalidArgument, "grid spacing must be positive on axis " + std::to_string(mu));
    }
    if (!(a.lower < a.upper)) {
      Throw(ErrorCode::kInvalidArgument, "grid bounds must be ordered on axis " + std::to_string(mu));
    }
  }
  for (std::size_t mu = dimension_; mu < kMaxDim; ++mu) axes_[mu] = Axis{0.0, 0.0, 1.0};
}

Manifold Manifold::Euclidean3(Point lower, Point upper, double spacing) {
  std::array<Axis, kMaxDim> axes{};
  for (int mu = 0; mu < 3; ++mu) axes[mu] = Axis{lower[mu], upper[mu], spacing};
  return Manifold(3, Signature::kEuclidean, axes);
}

Manifold Manifold::Minkowski4(Point lower, Point upper, double spacing) {
  std::array<Axis, kMaxDim> axes{};
  for (int mu = 0; mu < 4; ++mu) axes[mu] = Axis{lower[mu], upper[mu], spacing};
  return Manifold(4, Signature::kMinkowski, axes);
}

double Manifold::metric(std::size_t mu) const {
  if (signature_ == Signature::kEuclidean) return 1.0;
  return mu == 0 ? 1.0 : -1.0;
}

bool Manifold::contains(const Point& x) const {
  for (int mu = 0; mu < dimension_; ++mu) {
    const Axis& a = axes_[mu];
    if (!std::isfinite(x[mu])) return false;
    if (x[mu] < a.lower - Slack(a) || x[mu] > a.upper + Slack(a)) return false;
  }
  return true;
}

void Manifold::require_contains(const Point& x) const {
  if (!contains(x)) {
    std::string where = "(";
    for (int mu = 0; mu < dimension_; ++mu) where += (mu ? ", " : "") + std::to_string(x[mu]);
    Throw(ErrorCode::kOutOfBounds, "point " + where + ") is outside the manifold grid");
  }
}

GridIndex Manifold::shape() const {
  GridIndex s{1, 1, 1, 1};
  for (int mu = 0; mu < dimension_; ++mu) s[mu] = axes_[mu].points();
  return s;
}

std::size_t Manifold::point_count() const {
  std::size_t n = 1;
  for (auto s : shape()) n *= s;
  return n;
}

Point Manifold::point_at(const GridIndex& index) const {
  Point p{};
  for (int mu = 0; mu < dimension_; ++mu) {
    p[mu] = axes_[mu].lower + static_cast<double>(index[mu]) * axes_[mu].spacing;
  }
  return p;
}

std::size_t Manifold::flat_index(const GridIndex& index) const {
  const GridIndex s = shape();
  std::size_t flat = 0;
  for (int mu = 0; mu < dimension_; ++mu) {
    if (index[mu] >= s[mu]) Throw(ErrorCode::kOutOfBounds, "grid index out of range");
    flat = flat * s[mu] + index[mu];
  }
  return flat;
}

GridIndex Manifold::unflatten(std::size_t flat) const {
  const GridIndex s = shape();
  GridIndex index{0, 0, 0, 0};
  for (int mu = dimension_ - 1; mu >= 0; --mu) {
    index[mu] = flat % s[mu];
    flat /= s[mu];
  }
  return index;
}

bool Manifold::is_interior(const GridIndex& index) const {
  const GridIndex s = shape();
  for (int mu = 0; mu < dimension_; ++mu) {
    if (index[mu] == 0 || index[mu] + 1 >= s[mu]) return false;
  }
  return true;
}

void Manifold::for_each_point(const std::function<void(const GridIndex&, const Point&)>& fn) const {
  const std::size_t n = point_count();
  for (std::size_t k = 0; k < n; ++k) {
    GridIndex idx = unflatten(k);
    fn(idx, point_at(idx));
  }
}

Point Manifold::chart(const Point& fiber_base, const Point& z) const {
  require_contains(fiber_base);
  return z;
}

FieldSample FieldSample::FromFunction(const Manifold& m, const std::function<std::complex<double>(const Point&)>& fn,
                                      SampleRole role) {
  FieldSample sample{m, {}, role};
  const std::size_t n = m.point_count();
  sample.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) sample.values[k] = fn(m.point_at(m.unflatten(k)));
  return sample;
}

}  // namespace scalefield
