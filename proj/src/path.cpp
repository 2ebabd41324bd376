#include "scalefield/path.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scalefield/error.hpp"

namespace scalefield {
namespace {

// Locates s on a uniform knot sequence with n knots.
std::pair<std::size_t, double> Locate(double s, std::size_t n) {
  const double h = 1.0 / static_cast<double>(n - 1);
  auto i = static_cast<std::size_t>(std::floor(std::clamp(s, 0.0, 1.0) / h));
  if (i >= n - 1) i = n - 2;
  return {i, h};
}

std::vector<Point> NaturalSplineSecondDerivatives(const std::vector<Point>& y) {
  const std::size_t n = y.size();
  std::vector<Point> m(n, Point{});
  if (n < 3) return m;
  const double h = 1.0 / static_cast<double>(n - 1);
  // Thomas algorithm on M_{i-1} + 4 M_i + M_{i+1} = 6 (y_{i+1} - 2 y_i + y_{i-1}) / h^2.
  std::vector<double> c(n, 0.0);
  std::vector<Point> d(n, Point{});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double denom = 4.0 - (i > 1 ? c[i - 1] : 0.0);
    c[i] = 1.0 / denom;
    for (std::size_t mu = 0; mu < kMaxDim; ++mu) {
      const double rhs = 6.0 * (y[i + 1][mu] - 2.0 * y[i][mu] + y[i - 1][mu]) / (h * h);
      d[i][mu] = (rhs - (i > 1 ? d[i - 1][mu] : 0.0)) / denom;
    }
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    for (std::size_t mu = 0; mu < kMaxDim; ++mu) m[i][mu] = d[i][mu] - c[i] * m[i + 1][mu];
  }
  return m;
}

}  // namespace

Path Path::MakeSegment(const Point& from, const Point& to) { return Path(Segment{from, to}); }

Path Path::MakePolyline(std::vector<Point> vertices) {
  if (vertices.size() < 2) Throw(ErrorCode::kInvalidArgument, "a polyline needs at least two vertices");
  return Path(Polyline{std::move(vertices)});
}

Path Path::MakeArc(const Point& center, std::size_t axis_u, std::size_t axis_v, double radius, double angle_from,
                   double angle_to) {
  if (axis_u >= kMaxDim || axis_v >= kMaxDim || axis_u == axis_v) {
    Throw(ErrorCode::kInvalidArgument, "arc needs two distinct coordinate axes");
  }
  if (!(radius > 0.0)) Throw(ErrorCode::kInvalidArgument, "arc radius must be positive");
  return Path(Arc{center, axis_u, axis_v, radius, angle_from, angle_to});
}

Path Path::MakeSpline(std::vector<Point> samples) {
  if (samples.size() < 2) Throw(ErrorCode::kInvalidArgument, "a spline needs at least two samples");
  auto second = NaturalSplineSecondDerivatives(samples);
  return Path(Spline{std::move(samples), std::move(second)});
}

Path Path::MakeHermite(std::vector<Point> samples, std::vector<Point> derivatives) {
  if (samples.size() < 2 || samples.size() != derivatives.size()) {
    Throw(ErrorCode::kInvalidArgument, "Hermite spline needs matching samples and derivatives");
  }
  return Path(Hermite{std::move(samples), std::move(derivatives)});
}

Path Path::Perturbed(SineModes modes) const {
  Path p = *this;
  if (p.perturbation_.size() < modes.size()) p.perturbation_.resize(modes.size(), std::array<double, kMaxDim>{});
  for (std::size_t k = 0; k < modes.size(); ++k) {
    for (std::size_t mu = 0; mu < kMaxDim; ++mu) p.perturbation_[k][mu] += modes[k][mu];
  }
  return p;
}

std::string_view Path::kind_name() const {
  struct Visitor {
    std::string_view operator()(const Segment&) const { return "segment"; }
    std::string_view operator()(const Polyline&) const { return "polyline"; }
    std::string_view operator()(const Arc&) const { return "arc"; }
    std::string_view operator()(const Spline&) const { return "spline"; }
    std::string_view operator()(const Hermite&) const { return "hermite"; }
  };
  return std::visit(Visitor{}, shape_);
}

Point Path::position(double s) const {
  struct Visitor {
    double s;
    Point operator()(const Segment& g) const {
      Point p{};
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) p[mu] = g.from[mu] + s * (g.to[mu] - g.from[mu]);
      return p;
    }
    Point operator()(const Polyline& g) const {
      auto [i, h] = Locate(s, g.vertices.size());
      const double u = (s - static_cast<double>(i) * h) / h;
      Point p{};
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) {
        p[mu] = g.vertices[i][mu] + u * (g.vertices[i + 1][mu] - g.vertices[i][mu]);
      }
      return p;
    }
    Point operator()(const Arc& g) const {
      const double angle = g.angle_from + s * (g.angle_to - g.angle_from);
      Point p = g.center;
      p[g.axis_u] += g.radius * std::cos(angle);
      p[g.axis_v] += g.radius * std::sin(angle);
      return p;
    }
    Point operator()(const Spline& g) const {
      auto [i, h] = Locate(s, g.samples.size());
      const double a = static_cast<double>(i + 1) * h - s;
      const double b = s - static_cast<double>(i) * h;
      Point p{};
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) {
        const double mi = g.second_derivatives[i][mu];
        const double mj = g.second_derivatives[i + 1][mu];
        p[mu] = mi * a * a * a / (6.0 * h) + mj * b * b * b / (6.0 * h) +
                (g.samples[i][mu] / h - mi * h / 6.0) * a + (g.samples[i + 1][mu] / h - mj * h / 6.0) * b;
      }
      return p;
    }
    Point operator()(const Hermite& g) const {
      auto [i, h] = Locate(s, g.samples.size());
      const double u = (s - static_cast<double>(i) * h) / h;
      const double u2 = u * u;
      const double u3 = u2 * u;
      const double h00 = 2 * u3 - 3 * u2 + 1;
      const double h10 = u3 - 2 * u2 + u;
      const double h01 = -2 * u3 + 3 * u2;
      const double h11 = u3 - u2;
      Point p{};
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) {
        p[mu] = h00 * g.samples[i][mu] + h10 * h * g.derivatives[i][mu] + h01 * g.samples[i + 1][mu] +
                h11 * h * g.derivatives[i + 1][mu];
      }
      return p;
    }
  };
  Point p = std::visit(Visitor{s}, shape_);
  for (std::size_t k = 0; k < perturbation_.size(); ++k) {
    const double w = std::sin(static_cast<double>(k + 1) * std::numbers::pi * s);
    for (std::size_t mu = 0; mu < kMaxDim; ++mu) p[mu] += perturbation_[k][mu] * w;
  }
  return p;
}

Point Path::BaseTangent(double s, std::size_t piece) const {
  struct Visitor {
    double s;
    std::size_t piece;
    Point operator()(const Segment& g) const {
      Point t{};
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) t[mu] = g.to[mu] - g.from[mu];
      return t;
    }
    Point operator()(const Polyline& g) const {
      const std::size_t i = std::min(piece, g.vertices.size() - 2);
      const double n = static_cast<double>(g.vertices.size() - 1);
      Point t{};
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) t[mu] = n * (g.vertices[i + 1][mu] - g.vertices[i][mu]);
      return t;
    }
    Point operator()(const Arc& g) const {
      const double sweep = g.angle_to - g.angle_from;
      const double angle = g.angle_from + s * sweep;
      Point t{};
      t[g.axis_u] = -g.radius * sweep * std::sin(angle);
      t[g.axis_v] = g.radius * sweep * std::cos(angle);
      return t;
    }
    Point operator()(const Spline& g) const {
      auto [i, h] = Locate(s, g.samples.size());
      const double a = static_cast<double>(i + 1) * h - s;
      const double b = s - static_cast<double>(i) * h;
      Point t{};
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) {
        const double mi = g.second_derivatives[i][mu];
        const double mj = g.second_derivatives[i + 1][mu];
        t[mu] = -mi * a * a / (2.0 * h) + mj * b * b / (2.0 * h) - (g.samples[i][mu] / h - mi * h / 6.0) +
                (g.samples[i + 1][mu] / h - mj * h / 6.0);
      }
      return t;
    }
    Point operator()(const Hermite& g) const {
      auto [i, h] = Locate(s, g.samples.size());
      const double u = (s - static_cast<double>(i) * h) / h;
      const double u2 = u * u;
      const double d00 = 6 * u2 - 6 * u;
      const double d10 = 3 * u2 - 4 * u + 1;
      const double d01 = -6 * u2 + 6 * u;
      const double d11 = 3 * u2 - 2 * u;
      Point t{};
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) {
        t[mu] = (d00 * g.samples[i][mu] + d01 * g.samples[i + 1][mu]) / h + d10 * g.derivatives[i][mu] +
                d11 * g.derivatives[i + 1][mu];
      }
      return t;
    }
  };
  return std::visit(Visitor{s, piece}, shape_);
}

std::size_t Path::PieceOf(double s) const {
  if (const auto* poly = std::get_if<Polyline>(&shape_)) return Locate(s, poly->vertices.size()).first;
  return 0;
}

Point Path::tangent_on_piece(double s, std::size_t piece) const {
  Point t = BaseTangent(s, piece);
  for (std::size_t k = 0; k < perturbation_.size(); ++k) {
    const double freq = static_cast<double>(k + 1) * std::numbers::pi;
    const double w = freq * std::cos(freq * s);
    for (std::size_t mu = 0; mu < kMaxDim; ++mu) t[mu] += perturbation_[k][mu] * w;
  }
  return t;
}

Point Path::tangent(double s) const { return tangent_on_piece(s, PieceOf(s)); }

std::vector<double> Path::breakpoints() const {
  if (const auto* poly = std::get_if<Polyline>(&shape_)) {
    const std::size_t n = poly->vertices.size();
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    b.back() = 1.0;
    return b;
  }
  return {0.0, 1.0};
}

}  // namespace scalefield
