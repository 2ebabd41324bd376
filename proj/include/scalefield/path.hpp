#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

#include "scalefield/manifold.hpp"

namespace scalefield {

/// Coefficients of sin(k pi s), k = 1..modes, per axis. Vanish at both ends.
using SineModes = std::vector<std::array<double, kMaxDim>>;

/// A curve q(s), s in [0, 1].
class Path {
 public:
  struct Segment {
    Point from{};
    Point to{};
  };
  /// Vertex i sits at s = i / (n - 1).
  struct Polyline {
    std::vector<Point> vertices;
  };
  /// Circular arc in the (axis_u, axis_v) coordinate plane.
  struct Arc {
    Point center{};
    std::size_t axis_u = 0;
    std::size_t axis_v = 1;
    double radius = 1.0;
    double angle_from = 0.0;
    double angle_to = 0.0;
  };
  /// Natural cubic spline through samples at uniform s.
  struct Spline {
    std::vector<Point> samples;
    std::vector<Point> second_derivatives;
  };
  /// Cubic Hermite spline through samples with known dq/ds.
  struct Hermite {
    std::vector<Point> samples;
    std::vector<Point> derivatives;
  };
  using Shape = std::variant<Segment, Polyline, Arc, Spline, Hermite>;

  static Path MakeSegment(const Point& from, const Point& to);
  static Path MakePolyline(std::vector<Point> vertices);
  static Path MakeArc(const Point& center, std::size_t axis_u, std::size_t axis_v, double radius, double angle_from,
                      double angle_to);
  static Path MakeSpline(std::vector<Point> samples);
  static Path MakeHermite(std::vector<Point> samples, std::vector<Point> derivatives);

  /// Same path plus an endpoint-preserving sine perturbation.
  Path Perturbed(SineModes modes) const;

  const Shape& shape() const { return shape_; }
  std::string_view kind_name() const;

  Point position(double s) const;
  /// dq/ds. At a polyline vertex the tangent of the following segment is used.
  Point tangent(double s) const;

  /// s values bounding the smooth pieces, starting with 0 and ending with 1.
  std::vector<double> breakpoints() const;
  /// dq/ds evaluated on a given smooth piece (one-sided at its ends).
  Point tangent_on_piece(double s, std::size_t piece) const;

  Point start() const { return position(0.0); }
  Point end() const { return position(1.0); }

 private:
  explicit Path(Shape shape) : shape_(std::move(shape)) {}

  Point BaseTangent(double s, std::size_t piece) const;
  std::size_t PieceOf(double s) const;

  Shape shape_;
  SineModes perturbation_;
};

}  // namespace scalefield
