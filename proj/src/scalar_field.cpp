#include "scalefield/scalar_field.hpp"

#include <algorithm>
#include <cmath>

#include "scalefield/error.hpp"

namespace scalefield {
namespace {

double Norm(const Point& x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

double InterpolateTable(const family::Tabulated& t, const Point& x) {
  const Manifold& g = *t.grid;
  g.require_contains(x);
  const int d = g.dimension();
  const GridIndex shape = g.shape();
  GridIndex base{0, 0, 0, 0};
  std::array<double, kMaxDim> frac{};
  for (int mu = 0; mu < d; ++mu) {
    const Axis& a = g.axis(mu);
    double u = (x[mu] - a.lower) / a.spacing;
    u = std::clamp(u, 0.0, static_cast<double>(shape[mu] - 1));
    auto i = static_cast<std::size_t>(std::floor(u));
    if (i + 1 >= shape[mu]) i = shape[mu] >= 2 ? shape[mu] - 2 : 0;
    base[mu] = i;
    frac[mu] = shape[mu] >= 2 ? u - static_cast<double>(i) : 0.0;
  }
  double acc = 0.0;
  for (unsigned corner = 0; corner < (1u << d); ++corner) {
    double w = 1.0;
    GridIndex idx = base;
    for (int mu = 0; mu < d; ++mu) {
      const bool up = (corner >> mu) & 1u;
      if (up) {
        if (shape[mu] < 2) {
          w = 0.0;
          break;
        }
        idx[mu] += 1;
        w *= frac[mu];
      } else {
        w *= 1.0 - frac[mu];
      }
    }
    if (w != 0.0) acc += w * (*t.values)[g.flat_index(idx)];
  }
  return acc;
}

Covector CentralDifference(const ScalarFieldSpec& f, const Point& x, const std::array<double, kMaxDim>& step,
                           int dimension) {
  Covector g{};
  for (int mu = 0; mu < dimension; ++mu) {
    Point plus = x;
    Point minus = x;
    plus[mu] += step[mu];
    minus[mu] -= step[mu];
    g[mu] = (f.value(plus) - f.value(minus)) / (2.0 * step[mu]);
  }
  return g;
}

}  // namespace

ScalarFieldSpec ScalarFieldSpec::Constant(double k) { return ScalarFieldSpec(family::Constant{k}); }

ScalarFieldSpec ScalarFieldSpec::Linear(Covector slope, double offset) {
  return ScalarFieldSpec(family::Linear{slope, offset});
}

ScalarFieldSpec ScalarFieldSpec::Gaussian(double amplitude, Point center, double sigma) {
  if (!(sigma > 0.0)) Throw(ErrorCode::kInvalidArgument, "gaussian sigma must be positive");
  return ScalarFieldSpec(family::Gaussian{amplitude, center, sigma});
}

ScalarFieldSpec ScalarFieldSpec::Radial(std::vector<double> coefficients) {
  return ScalarFieldSpec(family::Radial{std::move(coefficients)});
}

ScalarFieldSpec ScalarFieldSpec::Tabulated(const Manifold& grid, std::vector<double> values) {
  if (values.size() != grid.point_count()) {
    Throw(ErrorCode::kInvalidArgument, "tabulated field has " + std::to_string(values.size()) +
                                           " samples, grid has " + std::to_string(grid.point_count()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) {
      Throw(ErrorCode::kInvalidArgument, "tabulated field has NaN at sample " + std::to_string(i));
    }
  }
  return ScalarFieldSpec(family::Tabulated{std::make_shared<const Manifold>(grid),
                                           std::make_shared<const std::vector<double>>(std::move(values))});
}

ScalarFieldSpec ScalarFieldSpec::Combination(std::vector<std::pair<double, ScalarFieldSpec>> terms) {
  family::Sum sum;
  for (auto& [w, f] : terms) sum.terms.push_back({w, std::make_shared<const ScalarFieldSpec>(std::move(f))});
  return ScalarFieldSpec(std::move(sum));
}

ScalarFieldSpec ScalarFieldSpec::PartialDerivative(const ScalarFieldSpec& field, std::size_t axis) {
  if (axis >= kMaxDim) Throw(ErrorCode::kInvalidArgument, "derivative axis out of range");
  return ScalarFieldSpec(family::Partial{axis, std::make_shared<const ScalarFieldSpec>(field)});
}

ScalarFieldSpec ScalarFieldSpec::Shifted(double k) const { return Combination({{1.0, *this}, {1.0, Constant(k)}}); }

ScalarFieldSpec ScalarFieldSpec::Plus(double weight, const ScalarFieldSpec& other) const {
  return Combination({{1.0, *this}, {weight, other}});
}

std::string_view ScalarFieldSpec::family_name() const {
  struct Visitor {
    std::string_view operator()(const family::Constant&) const { return "constant"; }
    std::string_view operator()(const family::Linear&) const { return "linear"; }
    std::string_view operator()(const family::Gaussian&) const { return "gaussian"; }
    std::string_view operator()(const family::Radial&) const { return "radial"; }
    std::string_view operator()(const family::Tabulated&) const { return "tabulated"; }
    std::string_view operator()(const family::Sum&) const { return "sum"; }
    std::string_view operator()(const family::Partial&) const { return "partial"; }
  };
  return std::visit(Visitor{}, family_);
}

double ScalarFieldSpec::value(const Point& x) const {
  struct Visitor {
    const Point& x;
    double operator()(const family::Constant& f) const { return f.value; }
    double operator()(const family::Linear& f) const {
      double v = f.offset;
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) v += f.slope[mu] * x[mu];
      return v;
    }
    double operator()(const family::Gaussian& f) const {
      double r2 = 0.0;
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) r2 += (x[mu] - f.center[mu]) * (x[mu] - f.center[mu]);
      return f.amplitude * std::exp(-r2 / (2.0 * f.sigma * f.sigma));
    }
    double operator()(const family::Radial& f) const {
      const double r = Norm(x);
      double v = 0.0;
      for (auto it = f.coefficients.rbegin(); it != f.coefficients.rend(); ++it) v = v * r + *it;
      return v;
    }
    double operator()(const family::Tabulated& f) const { return InterpolateTable(f, x); }
    double operator()(const family::Sum& f) const {
      double v = 0.0;
      for (const auto& t : f.terms) v += t.weight * t.field->value(x);
      return v;
    }
    double operator()(const family::Partial& f) const { return f.field->gradient(x)[f.axis]; }
  };
  return std::visit(Visitor{x}, family_);
}

Covector ScalarFieldSpec::gradient(const Point& x) const {
  struct Visitor {
    const ScalarFieldSpec& self;
    const Point& x;
    Covector operator()(const family::Constant&) const { return Covector{}; }
    Covector operator()(const family::Linear& f) const { return f.slope; }
    Covector operator()(const family::Gaussian& f) const {
      const double v = self.value(x);
      Covector g{};
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) g[mu] = -v * (x[mu] - f.center[mu]) / (f.sigma * f.sigma);
      return g;
    }
    Covector operator()(const family::Radial& f) const {
      const double r = Norm(x);
      Covector g{};
      if (r == 0.0) return g;
      // g'(r) x / r
      double dg = 0.0;
      for (std::size_t k = f.coefficients.size(); k-- > 1;) dg = dg * r + static_cast<double>(k) * f.coefficients[k];
      for (std::size_t mu = 0; mu < kMaxDim; ++mu) g[mu] = dg * x[mu] / r;
      return g;
    }
    Covector operator()(const family::Tabulated& f) const {
      const Manifold& grid = *f.grid;
      std::array<double, kMaxDim> step{};
      for (int mu = 0; mu < grid.dimension(); ++mu) {
        step[mu] = grid.axis(mu).spacing;
        Point plus = x;
        Point minus = x;
        plus[mu] += step[mu];
        minus[mu] -= step[mu];
        if (!grid.contains(plus) || !grid.contains(minus)) {
          Throw(ErrorCode::kBoundaryPoint, "tabulated gradient needs a neighbour on both sides");
        }
      }
      return CentralDifference(self, x, step, grid.dimension());
    }
    Covector operator()(const family::Sum& f) const {
      Covector g{};
      for (const auto& t : f.terms) {
        const Covector tg = t.field->gradient(x);
        for (std::size_t mu = 0; mu < kMaxDim; ++mu) g[mu] += t.weight * tg[mu];
      }
      return g;
    }
    Covector operator()(const family::Partial&) const {
      std::array<double, kMaxDim> step;
      step.fill(1e-5);
      return CentralDifference(self, x, step, static_cast<int>(kMaxDim));
    }
  };
  return std::visit(Visitor{*this, x}, family_);
}

bool ScalarFieldSpec::is_constant() const {
  struct Visitor {
    bool operator()(const family::Constant&) const { return true; }
    bool operator()(const family::Linear& f) const {
      for (double a : f.slope) {
        if (a != 0.0) return false;
      }
      return true;
    }
    bool operator()(const family::Gaussian& f) const { return f.amplitude == 0.0; }
    bool operator()(const family::Radial& f) const {
      for (std::size_t k = 1; k < f.coefficients.size(); ++k) {
        if (f.coefficients[k] != 0.0) return false;
      }
      return true;
    }
    bool operator()(const family::Tabulated& f) const {
      for (double v : *f.values) {
        if (v != f.values->front()) return false;
      }
      return true;
    }
    bool operator()(const family::Sum& f) const {
      for (const auto& t : f.terms) {
        if (t.weight != 0.0 && !t.field->is_constant()) return false;
      }
      return true;
    }
    bool operator()(const family::Partial& f) const {
      return f.field->is_constant() || f.field->family_name() == "linear";
    }
  };
  return std::visit(Visitor{}, family_);
}

}  // namespace scalefield
