#include "scalefield/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <regex>
#include <set>
#include <sstream>

#include "scalefield/error.hpp"

namespace scalefield {
namespace {

std::string EscapeKey(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// Input iterator that counts the newlines the JSON lexer has consumed.
class LineCountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  LineCountingIterator(const char* p, std::size_t* line) : p_(p), line_(line) {}

  reference operator*() const { return *p_; }
  LineCountingIterator& operator++() {
    if (*p_ == '\n') ++*line_;
    ++p_;
    return *this;
  }
  LineCountingIterator operator++(int) {
    LineCountingIterator old = *this;
    ++*this;
    return old;
  }
  bool operator==(const LineCountingIterator& other) const { return p_ == other.p_; }
  bool operator!=(const LineCountingIterator& other) const { return p_ != other.p_; }

 private:
  const char* p_;
  std::size_t* line_;
};

// Keeps a JSON pointer for the parser's current position.
class PointerTracker {
 public:
  PointerTracker(LineMap& lines, const std::size_t& line) : lines_(lines), line_(line) {}

  void OnEvent(Json::parse_event_t event, const Json& parsed) {
    using E = Json::parse_event_t;
    switch (event) {
      case E::object_start:
      case E::array_start:
        lines_.record(Current(), line_);
        frames_.push_back({event == E::array_start, 0, {}, {}});
        break;
      case E::key: {
        Frame& top = frames_.back();
        top.key = EscapeKey(parsed.get<std::string>());
        if (!top.keys.insert(top.key).second) {
          LineMap here;
          here.record(Current(), line_);
          ScenarioFail(ErrorCode::kValidationError, here, Current(), "duplicate key");
        }
        lines_.record(Current(), line_);
        break;
      }
      case E::value:
        lines_.record(Current(), line_);
        Advance();
        break;
      case E::object_end:
      case E::array_end:
        frames_.pop_back();
        Advance();
        break;
    }
  }

 private:
  struct Frame {
    bool array;
    std::size_t index;
    std::string key;
    std::set<std::string> keys;
  };

  std::string Current() const {
    std::string out;
    for (const auto& f : frames_) out += "/" + (f.array ? std::to_string(f.index) : f.key);
    return out;
  }
  void Advance() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }

  LineMap& lines_;
  const std::size_t& line_;
  std::vector<Frame> frames_;
};

class Reader {
 public:
  Reader(const Json& node, std::string pointer, const LineMap& lines)
      : node_(node), pointer_(std::move(pointer)), lines_(lines) {
    if (!node_.is_object()) ScenarioFail(ErrorCode::kValidationError, lines_, pointer_, "expected an object");
  }

  const std::string& pointer() const { return pointer_; }
  const LineMap& lines() const { return lines_; }
  std::string child(std::string_view key) const { return pointer_ + "/" + EscapeKey(key); }

  bool has(const std::string& key) const { return node_.contains(key); }

  const Json& at(const std::string& key) {
    if (!has(key)) Fail(key, "missing required key");
    seen_.insert(key);
    return node_.at(key);
  }

  [[noreturn]] void Fail(const std::string& key, const std::string& message,
                         ErrorCode code = ErrorCode::kValidationError) const {
    ScenarioFail(code, lines_, child(key), message);
  }
  [[noreturn]] void FailHere(const std::string& message) const {
    ScenarioFail(ErrorCode::kValidationError, lines_, pointer_, message);
  }

  double Number(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_number()) Fail(key, "expected a number");
    const double d = v.get<double>();
    resolved[key] = d;
    return d;
  }
  double Number(const std::string& key, double fallback) {
    if (!has(key)) return Default(key, fallback);
    return Number(key);
  }

  std::int64_t Integer(const std::string& key, std::int64_t lo, std::int64_t hi) {
    const Json& v = at(key);
    if (!v.is_number_integer()) Fail(key, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) {
      Fail(key, "must be at most " + std::to_string(hi));
    }
    const auto i = v.get<std::int64_t>();
    if (i < lo || i > hi) Fail(key, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    resolved[key] = i;
    return i;
  }
  std::int64_t Integer(const std::string& key, std::int64_t fallback, std::int64_t lo, std::int64_t hi) {
    if (!has(key)) return Default(key, fallback);
    return Integer(key, lo, hi);
  }
  std::size_t Count(const std::string& key, std::size_t fallback, std::size_t lo) {
    return static_cast<std::size_t>(
        Integer(key, static_cast<std::int64_t>(fallback), static_cast<std::int64_t>(lo), 100'000'000));
  }

  std::string String(const std::string& key) {
    const Json& v = at(key);
    if (!v.is_string()) Fail(key, "expected a string");
    auto s = v.get<std::string>();
    resolved[key] = s;
    return s;
  }
  std::string String(const std::string& key, const std::string& fallback) {
    if (!has(key)) return Default(key, fallback);
    return String(key);
  }

  double Positive(const std::string& key, std::optional<double> fallback = std::nullopt) {
    const double v = fallback && !has(key) ? Number(key, *fallback) : Number(key);
    if (!(v > 0.0)) Fail(key, "must be positive");
    return v;
  }
  double NonNegative(const std::string& key, double fallback) {
    const double v = Number(key, fallback);
    if (v < 0.0) Fail(key, "must not be negative");
    return v;
  }

  Point Vector(const std::string& key, std::size_t n) {
    const Json& v = at(key);
    const Point p = ReadVector(v, child(key), n, lines_);
    resolved[key] = Json::array();
    for (std::size_t i = 0; i < n; ++i) resolved[key].push_back(p[i]);
    return p;
  }
  Point Vector(const std::string& key, std::size_t n, const Point& fallback) {
    if (!has(key)) {
      Json arr = Json::array();
      for (std::size_t i = 0; i < n; ++i) arr.push_back(fallback[i]);
      resolved[key] = arr;
      defaulted.push_back(key);
      return fallback;
    }
    return Vector(key, n);
  }

  /// Exact number given as a string ("7/3", "1.25") or an integer.
  std::string ExactText(const std::string& key) {
    const Json& v = at(key);
    std::string text;
    if (v.is_string()) {
      text = v.get<std::string>();
    } else if (v.is_number_integer()) {
      text = v.dump();
    } else {
      Fail(key, "expected an exact number as a string or an integer");
    }
    resolved[key] = text;
    return text;
  }

  Reader Object(const std::string& key) { return Reader(at(key), child(key), lines_); }

  /// Rejects keys that were never read.
  void Finish() const {
    for (const auto& item : node_.items()) {
      if (!seen_.contains(item.key())) Fail(item.key(), "unknown key '" + item.key() + "'");
    }
  }

  static Point ReadVector(const Json& v, const std::string& pointer, std::size_t n, const LineMap& lines) {
    if (!v.is_array() || v.size() != n) {
      ScenarioFail(ErrorCode::kValidationError, lines, pointer, "expected an array of " + std::to_string(n) + " numbers");
    }
    Point p{};
    for (std::size_t i = 0; i < n; ++i) {
      if (!v[i].is_number()) {
        ScenarioFail(ErrorCode::kValidationError, lines, pointer + "/" + std::to_string(i), "expected a number");
      }
      p[i] = v[i].get<double>();
    }
    return p;
  }

  Json resolved = Json::object();
  std::vector<std::string> defaulted;

 private:
  template <typename T>
  T Default(const std::string& key, T value) {
    resolved[key] = value;
    defaulted.push_back(key);
    return value;
  }

  const Json& node_;
  std::string pointer_;
  const LineMap& lines_;
  std::set<std::string> seen_;
};

// Converts library errors raised while building an object into diagnostics.
template <typename F>
auto Guard(const LineMap& lines, const std::string& pointer, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError || e.code() == ErrorCode::kValidationError) throw;
    ScenarioFail(ErrorCode::kValidationError, lines, pointer, e.what());
  }
}

struct FieldResult {
  ScalarFieldSpec spec;
  Json resolved;
};

FieldResult ParseField(const Json& node, const std::string& pointer, const LineMap& lines, const Manifold& m);

FieldResult ParseFieldObject(Reader& r, const Manifold& m) {
  const auto dim = static_cast<std::size_t>(m.dimension());
  const std::string family = r.String("family");
  ScalarFieldSpec spec;
  if (family == "constant") {
    const double v = r.Number("value");
    spec = ScalarFieldSpec::Constant(v);
  } else if (family == "linear") {
    const Point slope = r.Vector("slope", dim);
    const double offset = r.Number("offset", 0.0);
    spec = ScalarFieldSpec::Linear(slope, offset);
  } else if (family == "gaussian") {
    const double amplitude = r.Number("amplitude");
    const Point center = r.Vector("center", dim);
    const double sigma = r.Positive("sigma");
    spec = Guard(r.lines(), r.pointer(), [&] { return ScalarFieldSpec::Gaussian(amplitude, center, sigma); });
  } else if (family == "radial") {
    const Json& c = r.at("coefficients");
    if (!c.is_array() || c.empty()) r.Fail("coefficients", "expected a non-empty array of numbers");
    std::vector<double> coefficients;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].is_number()) {
        ScenarioFail(ErrorCode::kValidationError, r.lines(), r.child("coefficients") + "/" + std::to_string(i),
                     "expected a number");
      }
      coefficients.push_back(c[i].get<double>());
    }
    r.resolved["coefficients"] = coefficients;
    spec = ScalarFieldSpec::Radial(std::move(coefficients));
  } else if (family == "tabulated") {
    const Json& v = r.at("values");
    if (!v.is_array() || v.size() != m.point_count()) {
      r.Fail("values", "expected " + std::to_string(m.point_count()) + " values, one per grid point");
    }
    std::vector<double> values;
    values.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        ScenarioFail(ErrorCode::kValidationError, r.lines(), r.child("values") + "/" + std::to_string(i),
                     "expected a number");
      }
      values.push_back(v[i].get<double>());
    }
    r.resolved["values"] = v;
    spec = Guard(r.lines(), r.pointer(), [&] { return ScalarFieldSpec::Tabulated(m, std::move(values)); });
  } else if (family == "sum") {
    const Json& terms = r.at("terms");
    if (!terms.is_array() || terms.empty()) r.Fail("terms", "expected a non-empty array of terms");
    std::vector<std::pair<double, ScalarFieldSpec>> parts;
    Json resolved_terms = Json::array();
    for (std::size_t i = 0; i < terms.size(); ++i) {
      Reader term(terms[i], r.child("terms") + "/" + std::to_string(i), r.lines());
      const double w = term.Number("weight", 1.0);
      FieldResult f = ParseField(term.at("field"), term.child("field"), r.lines(), m);
      term.resolved["field"] = f.resolved;
      term.Finish();
      resolved_terms.push_back(term.resolved);
      parts.emplace_back(w, std::move(f.spec));
    }
    r.resolved["terms"] = resolved_terms;
    spec = ScalarFieldSpec::Combination(std::move(parts));
  } else if (family == "partial") {
    const auto axis = static_cast<std::size_t>(r.Integer("axis", 0, m.dimension() - 1));
    FieldResult f = ParseField(r.at("field"), r.child("field"), r.lines(), m);
    r.resolved["field"] = f.resolved;
    spec = ScalarFieldSpec::PartialDerivative(f.spec, axis);
  } else {
    r.Fail("family", "unknown field family '" + family + "'", ErrorCode::kParseError);
  }
  r.Finish();
  return {std::move(spec), r.resolved};
}

FieldResult ParseField(const Json& node, const std::string& pointer, const LineMap& lines, const Manifold& m) {
  Reader r(node, pointer, lines);
  return ParseFieldObject(r, m);
}

FieldResult OptionalField(Reader& parent, const std::string& key, const Manifold& m) {
  if (!parent.has(key)) {
    parent.defaulted.push_back(key);
    Json resolved = {{"family", "constant"}, {"value", 0.0}};
    parent.resolved[key] = resolved;
    return {ScalarFieldSpec::Constant(0.0), resolved};
  }
  FieldResult f = ParseField(parent.at(key), parent.child(key), parent.lines(), m);
  parent.resolved[key] = f.resolved;
  return f;
}

Manifold ParseManifold(Reader& r) {
  const auto dim = static_cast<int>(r.Integer("dimension", 3, 4));
  const std::string sig = r.String("signature", dim == 4 ? "minkowski" : "euclidean");
  Signature signature;
  if (sig == "euclidean") {
    signature = Signature::kEuclidean;
  } else if (sig == "minkowski") {
    signature = Signature::kMinkowski;
  } else {
    r.Fail("signature", "signature must be 'euclidean' or 'minkowski'");
  }
  const auto n = static_cast<std::size_t>(dim);
  const Point lower = r.Vector("lower", n);
  const Point upper = r.Vector("upper", n);
  Point spacing{};
  const Json& sp = r.at("spacing");
  if (sp.is_number()) {
    spacing.fill(sp.get<double>());
    r.resolved["spacing"] = sp;
  } else {
    spacing = Reader::ReadVector(sp, r.child("spacing"), n, r.lines());
    r.resolved["spacing"] = sp;
  }
  r.Finish();
  std::array<Axis, kMaxDim> axes{};
  for (std::size_t mu = 0; mu < n; ++mu) axes[mu] = {lower[mu], upper[mu], spacing[mu]};
  return Guard(r.lines(), r.pointer(), [&] { return Manifold(dim, signature, axes); });
}

Path ParsePath(Reader& r, const Manifold& m) {
  const auto dim = static_cast<std::size_t>(m.dimension());
  auto points = [&](const std::string& key) {
    const Json& v = r.at(key);
    if (!v.is_array() || v.size() < 2) r.Fail(key, "expected an array of at least two points");
    std::vector<Point> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(Reader::ReadVector(v[i], r.child(key) + "/" + std::to_string(i), dim, r.lines()));
    }
    r.resolved[key] = v;
    return out;
  };

  const std::string family = r.String("family");
  std::optional<Path> path;
  if (family == "segment") {
    const Point from = r.Vector("from", dim);
    const Point to = r.Vector("to", dim);
    path = Path::MakeSegment(from, to);
  } else if (family == "polyline") {
    auto v = points("vertices");
    path = Path::MakePolyline(std::move(v));
  } else if (family == "arc") {
    const Point center = r.Vector("center", dim);
    const Json& axes = r.at("axes");
    if (!axes.is_array() || axes.size() != 2 || !axes[0].is_number_unsigned() || !axes[1].is_number_unsigned()) {
      r.Fail("axes", "expected two axis indices");
    }
    const auto u = axes[0].get<std::size_t>();
    const auto w = axes[1].get<std::size_t>();
    if (u >= dim || w >= dim || u == w) r.Fail("axes", "axis indices must be distinct and below the dimension");
    r.resolved["axes"] = axes;
    const double radius = r.Positive("radius");
    const double from = r.Number("from_angle", 0.0);
    const double to = r.Number("to_angle");
    path = Path::MakeArc(center, u, w, radius, from, to);
  } else if (family == "spline") {
    auto s = points("samples");
    path = Path::MakeSpline(std::move(s));
  } else {
    r.Fail("family", "unknown path family '" + family + "'", ErrorCode::kParseError);
  }
  r.Finish();
  if (!m.contains(path->start()) || !m.contains(path->end())) r.FailHere("path endpoints must lie inside the manifold");
  return *path;
}

struct TaskContext {
  const Manifold& manifold;
  const std::map<std::string, Path>& paths;
  const std::optional<GaugeBlock>& gauge;
};

Point InBounds(Reader& r, const std::string& key, const Manifold& m) {
  const Point p = r.Vector(key, static_cast<std::size_t>(m.dimension()));
  if (!m.contains(p)) r.Fail(key, "point lies outside the manifold");
  return p;
}

AxiomsTask ParseAxioms(Reader& r) {
  const std::string kind_name = r.String("kind");
  const auto kind = ParseNumberKind(kind_name);
  if (!kind) r.Fail("kind", "unknown number kind '" + kind_name + "'", ErrorCode::kParseError);
  auto factor = [&](const std::string& key) {
    const std::string text = r.ExactText(key);
    return Guard(r.lines(), r.child(key), [&] { return ScalingFactor::Parse(text); });
  };
  ScalingFactor t = factor("t");
  ScalingFactor s = factor("s");
  const std::size_t samples = r.Count("samples", 100, 1);
  const std::string conv = r.String("convention", "axiom-consistent");
  Convention convention = Convention::kAxiomConsistent;
  if (conv == "uniform-factor") {
    convention = Convention::kUniformFactor;
  } else if (conv != "axiom-consistent") {
    r.Fail("convention", "convention must be 'axiom-consistent' or 'uniform-factor'");
  }
  Guard(r.lines(), r.pointer(), [&] { return ScaledStructure(*kind, t, s); });
  return {*kind, std::move(t), std::move(s), samples, convention};
}

GeodesicTask ParseGeodesic(Reader& r, const TaskContext& ctx) {
  const auto dim = static_cast<std::size_t>(ctx.manifold.dimension());
  GeodesicTask task{};
  task.start.position = InBounds(r, "start", ctx.manifold);
  task.start.velocity = r.Vector("velocity", dim);
  task.tau_end = r.Positive("tau_end", 1.0);
  task.step = r.Positive("step", 1e-3);
  const std::string contraction = r.String("drag_contraction", "euclidean");
  if (contraction == "euclidean") {
    task.options.contraction = DragContraction::kEuclidean;
  } else if (contraction == "minkowski") {
    task.options.contraction = DragContraction::kMinkowski;
  } else {
    r.Fail("drag_contraction", "drag_contraction must be 'euclidean' or 'minkowski'");
  }
  const std::string form = r.String("form", "euler-lagrange");
  if (form == "euler-lagrange") {
    task.options.form = GeodesicForm::kEulerLagrange;
  } else if (form == "flipped-pull") {
    task.options.form = GeodesicForm::kFlippedPull;
  } else {
    r.Fail("form", "form must be 'euler-lagrange' or 'flipped-pull'");
  }
  task.length_steps = r.Count("length_steps", 2000, 2);
  if (r.has("variational")) {
    Reader v = r.Object("variational");
    VariationalSettings settings{};
    settings.perturbations = v.Count("perturbations", 100, 1);
    settings.amplitude = v.Positive("amplitude", 1e-2);
    settings.options.steps = v.Count("steps", 2000, 2);
    settings.options.tolerance = v.NonNegative("tolerance", 1e-7);
    settings.options.modes = v.Count("modes", 5, 1);
    v.Finish();
    r.resolved["variational"] = v.resolved;
    for (const auto& k : v.defaulted) r.defaulted.push_back("variational." + k);
    task.variational = settings;
  }
  return task;
}

PathLengthTask ParsePathLength(Reader& r, const TaskContext& ctx) {
  PathLengthTask task{};
  task.path = r.String("path");
  const auto it = ctx.paths.find(task.path);
  if (it == ctx.paths.end()) r.Fail("path", "undeclared path '" + task.path + "'");
  task.steps = r.Count("steps", 1000, 2);
  if (r.has("reference")) {
    task.reference = InBounds(r, "reference", ctx.manifold);
  } else {
    task.reference = r.Vector("reference", static_cast<std::size_t>(ctx.manifold.dimension()), it->second.start());
  }
  task.profile_points = r.Count("profile_points", 101, 2);
  return task;
}

WavePacketTask ParseWavePacket(Reader& r, const TaskContext& ctx) {
  WavePacketTask task{};
  task.center = r.Vector("center", 3);
  task.sigma = r.Positive("sigma");
  task.momentum = r.Vector("momentum", 3, Point{});
  task.x0 = InBounds(r, "x0", ctx.manifold);
  if (!r.has("levels")) {
    r.resolved["levels"] = Json::array({"1"});
    r.defaulted.push_back("levels");
    task.levels = {1.0};
    return task;
  }
  const Json& levels = r.at("levels");
  if (!levels.is_array() || levels.empty()) r.Fail("levels", "expected a non-empty array of levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string pointer = r.child("levels") + "/" + std::to_string(i);
    std::complex<double> c;
    if (levels[i].is_number()) {
      c = levels[i].get<double>();
    } else if (levels[i].is_string()) {
      const auto text = levels[i].get<std::string>();
      c = Guard(r.lines(), pointer, [&] { return ScalingFactor::Parse(text).value().to_complex(); });
    } else {
      ScenarioFail(ErrorCode::kValidationError, r.lines(), pointer, "expected a number or an exact string");
    }
    if (c == std::complex<double>(0.0, 0.0)) {
      ScenarioFail(ErrorCode::kValidationError, r.lines(), pointer, "level must be nonzero");
    }
    task.levels.push_back(c);
  }
  r.resolved["levels"] = levels;
  return task;
}

Outcome ParseOutcome(Reader& parent, const std::string& key, const Manifold& m) {
  Reader r = parent.Object(key);
  const Point location = InBounds(r, "location", m);
  Reader n = r.Object("number");
  const std::string kind_name = n.String("kind");
  const auto kind = ParseNumberKind(kind_name);
  if (!kind) n.Fail("kind", "unknown number kind '" + kind_name + "'", ErrorCode::kParseError);
  Scalar payload;
  if (*kind == NumberKind::kComplex) {
    const std::string re = n.ExactText("re");
    const std::string im = n.has("im") ? n.ExactText("im") : std::string("0");
    payload = Guard(n.lines(), n.pointer(),
                    [&] { return Scalar(ComplexRational(ParseRational(re), ParseRational(im))); });
  } else {
    const std::string value = n.ExactText("value");
    payload = Guard(n.lines(), n.child("value"), [&] { return Scalar(ParseRational(value)); });
  }
  n.Finish();
  BaseNumber number = Guard(n.lines(), n.pointer(), [&] { return BaseNumber::Make(*kind, payload); });
  r.resolved["number"] = n.resolved;
  r.Finish();
  parent.resolved[key] = r.resolved;
  return {location, std::move(number)};
}

CompareTask ParseCompare(Reader& r, const TaskContext& ctx) {
  const std::string mode = r.String("mode");
  ComparisonMode m;
  if (mode == "physical-transmission") {
    m = ComparisonMode::kPhysicalTransmission;
  } else if (mode == "parallel-transform") {
    m = ComparisonMode::kParallelTransform;
  } else {
    r.Fail("mode", "mode must be 'physical-transmission' or 'parallel-transform'");
  }
  Outcome a = ParseOutcome(r, "r", ctx.manifold);
  Outcome b = ParseOutcome(r, "t", ctx.manifold);
  return {m, std::move(a), std::move(b)};
}

bool ValidTaskName(const std::string& name) {
  return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
  });
}

}  // namespace

std::size_t LineMap::line_of(std::string pointer) const {
  while (true) {
    if (auto it = lines_.find(pointer); it != lines_.end()) return it->second;
    if (pointer.empty()) return 0;
    pointer.erase(pointer.rfind('/'));
  }
}

void ScenarioFail(ErrorCode code, const LineMap& lines, const std::string& pointer, const std::string& message) {
  std::ostringstream os;
  const std::size_t line = lines.line_of(pointer);
  if (line > 0) os << "line " << line << ": ";
  os << (pointer.empty() ? "/" : pointer) << ": " << message;
  Throw(code, os.str());
}

Document ParseDocument(std::string_view text) {
  Document doc;
  std::size_t line = 1;
  PointerTracker tracker(doc.lines, line);
  try {
    doc.root = Json::parse(
        LineCountingIterator(text.data(), &line), LineCountingIterator(text.data() + text.size(), &line),
        [&](int, Json::parse_event_t event, Json& parsed) {
          tracker.OnEvent(event, parsed);
          return true;
        });
  } catch (const nlohmann::json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto at = static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n')) + 1;
    std::string what = e.what();
    static const std::regex kPrefix(R"(^\[json\.exception\.[a-z_.0-9]+\] parse error( at line \d+, column (\d+))?: )");
    std::smatch m;
    std::string where;
    if (std::regex_search(what, m, kPrefix)) {
      if (m[2].matched) where = "column " + m[2].str() + ": ";
      what = m.suffix();
    }
    Throw(ErrorCode::kParseError, "line " + std::to_string(at) + ": " + where + what);
  }
  return doc;
}

Scenario ParseScenario(std::string_view text, bool seed_supplied) {
  const Document doc = ParseDocument(text);
  const LineMap& lines = doc.lines;
  Reader root(doc.root, "", lines);

  std::optional<std::uint64_t> seed;
  if (root.has("seed")) seed = static_cast<std::uint64_t>(root.Integer("seed", 0, INT64_MAX));
  std::optional<std::string> output;
  if (root.has("output")) output = root.String("output");

  Json setup = Json::object();

  Reader mr = root.Object("manifold");
  const Manifold manifold = ParseManifold(mr);
  setup["manifold"] = mr.resolved;

  ScalarFieldSpec theta = ScalarFieldSpec::Constant(0.0);
  ScalarFieldSpec phi = ScalarFieldSpec::Constant(0.0);
  GradientMode mode = GradientMode::kAnalytic;
  double step = 0.0;
  {
    const Json empty = Json::object();
    const bool present = root.has("fields");
    Reader fr = present ? root.Object("fields") : Reader(empty, "/fields", lines);
    theta = OptionalField(fr, "theta", manifold).spec;
    phi = OptionalField(fr, "phi", manifold).spec;
    if (fr.has("gradient")) {
      Reader gr = fr.Object("gradient");
      const std::string m = gr.String("mode", "analytic");
      if (m == "central-difference") {
        mode = GradientMode::kCentralDifference;
      } else if (m != "analytic") {
        gr.Fail("mode", "mode must be 'analytic' or 'central-difference'");
      }
      step = gr.NonNegative("step", 0.0);
      gr.Finish();
      fr.resolved["gradient"] = gr.resolved;
    } else {
      fr.resolved["gradient"] = {{"mode", "analytic"}, {"step", 0.0}};
      fr.defaulted.push_back("gradient");
    }
    fr.Finish();
    setup["fields"] = fr.resolved;
    if (!fr.defaulted.empty()) setup["fields_defaulted"] = fr.defaulted;
  }
  ScalingField field = Guard(lines, "/fields", [&] { return ScalingField(manifold, theta, phi, mode, step); });

  std::optional<GaugeBlock> gauge;
  if (root.has("gauge")) {
    Reader gr = root.Object("gauge");
    GaugeBlock block{};
    block.config.g_r = gr.Number("g_r");
    block.config.g_i = gr.Number("g_i");
    block.config.h_i = gr.Number("h_i");
    const Json& b = gr.at("B");
    if (!b.is_array() || b.size() != static_cast<std::size_t>(manifold.dimension())) {
      gr.Fail("B", "expected one field per axis (" + std::to_string(manifold.dimension()) + ")");
    }
    Json resolved_b = Json::array();
    for (std::size_t mu = 0; mu < b.size(); ++mu) {
      FieldResult f = ParseField(b[mu], gr.child("B") + "/" + std::to_string(mu), lines, manifold);
      block.config.photon[mu] = f.spec;
      resolved_b.push_back(f.resolved);
    }
    gr.resolved["B"] = resolved_b;
    if (gr.has("transform")) {
      Reader tr = gr.Object("transform");
      FieldResult alpha = OptionalField(tr, "alpha", manifold);
      FieldResult gamma = OptionalField(tr, "gamma", manifold);
      tr.Finish();
      gr.resolved["transform"] = tr.resolved;
      block.transform = GaugeTransform{alpha.spec, gamma.spec};
    }
    gr.Finish();
    setup["gauge"] = gr.resolved;
    gauge = std::move(block);
  }

  std::map<std::string, Path> paths;
  if (root.has("paths")) {
    const Json& node = root.at("paths");
    if (!node.is_object()) root.Fail("paths", "expected an object mapping names to paths");
    Json resolved = Json::object();
    for (const auto& item : node.items()) {
      Reader pr(item.value(), root.child("paths") + "/" + EscapeKey(item.key()), lines);
      paths.emplace(item.key(), ParsePath(pr, manifold));
      resolved[item.key()] = pr.resolved;
    }
    setup["paths"] = resolved;
  }

  const Json& tasks_node = root.at("tasks");
  if (!tasks_node.is_array()) root.Fail("tasks", "expected an array of tasks");
  const TaskContext ctx{manifold, paths, gauge};
  std::vector<Task> tasks;
  std::set<std::string> names;
  for (std::size_t i = 0; i < tasks_node.size(); ++i) {
    Reader tr(tasks_node[i], "/tasks/" + std::to_string(i), lines);
    const std::string type = tr.String("type");
    std::string name = type;
    if (tr.has("name")) {
      name = tr.String("name");
      if (!ValidTaskName(name)) tr.Fail("name", "task names use letters, digits, '-' and '_' only");
    }
    if (!names.insert(name).second) tr.Fail("name", "duplicate task name '" + name + "'");

    bool uses_seed = false;
    std::optional<TaskParams> params;
    if (type == "axioms") {
      params = ParseAxioms(tr);
      uses_seed = true;
    } else if (type == "geodesic") {
      GeodesicTask g = ParseGeodesic(tr, ctx);
      uses_seed = g.variational.has_value();
      params = std::move(g);
    } else if (type == "pathlen") {
      params = ParsePathLength(tr, ctx);
    } else if (type == "wavepacket") {
      params = ParseWavePacket(tr, ctx);
    } else if (type == "gauge-check") {
      if (!gauge || !gauge->transform) tr.FailHere("gauge-check needs a gauge block with a transform");
      params = GaugeCheckTask{tr.NonNegative("tolerance", 1e-10)};
    } else if (type == "compare") {
      params = ParseCompare(tr, ctx);
    } else {
      tr.Fail("type", "unknown task type '" + type + "'", ErrorCode::kParseError);
    }
    tr.Finish();
    if (uses_seed && !seed && !seed_supplied) tr.FailHere("task draws random numbers but the scenario has no seed");

    Json parameters = tr.resolved;
    parameters.erase("type");
    parameters.erase("name");
    tasks.push_back({name, type, std::move(*params), std::move(parameters), tr.defaulted});
  }
  root.Finish();

  return Scenario{seed, output, manifold, std::move(field), std::move(gauge), std::move(paths), std::move(tasks),
                  std::move(setup)};
}

Scenario LoadScenario(const std::filesystem::path& file, bool seed_supplied) {
  std::ifstream is(file, std::ios::binary);
  if (!is) Throw(ErrorCode::kIoError, "cannot read " + file.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  return ParseScenario(buf.str(), seed_supplied);
}

}  // namespace scalefield
