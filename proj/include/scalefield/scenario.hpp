#pragma once

// Scenario files: strict JSON with line-annotated diagnostics.
//
// Syntax errors and unknown tags (field family, path family, task type,
// number kind) raise kParseError. Anything else that is wrong with a
// well-formed document raises kValidationError. Messages read
// "line N: /json/pointer: what went wrong".

#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "scalefield/error.hpp"
#include "scalefield/gauge.hpp"
#include "scalefield/manifold.hpp"
#include "scalefield/nonlocal.hpp"
#include "scalefield/path.hpp"
#include "scalefield/scaled_arithmetic.hpp"
#include "scalefield/scaling_field.hpp"

namespace scalefield {

using Json = nlohmann::ordered_json;

class LineMap {
 public:
  void record(const std::string& pointer, std::size_t line) { lines_.emplace(pointer, line); }
  /// Line of `pointer` or of its closest recorded ancestor; 0 when unknown.
  std::size_t line_of(std::string pointer) const;

 private:
  std::map<std::string, std::size_t> lines_;
};

struct Document {
  Json root;
  LineMap lines;
};

/// Throws kParseError on malformed JSON and kValidationError on duplicate keys.
Document ParseDocument(std::string_view text);

[[noreturn]] void ScenarioFail(ErrorCode code, const LineMap& lines, const std::string& pointer,
                               const std::string& message);

struct AxiomsTask {
  NumberKind kind;
  ScalingFactor t;
  ScalingFactor s;
  std::size_t samples;
  Convention convention;
};

struct VariationalSettings {
  std::size_t perturbations;
  double amplitude;
  VariationalOptions options;
};

struct GeodesicTask {
  GeodesicState start;
  double tau_end;
  double step;
  GeodesicOptions options;
  std::size_t length_steps;
  std::optional<VariationalSettings> variational;
};

struct PathLengthTask {
  std::string path;
  std::size_t steps;
  Point reference;
  std::size_t profile_points;
};

struct WavePacketTask {
  Point center;
  double sigma;
  Covector momentum;
  Point x0;
  std::vector<std::complex<double>> levels;
};

struct GaugeCheckTask {
  double tolerance;
};

struct CompareTask {
  ComparisonMode mode;
  Outcome r;
  Outcome t;
};

using TaskParams =
    std::variant<AxiomsTask, GeodesicTask, PathLengthTask, WavePacketTask, GaugeCheckTask, CompareTask>;

struct Task {
  std::string name;
  std::string type;
  TaskParams params;
  Json parameters;                     // every parameter after defaults were applied
  std::vector<std::string> defaulted;  // keys filled in from defaults
};

struct GaugeBlock {
  GaugeConfig config;
  std::optional<GaugeTransform> transform;
};

struct Scenario {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  Manifold manifold;
  ScalingField field;
  std::optional<GaugeBlock> gauge;
  std::map<std::string, Path> paths;
  std::vector<Task> tasks;
  Json setup;  // resolved manifold, fields and gauge blocks
};

/// Parses and validates a scenario. `seed_supplied` is set when the caller
/// provides a seed, which satisfies tasks that draw random numbers.
Scenario ParseScenario(std::string_view text, bool seed_supplied = false);

/// Reads the file (kIoError when unreadable) and parses it.
Scenario LoadScenario(const std::filesystem::path& file, bool seed_supplied = false);

}  // namespace scalefield
