#include "scalefield/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "scalefield/csv.hpp"
#include "scalefield/gauge.hpp"
#include "scalefield/nonlocal.hpp"
#include "scalefield/scaled_arithmetic.hpp"

namespace scalefield {
namespace {

struct TaskOutcome {
  bool ok = true;
  std::string message;
  Json results = Json::object();
  CsvTable table;
};

std::vector<std::string> AxisHeader(const std::string& prefix, int dim) {
  std::vector<std::string> out;
  for (int mu = 0; mu < dim; ++mu) out.push_back(prefix + std::to_string(mu));
  return out;
}

Json PointJson(const Point& p, int dim) {
  Json out = Json::array();
  for (int mu = 0; mu < dim; ++mu) out.push_back(p[mu]);
  return out;
}

Json ComplexJson(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

struct Executor {
  const Scenario& scenario;
  std::uint64_t seed;

  int dim() const { return scenario.manifold.dimension(); }

  TaskOutcome operator()(const AxiomsTask& task) const {
    TaskOutcome out;
    const ScaledOps ops(ScaledStructure(task.kind, task.t, task.s), task.convention);
    const AxiomReport report = AxiomSuite(ops, task.samples, seed);
    out.table.header = {"axiom", "applicable", "passed", "checked", "counterexample"};
    Json failed = Json::array();
    for (const auto& a : report.axioms) {
      out.table.rows.push_back({a.name, std::int64_t{a.applicable}, std::int64_t{a.passed},
                                static_cast<std::int64_t>(a.checked), a.counterexample});
      if (!a.passed) failed.push_back(a.name);
    }
    out.results["ratio"] = ops.structure().ratio().to_string();
    out.results["axioms_checked"] = report.axioms.size();
    out.results["all_passed"] = report.all_passed();
    out.results["failed"] = failed;
    if (!report.all_passed()) {
      out.ok = false;
      out.message = "axiom check failed: " + failed.dump();
    }
    return out;
  }

  TaskOutcome operator()(const GeodesicTask& task) const {
    TaskOutcome out;
    const GeodesicResult result =
        IntegrateGeodesic(task.start, scenario.field, task.tau_end, task.step, task.options);
    out.table.header = {"tau"};
    for (const auto& h : AxisHeader("q", dim())) out.table.header.push_back(h);
    for (const auto& h : AxisHeader("v", dim())) out.table.header.push_back(h);
    for (const auto& st : result.trajectory) {
      std::vector<CsvCell> row{st.tau};
      for (int mu = 0; mu < dim(); ++mu) row.emplace_back(st.position[mu]);
      for (int mu = 0; mu < dim(); ++mu) row.emplace_back(st.velocity[mu]);
      out.table.rows.push_back(std::move(row));
    }
    const GeodesicState& last = result.trajectory.back();
    out.results["states"] = result.trajectory.size();
    out.results["left_domain"] = result.left_domain;
    out.results["final_tau"] = last.tau;
    out.results["final_position"] = PointJson(last.position, dim());
    out.results["final_velocity"] = PointJson(last.velocity, dim());
    if (result.left_domain) {
      out.ok = false;
      out.message = "trajectory left the manifold at tau = " + FormatDouble(last.tau);
      return out;
    }
    const Path path = TrajectoryPath(result);
    out.results["scaled_length"] =
        ScaledPathLength(path, scenario.field, task.start.position, task.length_steps);
    if (task.variational) {
      const auto& v = *task.variational;
      const VariationalReport report =
          VariationalCheck(path, scenario.field, v.perturbations, v.amplitude, seed, v.options);
      out.results["variational"] = {{"perturbations", report.perturbations},
                                    {"evaluated", report.evaluated},
                                    {"not_shorter", report.not_shorter},
                                    {"fraction", report.fraction},
                                    {"reference_length", report.reference_length},
                                    {"min_length", report.min_length},
                                    {"min_excess", report.min_excess}};
      if (report.evaluated == 0 || report.not_shorter != report.evaluated) {
        out.ok = false;
        out.message = "variational check: " + std::to_string(report.evaluated - report.not_shorter) + " of " +
                      std::to_string(report.evaluated) + " perturbed paths are shorter";
      }
    }
    return out;
  }

  TaskOutcome operator()(const PathLengthTask& task) const {
    TaskOutcome out;
    const Path& path = scenario.paths.at(task.path);
    const Manifold& m = scenario.manifold;
    out.results["local_length"] = LocalPathLength(path, m, task.steps);
    out.results["scaled_length"] = ScaledPathLength(path, scenario.field, task.reference, task.steps);

    out.table.header = {"s"};
    for (const auto& h : AxisHeader("q", dim())) out.table.header.push_back(h);
    out.table.header.push_back("weight");
    out.table.header.push_back("speed");
    const double theta_ref = scenario.field.theta_at(task.reference);
    for (std::size_t i = 0; i < task.profile_points; ++i) {
      const double s = static_cast<double>(i) / static_cast<double>(task.profile_points - 1);
      const Point q = path.position(s);
      const Point t = path.tangent(s);
      double contraction = 0.0;
      for (int mu = 0; mu < dim(); ++mu) contraction += m.metric(mu) * t[mu] * t[mu];
      std::vector<CsvCell> row{s};
      for (int mu = 0; mu < dim(); ++mu) row.emplace_back(q[mu]);
      row.emplace_back(std::exp(scenario.field.theta_at(q) - theta_ref));
      row.emplace_back(std::sqrt(std::abs(contraction)));
      out.table.rows.push_back(std::move(row));
    }
    return out;
  }

  TaskOutcome operator()(const WavePacketTask& task) const {
    TaskOutcome out;
    const Manifold& m = scenario.manifold;
    const Manifold grid =
        m.dimension() == 3 ? m : Manifold(3, Signature::kEuclidean, {m.axis(1), m.axis(2), m.axis(3), Axis{}});
    const WavePacket psi = WavePacket::Gaussian(grid, task.center, task.sigma, task.momentum);
    const WavePacket first = ScaleWavePacket(psi, scenario.field, task.x0, Level(task.levels.front()));
    bool identical = true;
    for (std::size_t i = 1; i < task.levels.size(); ++i) {
      const WavePacket other = ScaleWavePacket(psi, scenario.field, task.x0, Level(task.levels[i]));
      identical = identical && other.amplitudes == first.amplitudes;
    }
    out.results["grid_points"] = grid.point_count();
    out.results["norm_squared"] = psi.norm_squared();
    out.results["scaled_norm_squared"] = first.norm_squared();
    out.results["levels"] = task.levels.size();
    out.results["levels_identical"] = identical;

    out.table.header = {"w1", "w2", "w3", "re", "im"};
    grid.for_each_point([&](const GridIndex& idx, const Point& w) {
      const std::complex<double> a = first.amplitudes[grid.flat_index(idx)];
      out.table.rows.push_back({w[0], w[1], w[2], a.real(), a.imag()});
    });
    if (!identical) {
      out.ok = false;
      out.message = "scaled packet depends on the level";
    }
    return out;
  }

  TaskOutcome operator()(const GaugeCheckTask& task) const {
    TaskOutcome out;
    const GaugeBlock& g = *scenario.gauge;
    const TransformedFields primed = ApplyTransform(scenario.field, g.config, *g.transform);
    const ScalarFieldSpec beta = g.transform->beta();

    out.table.header = AxisHeader("x", dim());
    out.table.header.push_back("mu");
    out.table.header.push_back("residual");
    double worst = 0.0;
    std::size_t points = 0;
    scenario.manifold.for_each_point([&](const GridIndex& idx, const Point& x) {
      if (!scenario.manifold.is_interior(idx)) return;
      ++points;
      const Covector r = InvarianceResiduals(scenario.field, g.config, primed, beta, x);
      for (int mu = 0; mu < dim(); ++mu) {
        std::vector<CsvCell> row;
        for (int nu = 0; nu < dim(); ++nu) row.emplace_back(x[nu]);
        row.emplace_back(std::int64_t{mu});
        row.emplace_back(r[mu]);
        out.table.rows.push_back(std::move(row));
        worst = std::max(worst, r[mu]);
      }
    });
    out.results["interior_points"] = points;
    out.results["max_residual"] = worst;
    out.results["tolerance"] = task.tolerance;
    if (!(worst <= task.tolerance)) {
      out.ok = false;
      out.message = "gauge residual " + FormatDouble(worst) + " exceeds " + FormatDouble(task.tolerance);
    }
    return out;
  }

  TaskOutcome operator()(const CompareTask& task) const {
    TaskOutcome out;
    const ComparisonReport report = CompareOutcomes(task.r, task.t, scenario.field, task.mode);
    out.results["mode"] = ComparisonModeName(report.mode);
    out.results["numbers_equal"] = report.numbers_equal;
    out.results["agrees"] = report.agrees();
    out.results["ratio"] = ComplexJson(report.ratio);
    out.results["transported"] = ComplexJson(report.transported);
    out.results["target"] = ComplexJson(report.target);
    out.results["mismatch"] = report.mismatch ? ComplexJson(*report.mismatch) : Json(nullptr);

    out.table.header = {"mode",         "numbers_equal", "agrees",    "ratio_re",    "ratio_im",   "transported_re",
                        "transported_im", "target_re",   "target_im", "mismatch_re", "mismatch_im"};
    std::vector<CsvCell> row{std::string(ComparisonModeName(report.mode)), std::int64_t{report.numbers_equal},
                             std::int64_t{report.agrees()}, report.ratio.real(), report.ratio.imag(),
                             report.transported.real(), report.transported.imag(), report.target.real(),
                             report.target.imag()};
    if (report.mismatch) {
      row.emplace_back(report.mismatch->real());
      row.emplace_back(report.mismatch->imag());
    } else {
      row.emplace_back(std::string());
      row.emplace_back(std::string());
    }
    out.table.rows.push_back(std::move(row));
    return out;
  }
};

std::string CsvName(std::size_t index, const std::string& name) {
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%02zu-", index + 1);
  return prefix + name + ".csv";
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return kExitParseError;
    case ErrorCode::kValidationError: return kExitValidationError;
    default: return kExitTaskFailure;
  }
}

std::filesystem::path ResolveOutputDir(const RunOptions& options, const Scenario& scenario,
                                       const std::filesystem::path& scenario_file) {
  if (options.out) return *options.out;
  if (const char* env = std::getenv("SCALEFIELD_OUT"); env != nullptr && *env != '\0') return env;
  if (scenario.output) {
    const std::filesystem::path p(*scenario.output);
    return p.is_absolute() ? p : scenario_file.parent_path() / p;
  }
  return "scalefield-out";
}

RunResult RunScenario(const std::filesystem::path& scenario_file, const RunOptions& options, std::ostream* log) {
  const Scenario scenario = LoadScenario(scenario_file, options.seed.has_value());
  const auto dir = ResolveOutputDir(options, scenario, scenario_file);
  return RunParsedScenario(scenario, dir, options.seed ? options.seed : scenario.seed,
                           options.verbose ? log : nullptr);
}

RunResult RunParsedScenario(const Scenario& scenario, const std::filesystem::path& output_dir,
                            std::optional<std::uint64_t> seed, std::ostream* log) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) Throw(ErrorCode::kIoError, "cannot create " + output_dir.string() + ": " + ec.message());

  RunResult run;
  run.output_dir = output_dir;
  Json tasks = Json::array();
  bool all_ok = true;
  const Executor exec{scenario, seed.value_or(0)};
  for (std::size_t i = 0; i < scenario.tasks.size(); ++i) {
    const Task& task = scenario.tasks[i];
    TaskOutcome outcome;
    try {
      outcome = std::visit(exec, task.params);
    } catch (const Error& e) {
      outcome.ok = false;
      outcome.message = e.what();
      outcome.table = {};
    }
    Json entry = Json::object();
    entry["name"] = task.name;
    entry["type"] = task.type;
    entry["status"] = outcome.ok ? "ok" : "failed";
    if (!outcome.message.empty()) entry["message"] = outcome.message;
    if (!outcome.table.header.empty()) {
      const std::string file = CsvName(i, task.name);
      EmitCsv(outcome.table, output_dir / file);
      entry["csv"] = file;
    } else {
      entry["csv"] = nullptr;
    }
    entry["parameters"] = task.parameters;
    entry["defaulted"] = task.defaulted;
    entry["results"] = outcome.results;
    tasks.push_back(std::move(entry));
    all_ok = all_ok && outcome.ok;
    if (log != nullptr) {
      *log << "[" << (i + 1) << "/" << scenario.tasks.size() << "] " << task.name << ": "
           << (outcome.ok ? "ok" : "FAILED " + outcome.message) << "\n";
    }
  }

  run.summary = Json::object();
  run.summary["status"] = all_ok ? "ok" : "failed";
  run.summary["seed"] = seed ? Json(*seed) : Json(nullptr);
  run.summary["setup"] = scenario.setup;
  run.summary["tasks"] = std::move(tasks);
  run.exit_code = all_ok ? kExitOk : kExitTaskFailure;

  const std::string text = run.summary.dump(2) + "\n";
  std::ofstream os(output_dir / "summary.json", std::ios::binary | std::ios::trunc);
  if (!os) Throw(ErrorCode::kIoError, "cannot write " + (output_dir / "summary.json").string());
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) Throw(ErrorCode::kIoError, "failed writing summary.json");
  return run;
}

}  // namespace scalefield
