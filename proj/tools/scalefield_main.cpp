#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "scalefield/error.hpp"
#include "scalefield/runner.hpp"
#include "scalefield/scaled_arithmetic.hpp"
#include "scalefield/scenario.hpp"

namespace sf = scalefield;

namespace {

int RunCommand(const std::string& file, const std::string& out, const std::optional<std::uint64_t>& seed,
               bool verbose) {
  sf::RunOptions options;
  if (!out.empty()) options.out = out;
  options.seed = seed;
  options.verbose = verbose;
  const sf::RunResult result = sf::RunScenario(file, options, &std::cerr);
  if (verbose) std::cerr << "wrote " << result.output_dir.string() << "\n";
  if (result.exit_code != sf::kExitOk) {
    for (const auto& task : result.summary["tasks"]) {
      if (task["status"] != "ok") {
        std::cerr << "task " << task["name"].get<std::string>() << " failed: "
                  << task.value("message", std::string()) << "\n";
      }
    }
  }
  return result.exit_code;
}

int AxiomsCommand(const std::string& kind_name, const std::string& t, const std::string& s, std::size_t samples,
                  std::uint64_t seed, const std::string& convention) {
  const auto kind = sf::ParseNumberKind(kind_name);
  if (!kind) sf::Throw(sf::ErrorCode::kParseError, "unknown number kind '" + kind_name + "'");
  sf::Convention conv = sf::Convention::kAxiomConsistent;
  if (convention == "uniform-factor") {
    conv = sf::Convention::kUniformFactor;
  } else if (convention != "axiom-consistent") {
    sf::Throw(sf::ErrorCode::kValidationError, "unknown convention '" + convention + "'");
  }
  const sf::ScaledStructure structure(*kind, sf::ScalingFactor::Parse(t), sf::ScalingFactor::Parse(s));
  const sf::AxiomReport report = sf::AxiomSuite(structure, samples, seed, conv);
  for (const auto& a : report.axioms) {
    std::cout << (a.applicable ? (a.passed ? "PASS " : "FAIL ") : "n/a  ") << a.name;
    if (a.applicable) std::cout << " (" << a.checked << " checks)";
    if (!a.passed) std::cout << "  counterexample: " << a.counterexample;
    std::cout << "\n";
  }
  return report.all_passed() ? sf::kExitOk : sf::kExitTaskFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scaled number structures and scaling fields"};
  app.require_subcommand(1);

  std::string scenario_file;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
  auto* run = app.add_subcommand("run", "Run a scenario and write CSV and summary.json");
  run->add_option("scenario", scenario_file, "Scenario JSON file")->required();
  run->add_option("--out", out, "Output directory");
  run->add_option("--seed", seed, "Seed overriding the scenario seed");
  run->add_flag("--verbose,-v", verbose, "Report progress on stderr");

  std::string kind = "rational";
  std::string t = "1";
  std::string s = "1";
  std::size_t samples = 100;
  std::uint64_t axiom_seed = 1;
  std::string convention = "axiom-consistent";
  auto* axioms = app.add_subcommand("axioms", "Check the axioms of a scaled structure");
  axioms->add_option("--kind", kind, "natural | rational | real | complex")->capture_default_str();
  axioms->add_option("--t", t, "Scaling factor t, e.g. 3/2 or 1:2 for 1+2i")->capture_default_str();
  axioms->add_option("--s", s, "Level s")->capture_default_str();
  axioms->add_option("--samples", samples, "Random samples per axiom")->capture_default_str();
  axioms->add_option("--seed", axiom_seed, "Random seed")->capture_default_str();
  axioms->add_option("--convention", convention, "axiom-consistent | uniform-factor")->capture_default_str();

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Parse and validate a scenario without running it");
  validate->add_option("scenario", validate_file, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sf::kExitParseError;
  }

  try {
    if (*run) return RunCommand(scenario_file, out, seed, verbose);
    if (*axioms) return AxiomsCommand(kind, t, s, samples, axiom_seed, convention);
    if (*validate) {
      const sf::Scenario scenario = sf::LoadScenario(validate_file, false);
      std::cout << "ok: " << scenario.tasks.size() << " task(s)\n";
      return sf::kExitOk;
    }
  } catch (const sf::Error& e) {
    std::cerr << "scalefield: " << e.what() << "\n";
    return sf::ExitCodeFor(e.code());
  }
  return sf::kExitOk;
}
