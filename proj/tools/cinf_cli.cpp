// Command-line front end: one subcommand per experiment.
//
// Exit codes: 0 success, 1 unexpected failure, 2 bad config or arguments,
// 3 a hard check or run invariant failed.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cinf/error.hpp"
#include "cinf/experiments.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

json load_config(const std::string& path) {
  if (path.empty()) return json(nullptr);
  std::ifstream in(path);
  if (!in) throw cinf::ConfigError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw cinf::ConfigError(path + ": " + e.what());
  }
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

void write_outputs(const cinf::ExperimentReport& rep, const fs::path& dir) {
  fs::create_directories(dir);
  write_text(dir / "report.json", rep.to_json().dump(2) + "\n");
  write_text(dir / "manifest.json", rep.manifest().dump(2) + "\n");
  for (const cinf::Artifact& a : rep.artifacts) write_text(dir / a.file, a.content);
}

void print_summary(const cinf::ExperimentReport& rep) {
  std::cout << rep.experiment << ": " << (rep.passed() ? "ok" : "FAILED") << '\n';
  for (const cinf::Check& c : rep.checks) {
    std::cout << "  [" << (c.passed ? "pass" : (c.hard ? "FAIL" : "flag")) << "] " << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Impulsive-noise filtering experiments"};
  app.set_version_flag("--version", std::string(cinf::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  bool dump_stages = false;
  bool print_config = false;

  for (const std::string& name : cinf::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "Run the " + name + " experiment");
    sub->add_option("-c,--config", config_path, "JSON config overrides, or a previous report.json to rerun")
        ->check(CLI::ExistingFile);
    sub->add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("-s,--seed", seed, "Override the master seed");
    sub->add_flag("--dump-stages", dump_stages, "Also write intermediate signals");
    sub->add_flag("--print-config", print_config, "Print the resolved config and exit");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  const std::string experiment = app.get_subcommands().front()->get_name();
  try {
    const json config = load_config(config_path);
    if (print_config) {
      // Resolve defaults without running anything.
      json resolved;
      if (experiment == "bandwidth-sweep") resolved = cinf::parse_config<cinf::BandwidthSweepConfig>(config);
      else if (experiment == "caf-chirp") resolved = cinf::parse_config<cinf::ChirpScenarioConfig>(config);
      else if (experiment == "capacity-sweep") resolved = cinf::parse_config<cinf::CapacitySweepConfig>(config);
      else if (experiment == "delta-sigma") resolved = cinf::parse_config<cinf::DeltaSigmaDemoConfig>(config);
      else if (experiment == "clipping") resolved = cinf::parse_config<cinf::ClippingDemoConfig>(config);
      else resolved = cinf::parse_config<cinf::CucarachaDemoConfig>(config);
      std::cout << resolved.dump(2) << '\n';
      return 0;
    }
    cinf::RunOptions opt;
    opt.dump_stages = dump_stages;
    const cinf::ExperimentReport rep = cinf::run_named(experiment, config, seed, opt);
    write_outputs(rep, out_dir);
    print_summary(rep);
    return rep.passed() ? 0 : kExitInvariant;
  } catch (const cinf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cinf::InvalidArgument& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cinf::InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
