// Copyright 2026 The holosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <iostream>
#include <optional>

#include "holosim/sweeps.hpp"

namespace {

using namespace holosim;

struct SimulateArgs {
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  bool fast = false;
  std::string out = "results";
  std::string format = "csv";
  unsigned workers = 1;
  std::string config_path;
  std::optional<std::string> propagation;
  std::vector<std::string> overrides;
};

SweepConfig resolve_config(const SimulateArgs& args) {
  SweepConfig config;
  bool found = false;
  if (!args.config_path.empty()) {
    for (const auto& c : load_config_file(args.config_path)) {
      if (c.name == args.preset) {
        config = c;
        found = true;
      }
    }
  }
  if (!found) config = find_preset(args.preset);
  for (const auto& kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidArgument("--set expects key=value");
    apply_config_key(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (args.propagation) apply_config_key(config, "propagation", *args.propagation);
  if (args.seed) config.seed = *args.seed;
  if (args.samples) config.samples = *args.samples;
  config.validate();
  return config;
}

int simulate(const SimulateArgs& args) {
  const SweepConfig config = resolve_config(args);
  const OutputFormat format = parse_output_format(args.format);
  std::error_code ec;
  std::filesystem::create_directories(args.out, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", args.out, ec.message()));

  const auto csv_path = std::filesystem::path(args.out) / (config.name + ".csv");
  CsvWriter writer(csv_path);
  int failed = 0;
  SweepOptions options;
  options.fast = args.fast;
  options.workers = args.workers;
  options.on_row = [&](const ResultRow& row) {
    writer.append(row);
    if (row.failed) {
      ++failed;
      fmt::print(stderr, "{} = {:.6g}: FAILED ({})\n", axis_label(config), row.sweep_value,
                 row.message);
    } else {
      fmt::print(stderr, "{} = {:.6g}: max {:.6f} avg {:.6f} min {:.6f} [{:.2f} s]\n",
                 axis_label(config), row.sweep_value, row.f_max, row.f_avg, row.f_min,
                 row.wall_seconds);
    }
  };
  const std::vector<ResultRow> rows = run_sweep(config, options);
  fmt::print("wrote {}\n", csv_path.string());
  if (format == OutputFormat::kPlot) {
    const auto svg_path = std::filesystem::path(args.out) / (config.name + ".svg");
    std::ofstream svg(svg_path);
    if (!svg) throw IoError(fmt::format("cannot open '{}' for writing", svg_path.string()));
    svg << render_svg(rows, config.name, axis_label(config), config.log_axis());
    fmt::print("wrote {}\n", svg_path.string());
  }
  if (failed > 0) {
    fmt::print(stderr, "{} of {} points failed\n", failed, rows.size());
    return 2;
  }
  return 0;
}

int list_presets(bool verbose) {
  for (const auto& c : builtin_presets()) {
    if (verbose) {
      fmt::print("{}\n", format_config(c));
    } else {
      fmt::print("{:<24} {}\n", c.name, c.description);
    }
  }
  return 0;
}

int verify() {
  int failures = 0;
  for (const auto& r : run_invariant_suite()) {
    fmt::print("{} {}{}\n", r.passed ? "PASS" : "FAIL", r.name,
               r.detail.empty() ? "" : " (" + r.detail + ")");
    if (!r.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomic single-qubit gate simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a parameter sweep");
  simulate_cmd->add_option("--preset", sim.preset, "Preset or config section name")->required();
  simulate_cmd->add_option("--seed", sim.seed, "Seed of the Haar input sample");
  simulate_cmd->add_option("--samples", sim.samples, "Number of Haar input states");
  simulate_cmd->add_flag("--fast", sim.fast, "Use the trimmed grid");
  simulate_cmd->add_option("--out", sim.out, "Output directory");
  simulate_cmd->add_option("--format", sim.format, "csv or plot")
      ->check(CLI::IsMember({"csv", "plot"}));
  simulate_cmd->add_option("--workers", sim.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--config", sim.config_path, "Config file with sweep sections")
      ->check(CLI::ExistingFile);
  simulate_cmd->add_option("--propagation", sim.propagation, "per-state or process-basis")
      ->check(CLI::IsMember({"per-state", "process-basis"}));
  simulate_cmd->add_option("--set", sim.overrides, "Override a config key (key=value)");

  bool verbose = false;
  auto* list_cmd = app.add_subcommand("list-presets", "List built-in sweeps");
  list_cmd->add_flag("--verbose,-v", verbose, "Print every preset as a config section");

  app.add_subcommand("verify", "Run the invariant suite");

  CLI11_PARSE(app, argc, argv);
  try {
    if (simulate_cmd->parsed()) return simulate(sim);
    if (list_cmd->parsed()) return list_presets(verbose);
    return verify();
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
}
