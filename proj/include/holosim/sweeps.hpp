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

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "holosim/fidelity.hpp"
#include "holosim/gates.hpp"

namespace holosim {

enum class ErrorModel { kNone, kDecay, kDephasing, kMeanDetuning, kRelativeDetuning, kFieldError };

/// What the sweep value means.
enum class SweepAxis {
  /// β in units of the error rate (non-adiabatic).
  kBetaRatio,
  /// ΩT with Ω fixed at `coupling`; T varies.
  kFixedCoupling,
  /// ΩT with T fixed at `run_time`; Ω varies.
  kFixedRunTime,
  /// Pulse-area deviation δa of a field error (non-adiabatic, unit β).
  kAreaError,
};

std::string_view error_model_name(ErrorModel model);
ErrorModel parse_error_model(std::string_view name);
std::string_view sweep_axis_name(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view name);

struct GridSpec {
  double start = 1.0;
  double stop = 1.0;
  std::size_t points = 1;
  bool log = false;

  std::vector<double> values() const;
};

enum class FrameOrigin {
  /// Preparation time (start of the simulated interval).
  kPreparation,
  /// t = 0: centre of the first pulse, or the start of the first loop.
  kZero,
};

/// One sweep. Times and rates are dimensionless: the error rate is 1 (or Ω
/// is 1 when there is no error), so `separation` is rate·t_s, `coupling` is
/// Ω0/rate and `run_time` is rate·T0.
struct SweepConfig {
  std::string name;
  std::string description;
  Scheme scheme = Scheme::kNonAdiabatic;
  GatePreset gate = GatePreset::kHadamard;
  ErrorModel error = ErrorModel::kNone;
  SweepAxis axis = SweepAxis::kBetaRatio;
  GridSpec grid;
  /// Grid points used by --fast.
  std::size_t fast_points = 8;

  double separation = std::numeric_limits<double>::quiet_NaN();
  double coupling = std::numeric_limits<double>::quiet_NaN();
  double run_time = std::numeric_limits<double>::quiet_NaN();
  /// β for sweeps that do not vary it.
  double beta = std::numeric_limits<double>::quiet_NaN();

  std::size_t samples = 4000;
  std::uint64_t seed = 20110301;
  IntegratorConfig integrator{1e-10, 1e-12};
  PropagationMode propagation = PropagationMode::kProcessBasis;
  LoopTiming loop_timing = LoopTiming::kTotalByLength;
  FrameOrigin frame_origin = FrameOrigin::kPreparation;
  double prep_offset = 0.0;
  double readout_offset = 0.0;
  double truncation_ratio = kDefaultTruncationRatio;
  bool renormalize_area = false;
  bool refine_extrema = true;

  /// Throws InvalidArgument for an empty or non-monotone grid, or when a
  /// constant needed by the scheme/axis combination is missing.
  void validate() const;
  /// Grid values, trimmed to `fast_points` when fast is set.
  std::vector<double> grid_values(bool fast) const;
  bool log_axis() const { return grid.log; }
};

/// Every panel family: fig3 (no error), fig4 (decay), fig5 (dephasing),
/// fig6 (mean detuning) and fig7 (relative detuning), plus a field-error
/// sweep.
const std::vector<SweepConfig>& builtin_presets();
/// Throws InvalidArgument for an unknown name.
const SweepConfig& find_preset(std::string_view name);

/// Model, channels and target at one sweep value.
struct SweepPoint {
  SystemModel model;
  std::vector<Channel> channels;
  GateTarget target;
};

SweepPoint build_point(const SweepConfig& config, double value);

struct ResultRow {
  double sweep_value = 0.0;
  double f_max = 0.0;
  double f_avg = 0.0;
  double f_min = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  long steps = 0;
  long rejects = 0;
  double wall_seconds = 0.0;
  bool failed = false;
  std::string message;
};

struct SweepOptions {
  bool fast = false;
  unsigned workers = 1;
  /// Called in grid order as rows complete.
  std::function<void(const ResultRow&)> on_row;
};

/// One row per grid point, in grid order. A point that fails to integrate
/// yields a row with `failed` set and NaN fidelities; the sweep continues.
std::vector<ResultRow> run_sweep(const SweepConfig& config, const SweepOptions& options = {});

inline constexpr std::string_view kCsvHeader =
    "sweep_value,f_max,f_avg,f_min,samples,seed,steps,rejects";

std::string csv_line(const ResultRow& row);

/// Appends rows to a CSV file as they arrive. Throws IoError when the file
/// cannot be written.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);
  void append(const ResultRow& row);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

enum class OutputFormat { kCsv, kPlot };
OutputFormat parse_output_format(std::string_view name);

/// Line chart of max (red), avg (black) and min (blue) against the sweep value.
std::string render_svg(const std::vector<ResultRow>& rows, const std::string& title,
                       const std::string& x_label, bool log_x);

/// Writes `<dir>/<name>.csv`, plus `<dir>/<name>.svg` for the plot format.
/// Throws InvalidArgument for empty rows and IoError for unwritable paths.
std::vector<std::filesystem::path> emit_results(const std::vector<ResultRow>& rows,
                                                const SweepConfig& config, OutputFormat format,
                                                const std::filesystem::path& dir);

/// Label of the sweep value, e.g. "beta/gamma" or "Omega T".
std::string axis_label(const SweepConfig& config);

// ---------------------------------------------------------------------------
// Config files: `[name]` sections of `key = value` lines, `#` comments.
// A section starts from the preset named by `base` (or from defaults).

using ConfigSection = std::vector<std::pair<std::string, std::string>>;

/// Sets one key; throws InvalidArgument for unknown keys or bad values.
void apply_config_key(SweepConfig& config, const std::string& key, const std::string& value);
/// Parses a config file into named sweeps, in file order.
std::vector<SweepConfig> load_config_file(const std::filesystem::path& path);
std::vector<SweepConfig> parse_config_text(const std::string& text);
/// Sweep as a config section; parse_config_text round-trips it.
std::string format_config(const SweepConfig& config);

// ---------------------------------------------------------------------------
// Invariant suite behind the `verify` command.

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_invariant_suite();

}  // namespace holosim
