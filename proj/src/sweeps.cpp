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

#include "holosim/sweeps.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

namespace holosim {

namespace {

template <typename Enum, std::size_t N>
Enum parse_named(std::string_view name, const std::array<std::pair<std::string_view, Enum>, N>& table,
                 const char* what) {
  for (const auto& [key, value] : table) {
    if (key == name) return value;
  }
  throw InvalidArgument(fmt::format("unknown {} '{}'", what, name));
}

template <typename Enum, std::size_t N>
std::string_view name_of(Enum value, const std::array<std::pair<std::string_view, Enum>, N>& table) {
  for (const auto& [key, v] : table) {
    if (v == value) return key;
  }
  return "?";
}

constexpr std::array<std::pair<std::string_view, ErrorModel>, 6> kErrorNames{{
    {"none", ErrorModel::kNone},
    {"decay", ErrorModel::kDecay},
    {"dephasing", ErrorModel::kDephasing},
    {"mean-detuning", ErrorModel::kMeanDetuning},
    {"relative-detuning", ErrorModel::kRelativeDetuning},
    {"field-error", ErrorModel::kFieldError},
}};

constexpr std::array<std::pair<std::string_view, SweepAxis>, 4> kAxisNames{{
    {"beta-ratio", SweepAxis::kBetaRatio},
    {"fixed-coupling", SweepAxis::kFixedCoupling},
    {"fixed-run-time", SweepAxis::kFixedRunTime},
    {"area-error", SweepAxis::kAreaError},
}};

bool present(double x) { return std::isfinite(x); }

}  // namespace

std::string_view error_model_name(ErrorModel model) { return name_of(model, kErrorNames); }
ErrorModel parse_error_model(std::string_view name) {
  return parse_named(name, kErrorNames, "error model");
}
std::string_view sweep_axis_name(SweepAxis axis) { return name_of(axis, kAxisNames); }
SweepAxis parse_sweep_axis(std::string_view name) {
  return parse_named(name, kAxisNames, "sweep axis");
}

std::vector<double> GridSpec::values() const {
  std::vector<double> out;
  if (points == 0) return out;
  if (points == 1) return {start};
  for (std::size_t i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(points - 1);
    out.push_back(log ? start * std::pow(stop / start, u) : start + u * (stop - start));
  }
  out.back() = stop;
  return out;
}

void SweepConfig::validate() const {
  if (grid.points == 0) throw InvalidArgument("sweep grid is empty");
  if (!std::isfinite(grid.start) || !std::isfinite(grid.stop)) {
    throw InvalidArgument("sweep grid bounds must be finite");
  }
  if (grid.points > 1 && !(grid.stop > grid.start)) {
    throw InvalidArgument("sweep grid must be strictly increasing");
  }
  if (grid.log && !(grid.start > 0)) throw InvalidArgument("log grid needs a positive start");
  if (samples == 0) throw InvalidArgument("sample count must be positive");
  integrator.validate();

  const auto require = [&](double x, const char* key) {
    if (!present(x) || !(x > 0)) {
      throw InvalidArgument(fmt::format("sweep '{}' needs a positive '{}'", name, key));
    }
  };
  if (scheme == Scheme::kNonAdiabatic) {
    if (axis == SweepAxis::kBetaRatio) {
      if (!(grid.start > 0)) throw InvalidArgument("beta grid must be positive");
      if (gate == GatePreset::kPhasePi2) require(separation, "separation");
    } else if (axis == SweepAxis::kAreaError) {
      require(beta, "beta");
      if (gate == GatePreset::kPhasePi2) require(separation, "separation");
    } else {
      throw InvalidArgument("non-adiabatic sweeps use the beta-ratio or area-error axis");
    }
    if (error == ErrorModel::kFieldError && axis != SweepAxis::kAreaError) {
      throw InvalidArgument("field-error sweeps use the area-error axis");
    }
  } else {
    if (axis == SweepAxis::kFixedCoupling) {
      require(coupling, "coupling");
    } else if (axis == SweepAxis::kFixedRunTime) {
      require(run_time, "run_time");
    } else {
      throw InvalidArgument("adiabatic sweeps use the fixed-coupling or fixed-run-time axis");
    }
    if (!(grid.start > 0)) throw InvalidArgument("Omega T grid must be positive");
    if (error == ErrorModel::kFieldError) {
      throw InvalidArgument("field errors apply to the non-adiabatic scheme only");
    }
  }
}

std::vector<double> SweepConfig::grid_values(bool fast) const {
  if (!fast || fast_points >= grid.points) return grid.values();
  GridSpec trimmed = grid;
  trimmed.points = std::max<std::size_t>(fast_points, 1);
  return trimmed.values();
}

// ---------------------------------------------------------------------------
// Presets

namespace {

struct FigureConstants {
  int figure;
  ErrorModel error;
  double separation;
  double coupling;
  double run_time_phase;
  double run_time_hadamard;
  GridSpec na_grid;
  GridSpec a_omega_grid;
  GridSpec a_time_grid;
  std::string_view rate;
};

std::string_view gate_label(GatePreset gate) {
  return gate == GatePreset::kPhasePi2 ? "phase" : "hadamard";
}

std::vector<SweepConfig> make_presets() {
  std::vector<SweepConfig> out;
  for (GatePreset gate : {GatePreset::kPhasePi2, GatePreset::kHadamard}) {
    SweepConfig c;
    c.name = fmt::format("fig3-a-{}", gate_label(gate));
    c.description = "adiabatic gate without errors versus Omega T";
    c.scheme = Scheme::kAdiabatic;
    c.gate = gate;
    c.error = ErrorModel::kNone;
    c.axis = SweepAxis::kFixedCoupling;
    c.coupling = 1.0;
    c.grid = {1.0, 200.0, 400, false};
    c.fast_points = 40;
    out.push_back(c);
  }

  const std::array<FigureConstants, 4> figures{{
      {4, ErrorModel::kDecay, 8.0, 12.5, 8.0, 32.0, {2.0, 2000.0, 200, true},
       {1.0, 3000.0, 400, false}, {1.0, 3000.0, 400, false}, "gamma"},
      {5, ErrorModel::kDephasing, 0.128, 78.125, 0.16, 0.32, {125.0, 1e5, 200, true},
       {1.0, 200.0, 400, false}, {1.0, 3000.0, 400, false}, "epsilon"},
      {6, ErrorModel::kMeanDetuning, 80.0, 6.25, 16.0, 64.0, {0.2, 1000.0, 200, true},
       {1.0, 3000.0, 400, false}, {1.0, 3000.0, 400, false}, "Delta"},
      {7, ErrorModel::kRelativeDetuning, 16.0, 6.25, 2.0, 64.0, {1.0, 1000.0, 200, true},
       {1.0, 1000.0, 400, false}, {1.0, 3000.0, 400, false}, "delta"},
  }};
  for (const auto& f : figures) {
    for (GatePreset gate : {GatePreset::kPhasePi2, GatePreset::kHadamard}) {
      SweepConfig base;
      base.gate = gate;
      base.error = f.error;
      base.separation = f.separation;
      base.coupling = f.coupling;
      base.run_time =
          gate == GatePreset::kPhasePi2 ? f.run_time_phase : f.run_time_hadamard;

      SweepConfig na = base;
      na.name = fmt::format("fig{}-na-{}", f.figure, gate_label(gate));
      na.description = fmt::format("non-adiabatic gate, {} error, versus beta/{}",
                                   error_model_name(f.error), f.rate);
      na.scheme = Scheme::kNonAdiabatic;
      na.axis = SweepAxis::kBetaRatio;
      na.grid = f.na_grid;
      na.fast_points = 12;
      out.push_back(na);

      SweepConfig omega = base;
      omega.name = fmt::format("fig{}-a-omega-{}", f.figure, gate_label(gate));
      omega.description = fmt::format("adiabatic gate, {} error, fixed Omega0/{} = {}",
                                      error_model_name(f.error), f.rate, f.coupling);
      omega.scheme = Scheme::kAdiabatic;
      omega.axis = SweepAxis::kFixedCoupling;
      omega.grid = f.a_omega_grid;
      omega.fast_points = 40;
      out.push_back(omega);

      SweepConfig time = base;
      time.name = fmt::format("fig{}-a-time-{}", f.figure, gate_label(gate));
      time.description = fmt::format("adiabatic gate, {} error, fixed {} T0 = {}",
                                     error_model_name(f.error), f.rate, base.run_time);
      time.scheme = Scheme::kAdiabatic;
      time.axis = SweepAxis::kFixedRunTime;
      time.grid = f.a_time_grid;
      time.fast_points = 40;
      out.push_back(time);
    }
  }

  SweepConfig pert;
  pert.name = "pert-na-hadamard";
  pert.description = "non-adiabatic Hadamard with a pulse-area error";
  pert.scheme = Scheme::kNonAdiabatic;
  pert.gate = GatePreset::kHadamard;
  pert.error = ErrorModel::kFieldError;
  pert.axis = SweepAxis::kAreaError;
  pert.beta = 1.0;
  pert.grid = {0.0, 0.5, 51, false};
  pert.fast_points = 6;
  out.push_back(pert);

  for (const auto& c : out) c.validate();
  return out;
}

}  // namespace

const std::vector<SweepConfig>& builtin_presets() {
  static const std::vector<SweepConfig> presets = make_presets();
  return presets;
}

const SweepConfig& find_preset(std::string_view name) {
  for (const auto& c : builtin_presets()) {
    if (c.name == name) return c;
  }
  throw InvalidArgument(fmt::format("unknown preset '{}'", name));
}

// ---------------------------------------------------------------------------
// Running

SweepPoint build_point(const SweepConfig& config, double value) {
  const GateTarget target = gate_target(config.gate);
  if (config.scheme == Scheme::kNonAdiabatic) {
    NonAdiabaticTiming timing;
    timing.beta = config.axis == SweepAxis::kBetaRatio ? value : config.beta;
    timing.separation = present(config.separation) ? config.separation : 0.0;
    timing.prep_offset = config.prep_offset;
    timing.readout_offset = config.readout_offset;
    timing.truncation_ratio = config.truncation_ratio;
    timing.renormalize_area = config.renormalize_area;
    PulseSchedule schedule = compile_nonadiabatic(config.gate, timing);

    double delta0 = 0.0, delta1 = 0.0;
    std::optional<FieldError> field;
    if (config.error == ErrorModel::kMeanDetuning) delta0 = delta1 = 1.0;
    if (config.error == ErrorModel::kRelativeDetuning) delta1 = 1.0;
    if (config.error == ErrorModel::kFieldError) field = FieldError{{}, {}, kPi + value};
    SystemModel model = LambdaModel(std::move(schedule), delta0, delta1, field);
    std::vector<Channel> channels;
    if (config.error == ErrorModel::kDecay) channels.push_back(decay_channel(model, 1.0));
    if (config.error == ErrorModel::kDephasing) channels.push_back(dephasing_channel(model, 1.0));
    return {std::move(model), std::move(channels), target};
  }

  double coupling = 0.0, run_time = 0.0;
  if (config.axis == SweepAxis::kFixedCoupling) {
    coupling = config.coupling;
    run_time = value / coupling;
  } else {
    run_time = config.run_time;
    coupling = value / run_time;
  }
  TripodDetunings detunings;
  if (config.error == ErrorModel::kMeanDetuning) {
    detunings = {1.0, 1.0, 1.0};
  } else if (config.error == ErrorModel::kRelativeDetuning) {
    detunings = {0.0, 1.0, 0.0};
  }
  SystemModel model =
      compile_adiabatic(config.gate, coupling, run_time, config.loop_timing, detunings);
  std::vector<Channel> channels;
  if (config.error == ErrorModel::kDecay) channels.push_back(decay_channel(model, 1.0));
  if (config.error == ErrorModel::kDephasing) channels.push_back(dephasing_channel(model, 1.0));
  return {std::move(model), std::move(channels), target};
}

namespace {

ResultRow evaluate_point(const SweepConfig& config, double value,
                         const std::vector<QubitState>& sample) {
  const auto start = std::chrono::steady_clock::now();
  ResultRow row;
  row.sweep_value = value;
  row.samples = sample.size();
  row.seed = config.seed;
  try {
    const SweepPoint point = build_point(config, value);
    FidelityOptions options;
    options.integrator = config.integrator;
    options.mode = config.propagation;
    options.workers = 1;
    options.refine_extrema = config.refine_extrema;
    options.seed = config.seed;
    if (config.frame_origin == FrameOrigin::kZero) options.frame_origin = 0.0;
    const FidelityStats stats =
        fidelity_stats(point.model, point.channels, point.target, sample, options);
    row.f_max = stats.max;
    row.f_avg = stats.avg;
    row.f_min = stats.min;
    row.steps = stats.integration.accepted_steps;
    row.rejects = stats.integration.rejected_steps;
  } catch (const IntegrationFailure& e) {
    row.failed = true;
    row.message = e.what();
    row.steps = e.diagnostics().accepted_steps;
    row.rejects = e.diagnostics().rejected_steps;
  } catch (const NumericalInstability& e) {
    row.failed = true;
    row.message = e.what();
  }
  if (row.failed) row.f_max = row.f_avg = row.f_min = std::numeric_limits<double>::quiet_NaN();
  row.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

std::vector<ResultRow> run_sweep(const SweepConfig& config, const SweepOptions& options) {
  config.validate();
  const std::vector<double> grid = config.grid_values(options.fast);
  const std::vector<QubitState> sample = haar_qubit_sample(config.samples, config.seed);

  std::vector<ResultRow> rows(grid.size());
  std::vector<bool> done(grid.size(), false);
  std::size_t emitted = 0;
  std::mutex mutex;
  const auto finish = [&](std::size_t i, ResultRow row) {
    std::lock_guard lock(mutex);
    rows[i] = std::move(row);
    done[i] = true;
    while (emitted < rows.size() && done[emitted]) {
      if (options.on_row) options.on_row(rows[emitted]);
      ++emitted;
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(grid.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  const auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        finish(i, evaluate_point(config, grid[i], sample));
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
        next = grid.size();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

// ---------------------------------------------------------------------------
// Output

std::string csv_line(const ResultRow& row) {
  return fmt::format("{:.15g},{:.15g},{:.15g},{:.15g},{},{},{},{}", row.sweep_value, row.f_max,
                     row.f_avg, row.f_min, row.samples, row.seed, row.steps, row.rejects);
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : path_(path), out_(path) {
  if (!out_) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out_ << kCsvHeader << '\n';
  out_.flush();
}

void CsvWriter::append(const ResultRow& row) {
  out_ << csv_line(row) << '\n';
  out_.flush();
  if (!out_) throw IoError(fmt::format("write to '{}' failed", path_.string()));
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "plot") return OutputFormat::kPlot;
  throw InvalidArgument(fmt::format("unknown output format '{}'", name));
}

std::string axis_label(const SweepConfig& config) {
  static const std::map<ErrorModel, std::string> rate{
      {ErrorModel::kNone, "Omega"},       {ErrorModel::kDecay, "gamma"},
      {ErrorModel::kDephasing, "epsilon"}, {ErrorModel::kMeanDetuning, "Delta"},
      {ErrorModel::kRelativeDetuning, "delta"}, {ErrorModel::kFieldError, "beta"}};
  switch (config.axis) {
    case SweepAxis::kBetaRatio:
      return "beta/" + rate.at(config.error);
    case SweepAxis::kFixedCoupling:
      return "Omega0 T";
    case SweepAxis::kFixedRunTime:
      return "Omega T0";
    case SweepAxis::kAreaError:
      return "pulse area - pi";
  }
  return "value";
}

std::vector<std::filesystem::path> emit_results(const std::vector<ResultRow>& rows,
                                                const SweepConfig& config, OutputFormat format,
                                                const std::filesystem::path& dir) {
  if (rows.empty()) throw InvalidArgument("no result rows to emit");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));

  std::vector<std::filesystem::path> written;
  const auto csv_path = dir / (config.name + ".csv");
  {
    CsvWriter writer(csv_path);
    for (const auto& row : rows) writer.append(row);
  }
  written.push_back(csv_path);
  if (format == OutputFormat::kPlot) {
    const auto svg_path = dir / (config.name + ".svg");
    std::ofstream svg(svg_path);
    if (!svg) throw IoError(fmt::format("cannot open '{}' for writing", svg_path.string()));
    svg << render_svg(rows, config.name, axis_label(config), config.log_axis());
    if (!svg) throw IoError(fmt::format("write to '{}' failed", svg_path.string()));
    written.push_back(svg_path);
  }
  return written;
}

}  // namespace holosim
