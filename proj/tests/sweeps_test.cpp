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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "holosim/sweeps.hpp"

namespace holosim {
namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("holosim_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string fmt_name(int fig, const char* kind, const char* gate) {
  return "fig" + std::to_string(fig) + "-" + kind + "-" + gate;
}

SweepConfig small(const std::string& preset, std::size_t samples = 8) {
  SweepConfig c = find_preset(preset);
  c.samples = samples;
  c.fast_points = 3;
  return c;
}

TEST(Presets, EveryFamilyIsPresent) {
  for (int fig : {4, 5, 6, 7}) {
    for (const char* gate : {"phase", "hadamard"}) {
      for (const char* kind : {"na", "a-omega", "a-time"}) {
        EXPECT_NO_THROW(find_preset(fmt_name(fig, kind, gate)));
      }
    }
  }
  EXPECT_NO_THROW(find_preset("fig3-a-phase"));
  EXPECT_NO_THROW(find_preset("fig3-a-hadamard"));
  EXPECT_THROW(find_preset("fig9-na-phase"), InvalidArgument);
}

TEST(Presets, CarryFixedConstants) {
  EXPECT_EQ(find_preset("fig4-na-phase").separation, 8.0);
  EXPECT_EQ(find_preset("fig4-a-omega-hadamard").coupling, 12.5);
  EXPECT_EQ(find_preset("fig4-a-time-phase").run_time, 8.0);
  EXPECT_EQ(find_preset("fig4-a-time-hadamard").run_time, 32.0);
  EXPECT_EQ(find_preset("fig5-na-phase").separation, 0.128);
  EXPECT_EQ(find_preset("fig5-a-omega-phase").coupling, 78.125);
  EXPECT_EQ(find_preset("fig5-a-time-phase").run_time, 0.16);
  EXPECT_EQ(find_preset("fig5-a-time-hadamard").run_time, 0.32);
  EXPECT_EQ(find_preset("fig6-na-phase").separation, 80.0);
  EXPECT_EQ(find_preset("fig6-a-omega-phase").coupling, 6.25);
  EXPECT_EQ(find_preset("fig6-a-time-phase").run_time, 16.0);
  EXPECT_EQ(find_preset("fig6-a-time-hadamard").run_time, 64.0);
  EXPECT_EQ(find_preset("fig7-na-phase").separation, 16.0);
  EXPECT_EQ(find_preset("fig7-a-omega-hadamard").coupling, 6.25);
  EXPECT_EQ(find_preset("fig7-a-time-phase").run_time, 2.0);
  EXPECT_EQ(find_preset("fig7-a-time-hadamard").run_time, 64.0);
  for (const auto& c : builtin_presets()) EXPECT_NO_THROW(c.validate()) << c.name;
}

TEST(Presets, DetuningAssignments) {
  const SweepPoint na = build_point(find_preset("fig7-na-hadamard"), 10.0);
  const auto& lambda = std::get<LambdaModel>(na.model);
  EXPECT_EQ(lambda.delta0(), 0.0);
  EXPECT_EQ(lambda.delta1(), 1.0);

  const SweepPoint a = build_point(find_preset("fig7-a-omega-phase"), 50.0);
  const auto& tripod = std::get<TripodModel>(a.model);
  EXPECT_EQ(tripod.delta0(), 0.0);
  EXPECT_EQ(tripod.delta1(), 1.0);
  EXPECT_EQ(tripod.delta_aux(), 0.0);

  const SweepPoint mean = build_point(find_preset("fig6-a-time-hadamard"), 100.0);
  const auto& t6 = std::get<TripodModel>(mean.model);
  EXPECT_EQ(t6.delta0(), 1.0);
  EXPECT_EQ(t6.delta1(), 1.0);
  EXPECT_EQ(t6.delta_aux(), 1.0);
  EXPECT_NEAR(t6.coupling() * t6.run_time(), 100.0, 1e-12);
  EXPECT_EQ(t6.run_time(), 64.0);
}

TEST(Presets, ErrorChannelsPerFamily) {
  const SweepPoint decay = build_point(find_preset("fig4-na-phase"), 50.0);
  ASSERT_EQ(decay.channels.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<DecayChannel>(decay.channels[0]));
  const SweepPoint deph = build_point(find_preset("fig5-a-omega-hadamard"), 20.0);
  ASSERT_EQ(deph.channels.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<DephasingChannel>(deph.channels[0]));
  EXPECT_TRUE(build_point(find_preset("fig3-a-phase"), 20.0).channels.empty());
}

TEST(Presets, DephasingRunBoundedBySupports) {
  const SweepPoint p = build_point(find_preset("fig5-na-hadamard"), 1000.0);
  const auto& s = std::get<LambdaModel>(p.model).schedule();
  const Interval sup = envelope_support(s.pairs.front().envelope);
  EXPECT_DOUBLE_EQ(s.prep_time, sup.start);
  EXPECT_DOUBLE_EQ(s.readout_time, sup.end);
}

TEST(SweepConfig, ValidationCatchesMissingConstants) {
  SweepConfig c = find_preset("fig4-na-phase");
  c.separation = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(c.validate(), InvalidArgument);

  c = find_preset("fig4-a-time-phase");
  c.run_time = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(c.validate(), InvalidArgument);

  c = find_preset("fig4-na-phase");
  c.grid.points = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);

  c = find_preset("fig4-na-phase");
  c.grid.stop = c.grid.start / 2;
  EXPECT_THROW(c.validate(), InvalidArgument);

  c = find_preset("fig4-na-phase");
  c.samples = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(GridSpec, LogAndLinearValues) {
  const auto log = GridSpec{2.0, 2000.0, 4, true}.values();
  ASSERT_EQ(log.size(), 4u);
  EXPECT_DOUBLE_EQ(log[0], 2.0);
  EXPECT_NEAR(log[1], 20.0, 1e-12);
  EXPECT_NEAR(log[2], 200.0, 1e-10);
  EXPECT_EQ(log[3], 2000.0);
  const auto lin = GridSpec{1.0, 3.0, 5, false}.values();
  EXPECT_EQ(lin, (std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0}));
  const auto preset_grid = find_preset("fig7-a-omega-phase").grid.values();
  EXPECT_TRUE(std::is_sorted(preset_grid.begin(), preset_grid.end()));
}

TEST(SweepConfig, FastModeTrimsGrid) {
  const SweepConfig& c = find_preset("fig4-na-hadamard");
  EXPECT_EQ(c.grid_values(false).size(), 200u);
  EXPECT_EQ(c.grid_values(true).size(), c.fast_points);
  EXPECT_EQ(c.grid_values(true).front(), c.grid.start);
  EXPECT_EQ(c.grid_values(true).back(), c.grid.stop);
}

TEST(RunSweep, SinglePointIdealHadamard) {
  SweepConfig c;
  c.name = "single";
  c.scheme = Scheme::kNonAdiabatic;
  c.gate = GatePreset::kHadamard;
  c.error = ErrorModel::kNone;
  c.axis = SweepAxis::kBetaRatio;
  c.grid = {5.0, 5.0, 1, false};
  c.samples = 32;
  const auto rows = run_sweep(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_GE(rows[0].f_avg, 1.0 - 1e-5);
  EXPECT_FALSE(rows[0].failed);
}

TEST(RunSweep, RowsArriveInGridOrder) {
  const SweepConfig c = small("fig7-a-omega-phase");
  std::vector<double> seen;
  const auto rows =
      run_sweep(c, {.fast = true, .workers = 3, .on_row = [&](const ResultRow& r) {
                      seen.push_back(r.sweep_value);
                    }});
  EXPECT_EQ(seen, c.grid_values(true));
  for (const auto& r : rows) {
    EXPECT_LE(r.f_min, r.f_avg);
    EXPECT_LE(r.f_avg, r.f_max);
    EXPECT_EQ(r.samples, 8u);
    EXPECT_EQ(r.seed, c.seed);
    EXPECT_GT(r.steps, 0);
  }
}

TEST(RunSweep, DeterministicAcrossRerunsAndWorkers) {
  const SweepConfig c = small("fig4-na-phase");
  const auto csv = [](const std::vector<ResultRow>& rows) {
    std::string s;
    for (const auto& r : rows) s += csv_line(r) + "\n";
    return s;
  };
  const std::string a = csv(run_sweep(c, {.fast = true, .workers = 1, .on_row = {}}));
  const std::string b = csv(run_sweep(c, {.fast = true, .workers = 1, .on_row = {}}));
  const std::string d = csv(run_sweep(c, {.fast = true, .workers = 2, .on_row = {}}));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, d);
}

TEST(RunSweep, FailedPointsAreFlaggedAndSweepContinues) {
  SweepConfig c = small("fig4-na-hadamard");
  c.integrator.max_steps = 5;
  const auto rows = run_sweep(c, {.fast = true, .workers = 1, .on_row = {}});
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.failed);
    EXPECT_TRUE(std::isnan(r.f_avg));
    EXPECT_FALSE(r.message.empty());
  }
}

TEST(Output, CsvHasHeaderAndOneLinePerRow) {
  const auto dir = scratch_dir("csv");
  std::vector<ResultRow> rows(3);
  for (int i = 0; i < 3; ++i) {
    rows[i].sweep_value = i + 1;
    rows[i].f_max = 1.0;
    rows[i].f_avg = 0.5 + 0.1 * i;
    rows[i].f_min = 0.25;
    rows[i].samples = 64;
    rows[i].seed = 7;
  }
  const auto files = emit_results(rows, find_preset("fig4-na-phase"), OutputFormat::kCsv, dir);
  ASSERT_EQ(files.size(), 1u);
  std::istringstream in(read_file(files[0]));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], std::string(kCsvHeader));
  EXPECT_EQ(lines[2], "2,1,0.6,0.25,64,7,0,0");
  std::filesystem::remove_all(dir);
}

TEST(Output, PlotHasThreeColouredSeries) {
  const auto dir = scratch_dir("plot");
  const auto rows = run_sweep(small("fig4-na-hadamard", 4), {.fast = true, .workers = 1, .on_row = {}});
  const auto files = emit_results(rows, find_preset("fig4-na-hadamard"), OutputFormat::kPlot, dir);
  ASSERT_EQ(files.size(), 2u);
  const std::string svg = read_file(files[1]);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  for (const char* colour : {"red", "black", "blue"}) {
    EXPECT_NE(svg.find(std::string("stroke=\"") + colour + "\""), std::string::npos) << colour;
  }
  std::filesystem::remove_all(dir);
}

TEST(Output, EmptyRowsAndUnwritablePaths) {
  EXPECT_THROW(emit_results({}, find_preset("fig4-na-phase"), OutputFormat::kCsv, "/tmp"),
               InvalidArgument);
  std::vector<ResultRow> rows(1);
  EXPECT_THROW(emit_results(rows, find_preset("fig4-na-phase"), OutputFormat::kCsv,
                            "/proc/holosim/denied"),
               IoError);
  EXPECT_THROW(parse_output_format("png"), InvalidArgument);
}

TEST(ConfigFile, PresetsRoundTrip) {
  for (const auto& c : builtin_presets()) {
    const auto parsed = parse_config_text(format_config(c));
    ASSERT_EQ(parsed.size(), 1u);
    EXPECT_EQ(format_config(parsed[0]), format_config(c)) << c.name;
  }
}

TEST(ConfigFile, BaseAndOverrides) {
  const auto configs = parse_config_text(
      "# decay sweep with more states\n"
      "[my-decay]\n"
      "base = fig4-na-phase\n"
      "samples = 500   # inline comment\n"
      "grid_points = 7\n"
      "propagation = per-state\n"
      "\n"
      "[other]\n"
      "base = fig3-a-hadamard\n"
      "frame_origin = zero\n");
  ASSERT_EQ(configs.size(), 2u);
  EXPECT_EQ(configs[0].name, "my-decay");
  EXPECT_EQ(configs[0].samples, 500u);
  EXPECT_EQ(configs[0].grid.points, 7u);
  EXPECT_EQ(configs[0].separation, 8.0);
  EXPECT_EQ(configs[0].propagation, PropagationMode::kPerState);
  EXPECT_EQ(configs[1].frame_origin, FrameOrigin::kZero);
  EXPECT_EQ(configs[1].gate, GatePreset::kHadamard);
}

TEST(ConfigFile, ErrorsNameTheLine) {
  try {
    parse_config_text("[a]\nbase = fig4-na-phase\nsamples = many\n");
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_config_text("samples = 3\n"), InvalidArgument);
  EXPECT_THROW(parse_config_text("[a]\nbogus = 1\n"), InvalidArgument);
  EXPECT_THROW(load_config_file("/nonexistent/holosim.ini"), IoError);
}

TEST(InvariantSuite, AllChecksPass) {
  for (const auto& r : run_invariant_suite()) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

}  // namespace
}  // namespace holosim
