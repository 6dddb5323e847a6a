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

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "holosim/sweeps.hpp"

namespace holosim {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InvalidArgument(fmt::format("'{}' expects a number, got '{}'", key, value));
  }
  return out;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InvalidArgument(fmt::format("'{}' expects a non-negative integer, got '{}'", key, value));
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw InvalidArgument(fmt::format("'{}' expects true or false, got '{}'", key, value));
}

}  // namespace

void apply_config_key(SweepConfig& c, const std::string& key, const std::string& value) {
  if (key == "description") {
    c.description = value;
  } else if (key == "scheme") {
    c.scheme = parse_scheme(value);
  } else if (key == "gate") {
    c.gate = parse_gate_preset(value);
  } else if (key == "error") {
    c.error = parse_error_model(value);
  } else if (key == "axis") {
    c.axis = parse_sweep_axis(value);
  } else if (key == "grid_start") {
    c.grid.start = to_double(key, value);
  } else if (key == "grid_stop") {
    c.grid.stop = to_double(key, value);
  } else if (key == "grid_points") {
    c.grid.points = to_unsigned(key, value);
  } else if (key == "grid_log") {
    c.grid.log = to_bool(key, value);
  } else if (key == "fast_points") {
    c.fast_points = to_unsigned(key, value);
  } else if (key == "separation") {
    c.separation = to_double(key, value);
  } else if (key == "coupling") {
    c.coupling = to_double(key, value);
  } else if (key == "run_time") {
    c.run_time = to_double(key, value);
  } else if (key == "beta") {
    c.beta = to_double(key, value);
  } else if (key == "samples") {
    c.samples = to_unsigned(key, value);
  } else if (key == "seed") {
    c.seed = to_unsigned(key, value);
  } else if (key == "rel_tol") {
    c.integrator.rel_tol = to_double(key, value);
  } else if (key == "abs_tol") {
    c.integrator.abs_tol = to_double(key, value);
  } else if (key == "min_step") {
    c.integrator.min_step = to_double(key, value);
  } else if (key == "max_step") {
    c.integrator.max_step = to_double(key, value);
  } else if (key == "max_steps") {
    c.integrator.max_steps = static_cast<long>(to_unsigned(key, value));
  } else if (key == "propagation") {
    if (value == "per-state") {
      c.propagation = PropagationMode::kPerState;
    } else if (value == "process-basis") {
      c.propagation = PropagationMode::kProcessBasis;
    } else {
      throw InvalidArgument(fmt::format("unknown propagation mode '{}'", value));
    }
  } else if (key == "loop_timing") {
    if (value == "total") {
      c.loop_timing = LoopTiming::kTotalByLength;
    } else if (value == "per-loop") {
      c.loop_timing = LoopTiming::kPerLoop;
    } else {
      throw InvalidArgument(fmt::format("unknown loop timing '{}'", value));
    }
  } else if (key == "frame_origin") {
    if (value == "preparation") {
      c.frame_origin = FrameOrigin::kPreparation;
    } else if (value == "zero") {
      c.frame_origin = FrameOrigin::kZero;
    } else {
      throw InvalidArgument(fmt::format("unknown frame origin '{}'", value));
    }
  } else if (key == "prep_offset") {
    c.prep_offset = to_double(key, value);
  } else if (key == "readout_offset") {
    c.readout_offset = to_double(key, value);
  } else if (key == "truncation_ratio") {
    c.truncation_ratio = to_double(key, value);
  } else if (key == "renormalize_area") {
    c.renormalize_area = to_bool(key, value);
  } else if (key == "refine_extrema") {
    c.refine_extrema = to_bool(key, value);
  } else {
    throw InvalidArgument(fmt::format("unknown config key '{}'", key));
  }
}

std::vector<SweepConfig> parse_config_text(const std::string& text) {
  std::vector<SweepConfig> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  SweepConfig* current = nullptr;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string content = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (content.empty()) continue;
    try {
      if (content.front() == '[') {
        if (content.back() != ']') throw InvalidArgument("unterminated section header");
        out.emplace_back();
        current = &out.back();
        current->name = trim(std::string_view(content).substr(1, content.size() - 2));
        if (current->name.empty()) throw InvalidArgument("empty section name");
        continue;
      }
      const auto eq = content.find('=');
      if (eq == std::string::npos) throw InvalidArgument("expected 'key = value'");
      if (!current) throw InvalidArgument("key outside of a section");
      const std::string key = trim(std::string_view(content).substr(0, eq));
      const std::string value = trim(std::string_view(content).substr(eq + 1));
      if (key == "base") {
        const std::string name = current->name;
        *current = find_preset(value);
        current->name = name;
      } else {
        apply_config_key(*current, key, value);
      }
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(fmt::format("config line {}: {}", line_no, e.what()));
    }
  }
  return out;
}

std::vector<SweepConfig> load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot read config file '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string format_config(const SweepConfig& c) {
  std::string out = fmt::format("[{}]\n", c.name);
  const auto put = [&out](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  const auto num = [](double x) { return fmt::format("{:.17g}", x); };
  if (!c.description.empty()) put("description", c.description);
  put("scheme", std::string(scheme_name(c.scheme)));
  put("gate", std::string(preset_name(c.gate)));
  put("error", std::string(error_model_name(c.error)));
  put("axis", std::string(sweep_axis_name(c.axis)));
  put("grid_start", num(c.grid.start));
  put("grid_stop", num(c.grid.stop));
  put("grid_points", std::to_string(c.grid.points));
  put("grid_log", c.grid.log ? "true" : "false");
  put("fast_points", std::to_string(c.fast_points));
  if (std::isfinite(c.separation)) put("separation", num(c.separation));
  if (std::isfinite(c.coupling)) put("coupling", num(c.coupling));
  if (std::isfinite(c.run_time)) put("run_time", num(c.run_time));
  if (std::isfinite(c.beta)) put("beta", num(c.beta));
  put("samples", std::to_string(c.samples));
  put("seed", std::to_string(c.seed));
  put("rel_tol", num(c.integrator.rel_tol));
  put("abs_tol", num(c.integrator.abs_tol));
  put("min_step", num(c.integrator.min_step));
  if (std::isfinite(c.integrator.max_step)) put("max_step", num(c.integrator.max_step));
  put("max_steps", std::to_string(c.integrator.max_steps));
  put("propagation", c.propagation == PropagationMode::kPerState ? "per-state" : "process-basis");
  put("loop_timing", c.loop_timing == LoopTiming::kPerLoop ? "per-loop" : "total");
  put("frame_origin", c.frame_origin == FrameOrigin::kZero ? "zero" : "preparation");
  put("prep_offset", num(c.prep_offset));
  put("readout_offset", num(c.readout_offset));
  put("truncation_ratio", num(c.truncation_ratio));
  put("renormalize_area", c.renormalize_area ? "true" : "false");
  put("refine_extrema", c.refine_extrema ? "true" : "false");
  return out;
}

}  // namespace holosim
