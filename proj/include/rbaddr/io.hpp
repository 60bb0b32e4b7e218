// Copyright 2026 The rbaddr Authors
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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rbaddr/noise.hpp"
#include "rbaddr/pipeline.hpp"
#include "rbaddr/rb.hpp"

namespace rbaddr {

inline constexpr std::string_view kVersion = "1.0.0";

/// Malformed input; `line` is 1-based, 0 when not tied to a line.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

// Curves CSV: experiment,projection,m,mean,stderr,K
void write_curves_csv(std::ostream& out, const std::vector<SurvivalCurve>& curves);
std::vector<SurvivalCurve> read_curves_csv(std::istream& in, const std::string& source = "<input>");

nlohmann::ordered_json fits_to_json(const Analysis& analysis);

/// Fitted curve samples at every integer m from 1 to the largest fitted m:
/// experiment,projection,m,fit
void write_plot_data(std::ostream& out, const Analysis& analysis);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

enum class ModelType { Ideal, Depolarizing, Decoherence, CrossTalk, CrossTalkDecoherence };

std::string_view to_string(ModelType t);

/// Everything a run needs. Parsed from INI text with sections [run],
/// [model], [device] and [spam].
struct RunConfig {
  std::string preset;  // empty when the model is given explicitly
  std::string label;
  ModelType model = ModelType::Ideal;
  double alpha1 = 1.0, alpha2 = 1.0;  // depolarizing, per generator pulse
  bool idle_noise = false;
  DeviceParams device;
  RBConfig rb;

  /// Canonical INI text of the effective configuration.
  std::string snapshot() const;
};

std::vector<std::string> preset_names();
/// Throws InputError for unknown names.
RunConfig preset_config(std::string_view name);

/// Parses INI text. A `preset` key in [model] loads that preset first; the
/// remaining keys override it. Unknown sections and keys are rejected.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");

/// Comma-separated positive integers.
std::vector<int> parse_lengths(std::string_view text);

NoiseModel build_model(const RunConfig& cfg);

struct FileDigest {
  std::string path;
  std::string sha256;
};

struct RunManifest {
  std::string command;
  std::string config_snapshot;
  std::optional<std::uint64_t> seed;
  std::string started_at;
  std::string finished_at;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
};

nlohmann::ordered_json to_json(const RunManifest& m);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

/// Writes `content` to `dir / name` and returns its digest entry.
FileDigest write_artifact(const std::filesystem::path& dir, const std::string& name, const std::string& content);

}  // namespace rbaddr
