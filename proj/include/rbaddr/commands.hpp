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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rbaddr {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitAnalysis = 2, kExitVerification = 3 };

/// $RB_ADDR_OUT if set, otherwise ./rbaddr_out.
std::filesystem::path default_output_dir();

struct SimulateOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::string> preset;
  std::optional<std::string> model;  // model type name, overrides the preset's
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<int>> lengths;
  std::optional<int> K;
  std::optional<unsigned> threads;
  std::optional<std::string> granularity;
  std::optional<std::filesystem::path> out;
};

/// Experiments 1-3, fits and report. Writes curves.csv, fits.json,
/// report.json, report.txt, plot_data.csv, config.ini and manifest.json.
int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);

struct FitCommandOptions {
  std::filesystem::path curves;
  std::optional<std::filesystem::path> out;
  std::string label;
};

int cmd_fit(const FitCommandOptions& opts, std::ostream& out, std::ostream& err);

struct PredictOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::string> preset;
  double mu_scale = 1.0;  // multiplies mu1 and mu2
  std::optional<std::filesystem::path> out;
};

/// Exact twirl predictions of alpha, r, dr and dalpha; writes predict.json.
int cmd_predict(const PredictOptions& opts, std::ostream& out, std::ostream& err);

struct VerifyCommandOptions {
  std::string level = "quick";
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
};

int cmd_verify(const VerifyCommandOptions& opts, std::ostream& out, std::ostream& err);

struct DumpGroupOptions {
  std::string group = "C1";
  std::optional<std::filesystem::path> out;  // stdout when unset
};

int cmd_dump_group(const DumpGroupOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace rbaddr
