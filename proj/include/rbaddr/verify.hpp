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
#include <span>
#include <string>
#include <vector>

namespace rbaddr {

enum class VerifyLevel { Quick, Full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Quick;
  double tolerance = 1e-10;  // for the twirl oracles
  std::uint64_t seed = 20260101;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool all_passed() const;
};

/// Oracle suite: brute-force twirls against analytic forms, group axioms,
/// recovery, the product-channel correlation witness and fit calibration.
VerifyReport run_verification(const VerifyOptions& options);

/// Fraction of `reps` noisy synthetic decays 0.5 alpha^m + 0.5 + N(0, sigma^2)
/// whose fitted 1-sigma interval contains alpha.
struct CoverageResult {
  int reps = 0;
  int covered = 0;
  int failed_fits = 0;
  double fraction() const { return reps ? static_cast<double>(covered) / reps : 0.0; }
};

CoverageResult coverage_study(double alpha, double noise_sigma, std::span<const int> lengths, int reps,
                              std::uint64_t seed);

/// 32 evenly spaced truncations from 1 to 497.
std::vector<int> calibration_lengths();

}  // namespace rbaddr
