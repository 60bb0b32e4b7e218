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

#include <optional>
#include <vector>

#include "rbaddr/addressability.hpp"
#include "rbaddr/fit.hpp"
#include "rbaddr/noise.hpp"
#include "rbaddr/rb.hpp"

namespace rbaddr {

/// Smallest standard error written or fitted; constant curves have zero spread.
inline constexpr double kStdErrFloor = 1e-12;

/// Runs Experiments 1-3 with `base` (its experiment field is ignored) and
/// floors zero standard errors at kStdErrFloor.
std::vector<SurvivalCurve> simulate_protocol(const RBConfig& base, const NoiseModel& model);

struct CurveFit {
  Experiment experiment;
  Projection projection;
  DecayFit fit;
  int max_m = 0;  // largest sequence length of the curve
};

/// Which report quantity a curve measures, if any.
std::optional<AlphaKey> alpha_key_for(Experiment e, Projection p);

struct Analysis {
  std::vector<CurveFit> fits;
  std::optional<CorrelationFit> correlation;
  std::optional<AddressabilityReport> report;  // unset when fewer than two alphas are known
  std::vector<std::string> notices;
};

/// Fits every curve and assembles the (possibly partial) report.
Analysis analyze_curves(const std::vector<SurvivalCurve>& curves, const ReportLabels& labels,
                        const FitOptions& options = {});

}  // namespace rbaddr
