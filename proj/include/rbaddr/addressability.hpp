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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rbaddr/twirl.hpp"

namespace rbaddr {

/// A value with one standard deviation.
struct Estimate {
  double value = 0.0;
  double sigma = 0.0;
};

/// r = (d - 1)(1 - alpha) / d.
double gate_error(double alpha, int d = 2);
/// Same, with sigma_r = (d - 1) / d * sigma_alpha.
Estimate gate_error(const Estimate& alpha, int d = 2);

/// |r_k - r_{k|k'}| with the uncertainties added in quadrature.
Estimate delta_r(const Estimate& r_k, const Estimate& r_k_given_kprime);

/// alpha_12 - alpha_{1|2} alpha_{2|1}, first-order uncertainty propagation.
Estimate delta_alpha(const Estimate& alpha12, const Estimate& alpha1_2, const Estimate& alpha2_1);

enum class AlphaKey : std::uint8_t { Alpha1, Alpha2, Alpha1Given2, Alpha2Given1, Alpha12 };

inline constexpr AlphaKey kAllAlphaKeys[] = {AlphaKey::Alpha1, AlphaKey::Alpha2, AlphaKey::Alpha1Given2,
                                             AlphaKey::Alpha2Given1, AlphaKey::Alpha12};

std::string_view to_string(AlphaKey key);

/// What the report needs from one fitted decay.
struct FitSummary {
  Estimate alpha;
  double chi2_reduced = 0.0;
  int dof = 0;
  bool degenerate = false;
};

struct Provenance {
  std::string config_hash;
  std::optional<std::uint64_t> seed;
  std::string model;
};

struct ReportLabels {
  std::string sample_label;
  Provenance provenance;
  int d1 = 2;
  int d2 = 2;
};

class MissingFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AddressabilityReport {
  std::optional<Estimate> r1, r2, r1_given_2, r2_given_1;
  std::optional<Estimate> dr1_given_2, dr2_given_1, dalpha;
  std::string sample_label;
  Provenance provenance;
  std::map<AlphaKey, FitSummary> fits;
  std::vector<std::string> missing;  // absent alpha keys
  std::vector<std::string> warnings;

  bool complete() const { return missing.empty(); }
};

/// Throws MissingFitError naming the absent fits unless allow_partial is set,
/// in which case uncomputable fields are left empty and listed in `missing`.
AddressabilityReport build_report(const std::map<AlphaKey, FitSummary>& fits, const ReportLabels& labels,
                                  bool allow_partial = false);

nlohmann::ordered_json to_json(const AddressabilityReport& report);

/// Aligned plain-text table with one row per quantity.
std::string format_table(const AddressabilityReport& report);

/// Model prediction of the report quantities from exact twirls.
struct Prediction {
  double alpha1 = 1.0, alpha2 = 1.0, alpha1_2 = 1.0, alpha2_1 = 1.0, alpha12 = 1.0;
  double r1 = 0.0, r2 = 0.0, r1_given_2 = 0.0, r2_given_1 = 0.0;
  double dr1_given_2 = 0.0, dr2_given_1 = 0.0, dalpha = 0.0;
};

Prediction make_prediction(const TwirlOutcome& cxi, const TwirlOutcome& ixc, const TwirlOutcome& cxc, int d1 = 2,
                           int d2 = 2);

nlohmann::ordered_json to_json(const Prediction& p);

}  // namespace rbaddr
