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

#include "rbaddr/addressability.hpp"

#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "rbaddr/fit.hpp"

namespace rbaddr {

double gate_error(double alpha, int d) {
  if (d < 2) throw std::invalid_argument("dimension must be at least 2");
  return (d - 1) * (1.0 - alpha) / d;
}

Estimate gate_error(const Estimate& alpha, int d) {
  return {gate_error(alpha.value, d), static_cast<double>(d - 1) / d * alpha.sigma};
}

Estimate delta_r(const Estimate& r_k, const Estimate& r_k_given_kprime) {
  return {std::abs(r_k.value - r_k_given_kprime.value), std::hypot(r_k.sigma, r_k_given_kprime.sigma)};
}

Estimate delta_alpha(const Estimate& alpha12, const Estimate& alpha1_2, const Estimate& alpha2_1) {
  const double value = alpha12.value - alpha1_2.value * alpha2_1.value;
  const double a = alpha2_1.value * alpha1_2.sigma;
  const double b = alpha1_2.value * alpha2_1.sigma;
  return {value, std::sqrt(alpha12.sigma * alpha12.sigma + a * a + b * b)};
}

std::string_view to_string(AlphaKey key) {
  switch (key) {
    case AlphaKey::Alpha1: return "alpha_1";
    case AlphaKey::Alpha2: return "alpha_2";
    case AlphaKey::Alpha1Given2: return "alpha_1|2";
    case AlphaKey::Alpha2Given1: return "alpha_2|1";
    case AlphaKey::Alpha12: return "alpha_12";
  }
  return "?";
}

AddressabilityReport build_report(const std::map<AlphaKey, FitSummary>& fits, const ReportLabels& labels,
                                  bool allow_partial) {
  AddressabilityReport rep;
  rep.sample_label = labels.sample_label;
  rep.provenance = labels.provenance;
  rep.fits = fits;
  for (AlphaKey k : kAllAlphaKeys) {
    if (!fits.contains(k)) rep.missing.emplace_back(to_string(k));
  }
  if (!rep.missing.empty() && !allow_partial) {
    throw MissingFitError(fmt::format("missing fits: {}", fmt::join(rep.missing, ", ")));
  }
  auto alpha = [&](AlphaKey k) -> std::optional<Estimate> {
    const auto it = fits.find(k);
    if (it == fits.end()) return std::nullopt;
    return it->second.alpha;
  };
  const auto a1 = alpha(AlphaKey::Alpha1), a2 = alpha(AlphaKey::Alpha2);
  const auto a12 = alpha(AlphaKey::Alpha1Given2), a21 = alpha(AlphaKey::Alpha2Given1);
  const auto both = alpha(AlphaKey::Alpha12);
  if (a1) rep.r1 = gate_error(*a1, labels.d1);
  if (a2) rep.r2 = gate_error(*a2, labels.d2);
  if (a12) rep.r1_given_2 = gate_error(*a12, labels.d1);
  if (a21) rep.r2_given_1 = gate_error(*a21, labels.d2);
  if (rep.r1 && rep.r1_given_2) rep.dr1_given_2 = delta_r(*rep.r1, *rep.r1_given_2);
  if (rep.r2 && rep.r2_given_1) rep.dr2_given_1 = delta_r(*rep.r2, *rep.r2_given_1);
  if (both && a12 && a21) rep.dalpha = delta_alpha(*both, *a12, *a21);

  for (const auto& [key, fit] : fits) {
    if (fit.chi2_reduced > kChi2Threshold) {
      rep.warnings.push_back(fmt::format("{}: chi2_reduced = {:.3f} > {}; single-exponential model suspect",
                                         to_string(key), fit.chi2_reduced, kChi2Threshold));
    }
    if (fit.degenerate) rep.warnings.push_back(fmt::format("{}: constant data, decay unidentifiable", to_string(key)));
  }
  return rep;
}

namespace {

nlohmann::ordered_json estimate_json(const std::optional<Estimate>& e) {
  if (!e) return nullptr;
  return {{"value", e->value}, {"sigma", e->sigma}};
}

}  // namespace

nlohmann::ordered_json to_json(const AddressabilityReport& report) {
  nlohmann::ordered_json j;
  j["sample_label"] = report.sample_label;
  j["complete"] = report.complete();
  j["r1"] = estimate_json(report.r1);
  j["r2"] = estimate_json(report.r2);
  j["r1_given_2"] = estimate_json(report.r1_given_2);
  j["r2_given_1"] = estimate_json(report.r2_given_1);
  j["dr1_given_2"] = estimate_json(report.dr1_given_2);
  j["dr2_given_1"] = estimate_json(report.dr2_given_1);
  j["dalpha"] = estimate_json(report.dalpha);
  nlohmann::ordered_json fits = nlohmann::ordered_json::object();
  for (const auto& [key, f] : report.fits) {
    fits[std::string(to_string(key))] = {{"alpha", f.alpha.value},
                                         {"sigma", f.alpha.sigma},
                                         {"chi2_reduced", f.chi2_reduced},
                                         {"dof", f.dof},
                                         {"degenerate", f.degenerate},
                                         {"model_suspect", f.chi2_reduced > kChi2Threshold}};
  }
  j["fits"] = std::move(fits);
  j["missing"] = report.missing;
  j["warnings"] = report.warnings;
  nlohmann::ordered_json prov;
  prov["config_hash"] = report.provenance.config_hash;
  prov["seed"] = report.provenance.seed ? nlohmann::ordered_json(*report.provenance.seed) : nullptr;
  prov["model"] = report.provenance.model;
  j["provenance"] = std::move(prov);
  return j;
}

std::string format_table(const AddressabilityReport& report) {
  const std::pair<const char*, const std::optional<Estimate>*> rows[] = {
      {"r1", &report.r1},
      {"r2", &report.r2},
      {"r1|2", &report.r1_given_2},
      {"r2|1", &report.r2_given_1},
      {"dr1|2", &report.dr1_given_2},
      {"dr2|1", &report.dr2_given_1},
      {"dalpha", &report.dalpha},
  };
  const std::string label = report.sample_label.empty() ? "value" : report.sample_label;
  std::string out = fmt::format("{:<8}  {:>22}\n", "", label);
  for (const auto& [name, value] : rows) {
    const std::string cell =
        *value ? fmt::format("{:.4f} +- {:.4f}", (*value)->value, (*value)->sigma) : std::string("missing");
    out += fmt::format("{:<8}  {:>22}\n", name, cell);
  }
  for (const auto& w : report.warnings) out += fmt::format("warning: {}\n", w);
  return out;
}

Prediction make_prediction(const TwirlOutcome& cxi, const TwirlOutcome& ixc, const TwirlOutcome& cxc, int d1, int d2) {
  if (!cxi.alphas.one || !ixc.alphas.two || !cxc.alphas.one_given_two || !cxc.alphas.two_given_one ||
      !cxc.alphas.both) {
    throw std::invalid_argument("twirl outcomes do not carry the expected alphas");
  }
  Prediction p;
  p.alpha1 = *cxi.alphas.one;
  p.alpha2 = *ixc.alphas.two;
  p.alpha1_2 = *cxc.alphas.one_given_two;
  p.alpha2_1 = *cxc.alphas.two_given_one;
  p.alpha12 = *cxc.alphas.both;
  p.r1 = gate_error(p.alpha1, d1);
  p.r2 = gate_error(p.alpha2, d2);
  p.r1_given_2 = gate_error(p.alpha1_2, d1);
  p.r2_given_1 = gate_error(p.alpha2_1, d2);
  p.dr1_given_2 = std::abs(p.r1 - p.r1_given_2);
  p.dr2_given_1 = std::abs(p.r2 - p.r2_given_1);
  p.dalpha = p.alpha12 - p.alpha1_2 * p.alpha2_1;
  return p;
}

nlohmann::ordered_json to_json(const Prediction& p) {
  return {{"alpha_1", p.alpha1},     {"alpha_2", p.alpha2},         {"alpha_1|2", p.alpha1_2},
          {"alpha_2|1", p.alpha2_1}, {"alpha_12", p.alpha12},       {"r1", p.r1},
          {"r2", p.r2},              {"r1_given_2", p.r1_given_2}, {"r2_given_1", p.r2_given_1},
          {"dr1_given_2", p.dr1_given_2}, {"dr2_given_1", p.dr2_given_1}, {"dalpha", p.dalpha}};
}

}  // namespace rbaddr
