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

#include "rbaddr/pipeline.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace rbaddr {

std::vector<SurvivalCurve> simulate_protocol(const RBConfig& base, const NoiseModel& model) {
  std::vector<SurvivalCurve> all;
  for (Experiment e : {Experiment::Exp1_CxI, Experiment::Exp2_IxC, Experiment::Exp3_CxC}) {
    RBConfig cfg = base;
    cfg.experiment = e;
    for (auto& curve : run_experiment(cfg, model)) {
      for (auto& p : curve.points) p.std_err = std::max(p.std_err, kStdErrFloor);
      all.push_back(std::move(curve));
    }
  }
  return all;
}

std::optional<AlphaKey> alpha_key_for(Experiment e, Projection p) {
  switch (e) {
    case Experiment::Exp1_CxI:
      if (p == Projection::Q1) return AlphaKey::Alpha1;
      break;
    case Experiment::Exp2_IxC:
      if (p == Projection::Q2) return AlphaKey::Alpha2;
      break;
    case Experiment::Exp3_CxC:
      if (p == Projection::Q1) return AlphaKey::Alpha1Given2;
      if (p == Projection::Q2) return AlphaKey::Alpha2Given1;
      return AlphaKey::Alpha12;
  }
  return std::nullopt;
}

namespace {

FitSummary summarize(const DecayFit& f) {
  const double sigma = f.unidentifiable.empty() ? f.sigma_alpha() : 0.0;
  return {{f.alpha, sigma}, f.chi2_reduced, f.dof, f.degenerate};
}

}  // namespace

Analysis analyze_curves(const std::vector<SurvivalCurve>& curves, const ReportLabels& labels,
                        const FitOptions& options) {
  Analysis out;
  std::map<AlphaKey, FitSummary> summaries;
  const SurvivalCurve* corr = nullptr;
  for (const auto& curve : curves) {
    FitOptions opts = options;
    opts.asymptote = 0.5;
    DecayFit fit = fit_exponential(curve, opts);
    if (!fit.converged) {
      out.notices.push_back(fmt::format("fit of {} {} did not converge", to_string(curve.experiment),
                                        to_string(curve.projection)));
    }
    const auto key = alpha_key_for(curve.experiment, curve.projection);
    if (key && *key != AlphaKey::Alpha12) summaries[*key] = summarize(fit);
    if (key == AlphaKey::Alpha12) corr = &curve;
    out.fits.push_back({curve.experiment, curve.projection, std::move(fit), curve.points.back().m});
  }
  if (corr) {
    const auto a = summaries.find(AlphaKey::Alpha1Given2);
    const auto b = summaries.find(AlphaKey::Alpha2Given1);
    if (a != summaries.end() && b != summaries.end()) {
      FitOptions opts = options;
      opts.asymptote = 0.5;
      CorrelationFit cf = fit_correlation_curve(*corr, a->second.alpha.value, b->second.alpha.value, opts);
      summaries[AlphaKey::Alpha12] = {{cf.alpha12, cf.sigma}, cf.chi2_reduced, cf.dof, cf.single.degenerate};
      out.notices.push_back(fmt::format("correlation curve: {}", cf.note));
      out.correlation = std::move(cf);
    } else {
      out.notices.push_back("correlation curve present without both single-qubit Exp3 curves; alpha_12 skipped");
    }
  }
  if (summaries.size() >= 2) {
    out.report = build_report(summaries, labels, true);
  } else {
    out.notices.push_back("fewer than two report alphas available; report skipped");
  }
  return out;
}

}  // namespace rbaddr
