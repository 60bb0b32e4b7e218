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

#include <cmath>

#include <gtest/gtest.h>

#include "rbaddr/addressability.hpp"
#include "rbaddr/noise.hpp"
#include "rbaddr/pipeline.hpp"
#include "table_one.hpp"

namespace rbaddr {
namespace {

using testing::fits_for;
using testing::kSampleA;
using testing::kSampleB;
using testing::round4;

TEST(GateError, Inversion) {
  EXPECT_NEAR(gate_error(0.9922), 0.0039, 1e-15);
  EXPECT_NEAR(gate_error(1.0), 0.0, 0.0);
  EXPECT_NEAR(gate_error(0.9, 4), 0.075, 1e-15);
  const Estimate e = gate_error(Estimate{0.99, 0.002});
  EXPECT_NEAR(e.value, 0.005, 1e-15);
  EXPECT_NEAR(e.sigma, 0.001, 1e-15);
}

TEST(DeltaR, TableExamples) {
  const Estimate d1 = delta_r({0.0039, 0.0001}, {0.0086, 0.0003});
  EXPECT_NEAR(d1.value, 0.0047, 1e-12);
  EXPECT_NEAR(d1.sigma, std::sqrt(1e-8 + 9e-8), 1e-15);
  EXPECT_NEAR(round4(d1.sigma), 0.0003, 1e-12);
  EXPECT_NEAR(delta_r({0.0067, 0.0002}, {0.0120, 0.0005}).value, 0.0053, 1e-12);
  // Absolute value: order of arguments does not matter.
  EXPECT_EQ(delta_r({0.01, 0.0}, {0.002, 0.0}).value, delta_r({0.002, 0.0}, {0.01, 0.0}).value);
}

TEST(DeltaAlpha, ProductIsZero) {
  const Estimate d = delta_alpha({0.98 * 0.97, 0.001}, {0.98, 0.001}, {0.97, 0.001});
  EXPECT_NEAR(d.value, 0.0, 1e-15);
  EXPECT_NEAR(d.sigma, std::sqrt(1e-6 + std::pow(0.97e-3, 2) + std::pow(0.98e-3, 2)), 1e-15);
}

TEST(Report, ReproducesTableColumns) {
  for (const auto* col : {&kSampleA, &kSampleB}) {
    const AddressabilityReport rep = build_report(fits_for(*col), {col->label, {}});
    ASSERT_TRUE(rep.complete());
    const std::pair<const std::optional<Estimate>*, const Estimate*> rows[] = {
        {&rep.r1, &col->r1},
        {&rep.r2, &col->r2},
        {&rep.r1_given_2, &col->r1_given_2},
        {&rep.r2_given_1, &col->r2_given_1},
        {&rep.dr1_given_2, &col->dr1_given_2},
        {&rep.dr2_given_1, &col->dr2_given_1},
        {&rep.dalpha, &col->dalpha},
    };
    for (const auto& [got, want] : rows) {
      ASSERT_TRUE(got->has_value());
      EXPECT_NEAR(round4((*got)->value), want->value, 1e-12) << col->label;
      // Quadrature propagation is within one unit of the last digit.
      EXPECT_LE(std::abs(round4((*got)->sigma) - want->sigma), 1e-4 + 1e-12) << col->label;
    }
    EXPECT_TRUE(rep.warnings.empty());
  }
}

TEST(Report, SampleASigmasExact) {
  const AddressabilityReport rep = build_report(fits_for(kSampleA), {"a", {}});
  EXPECT_NEAR(round4(rep.dr1_given_2->sigma), 0.0003, 1e-12);
  EXPECT_NEAR(round4(rep.dr2_given_1->sigma), 0.0005, 1e-12);
  EXPECT_NEAR(round4(rep.dalpha->sigma), 0.0018, 1e-12);
}

TEST(Report, MissingFitsThrowUnlessPartial) {
  auto fits = fits_for(kSampleA);
  fits.erase(AlphaKey::Alpha12);
  EXPECT_THROW(build_report(fits, {}), MissingFitError);
  const AddressabilityReport rep = build_report(fits, {}, true);
  EXPECT_FALSE(rep.complete());
  EXPECT_EQ(rep.missing, std::vector<std::string>{"alpha_12"});
  EXPECT_FALSE(rep.dalpha.has_value());
  EXPECT_TRUE(rep.dr1_given_2.has_value());
  EXPECT_NE(format_table(rep).find("missing"), std::string::npos);
}

TEST(Report, FlagsSuspectFits) {
  auto fits = fits_for(kSampleB);
  fits[AlphaKey::Alpha2].chi2_reduced = 2.4;
  const AddressabilityReport rep = build_report(fits, {});
  ASSERT_EQ(rep.warnings.size(), 1u);
  EXPECT_NE(rep.warnings[0].find("alpha_2"), std::string::npos);
  EXPECT_TRUE(to_json(rep)["fits"]["alpha_2"]["model_suspect"].get<bool>());
}

TEST(Report, SwappingQubitsSwapsRows) {
  auto fits = fits_for(kSampleA);
  std::map<AlphaKey, FitSummary> swapped = fits;
  swapped[AlphaKey::Alpha1] = fits[AlphaKey::Alpha2];
  swapped[AlphaKey::Alpha2] = fits[AlphaKey::Alpha1];
  swapped[AlphaKey::Alpha1Given2] = fits[AlphaKey::Alpha2Given1];
  swapped[AlphaKey::Alpha2Given1] = fits[AlphaKey::Alpha1Given2];
  const AddressabilityReport a = build_report(fits, {}), b = build_report(swapped, {});
  EXPECT_EQ(a.r1->value, b.r2->value);
  EXPECT_EQ(a.dr1_given_2->value, b.dr2_given_1->value);
  EXPECT_EQ(a.dr2_given_1->value, b.dr1_given_2->value);
  EXPECT_NEAR(a.dalpha->value, b.dalpha->value, 1e-15);
}

TEST(Report, TableAndJsonShape) {
  const AddressabilityReport rep = build_report(fits_for(kSampleA), {"sample a", {"abc", 7, "test"}});
  const std::string table = format_table(rep);
  EXPECT_NE(table.find("0.0047 +- 0.0003"), std::string::npos);
  EXPECT_NE(table.find("dalpha"), std::string::npos);
  const auto j = to_json(rep);
  EXPECT_EQ(j["sample_label"], "sample a");
  EXPECT_EQ(j["provenance"]["seed"], 7);
  EXPECT_TRUE(j["complete"].get<bool>());
  EXPECT_EQ(j["fits"].size(), 5u);
}

TEST(Report, PipelineOnNoiselessTableCurves) {
  // Curves synthesized from the sample-a alphas pass through the fitter unchanged.
  const auto fits = fits_for(kSampleA);
  const std::vector<int> ms = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
  auto curve = [&](Experiment e, Projection p, double alpha) {
    SurvivalCurve c{e, p, {}, {}};
    for (int m : ms) c.points.push_back({m, 0.5 * std::pow(alpha, m) + 0.5, 1e-3, 50});
    return c;
  };
  const std::vector<SurvivalCurve> curves = {
      curve(Experiment::Exp1_CxI, Projection::Q1, fits.at(AlphaKey::Alpha1).alpha.value),
      curve(Experiment::Exp2_IxC, Projection::Q2, fits.at(AlphaKey::Alpha2).alpha.value),
      curve(Experiment::Exp3_CxC, Projection::Q1, fits.at(AlphaKey::Alpha1Given2).alpha.value),
      curve(Experiment::Exp3_CxC, Projection::Q2, fits.at(AlphaKey::Alpha2Given1).alpha.value),
      curve(Experiment::Exp3_CxC, Projection::Corr, fits.at(AlphaKey::Alpha12).alpha.value),
  };
  const Analysis a = analyze_curves(curves, {"a", {}});
  ASSERT_TRUE(a.report.has_value());
  EXPECT_NEAR(round4(a.report->r1->value), 0.0039, 1e-12);
  EXPECT_NEAR(round4(a.report->dr1_given_2->value), 0.0047, 1e-12);
  EXPECT_NEAR(round4(a.report->dr2_given_1->value), 0.0053, 1e-12);
  EXPECT_NEAR(round4(a.report->dalpha->value), 0.0050, 1e-12);
}

TEST(Prediction, ZeroCouplingsGiveZeroAddressability) {
  DeviceParams p = sample_a_params();
  p.m12 = p.m21 = p.mu1 = p.mu2 = p.nu1 = p.nu2 = 0.0;
  p.zeta = 0.0;
  const NoiseModel m = NoiseModel::crosstalk(p);
  const Prediction pr = make_prediction(predict_alphas(m, GroupKind::CxI), predict_alphas(m, GroupKind::IxC),
                                        predict_alphas(m, GroupKind::CxC));
  EXPECT_LT(pr.dr1_given_2, 1e-9);
  EXPECT_LT(pr.dr2_given_1, 1e-9);
  EXPECT_LT(std::abs(pr.dalpha), 1e-9);
  EXPECT_EQ(to_json(pr).size(), 12u);
}

TEST(Prediction, ProductNoiseHasNoAddressabilityError) {
  const NoiseModel m = NoiseModel::depolarizing(0.995, 0.99);
  const Prediction pr = make_prediction(predict_alphas(m, GroupKind::CxI), predict_alphas(m, GroupKind::IxC),
                                        predict_alphas(m, GroupKind::CxC));
  EXPECT_LT(std::abs(pr.dalpha), 1e-12);
  EXPECT_LT(pr.dr1_given_2, 1e-12);
  EXPECT_LT(pr.dr2_given_1, 1e-12);
  EXPECT_GT(pr.r1, 0.0);
}

}  // namespace
}  // namespace rbaddr
