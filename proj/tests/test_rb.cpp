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

#include "rbaddr/rb.hpp"

namespace rbaddr {
namespace {

const SurvivalCurve& find_curve(const std::vector<SurvivalCurve>& curves, Experiment e, Projection p) {
  for (const auto& c : curves) {
    if (c.experiment == e && c.projection == p) return c;
  }
  throw std::runtime_error("curve not found");
}

TEST(Names, RoundTrip) {
  for (Experiment e : {Experiment::Exp1_CxI, Experiment::Exp2_IxC, Experiment::Exp3_CxC}) {
    EXPECT_EQ(parse_experiment(to_string(e)), e);
  }
  for (Projection p : {Projection::Q1, Projection::Q2, Projection::Corr}) EXPECT_EQ(parse_projection(to_string(p)), p);
  EXPECT_EQ(to_string(Projection::Corr), "CORR");
  EXPECT_FALSE(parse_experiment("Exp4").has_value());
  EXPECT_EQ(projections_for(Experiment::Exp1_CxI).size(), 2u);
  EXPECT_EQ(projections_for(Experiment::Exp3_CxC).size(), 3u);
}

TEST(RBConfig, Validation) {
  RBConfig c;
  EXPECT_NO_THROW(c.validate());
  c.lengths = {1, 4, 4};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.lengths = {0, 2};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.lengths = {1, 2};
  c.K = 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Sequences, RecoveryAndDeterminism) {
  const CliffordGroup& g = shared_group(GroupKind::CxC);
  Rng rng(1);
  for (int s = 0; s < 100; ++s) {
    const Sequence seq = generate_sequence(g, 1 + s % 40, rng);
    std::size_t acc = 0;
    for (std::size_t i : seq.indices) acc = g.multiply(i, acc);
    EXPECT_EQ(g.multiply(seq.recovery, acc), 0u);
  }
  Rng a(5);
  const Sequence one = generate_sequence(g, 1, a);
  EXPECT_EQ(one.recovery, g.inverse(one.indices[0]));
  Rng c(9), d(9);
  EXPECT_EQ(generate_sequence(g, 30, c).indices, generate_sequence(g, 30, d).indices);
}

TEST(SimulateSequence, IdealModelStaysInGround) {
  const CliffordGroup& g = shared_group(GroupKind::CxC);
  Rng rng(2);
  const Sequence seq = generate_sequence(g, 25, rng);
  const Populations p = simulate_sequence(g, seq, NoiseModel::ideal(), SpamModel{});
  EXPECT_NEAR(p.p[0], 1.0, 1e-12);
  EXPECT_NEAR(p.sum(), 1.0, 1e-12);
}

TEST(SimulateSequence, DepolarizingMatchesPulseCount) {
  const double a = 0.99;
  const CliffordGroup& g = shared_group(GroupKind::CxC);
  const NoiseModel model = NoiseModel::depolarizing(a, 1.0);
  Rng rng(3);
  for (int s = 0; s < 20; ++s) {
    const Sequence seq = generate_sequence(g, 10 + s, rng);
    std::size_t pulses = g.element(seq.recovery).words[0].size();
    for (std::size_t i : seq.indices) pulses += g.element(i).words[0].size();
    const Populations p = simulate_sequence(g, seq, model, SpamModel{});
    EXPECT_NEAR(p.projection(Projection::Q1), (1 + std::pow(a, static_cast<double>(pulses))) / 2, 1e-12);
    EXPECT_NEAR(p.projection(Projection::Q2), 1.0, 1e-12);
  }
}

TEST(SimulateSequence, FullyDepolarizingGivesUniformPopulations) {
  const CliffordGroup& g = shared_group(GroupKind::CxC);
  const NoiseModel model = NoiseModel::depolarizing(0.0, 0.0, true);
  Rng rng(4);
  const Populations p = simulate_sequence(g, generate_sequence(g, 5, rng), model, SpamModel{});
  for (double v : p.p) EXPECT_NEAR(v, 0.25, 1e-12);
}

TEST(SimulateSequence, TableMatchesDirectPath) {
  const CliffordGroup& g = shared_group(GroupKind::CxC);
  const NoiseModel model = NoiseModel::decoherence(sample_a_params());
  const ChannelTable table(model, g, NoiseGranularity::PerGenerator);
  Rng rng(5);
  const Sequence seq = generate_sequence(g, 40, rng);
  const Populations a = simulate_sequence(table, seq, SpamModel{});
  const Populations b = simulate_sequence(g, seq, model, SpamModel{});
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(a.p[i], b.p[i], 1e-13);
    EXPECT_GE(a.p[i], -1e-12);
  }
  EXPECT_NEAR(a.sum(), 1.0, 1e-9);
}

TEST(Spam, ReadoutMustBeColumnStochastic) {
  SpamModel s;
  s.readout(0, 0) = 0.9;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.readout(1, 0) = 0.1;
  EXPECT_NO_THROW(s.validate());
}

TEST(DeriveSeed, DistinctPerField) {
  const auto base = derive_seed(7, Experiment::Exp1_CxI, 4, 0);
  EXPECT_EQ(base, derive_seed(7, Experiment::Exp1_CxI, 4, 0));
  EXPECT_NE(base, derive_seed(8, Experiment::Exp1_CxI, 4, 0));
  EXPECT_NE(base, derive_seed(7, Experiment::Exp2_IxC, 4, 0));
  EXPECT_NE(base, derive_seed(7, Experiment::Exp1_CxI, 8, 0));
  EXPECT_NE(base, derive_seed(7, Experiment::Exp1_CxI, 4, 1));
}

TEST(RunExperiment, IdealCurvesAreConstant) {
  RBConfig cfg;
  cfg.lengths = {1, 8, 32};
  cfg.K = 5;
  for (Experiment e : {Experiment::Exp1_CxI, Experiment::Exp2_IxC, Experiment::Exp3_CxC}) {
    cfg.experiment = e;
    for (const auto& c : run_experiment(cfg, NoiseModel::ideal())) {
      for (const auto& pt : c.points) {
        EXPECT_NEAR(pt.mean, 1.0, 1e-12);
        EXPECT_NEAR(pt.std_err, 0.0, 1e-12);
        EXPECT_EQ(pt.K, 5);
      }
    }
  }
}

TEST(RunExperiment, IndependentOfThreadCount) {
  RBConfig cfg;
  cfg.lengths = {1, 4, 16, 64};
  cfg.K = 12;
  cfg.seed = 42;
  cfg.keep_raw = true;
  const NoiseModel model = NoiseModel::depolarizing(0.995, 0.99);
  cfg.threads = 1;
  const auto a = run_experiment(cfg, model);
  cfg.threads = 4;
  const auto b = run_experiment(cfg, model);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t c = 0; c < a.size(); ++c) {
    EXPECT_EQ(a[c].raw, b[c].raw);
    for (std::size_t i = 0; i < a[c].points.size(); ++i) EXPECT_EQ(a[c].points[i].mean, b[c].points[i].mean);
  }
}

TEST(RunExperiment, StdErrIsSampleDeviationOverRootK) {
  RBConfig cfg;
  cfg.lengths = {8, 32};
  cfg.K = 10;
  cfg.keep_raw = true;
  const auto curves = run_experiment(cfg, NoiseModel::depolarizing(0.98, 0.97));
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const auto& raw = c.raw[i];
      double mean = 0.0;
      for (double v : raw) mean += v;
      mean /= static_cast<double>(raw.size());
      double ss = 0.0;
      for (double v : raw) ss += (v - mean) * (v - mean);
      EXPECT_NEAR(c.points[i].mean, mean, 1e-14);
      EXPECT_NEAR(c.points[i].std_err, std::sqrt(ss / (raw.size() - 1)) / std::sqrt(raw.size()), 1e-14);
    }
  }
}

TEST(RunExperiment, DepolarizingMeanMatchesTheory) {
  // Gate-independent noise: the mean curve follows 0.5 alpha^m + 0.5 within 3 standard errors.
  const double ag = 0.995;
  const NoiseModel model = NoiseModel::depolarizing(ag, ag);
  RBConfig cfg;
  cfg.lengths = {1, 4, 16, 64, 128};
  cfg.K = 40;
  cfg.seed = 9;
  cfg.experiment = Experiment::Exp1_CxI;
  const double alpha = *predict_alphas(model, GroupKind::CxI).alphas.one;
  const auto curves = run_experiment(cfg, model);
  const auto& c = find_curve(curves, Experiment::Exp1_CxI, Projection::Q1);
  for (const auto& pt : c.points) {
    // Recovery gate adds its own pulses; allow for one extra Clifford.
    const double lo = 0.5 * std::pow(alpha, pt.m + 1) + 0.5, hi = 0.5 * std::pow(alpha, pt.m) + 0.5;
    EXPECT_GT(pt.mean, lo - 3 * pt.std_err - 1e-12) << pt.m;
    EXPECT_LT(pt.mean, hi + 3 * pt.std_err + 1e-12) << pt.m;
  }
}

TEST(RunExperiment, ShotNoiseStaysInRange) {
  RBConfig cfg;
  cfg.lengths = {1, 16};
  cfg.K = 4;
  cfg.shots = 100;
  for (const auto& c : run_experiment(cfg, NoiseModel::depolarizing(0.99, 0.99))) {
    for (const auto& pt : c.points) {
      EXPECT_GE(pt.mean, 0.0);
      EXPECT_LE(pt.mean, 1.0);
      // Multiples of 1/shots averaged over K sequences.
      EXPECT_NEAR(pt.mean * 400, std::round(pt.mean * 400), 1e-9);
    }
  }
}

TEST(TheoreticalDecay, Forms) {
  EXPECT_EQ(theoretical_decay(SingleDecay{0.5, 1.0, 0.5}, 17), 1.0);
  CorrelationDecay d{0.25, 0.25, 0.0, 0.9, 0.8, 0.7, 0.25};
  EXPECT_NEAR(theoretical_decay(d, 3), 0.25 * std::pow(0.9, 3) + 0.25 * std::pow(0.8, 3) + 0.25, 1e-15);
  const SubsystemTwirlBlocks b = twirl_cxi(tensor(depolarizing_ptm(1, 0.9), Ptm::identity(1)));
  EXPECT_NEAR(theoretical_decay(b, 0.5, 0.5, 4), 0.5 * std::pow(0.9, 4) + 0.5, 1e-14);
}

TEST(DecayCoefficients, GroundStateProjector) {
  const PauliVector e00 = PauliVector::basis_effect(2, 0);
  const PauliVector r00 = PauliVector::basis_state(2, 0);
  const DecayCoefficients c = decay_coefficients(e00, r00);
  EXPECT_NEAR(c.e0, 0.25, 1e-15);
  EXPECT_NEAR(c.A1, 0.25, 1e-15);
  EXPECT_NEAR(c.A2, 0.25, 1e-15);
  EXPECT_NEAR(c.A12, 0.25, 1e-15);
  const DecayCoefficients q1 = decay_coefficients(projection_effect(Projection::Q1), r00);
  EXPECT_NEAR(q1.e0, 0.5, 1e-15);
  EXPECT_NEAR(q1.A1, 0.5, 1e-15);
  EXPECT_NEAR(q1.A2, 0.0, 1e-15);
  EXPECT_NEAR(q1.A12, 0.0, 1e-15);
  const DecayCoefficients corr = decay_coefficients(projection_effect(Projection::Corr), r00);
  EXPECT_NEAR(corr.A12, 0.5, 1e-15);
  EXPECT_NEAR(corr.A1 + corr.A2, 0.0, 1e-15);
}

}  // namespace
}  // namespace rbaddr
