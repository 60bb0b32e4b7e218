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

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rbaddr/clifford.hpp"
#include "rbaddr/noise.hpp"
#include "rbaddr/ptm.hpp"
#include "rbaddr/twirl.hpp"

namespace rbaddr {

/// The three addressability experiments: RB on qubit 1 with qubit 2 idle,
/// the mirror image, and simultaneous RB on both.
enum class Experiment : std::uint8_t { Exp1_CxI, Exp2_IxC, Exp3_CxC };

/// Survival observables. Q1 = p00 + p01 (qubit 2 traced out), Q2 = p00 + p10,
/// Corr = p00 + p11.
enum class Projection : std::uint8_t { Q1, Q2, Corr };

std::string_view to_string(Experiment e);
std::string_view to_string(Projection p);
std::optional<Experiment> parse_experiment(std::string_view text);
std::optional<Projection> parse_projection(std::string_view text);

GroupKind group_for(Experiment e);
/// Q1, Q2, plus Corr for the simultaneous experiment.
std::vector<Projection> projections_for(Experiment e);

/// Preparation state and classical readout confusion.
struct SpamModel {
  PauliVector prep = PauliVector::basis_state(2, 0);
  /// readout(observed, actual), column-stochastic, outcomes ordered 00, 01, 10, 11.
  Matrix readout = Matrix::Identity(4, 4);

  void validate() const;
};

/// Outcome probabilities p00, p01, p10, p11 (qubit 1 is the left bit).
struct Populations {
  std::array<double, 4> p{};

  double projection(Projection which) const;
  double sum() const { return p[0] + p[1] + p[2] + p[3]; }
};

struct RBConfig {
  std::vector<int> lengths = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512};
  int K = 50;
  Experiment experiment = Experiment::Exp3_CxC;
  std::uint64_t seed = 0;
  SpamModel spam;
  NoiseGranularity granularity = NoiseGranularity::PerGenerator;
  std::optional<int> shots;  // unset: exact expectation values
  bool keep_raw = false;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

struct CurvePoint {
  int m = 0;
  double mean = 0.0;
  double std_err = 0.0;  // sample standard deviation / sqrt(K)
  int K = 0;
};

struct SurvivalCurve {
  Experiment experiment = Experiment::Exp3_CxC;
  Projection projection = Projection::Q1;
  std::vector<CurvePoint> points;
  std::vector<std::vector<double>> raw;  // per point, per sequence (optional)
};

struct Sequence {
  std::vector<std::size_t> indices;
  std::size_t recovery = 0;
};

/// m uniformly random elements followed by the inverse of their product.
Sequence generate_sequence(const CliffordGroup& group, int m, Rng& rng);

/// Noisy channels of every group element, shared by all sequences of a run.
class ChannelTable {
 public:
  ChannelTable(const NoiseModel& model, const CliffordGroup& group, NoiseGranularity granularity);
  const Matrix& operator[](std::size_t index) const { return channels_[index]; }
  std::size_t size() const { return channels_.size(); }

 private:
  std::vector<Matrix> channels_;
};

Populations simulate_sequence(const ChannelTable& channels, const Sequence& sequence, const SpamModel& spam);
Populations simulate_sequence(const CliffordGroup& group, const Sequence& sequence, const NoiseModel& model,
                              const SpamModel& spam, NoiseGranularity granularity = NoiseGranularity::PerGenerator);

/// Per-sequence RNG seed; depends only on its arguments.
std::uint64_t derive_seed(std::uint64_t seed, Experiment e, int m, int k);

/// Runs one experiment. Results do not depend on the thread count.
std::vector<SurvivalCurve> run_experiment(const RBConfig& cfg, const NoiseModel& model);

/// A alpha^m + B.
struct SingleDecay {
  double A = 0.0, alpha = 1.0, B = 0.0;
};

/// A1 alpha_{1|2}^m + A2 alpha_{2|1}^m + A12 alpha_12^m + e0.
struct CorrelationDecay {
  double A1 = 0.0, A2 = 0.0, A12 = 0.0;
  double alpha1_2 = 1.0, alpha2_1 = 1.0, alpha12 = 1.0;
  double e0 = 0.0;
};

double theoretical_decay(const SingleDecay& d, int m);
double theoretical_decay(const CorrelationDecay& d, int m);
/// e0 + A (Gamma^m)_00.
double theoretical_decay(const SubsystemTwirlBlocks& blocks, double A, double e0, int m);

/// Pauli-basis overlaps of an effect and a state over the CxC blocks.
struct DecayCoefficients {
  double e0 = 0.0, A1 = 0.0, A2 = 0.0, A12 = 0.0;
};
DecayCoefficients decay_coefficients(const PauliVector& effect, const PauliVector& state);

/// Effect operator of a projection, as a Pauli vector.
PauliVector projection_effect(Projection which);

}  // namespace rbaddr
