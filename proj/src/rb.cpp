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

#include "rbaddr/rb.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace rbaddr {

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::Exp1_CxI: return "Exp1_CxI";
    case Experiment::Exp2_IxC: return "Exp2_IxC";
    case Experiment::Exp3_CxC: return "Exp3_CxC";
  }
  return "?";
}

std::string_view to_string(Projection p) {
  switch (p) {
    case Projection::Q1: return "Q1";
    case Projection::Q2: return "Q2";
    case Projection::Corr: return "CORR";
  }
  return "?";
}

std::optional<Experiment> parse_experiment(std::string_view text) {
  for (Experiment e : {Experiment::Exp1_CxI, Experiment::Exp2_IxC, Experiment::Exp3_CxC}) {
    if (to_string(e) == text) return e;
  }
  return std::nullopt;
}

std::optional<Projection> parse_projection(std::string_view text) {
  for (Projection p : {Projection::Q1, Projection::Q2, Projection::Corr}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

GroupKind group_for(Experiment e) {
  switch (e) {
    case Experiment::Exp1_CxI: return GroupKind::CxI;
    case Experiment::Exp2_IxC: return GroupKind::IxC;
    case Experiment::Exp3_CxC: return GroupKind::CxC;
  }
  throw std::invalid_argument("unknown experiment");
}

std::vector<Projection> projections_for(Experiment e) {
  if (e == Experiment::Exp3_CxC) return {Projection::Q1, Projection::Q2, Projection::Corr};
  return {Projection::Q1, Projection::Q2};
}

void SpamModel::validate() const {
  if (prep.num_qubits() != 2 || prep.kind() != PauliVector::Kind::State) {
    throw std::invalid_argument("preparation must be a two-qubit state");
  }
  if (readout.rows() != 4 || readout.cols() != 4) throw std::invalid_argument("readout matrix must be 4x4");
  for (Eigen::Index c = 0; c < 4; ++c) {
    if ((readout.col(c).array() < 0.0).any()) throw std::invalid_argument("readout matrix has negative entries");
    if (std::abs(readout.col(c).sum() - 1.0) > 1e-9) throw std::invalid_argument("readout matrix columns must sum to 1");
  }
}

double Populations::projection(Projection which) const {
  switch (which) {
    case Projection::Q1: return p[0] + p[1];
    case Projection::Q2: return p[0] + p[2];
    case Projection::Corr: return p[0] + p[3];
  }
  return 0.0;
}

void RBConfig::validate() const {
  if (lengths.empty()) throw std::invalid_argument("at least one sequence length is required");
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 1) throw std::invalid_argument("sequence lengths must be at least 1");
    if (i > 0 && lengths[i] <= lengths[i - 1]) throw std::invalid_argument("sequence lengths must be strictly increasing");
  }
  if (K < 2) throw std::invalid_argument("K must be at least 2");
  if (shots && *shots < 1) throw std::invalid_argument("shots must be positive");
  spam.validate();
}

Sequence generate_sequence(const CliffordGroup& group, int m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("sequence length must be at least 1");
  Sequence s;
  s.indices = sample_uniform(group, rng, static_cast<std::size_t>(m));
  s.recovery = recovery_gate(group, s.indices);
  return s;
}

ChannelTable::ChannelTable(const NoiseModel& model, const CliffordGroup& group, NoiseGranularity granularity) {
  channels_.reserve(group.size());
  for (std::size_t i = 0; i < group.size(); ++i) channels_.push_back(element_channel(model, group, i, granularity).matrix());
}

namespace {

Populations measure(const Vector& state, const SpamModel& spam) {
  static const std::array<PauliVector, 4> effects = {PauliVector::basis_effect(2, 0), PauliVector::basis_effect(2, 1),
                                                     PauliVector::basis_effect(2, 2), PauliVector::basis_effect(2, 3)};
  Eigen::Vector4d actual;
  for (int b = 0; b < 4; ++b) actual(b) = effects[static_cast<std::size_t>(b)].coefficients().dot(state);
  const Eigen::Vector4d observed = spam.readout * actual;
  Populations out;
  for (int b = 0; b < 4; ++b) out.p[static_cast<std::size_t>(b)] = observed(b);
  return out;
}

Populations sample_shots(const Populations& exact, int shots, Rng& rng) {
  Populations out;
  int remaining = shots;
  double mass = 1.0;
  for (std::size_t b = 0; b < 3; ++b) {
    const double q = mass > 0.0 ? std::clamp(exact.p[b] / mass, 0.0, 1.0) : 0.0;
    const int count = remaining > 0 ? std::binomial_distribution<int>(remaining, q)(rng) : 0;
    out.p[b] = static_cast<double>(count) / shots;
    remaining -= count;
    mass -= exact.p[b];
  }
  out.p[3] = static_cast<double>(remaining) / shots;
  return out;
}

}  // namespace

Populations simulate_sequence(const ChannelTable& channels, const Sequence& sequence, const SpamModel& spam) {
  Vector x = spam.prep.coefficients();
  for (std::size_t idx : sequence.indices) x = channels[idx] * x;
  x = channels[sequence.recovery] * x;
  return measure(x, spam);
}

Populations simulate_sequence(const CliffordGroup& group, const Sequence& sequence, const NoiseModel& model,
                              const SpamModel& spam, NoiseGranularity granularity) {
  Vector x = spam.prep.coefficients();
  for (std::size_t idx : sequence.indices) x = element_channel(model, group, idx, granularity).matrix() * x;
  x = element_channel(model, group, sequence.recovery, granularity).matrix() * x;
  return measure(x, spam);
}

std::uint64_t derive_seed(std::uint64_t seed, Experiment e, int m, int k) {
  // splitmix64 finalizer applied to each field in turn.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed);
  h = mix(h ^ static_cast<std::uint64_t>(e));
  h = mix(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(m)));
  h = mix(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(k)));
  return h;
}

std::vector<SurvivalCurve> run_experiment(const RBConfig& cfg, const NoiseModel& model) {
  cfg.validate();
  const CliffordGroup& group = shared_group(group_for(cfg.experiment));
  const ChannelTable table(model, group, cfg.granularity);
  const std::vector<Projection> projections = projections_for(cfg.experiment);

  const std::size_t n_len = cfg.lengths.size();
  const auto K = static_cast<std::size_t>(cfg.K);
  std::vector<Populations> results(n_len * K);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < results.size(); task = next++) {
      const int m = cfg.lengths[task / K];
      const int k = static_cast<int>(task % K);
      Rng rng(derive_seed(cfg.seed, cfg.experiment, m, k));
      const Sequence seq = generate_sequence(group, m, rng);
      Populations p = simulate_sequence(table, seq, cfg.spam);
      if (cfg.shots) p = sample_shots(p, *cfg.shots, rng);
      results[task] = p;
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, results.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<SurvivalCurve> curves;
  for (Projection proj : projections) {
    SurvivalCurve curve{cfg.experiment, proj, {}, {}};
    for (std::size_t li = 0; li < n_len; ++li) {
      std::vector<double> values(K);
      for (std::size_t k = 0; k < K; ++k) values[k] = std::clamp(results[li * K + k].projection(proj), 0.0, 1.0);
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(K);
      double ss = 0.0;
      for (double v : values) ss += (v - mean) * (v - mean);
      const double sd = std::sqrt(ss / static_cast<double>(K - 1));
      curve.points.push_back({cfg.lengths[li], mean, sd / std::sqrt(static_cast<double>(K)), cfg.K});
      if (cfg.keep_raw) curve.raw.push_back(std::move(values));
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

double theoretical_decay(const SingleDecay& d, int m) { return d.A * std::pow(d.alpha, m) + d.B; }

double theoretical_decay(const CorrelationDecay& d, int m) {
  return d.A1 * std::pow(d.alpha1_2, m) + d.A2 * std::pow(d.alpha2_1, m) + d.A12 * std::pow(d.alpha12, m) + d.e0;
}

double theoretical_decay(const SubsystemTwirlBlocks& blocks, double A, double e0, int m) {
  const int ms[] = {m};
  return e0 + A * gamma_decay_curve(blocks, ms).front();
}

DecayCoefficients decay_coefficients(const PauliVector& effect, const PauliVector& state) {
  if (effect.num_qubits() != 2 || state.num_qubits() != 2) throw std::invalid_argument("two-qubit vectors required");
  DecayCoefficients c;
  c.e0 = effect[0] * state[0];
  const SubspaceProjector p1(Subspace::Qubit1, 2), p2(Subspace::Qubit2, 2), p12(Subspace::Both, 2);
  for (std::size_t j = 1; j < 16; ++j) {
    const double w = effect[j] * state[j];
    if (p1.contains(j)) c.A1 += w;
    if (p2.contains(j)) c.A2 += w;
    if (p12.contains(j)) c.A12 += w;
  }
  return c;
}

PauliVector projection_effect(Projection which) {
  std::array<std::uint32_t, 2> bits{};
  switch (which) {
    case Projection::Q1: bits = {0, 1}; break;
    case Projection::Q2: bits = {0, 2}; break;
    case Projection::Corr: bits = {0, 3}; break;
  }
  Vector e = PauliVector::basis_effect(2, bits[0]).coefficients() + PauliVector::basis_effect(2, bits[1]).coefficients();
  return PauliVector(PauliVector::Kind::Effect, 2, std::move(e));
}

}  // namespace rbaddr
