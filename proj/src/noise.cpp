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

#include "rbaddr/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace rbaddr {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kIdle = 6;
constexpr std::size_t kSlotKinds = 7;

using Mat4 = Eigen::Matrix4cd;
using Mat2 = Eigen::Matrix2cd;

Mat4 kron2(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

Mat2 pauli2(Pauli p) { return single_qubit_pauli(p); }

const Ptm& generator_ptm(Generator g) {
  static const std::array<Ptm, 6> table = [] {
    std::array<Ptm, 6> t{Ptm::identity(1), Ptm::identity(1), Ptm::identity(1),
                         Ptm::identity(1), Ptm::identity(1), Ptm::identity(1)};
    for (std::size_t i = 0; i < kGenerators.size(); ++i) {
      // Clifford generators are exact signed permutations; drop float dust.
      Matrix m = ptm_from_unitary(generator_unitary(kGenerators[i])).matrix().array().round().matrix();
      t[i] = Ptm(1, std::move(m));
    }
    return t;
  }();
  return table[static_cast<std::size_t>(g)];
}

Ptm single_or_identity(const std::optional<Generator>& g) {
  return g ? generator_ptm(*g) : Ptm::identity(1);
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(fmt::format("{} must be positive", name));
}

}  // namespace

void DeviceParams::validate() const {
  require_positive(t1_1, "T1 of qubit 1");
  require_positive(t1_2, "T1 of qubit 2");
  require_positive(t2_1, "T2 of qubit 1");
  require_positive(t2_2, "T2 of qubit 2");
  if (t2_1 > 2.0 * t1_1) throw std::invalid_argument("T2 of qubit 1 exceeds 2 T1");
  if (t2_2 > 2.0 * t1_2) throw std::invalid_argument("T2 of qubit 2 exceeds 2 T1");
  if (!(gate_time >= 0.0) || !std::isfinite(gate_time)) throw std::invalid_argument("gate time must be non-negative");
  if (!std::isfinite(omega1) || !std::isfinite(omega2)) throw std::invalid_argument("qubit frequencies must be finite");
  const std::pair<const char*, const std::optional<double>*> couplings[] = {
      {"m12", &m12}, {"m21", &m21}, {"mu1", &mu1}, {"mu2", &mu2}, {"nu1", &nu1}, {"nu2", &nu2}};
  for (const auto& [name, value] : couplings) {
    if (*value && (!std::isfinite(**value) || std::abs(**value) >= 1.0)) {
      throw std::invalid_argument(fmt::format("coupling {} must satisfy |{}| < 1", name, name));
    }
  }
  if (zeta && !std::isfinite(*zeta)) throw std::invalid_argument("zeta must be finite");
}

std::vector<std::string> DeviceParams::missing_crosstalk_parameters() const {
  std::vector<std::string> missing;
  const std::pair<const char*, const std::optional<double>*> fields[] = {
      {"zeta", &zeta}, {"m12", &m12}, {"m21", &m21}, {"mu1", &mu1}, {"mu2", &mu2}, {"nu1", &nu1}, {"nu2", &nu2}};
  for (const auto& [name, value] : fields) {
    if (!*value) missing.emplace_back(name);
  }
  return missing;
}

DeviceParams sample_a_params() {
  DeviceParams p;
  p.omega1 = kTwoPi * 4.9895e9;
  p.omega2 = kTwoPi * 5.0554e9;
  p.t1_1 = 9.7e-6;
  p.t1_2 = 8.2e-6;
  p.t2_1 = 10.3e-6;
  p.t2_2 = 7.1e-6;
  p.zeta = kTwoPi * 1.1e6;
  p.m12 = 0.19;
  p.m21 = 0.32;
  p.mu1 = -0.088;
  p.mu2 = -0.16;
  p.nu1 = -0.025;
  p.nu2 = -0.048;
  p.gate_time = 20e-9;
  return p;
}

DeviceParams sample_b_params() {
  DeviceParams p;
  p.omega1 = kTwoPi * 4.7610e9;
  p.omega2 = kTwoPi * 5.3401e9;
  p.t1_1 = 9.4e-6;
  p.t1_2 = 9.9e-6;
  p.t2_1 = 7.3e-6;
  p.t2_2 = 10.2e-6;
  p.gate_time = 20e-9;
  return p;
}

DriveEnvelope::DriveEnvelope(int target_qubit, Axis axis, double rotation_angle, double gate_time)
    : target_(target_qubit), axis_(axis), angle_(rotation_angle), gate_time_(gate_time) {
  if (target_qubit != 0 && target_qubit != 1) throw std::invalid_argument("drive target must be qubit 0 or 1");
  if (!(gate_time >= 0.0)) throw std::invalid_argument("gate time must be non-negative");
  const double a = shape_area();
  peak_ = a > 0.0 ? rotation_angle / (2.0 * a) : 0.0;
}

DriveEnvelope DriveEnvelope::for_generator(int target_qubit, Generator g, double gate_time) {
  return DriveEnvelope(target_qubit, axis_of(g), angle_of(g), gate_time);
}

double DriveEnvelope::shape(double t) const {
  if (t < 0.0 || t > gate_time_ || gate_time_ == 0.0) return 0.0;
  const double rise = gate_time_ / 4.0;
  const double sigma = rise / 2.0;
  const double g0 = std::exp(-2.0);  // edge value at rise / sigma = 2
  const double u = std::min(t, gate_time_ - t);
  if (u >= rise) return 1.0;
  const double x = u - rise;
  return (std::exp(-x * x / (2.0 * sigma * sigma)) - g0) / (1.0 - g0);
}

double DriveEnvelope::shape_area() const {
  if (gate_time_ == 0.0) return 0.0;
  const double rise = gate_time_ / 4.0;
  const double sigma = rise / 2.0;
  const double g0 = std::exp(-2.0);
  const double gauss = sigma * std::sqrt(std::numbers::pi / 2.0) * std::erf(std::numbers::sqrt2);
  const double edge = (gauss - g0 * rise) / (1.0 - g0);
  return gate_time_ - 2.0 * rise + 2.0 * edge;
}

double DriveEnvelope::amplitude(double t) const { return peak_ * shape(t); }

double DriveEnvelope::area() const { return peak_ * shape_area(); }

namespace {

// Operator a drive from `source` applies as "X" on qubit `q`.
Mat2 drive_operator(const DeviceParams& p, const DriveEnvelope& drive, int q, double t) {
  const double w_drive_source = (drive.target() == 0 ? p.omega1 - p.drive_detuning1 : p.omega2 - p.drive_detuning2);
  const double w_frame_q = (q == 0 ? p.omega1 - p.drive_detuning1 : p.omega2 - p.drive_detuning2);
  const double axis_phase = drive.axis() == Axis::X ? 0.0 : std::numbers::pi / 2.0;
  const double theta = axis_phase - (w_drive_source - w_frame_q) * t;
  return std::cos(theta) * pauli2(Pauli::X) + std::sin(theta) * pauli2(Pauli::Y);
}

Mat4 hamiltonian4(const DeviceParams& p, const DriveEnvelope* d1, const DriveEnvelope* d2, double t) {
  const Mat2 I = Mat2::Identity();
  const Mat2 Z = pauli2(Pauli::Z);
  const double m12 = p.m12.value_or(0.0), m21 = p.m21.value_or(0.0);
  const double mu1 = p.mu1.value_or(0.0), mu2 = p.mu2.value_or(0.0);
  const double nu1 = p.nu1.value_or(0.0), nu2 = p.nu2.value_or(0.0);
  Mat4 h = Mat4::Zero();
  if (d1) {
    const double e1 = d1->amplitude(t);
    const Mat2 x1 = drive_operator(p, *d1, 0, t);
    const Mat2 x2 = drive_operator(p, *d1, 1, t);
    h += e1 * (kron2(x1, I) + (m12 - nu1) * kron2(I, x2) - mu1 * kron2(Z, x2) + m12 * mu2 * kron2(x1, Z));
  }
  if (d2) {
    const double e2 = d2->amplitude(t);
    const Mat2 x1 = drive_operator(p, *d2, 0, t);
    const Mat2 x2 = drive_operator(p, *d2, 1, t);
    h += e2 * (kron2(I, x2) + (m21 + nu2) * kron2(x1, I) + mu2 * kron2(x1, Z) - m21 * mu1 * kron2(Z, x2));
  }
  h -= 0.5 * p.drive_detuning1 * kron2(Z, I);
  h -= 0.5 * p.drive_detuning2 * kron2(I, Z);
  h += 0.25 * p.zeta.value_or(0.0) * kron2(Z, Z);
  return h;
}

Mat4 expm_hermitian(const Mat4& k) {
  Eigen::SelfAdjointEigenSolver<Mat4> solver(k);
  const auto& evals = solver.eigenvalues();
  Eigen::Vector4cd phases;
  for (int i = 0; i < 4; ++i) phases(i) = std::polar(1.0, -evals(i));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Mat4 propagate(const DeviceParams& p, const DriveEnvelope* d1, const DriveEnvelope* d2, int steps) {
  const double h = p.gate_time / steps;
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0, c2 = 0.5 + std::sqrt(3.0) / 6.0;
  const std::complex<double> i{0.0, 1.0};
  Mat4 u = Mat4::Identity();
  for (int s = 0; s < steps; ++s) {
    const double t0 = s * h;
    const Mat4 h1 = hamiltonian4(p, d1, d2, t0 + c1 * h);
    const Mat4 h2 = hamiltonian4(p, d1, d2, t0 + c2 * h);
    const Mat4 comm = h2 * h1 - h1 * h2;
    Mat4 k = 0.5 * h * (h1 + h2) - i * (std::sqrt(3.0) * h * h / 12.0) * comm;
    k = 0.5 * (k + k.adjoint()).eval();
    u = expm_hermitian(k) * u;
  }
  return u;
}

}  // namespace

CMatrix crosstalk_hamiltonian(const DeviceParams& params, const DriveEnvelope* drive1, const DriveEnvelope* drive2,
                              double t) {
  if (drive1 && drive1->target() != 0) throw std::invalid_argument("drive1 must target qubit 1");
  if (drive2 && drive2->target() != 1) throw std::invalid_argument("drive2 must target qubit 2");
  return hamiltonian4(params, drive1, drive2, t);
}

CMatrix evolve_unitary(const DeviceParams& params, std::span<const DriveEnvelope> drives, EvolveOptions options) {
  if (options.steps < 16 || options.steps % 4 != 0) throw std::invalid_argument("steps must be a multiple of 4, at least 16");
  const DriveEnvelope* d[2] = {nullptr, nullptr};
  for (const auto& env : drives) {
    if (d[env.target()]) throw std::invalid_argument("two drives on the same qubit in one slot");
    if (std::abs(env.gate_time() - params.gate_time) > 1e-18) throw std::invalid_argument("envelope does not span the gate time");
    d[env.target()] = &env;
  }
  if (params.gate_time == 0.0) return CMatrix::Identity(4, 4);
  Mat4 prev = propagate(params, d[0], d[1], options.steps);
  for (int steps = options.steps * 2; steps <= options.max_steps; steps *= 2) {
    Mat4 next = propagate(params, d[0], d[1], steps);
    if ((next - prev).cwiseAbs().maxCoeff() < options.tolerance) return next;
    prev = next;
  }
  throw std::runtime_error(fmt::format("gate evolution did not converge within {} steps", options.max_steps));
}

Ptm evolve_to_ptm(const DeviceParams& params, std::span<const DriveEnvelope> drives, EvolveOptions options) {
  const CMatrix u = evolve_unitary(params, drives, options);
  return ptm_from_unitary(u, 1e-9);
}

Ptm decoherence_ptm(double t1, double t2, double t) {
  require_positive(t1, "T1");
  require_positive(t2, "T2");
  if (t < 0.0) throw std::invalid_argument("duration must be non-negative");
  if (t2 > 2.0 * t1) throw std::invalid_argument("T2 may not exceed 2 T1");
  const double gamma = -std::expm1(-t / t1);
  // Remaining transverse decay after amplitude damping's exp(-t / 2T1).
  const double lambda = std::exp(-t * (1.0 / t2 - 0.5 / t1));
  CMatrix k0(2, 2), k1(2, 2);
  k0 = std::sqrt((1.0 + lambda) / 2.0) * CMatrix::Identity(2, 2);
  k1 = std::sqrt((1.0 - lambda) / 2.0) * single_qubit_pauli(Pauli::Z);
  const CMatrix dephasing[] = {k0, k1};
  return compose(ptm_from_kraus(dephasing), amplitude_damping_ptm(gamma));
}

Ptm ideal_gate(const GatePair& gate) {
  return tensor(single_or_identity(gate.q1), single_or_identity(gate.q2));
}

std::size_t gate_pair_code(const GatePair& gate) {
  const std::size_t a = gate.q1 ? static_cast<std::size_t>(*gate.q1) : kIdle;
  const std::size_t b = gate.q2 ? static_cast<std::size_t>(*gate.q2) : kIdle;
  return a * kSlotKinds + b;
}

GatePair gate_pair_from_code(std::size_t code) {
  if (code >= kSlotKinds * kSlotKinds) throw std::out_of_range("gate pair code out of range");
  GatePair g;
  if (code / kSlotKinds != kIdle) g.q1 = kGenerators[code / kSlotKinds];
  if (code % kSlotKinds != kIdle) g.q2 = kGenerators[code % kSlotKinds];
  return g;
}

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::Ideal: return "ideal";
    case NoiseKind::Depolarizing: return "depolarizing";
    case NoiseKind::Decoherence: return "decoherence";
    case NoiseKind::CrossTalk: return "crosstalk";
    case NoiseKind::Composite: return "composite";
  }
  return "?";
}

std::string_view to_string(NoiseGranularity g) {
  return g == NoiseGranularity::PerGenerator ? "per_generator" : "per_clifford";
}

void NoiseModel::build_cache(const std::function<Ptm(const GatePair&)>& make) {
  auto cache = std::make_shared<std::vector<Ptm>>();
  cache->reserve(kSlotKinds * kSlotKinds);
  for (std::size_t code = 0; code < kSlotKinds * kSlotKinds; ++code) cache->push_back(make(gate_pair_from_code(code)));
  cache_ = std::move(cache);
}

NoiseModel NoiseModel::ideal() {
  NoiseModel m;
  m.kind_ = NoiseKind::Ideal;
  m.description_ = "ideal";
  m.build_cache([](const GatePair& g) { return ideal_gate(g); });
  return m;
}

NoiseModel NoiseModel::depolarizing(double alpha1, double alpha2, bool idle_noise) {
  for (double a : {alpha1, alpha2}) {
    if (!(a >= -1.0 / 3.0 && a <= 1.0)) throw std::invalid_argument("depolarizing alpha must lie in [-1/3, 1]");
  }
  NoiseModel m;
  m.kind_ = NoiseKind::Depolarizing;
  m.alpha1_ = alpha1;
  m.alpha2_ = alpha2;
  m.idle_noise_ = idle_noise;
  m.description_ = fmt::format("depolarizing(alpha1={}, alpha2={}, idle_noise={})", alpha1, alpha2, idle_noise);
  m.build_cache([alpha1, alpha2, idle_noise](const GatePair& g) {
    const Ptm e1 = (g.q1 || idle_noise) ? depolarizing_ptm(1, alpha1) : Ptm::identity(1);
    const Ptm e2 = (g.q2 || idle_noise) ? depolarizing_ptm(1, alpha2) : Ptm::identity(1);
    return compose(tensor(e1, e2), ideal_gate(g));
  });
  return m;
}

NoiseModel NoiseModel::decoherence(const DeviceParams& params) {
  params.validate();
  NoiseModel m;
  m.kind_ = NoiseKind::Decoherence;
  m.params_ = params;
  m.description_ = fmt::format("decoherence(T1=({:.4g}, {:.4g}) s, T2=({:.4g}, {:.4g}) s, gate_time={:.4g} s)", params.t1_1,
                               params.t1_2, params.t2_1, params.t2_2, params.gate_time);
  const Ptm err = tensor(decoherence_ptm(params.t1_1, params.t2_1, params.gate_time),
                         decoherence_ptm(params.t1_2, params.t2_2, params.gate_time));
  m.build_cache([&err](const GatePair& g) { return compose(err, ideal_gate(g)); });
  return m;
}

NoiseModel NoiseModel::crosstalk(const DeviceParams& params, EvolveOptions options) {
  params.validate();
  if (const auto missing = params.missing_crosstalk_parameters(); !missing.empty()) {
    throw std::invalid_argument(fmt::format("cross-talk model is missing parameters: {}", fmt::join(missing, ", ")));
  }
  NoiseModel m;
  m.kind_ = NoiseKind::CrossTalk;
  m.params_ = params;
  m.description_ = fmt::format(
      "crosstalk(m12={}, m21={}, mu1={}, mu2={}, nu1={}, nu2={}, zeta/2pi={:.6g} Hz, delta/2pi={:.6g} Hz, gate_time={:.4g} s)",
      *params.m12, *params.m21, *params.mu1, *params.mu2, *params.nu1, *params.nu2, *params.zeta / kTwoPi,
      params.delta() / kTwoPi, params.gate_time);
  m.build_cache([&params, options](const GatePair& g) {
    std::vector<DriveEnvelope> drives;
    if (g.q1) drives.push_back(DriveEnvelope::for_generator(0, *g.q1, params.gate_time));
    if (g.q2) drives.push_back(DriveEnvelope::for_generator(1, *g.q2, params.gate_time));
    return evolve_to_ptm(params, drives, options);
  });
  return m;
}

NoiseModel NoiseModel::composite(std::vector<NoiseModel> parts) {
  if (parts.empty()) throw std::invalid_argument("composite model needs at least one part");
  NoiseModel m;
  m.kind_ = NoiseKind::Composite;
  std::vector<std::string> names;
  for (const auto& p : parts) names.push_back(p.description());
  m.description_ = fmt::format("composite[{}]", fmt::join(names, "; "));
  m.parts_ = std::move(parts);
  const auto& parts_ref = m.parts_;
  m.build_cache([&parts_ref](const GatePair& g) {
    Ptm acc = ideal_gate(g);
    for (const auto& p : parts_ref) acc = compose(p.gate_error(g), acc);
    return acc;
  });
  return m;
}

std::string NoiseModel::description() const { return description_; }

const Ptm& NoiseModel::noisy_gate(const GatePair& gate) const { return (*cache_)[gate_pair_code(gate)]; }

Ptm NoiseModel::gate_error(const GatePair& gate) const {
  return compose(noisy_gate(gate), ideal_gate(gate).transpose());
}

Ptm NoiseModel::clifford_error(std::array<bool, 2> active) const {
  switch (kind_) {
    case NoiseKind::Ideal:
      return Ptm::identity(2);
    case NoiseKind::Depolarizing:
      return tensor((active[0] || idle_noise_) ? depolarizing_ptm(1, alpha1_) : Ptm::identity(1),
                    (active[1] || idle_noise_) ? depolarizing_ptm(1, alpha2_) : Ptm::identity(1));
    case NoiseKind::Decoherence:
      return gate_error(GatePair{});
    case NoiseKind::CrossTalk:
      throw std::invalid_argument("the cross-talk model is only defined per generator");
    case NoiseKind::Composite: {
      Ptm acc = Ptm::identity(2);
      for (const auto& p : parts_) acc = compose(p.clifford_error(active), acc);
      return acc;
    }
  }
  throw std::logic_error("unknown noise kind");
}

std::vector<GatePair> element_slots(const CliffordGroup& group, std::size_t index) {
  if (group.num_qubits() != 2) throw std::invalid_argument("noise models act on two-qubit groups");
  const auto& words = group.element(index).words;
  const std::size_t len = std::max(words[0].size(), words[1].size());
  std::vector<GatePair> slots(len);
  for (std::size_t s = 0; s < len; ++s) {
    if (s < words[0].size()) slots[s].q1 = words[0][s];
    if (s < words[1].size()) slots[s].q2 = words[1][s];
  }
  return slots;
}

Ptm element_channel(const NoiseModel& model, const CliffordGroup& group, std::size_t index,
                    NoiseGranularity granularity) {
  if (granularity == NoiseGranularity::PerClifford) {
    const std::array<bool, 2> active = {group.kind() != GroupKind::IxC, group.kind() != GroupKind::CxI};
    return compose(model.clifford_error(active), group.element(index).ptm);
  }
  Matrix acc = Matrix::Identity(16, 16);
  for (const auto& slot : element_slots(group, index)) acc = model.noisy_gate(slot).matrix() * acc;
  return Ptm(2, std::move(acc));
}

Ptm average_error(const NoiseModel& model, const CliffordGroup& group, NoiseGranularity granularity) {
  Matrix acc = Matrix::Zero(16, 16);
  for (const auto& e : group.elements()) {
    acc += element_channel(model, group, e.index, granularity).matrix() * e.ptm.matrix().transpose();
  }
  return Ptm(2, acc / static_cast<double>(group.size()));
}

TwirlOutcome predict_alphas(const NoiseModel& model, GroupKind group, NoiseGranularity granularity) {
  const Ptm avg = average_error(model, shared_group(group), granularity);
  switch (group) {
    case GroupKind::CxI: return twirl_subsystem(avg, Subsystem::First);
    case GroupKind::IxC: return twirl_subsystem(avg, Subsystem::Second);
    case GroupKind::CxC: return twirl_cxc(avg);
    case GroupKind::C1: break;
  }
  throw std::invalid_argument("predictions are defined for the two-qubit experiment groups");
}

}  // namespace rbaddr
