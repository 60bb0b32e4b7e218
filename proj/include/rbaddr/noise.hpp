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
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbaddr/clifford.hpp"
#include "rbaddr/ptm.hpp"
#include "rbaddr/twirl.hpp"

namespace rbaddr {

/// Two-qubit device description in SI units (rad/s and s).
///
/// The cross-talk couplings are optional because some devices are only
/// partially characterized; the CrossTalk model refuses to run without them.
struct DeviceParams {
  double omega1 = 0.0;  // qubit transition angular frequencies
  double omega2 = 0.0;
  double t1_1 = 0.0;  // relaxation times
  double t1_2 = 0.0;
  double t2_1 = 0.0;  // dephasing times
  double t2_2 = 0.0;
  std::optional<double> zeta;  // ZZ shift
  std::optional<double> m12;   // classical cross-talk, drive 1 onto qubit 2
  std::optional<double> m21;   // classical cross-talk, drive 2 onto qubit 1
  std::optional<double> mu1;   // cross-resonance couplings (J / Delta)
  std::optional<double> mu2;
  std::optional<double> nu1;  // off-resonant drive corrections
  std::optional<double> nu2;
  double gate_time = 20e-9;  // one generator pulse
  // Drive frequency offsets from the qubit frequencies (omega_q - omega_drive).
  double drive_detuning1 = 0.0;
  double drive_detuning2 = 0.0;

  /// omega1 - omega2.
  double delta() const { return omega1 - omega2; }

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
  bool has_decoherence() const { return t1_1 > 0 && t1_2 > 0 && t2_1 > 0 && t2_2 > 0; }
  /// Names of unset cross-talk parameters, in declaration order.
  std::vector<std::string> missing_crosstalk_parameters() const;
};

DeviceParams sample_a_params();
/// Frequencies and coherence times only; couplings and zeta are unknown.
DeviceParams sample_b_params();

/// Shaped drive on one qubit: flat top with Gaussian edges, each edge a
/// quarter of the gate, amplitude calibrated so that the integral of the
/// envelope equals half of the rotation angle (H = eps X rotates by 2 int eps).
class DriveEnvelope {
 public:
  DriveEnvelope(int target_qubit, Axis axis, double rotation_angle, double gate_time);
  static DriveEnvelope for_generator(int target_qubit, Generator g, double gate_time);

  int target() const { return target_; }
  Axis axis() const { return axis_; }
  double rotation_angle() const { return angle_; }
  double gate_time() const { return gate_time_; }
  double peak_amplitude() const { return peak_; }

  /// eps(t) in rad/s, zero outside [0, gate_time].
  double amplitude(double t) const;
  /// Exact integral of eps over [0, gate_time].
  double area() const;

 private:
  double shape(double t) const;
  double shape_area() const;

  int target_;
  Axis axis_;
  double angle_;
  double gate_time_;
  double peak_ = 0.0;
};

/// Two-qubit Hamiltonian in the frame rotating with both drives.
///
///   H = e1 [XI + (m12 - nu1) IX - mu1 ZX + m12 mu2 XZ]
///     + e2 [IX + (m21 + nu2) XI + mu2 XZ - m21 mu1 ZX]
///     - w1' ZI / 2 - w2' IZ / 2 + zeta ZZ / 4
///
/// An "X" that a drive applies to qubit q is resolved into X cos(th) + Y sin(th)
/// with th = axis phase (0 for X, pi/2 for Y) - (w_drive - w_drive_q) t, so terms
/// that land on the other qubit rotate at +-Delta and only contribute through
/// off-resonant (Stark-like) dynamics. w' are the residual drive detunings.
CMatrix crosstalk_hamiltonian(const DeviceParams& params, const DriveEnvelope* drive1, const DriveEnvelope* drive2,
                              double t);

struct EvolveOptions {
  int steps = 64;         // initial steps per gate, a multiple of 4
  int max_steps = 16384;  // doubling cap
  double tolerance = 1e-10;
};

/// Time-ordered propagator over one gate_time using fourth-order Magnus
/// steps; step count doubles until the result moves by less than tolerance.
CMatrix evolve_unitary(const DeviceParams& params, std::span<const DriveEnvelope> drives, EvolveOptions options = {});
Ptm evolve_to_ptm(const DeviceParams& params, std::span<const DriveEnvelope> drives, EvolveOptions options = {});

/// Amplitude damping (gamma = 1 - exp(-t/T1)) followed by pure dephasing so
/// the transverse diagonal decays as exp(-t/T2).
Ptm decoherence_ptm(double t1, double t2, double t);

/// One time slot: an optional generator on each qubit (nullopt = idle).
struct GatePair {
  std::optional<Generator> q1;
  std::optional<Generator> q2;
  friend bool operator==(const GatePair&, const GatePair&) = default;
};

/// Ideal PTM of a slot.
Ptm ideal_gate(const GatePair& gate);

enum class NoiseKind { Ideal, Depolarizing, Decoherence, CrossTalk, Composite };

std::string_view to_string(NoiseKind kind);

/// Per-gate error channel generator. Deterministic and immutable; gate
/// channels for all 49 slot combinations are built at construction.
class NoiseModel {
 public:
  static NoiseModel ideal();
  /// Depolarizing dep(alpha_k) on qubit k after each pulse it plays. When
  /// idle_noise is set, idle slots are depolarized as well.
  static NoiseModel depolarizing(double alpha1, double alpha2, bool idle_noise = false);
  static NoiseModel decoherence(const DeviceParams& params);
  static NoiseModel crosstalk(const DeviceParams& params, EvolveOptions options = {});
  /// Error factors applied in order after the ideal gate.
  static NoiseModel composite(std::vector<NoiseModel> parts);

  NoiseKind kind() const { return kind_; }
  std::string description() const;
  const std::vector<NoiseModel>& parts() const { return parts_; }

  /// Noisy channel of one slot.
  const Ptm& noisy_gate(const GatePair& gate) const;
  /// Error channel of one slot: noisy * ideal^T.
  Ptm gate_error(const GatePair& gate) const;

  /// Single error channel for one Clifford, used in per-Clifford mode.
  /// `active` marks the qubits the group acts on.
  Ptm clifford_error(std::array<bool, 2> active) const;

 private:
  NoiseModel() = default;
  void build_cache(const std::function<Ptm(const GatePair&)>& make);

  NoiseKind kind_ = NoiseKind::Ideal;
  std::string description_;
  std::vector<NoiseModel> parts_;
  double alpha1_ = 1.0, alpha2_ = 1.0;
  bool idle_noise_ = false;
  std::optional<DeviceParams> params_;
  std::shared_ptr<const std::vector<Ptm>> cache_;
};

std::size_t gate_pair_code(const GatePair& gate);
GatePair gate_pair_from_code(std::size_t code);

enum class NoiseGranularity { PerGenerator, PerClifford };

std::string_view to_string(NoiseGranularity g);

/// Noisy channel of a whole group element: per generator slot (words padded
/// with trailing idles to equal length) or one error per Clifford.
Ptm element_channel(const NoiseModel& model, const CliffordGroup& group, std::size_t index,
                    NoiseGranularity granularity = NoiseGranularity::PerGenerator);

/// Slots played for a group element, after padding.
std::vector<GatePair> element_slots(const CliffordGroup& group, std::size_t index);

/// Exact group average of the per-element error channels
/// Lambda_i = noisy(i) * ideal(i)^T.
Ptm average_error(const NoiseModel& model, const CliffordGroup& group,
                  NoiseGranularity granularity = NoiseGranularity::PerGenerator);

/// Analytic twirl of the averaged error channel for the group's experiment:
/// CxI -> alpha_1, IxC -> alpha_2, CxC -> alpha_{1|2}, alpha_{2|1}, alpha_12.
TwirlOutcome predict_alphas(const NoiseModel& model, GroupKind group,
                            NoiseGranularity granularity = NoiseGranularity::PerGenerator);

}  // namespace rbaddr
