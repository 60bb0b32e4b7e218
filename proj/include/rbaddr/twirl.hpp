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
#include <span>
#include <string>
#include <vector>

#include "rbaddr/clifford.hpp"
#include "rbaddr/ptm.hpp"

namespace rbaddr {

enum class TwirlGroup { Clifford, CxC, CxI, IxC, Pauli };

std::string_view to_string(TwirlGroup g);

/// Depolarizing parameters; only those defined for the twirl group are set.
struct Alphas {
  std::optional<double> full;           // alpha, full Clifford group
  std::optional<double> one_given_two;  // alpha_{1|2}, Pi_1 block under CxC
  std::optional<double> two_given_one;  // alpha_{2|1}, Pi_2 block under CxC
  std::optional<double> both;           // alpha_12, Pi_12 block under CxC
  std::optional<double> one;            // alpha_1 = Gamma_00 under CxI
  std::optional<double> two;            // alpha_2 = Gamma_00 under IxC
};

struct TwirlOutcome {
  Ptm twirled;
  Alphas alphas;
  TwirlGroup group;
};

/// (1/|G|) sum_U R_U^T R R_U. Group PTMs are orthogonal so R_U^T = R_U^{-1}.
Ptm brute_force_twirl(const Ptm& ptm, const CliffordGroup& group);
Ptm brute_force_twirl(const Ptm& ptm, std::span<const Ptm> group_elements);

/// Depolarizing form diag(R_00, alpha, ..., alpha), alpha = Tr(Pi R) / Tr(Pi).
TwirlOutcome twirl_full_clifford(const Ptm& ptm);

/// Block diagonal over Pi_0, Pi_2, Pi_1, Pi_12 (two qubits).
TwirlOutcome twirl_cxc(const Ptm& ptm);

enum class Subsystem { First, Second };

/// The single-subsystem twirl of a two-qubit channel. For the CxI twirl
/// (first subsystem twirled) in doubled indices (i, j) = (qubit 1, qubit 2):
///   W(R)_{ij,kl} = delta_ik * marginal_jl           if i = 0
///   W(R)_{ij,kl} = delta_ik * gamma_jl              otherwise
/// with marginal_jl = R_{0j,0l} (the channel Tr_1[L(I/d_1 (x) rho_2)]) and
/// gamma_jl = sum_{n != 0} R_{nj,nl} / 3. The IxC case swaps the roles.
struct SubsystemTwirlBlocks {
  Subsystem twirled = Subsystem::First;
  Ptm marginal = Ptm::identity(1);
  Matrix gamma = Matrix::Identity(4, 4);

  /// Gamma_00, the depolarizing parameter of the twirled subsystem.
  double alpha() const { return gamma(0, 0); }
  /// Rebuilds the full 16x16 twirled PTM.
  Ptm assemble() const;
};

SubsystemTwirlBlocks twirl_cxi(const Ptm& ptm, Subsystem twirled = Subsystem::First);

TwirlOutcome twirl_subsystem(const Ptm& ptm, Subsystem twirled);

/// Keeps the diagonal of R.
Ptm pauli_twirl(const Ptm& ptm);

/// One irreducible representation with its copies; copy k is the ordered
/// list of Pauli indices v_{j,k,l}. All copies of an irrep must have the same
/// length, and the l-th vectors of different copies must correspond.
struct Irrep {
  std::string name;
  std::vector<std::vector<std::size_t>> copies;
};
using IrrepDecomposition = std::vector<Irrep>;

/// General Schur twirl:
///   sum_j sum_{k,k'} Tr(Q_{jkk'}^T M) / Tr(Q_{jkk'}^T Q_{jkk'}) Q_{jkk'},
///   Q_{jkk'} = sum_l |v_{jkl}><v_{jk'l}|.
Ptm schur_general_twirl(const Ptm& ptm, const IrrepDecomposition& irreps);

/// Hard-coded decompositions of the PTM representation for the standard groups.
IrrepDecomposition standard_decomposition(TwirlGroup group, int num_qubits);

/// (Gamma^m)_00 for every requested m, by repeated multiplication.
std::vector<double> gamma_decay_curve(const SubsystemTwirlBlocks& blocks, std::span<const int> m_values);

}  // namespace rbaddr
