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

#include "rbaddr/twirl.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace rbaddr {

std::string_view to_string(TwirlGroup g) {
  switch (g) {
    case TwirlGroup::Clifford: return "C";
    case TwirlGroup::CxC: return "CxC";
    case TwirlGroup::CxI: return "CxI";
    case TwirlGroup::IxC: return "IxC";
    case TwirlGroup::Pauli: return "Pauli";
  }
  return "?";
}

Ptm brute_force_twirl(const Ptm& ptm, const CliffordGroup& group) {
  if (group.num_qubits() != ptm.num_qubits()) throw std::invalid_argument("group and channel dimensions differ");
  Matrix acc = Matrix::Zero(static_cast<Eigen::Index>(ptm.dim()), static_cast<Eigen::Index>(ptm.dim()));
  for (const auto& e : group.elements()) acc.noalias() += e.ptm.matrix().transpose() * ptm.matrix() * e.ptm.matrix();
  return Ptm(ptm.num_qubits(), acc / static_cast<double>(group.size()));
}

Ptm brute_force_twirl(const Ptm& ptm, std::span<const Ptm> group_elements) {
  if (group_elements.empty()) throw std::invalid_argument("empty group");
  Matrix acc = Matrix::Zero(static_cast<Eigen::Index>(ptm.dim()), static_cast<Eigen::Index>(ptm.dim()));
  for (const auto& u : group_elements) {
    if (u.num_qubits() != ptm.num_qubits()) throw std::invalid_argument("group and channel dimensions differ");
    acc.noalias() += u.matrix().transpose() * ptm.matrix() * u.matrix();
  }
  return Ptm(ptm.num_qubits(), acc / static_cast<double>(group_elements.size()));
}

TwirlOutcome twirl_full_clifford(const Ptm& ptm) {
  const double alpha = project(ptm, SubspaceProjector(Subspace::NonIdentity, ptm.num_qubits()));
  Ptm out = depolarizing_ptm(ptm.num_qubits(), alpha);
  Matrix m = out.matrix();
  m(0, 0) = ptm(0, 0);
  TwirlOutcome result{Ptm(ptm.num_qubits(), std::move(m)), {}, TwirlGroup::Clifford};
  result.alphas.full = alpha;
  return result;
}

TwirlOutcome twirl_cxc(const Ptm& ptm) {
  if (ptm.num_qubits() != 2) throw std::invalid_argument("CxC twirl needs a two-qubit channel");
  const SubspaceProjector p1(Subspace::Qubit1, 2), p2(Subspace::Qubit2, 2), p12(Subspace::Both, 2);
  const double a12 = project(ptm, p1);
  const double a21 = project(ptm, p2);
  const double both = project(ptm, p12);
  Vector diag = a12 * p1.diagonal() + a21 * p2.diagonal() + both * p12.diagonal();
  diag(0) = ptm(0, 0);
  TwirlOutcome result{Ptm(2, diag.asDiagonal()), {}, TwirlGroup::CxC};
  result.alphas.one_given_two = a12;
  result.alphas.two_given_one = a21;
  result.alphas.both = both;
  return result;
}

namespace {
// Flat index of the two-qubit label (twirled, spectator) for a given layout.
std::size_t flat(Subsystem twirled, std::size_t t, std::size_t s) {
  return twirled == Subsystem::First ? 4 * t + s : 4 * s + t;
}
}  // namespace

Ptm SubsystemTwirlBlocks::assemble() const {
  Matrix out = Matrix::Zero(16, 16);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t l = 0; l < 4; ++l) {
      const auto jj = static_cast<Eigen::Index>(j), ll = static_cast<Eigen::Index>(l);
      out(flat(twirled, 0, j), flat(twirled, 0, l)) = marginal(j, l);
      for (std::size_t n = 1; n < 4; ++n) out(flat(twirled, n, j), flat(twirled, n, l)) = gamma(jj, ll);
    }
  }
  return Ptm(2, std::move(out));
}

SubsystemTwirlBlocks twirl_cxi(const Ptm& ptm, Subsystem twirled) {
  if (ptm.num_qubits() != 2) throw std::invalid_argument("subsystem twirl needs a two-qubit channel");
  Matrix marginal(4, 4);
  Matrix gamma = Matrix::Zero(4, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t l = 0; l < 4; ++l) {
      const auto jj = static_cast<Eigen::Index>(j), ll = static_cast<Eigen::Index>(l);
      marginal(jj, ll) = ptm(flat(twirled, 0, j), flat(twirled, 0, l));
      for (std::size_t n = 1; n < 4; ++n) gamma(jj, ll) += ptm(flat(twirled, n, j), flat(twirled, n, l));
    }
  }
  gamma /= 3.0;
  return SubsystemTwirlBlocks{twirled, Ptm(1, std::move(marginal)), std::move(gamma)};
}

TwirlOutcome twirl_subsystem(const Ptm& ptm, Subsystem twirled) {
  const SubsystemTwirlBlocks blocks = twirl_cxi(ptm, twirled);
  TwirlOutcome out{blocks.assemble(), {}, twirled == Subsystem::First ? TwirlGroup::CxI : TwirlGroup::IxC};
  if (twirled == Subsystem::First) {
    out.alphas.one = blocks.alpha();
  } else {
    out.alphas.two = blocks.alpha();
  }
  return out;
}

Ptm pauli_twirl(const Ptm& ptm) {
  return Ptm(ptm.num_qubits(), ptm.matrix().diagonal().asDiagonal());
}

Ptm schur_general_twirl(const Ptm& ptm, const IrrepDecomposition& irreps) {
  const auto d2 = static_cast<Eigen::Index>(ptm.dim());
  const Matrix& m = ptm.matrix();
  Matrix out = Matrix::Zero(d2, d2);
  for (const auto& irrep : irreps) {
    if (irrep.copies.empty()) throw std::invalid_argument(fmt::format("irrep '{}' has no copies", irrep.name));
    const std::size_t dim = irrep.copies.front().size();
    for (const auto& copy : irrep.copies) {
      if (copy.size() != dim || dim == 0) {
        throw std::invalid_argument(fmt::format("irrep '{}' has copies of inconsistent dimension", irrep.name));
      }
      for (std::size_t v : copy) {
        if (v >= ptm.dim()) throw std::invalid_argument(fmt::format("irrep '{}' index {} out of range", irrep.name, v));
      }
    }
    for (const auto& ck : irrep.copies) {
      for (const auto& ckp : irrep.copies) {
        // Q = sum_l |ck[l]><ckp[l]|; Tr(Q^T M) = sum_l M(ck[l], ckp[l]), Tr(Q^T Q) = dim.
        double overlap = 0.0;
        for (std::size_t l = 0; l < dim; ++l) overlap += m(ck[l], ckp[l]);
        const double coeff = overlap / static_cast<double>(dim);
        for (std::size_t l = 0; l < dim; ++l) out(ck[l], ckp[l]) += coeff;
      }
    }
  }
  return Ptm(ptm.num_qubits(), std::move(out));
}

IrrepDecomposition standard_decomposition(TwirlGroup group, int num_qubits) {
  const std::size_t d2 = pauli_count(num_qubits);
  IrrepDecomposition out;
  switch (group) {
    case TwirlGroup::Clifford: {
      std::vector<std::size_t> rest;
      for (std::size_t k = 1; k < d2; ++k) rest.push_back(k);
      out.push_back({"trivial", {{0}}});
      out.push_back({"sigma", {rest}});
      return out;
    }
    case TwirlGroup::Pauli:
      for (std::size_t k = 0; k < d2; ++k) out.push_back({PauliLabel(num_qubits, k).str(), {{k}}});
      return out;
    case TwirlGroup::CxC: {
      if (num_qubits != 2) break;
      for (Subspace s : {Subspace::Identity, Subspace::Qubit2, Subspace::Qubit1, Subspace::Both}) {
        out.push_back({std::string(to_string(s)), {SubspaceProjector(s, 2).indices()}});
      }
      return out;
    }
    case TwirlGroup::CxI:
    case TwirlGroup::IxC: {
      if (num_qubits != 2) break;
      const Subsystem t = group == TwirlGroup::CxI ? Subsystem::First : Subsystem::Second;
      Irrep trivial{"trivial", {}};
      Irrep sigma{"sigma", {}};
      for (std::size_t s = 0; s < 4; ++s) {
        trivial.copies.push_back({flat(t, 0, s)});
        sigma.copies.push_back({flat(t, 1, s), flat(t, 2, s), flat(t, 3, s)});
      }
      out.push_back(std::move(trivial));
      out.push_back(std::move(sigma));
      return out;
    }
  }
  throw std::invalid_argument(fmt::format("no decomposition for {} on {} qubits", to_string(group), num_qubits));
}

std::vector<double> gamma_decay_curve(const SubsystemTwirlBlocks& blocks, std::span<const int> m_values) {
  if (blocks.gamma.rows() != blocks.gamma.cols()) throw std::invalid_argument("gamma must be square");
  std::vector<double> out;
  out.reserve(m_values.size());
  // Powers are reused across increasing m.
  std::map<int, double> cache;
  Matrix power = Matrix::Identity(blocks.gamma.rows(), blocks.gamma.cols());
  int current = 0;
  std::vector<int> sorted(m_values.begin(), m_values.end());
  std::sort(sorted.begin(), sorted.end());
  for (int m : sorted) {
    if (m < 0) throw std::invalid_argument("negative power");
    while (current < m) {
      power = blocks.gamma * power;
      ++current;
    }
    cache.emplace(m, power(0, 0));
  }
  for (int m : m_values) out.push_back(cache.at(m));
  return out;
}

}  // namespace rbaddr
