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

#include "rbaddr/ptm.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace rbaddr {
namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void check_qubits(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 4) {
    throw std::invalid_argument(fmt::format("unsupported qubit count {}", num_qubits));
  }
}

// Pauli matrices are rebuilt often; n is tiny so keep a per-n table.
const std::vector<CMatrix>& pauli_table(int num_qubits) {
  static const std::vector<std::vector<CMatrix>> tables = [] {
    std::vector<std::vector<CMatrix>> t(4);
    for (int n = 1; n <= 3; ++n) {
      for (std::size_t k = 0; k < pauli_count(n); ++k) {
        t[n].push_back(PauliLabel(n, k).matrix());
      }
    }
    return t;
  }();
  if (num_qubits < 1 || num_qubits > 3) {
    throw std::invalid_argument(fmt::format("no Pauli table for {} qubits", num_qubits));
  }
  return tables[num_qubits];
}

}  // namespace

PauliLabel::PauliLabel(int num_qubits, std::size_t index) : num_qubits_(num_qubits), index_(index) {
  check_qubits(num_qubits);
  if (index >= pauli_count(num_qubits)) {
    throw std::out_of_range(fmt::format("Pauli index {} out of range for {} qubits", index, num_qubits));
  }
}

PauliLabel PauliLabel::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty Pauli string");
  std::size_t index = 0;
  for (char c : text) {
    std::size_t digit = 0;
    switch (c) {
      case 'I': case 'i': digit = 0; break;
      case 'X': case 'x': digit = 1; break;
      case 'Y': case 'y': digit = 2; break;
      case 'Z': case 'z': digit = 3; break;
      default: throw std::invalid_argument(fmt::format("bad Pauli character '{}'", c));
    }
    index = index * 4 + digit;
  }
  return PauliLabel(static_cast<int>(text.size()), index);
}

PauliLabel PauliLabel::from_bits(int num_qubits, std::uint32_t v, std::uint32_t w) {
  std::size_t index = 0;
  for (int q = 0; q < num_qubits; ++q) {
    const int bit = num_qubits - 1 - q;
    const std::size_t digit = 2 * ((v >> bit) & 1u) + ((w >> bit) & 1u);
    index = index * 4 + digit;
  }
  return PauliLabel(num_qubits, index);
}

Pauli PauliLabel::on_qubit(int q) const {
  if (q < 0 || q >= num_qubits_) throw std::out_of_range("qubit out of range");
  return static_cast<Pauli>((index_ >> (2 * (num_qubits_ - 1 - q))) & 3u);
}

std::uint32_t PauliLabel::v_bits() const {
  std::uint32_t v = 0;
  for (int q = 0; q < num_qubits_; ++q) {
    v = (v << 1) | ((static_cast<std::uint32_t>(on_qubit(q)) >> 1) & 1u);
  }
  return v;
}

std::uint32_t PauliLabel::w_bits() const {
  std::uint32_t w = 0;
  for (int q = 0; q < num_qubits_; ++q) {
    w = (w << 1) | (static_cast<std::uint32_t>(on_qubit(q)) & 1u);
  }
  return w;
}

std::string PauliLabel::str() const {
  static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
  std::string s;
  for (int q = 0; q < num_qubits_; ++q) s.push_back(kNames[static_cast<int>(on_qubit(q))]);
  return s;
}

CMatrix PauliLabel::matrix() const {
  CMatrix m = single_qubit_pauli(on_qubit(0));
  for (int q = 1; q < num_qubits_; ++q) m = kron(m, single_qubit_pauli(on_qubit(q)));
  return m;
}

int symplectic_product(const PauliLabel& a, const PauliLabel& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("qubit count mismatch");
  const std::uint32_t s = (a.v_bits() & b.w_bits()) ^ (a.w_bits() & b.v_bits());
  return std::popcount(s) & 1;
}

CMatrix single_qubit_pauli(Pauli p) {
  const Complex i{0.0, 1.0};
  CMatrix m(2, 2);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

PauliTransferMatrix::PauliTransferMatrix(int num_qubits, Matrix entries)
    : num_qubits_(num_qubits), entries_(std::move(entries)) {
  check_qubits(num_qubits);
  const auto d2 = static_cast<Eigen::Index>(pauli_count(num_qubits));
  if (entries_.rows() != d2 || entries_.cols() != d2) {
    throw std::invalid_argument(
        fmt::format("PTM for {} qubits must be {}x{}, got {}x{}", num_qubits, d2, d2, entries_.rows(), entries_.cols()));
  }
}

PauliTransferMatrix PauliTransferMatrix::identity(int num_qubits) {
  const auto d2 = static_cast<Eigen::Index>(pauli_count(num_qubits));
  return PauliTransferMatrix(num_qubits, Matrix::Identity(d2, d2));
}

bool PauliTransferMatrix::is_trace_preserving(double tol) const {
  if (std::abs(entries_(0, 0) - 1.0) > tol) return false;
  return entries_.row(0).tail(entries_.cols() - 1).cwiseAbs().maxCoeff() <= tol;
}

bool PauliTransferMatrix::is_unital(double tol) const {
  return entries_.col(0).tail(entries_.rows() - 1).cwiseAbs().maxCoeff() <= tol;
}

bool PauliTransferMatrix::is_orthogonal(double tol) const {
  const Matrix gram = entries_.transpose() * entries_;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool PauliTransferMatrix::approx_equal(const PauliTransferMatrix& other, double tol) const {
  return num_qubits_ == other.num_qubits_ && max_abs_diff(other) <= tol;
}

double PauliTransferMatrix::max_abs_diff(const PauliTransferMatrix& other) const {
  if (num_qubits_ != other.num_qubits_) throw std::invalid_argument("PTM dimension mismatch");
  return (entries_ - other.entries_).cwiseAbs().maxCoeff();
}

PauliTransferMatrix PauliTransferMatrix::transpose() const {
  return PauliTransferMatrix(num_qubits_, entries_.transpose());
}

int qubits_for_hilbert_dim(Eigen::Index dim) {
  for (int n = 1; n <= 3; ++n) {
    if (dim == (Eigen::Index{1} << n)) return n;
  }
  throw std::invalid_argument(fmt::format("dimension {} is not 2, 4 or 8", dim));
}

Ptm ptm_from_unitary(const CMatrix& unitary, double tol) {
  if (unitary.rows() != unitary.cols()) throw std::invalid_argument("unitary must be square");
  qubits_for_hilbert_dim(unitary.rows());  // rejects unsupported sizes early
  const double err = (unitary.adjoint() * unitary - CMatrix::Identity(unitary.rows(), unitary.cols())).cwiseAbs().maxCoeff();
  if (err > tol) {
    throw std::invalid_argument(fmt::format("matrix is not unitary (|U^dag U - 1| = {:.3g})", err));
  }
  const CMatrix kraus[] = {unitary};
  return ptm_from_kraus(kraus, {.require_trace_preserving = false});
}

Ptm ptm_from_kraus(std::span<const CMatrix> kraus, KrausOptions options) {
  if (kraus.empty()) throw std::invalid_argument("empty Kraus set");
  const Eigen::Index d = kraus.front().rows();
  const int n = qubits_for_hilbert_dim(d);
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) throw std::invalid_argument("Kraus operators must share one square shape");
    sum += k.adjoint() * k;
  }
  if (options.require_trace_preserving) {
    const double err = (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (err > options.tolerance) {
      throw std::invalid_argument(fmt::format("Kraus set is not trace preserving (|sum K^dag K - 1| = {:.3g})", err));
    }
  }
  const auto& paulis = pauli_table(n);
  const auto d2 = static_cast<Eigen::Index>(paulis.size());
  Matrix r = Matrix::Zero(d2, d2);
  for (Eigen::Index j = 0; j < d2; ++j) {
    CMatrix image = CMatrix::Zero(d, d);
    for (const auto& k : kraus) image += k * paulis[j] * k.adjoint();
    for (Eigen::Index i = 0; i < d2; ++i) {
      // Tr[P_i A] without forming the product.
      r(i, j) = (paulis[i].transpose().cwiseProduct(image)).sum().real() / static_cast<double>(d);
    }
  }
  return Ptm(n, std::move(r));
}

Ptm compose(const Ptm& second, const Ptm& first) {
  if (second.num_qubits() != first.num_qubits()) throw std::invalid_argument("PTM dimension mismatch in compose");
  return Ptm(first.num_qubits(), second.matrix() * first.matrix());
}

Ptm tensor(const Ptm& a, const Ptm& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return Ptm(a.num_qubits() + b.num_qubits(), std::move(out));
}

Ptm pauli_conjugation_ptm(const PauliLabel& k) {
  const auto d2 = static_cast<Eigen::Index>(pauli_count(k.num_qubits()));
  Vector diag(d2);
  for (Eigen::Index i = 0; i < d2; ++i) {
    diag(i) = symplectic_product(PauliLabel(k.num_qubits(), static_cast<std::size_t>(i)), k) ? -1.0 : 1.0;
  }
  return Ptm(k.num_qubits(), diag.asDiagonal());
}

Ptm depolarizing_ptm(int num_qubits, double alpha) {
  const auto d2 = static_cast<Eigen::Index>(pauli_count(num_qubits));
  Vector diag = Vector::Constant(d2, alpha);
  diag(0) = 1.0;
  return Ptm(num_qubits, diag.asDiagonal());
}

Ptm amplitude_damping_ptm(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("amplitude damping gamma must lie in [0, 1]");
  CMatrix k0(2, 2), k1(2, 2);
  k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  k1 << 0, std::sqrt(gamma), 0, 0;
  const CMatrix kraus[] = {k0, k1};
  return ptm_from_kraus(kraus);
}

CMatrix choi_matrix(const Ptm& ptm) {
  const int n = ptm.num_qubits();
  const auto& paulis = pauli_table(n);
  const Eigen::Index d = paulis.front().rows();
  CMatrix choi = CMatrix::Zero(d * d, d * d);
  for (std::size_t j = 0; j < paulis.size(); ++j) {
    CMatrix image = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < paulis.size(); ++i) image += ptm(i, j) * paulis[i];
    choi += kron(paulis[j].transpose(), image);
  }
  return choi / static_cast<double>(d);
}

double min_choi_eigenvalue(const Ptm& ptm) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(choi_matrix(ptm), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_cptp(const Ptm& ptm, double tol) {
  return ptm.is_trace_preserving(tol) && min_choi_eigenvalue(ptm) >= -tol;
}

PauliVector::PauliVector(Kind kind, int num_qubits, Vector coefficients)
    : kind_(kind), num_qubits_(num_qubits), coefficients_(std::move(coefficients)) {
  check_qubits(num_qubits);
  if (coefficients_.size() != static_cast<Eigen::Index>(pauli_count(num_qubits))) {
    throw std::invalid_argument("Pauli vector has the wrong length");
  }
}

PauliVector PauliVector::from_density(const CMatrix& rho) {
  const int n = qubits_for_hilbert_dim(rho.rows());
  const auto& paulis = pauli_table(n);
  Vector x(static_cast<Eigen::Index>(paulis.size()));
  for (std::size_t j = 0; j < paulis.size(); ++j) x(static_cast<Eigen::Index>(j)) = (paulis[j] * rho).trace().real();
  return PauliVector(Kind::State, n, std::move(x));
}

PauliVector PauliVector::from_effect(const CMatrix& effect) {
  const int n = qubits_for_hilbert_dim(effect.rows());
  const auto& paulis = pauli_table(n);
  const double d = static_cast<double>(effect.rows());
  Vector e(static_cast<Eigen::Index>(paulis.size()));
  for (std::size_t j = 0; j < paulis.size(); ++j) e(static_cast<Eigen::Index>(j)) = (paulis[j] * effect).trace().real() / d;
  return PauliVector(Kind::Effect, n, std::move(e));
}

namespace {
CMatrix basis_projector(int num_qubits, std::uint32_t bits) {
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  if (bits >= static_cast<std::uint32_t>(d)) throw std::out_of_range("basis state out of range");
  CMatrix p = CMatrix::Zero(d, d);
  p(bits, bits) = 1.0;
  return p;
}
}  // namespace

PauliVector PauliVector::basis_state(int num_qubits, std::uint32_t bits) {
  return from_density(basis_projector(num_qubits, bits));
}

PauliVector PauliVector::basis_effect(int num_qubits, std::uint32_t bits) {
  return from_effect(basis_projector(num_qubits, bits));
}

double expectation(const PauliVector& effect, const Ptm& ptm, const PauliVector& state) {
  if (effect.num_qubits() != ptm.num_qubits() || state.num_qubits() != ptm.num_qubits()) {
    throw std::invalid_argument("dimension mismatch in expectation");
  }
  return effect.coefficients().dot(ptm.matrix() * state.coefficients());
}

std::string_view to_string(Subspace s) {
  switch (s) {
    case Subspace::Identity: return "identity";
    case Subspace::NonIdentity: return "non_identity";
    case Subspace::Qubit1: return "qubit1";
    case Subspace::Qubit2: return "qubit2";
    case Subspace::Both: return "both";
  }
  return "?";
}

SubspaceProjector::SubspaceProjector(Subspace label, int num_qubits)
    : label_(label), num_qubits_(num_qubits), diagonal_(Vector::Zero(static_cast<Eigen::Index>(pauli_count(num_qubits)))) {
  check_qubits(num_qubits);
  const bool bipartite = label == Subspace::Qubit1 || label == Subspace::Qubit2 || label == Subspace::Both;
  if (bipartite && num_qubits != 2) throw std::invalid_argument("subsystem projectors are defined for two qubits");
  for (std::size_t k = 0; k < pauli_count(num_qubits); ++k) {
    bool in = false;
    switch (label) {
      case Subspace::Identity: in = k == 0; break;
      case Subspace::NonIdentity: in = k != 0; break;
      case Subspace::Qubit1: in = (k / 4) != 0 && (k % 4) == 0; break;
      case Subspace::Qubit2: in = (k / 4) == 0 && (k % 4) != 0; break;
      case Subspace::Both: in = (k / 4) != 0 && (k % 4) != 0; break;
    }
    if (in) diagonal_(static_cast<Eigen::Index>(k)) = 1.0;
  }
}

std::vector<std::size_t> SubspaceProjector::indices() const {
  std::vector<std::size_t> out;
  for (Eigen::Index k = 0; k < diagonal_.size(); ++k) {
    if (diagonal_(k) != 0.0) out.push_back(static_cast<std::size_t>(k));
  }
  return out;
}

Matrix SubspaceProjector::matrix() const { return diagonal_.asDiagonal(); }

double project(const Ptm& ptm, const SubspaceProjector& projector) {
  if (ptm.num_qubits() != projector.num_qubits()) throw std::invalid_argument("projector dimension mismatch");
  const double tr = projector.trace();
  if (tr == 0.0) throw std::invalid_argument("projector has zero trace");
  return projector.diagonal().dot(ptm.matrix().diagonal()) / tr;
}

CMatrix haar_unitary(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex diag = r(j, j);
    q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

std::vector<CMatrix> random_kraus(int num_qubits, int count, Rng& rng) {
  if (count < 1) throw std::invalid_argument("need at least one Kraus operator");
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  const CMatrix u = haar_unitary(d * count, rng);
  std::vector<CMatrix> kraus;
  for (int k = 0; k < count; ++k) kraus.push_back(u.block(k * d, 0, d, d));
  return kraus;
}

Ptm random_channel(int num_qubits, Rng& rng, int kraus_count) {
  return ptm_from_kraus(random_kraus(num_qubits, kraus_count, rng));
}

}  // namespace rbaddr
