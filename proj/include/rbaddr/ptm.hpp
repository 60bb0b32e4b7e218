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

// Pauli-basis linear algebra.
//
// Index convention (used by every module): a single-qubit Pauli is encoded as
// a bit pair (v, w) with I=00, X=01, Y=10, Z=11, i.e. per-qubit index
// I=0, X=1, Y=2, Z=3. An n-qubit label is the base-4 number formed by these
// digits with qubit 1 as the most significant digit, so for two qubits
// index = 4 * p1 + p2 and "XZ" is 4 * 1 + 3 = 7.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rbaddr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;
using Rng = std::mt19937_64;

inline constexpr double kDefaultTolerance = 1e-10;

/// Number of Pauli labels on n qubits (4^n).
constexpr std::size_t pauli_count(int num_qubits) {
  return std::size_t{1} << (2 * num_qubits);
}

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

class PauliLabel {
 public:
  PauliLabel(int num_qubits, std::size_t index);

  /// Parses strings such as "XI" or "z"; the first character is qubit 1.
  static PauliLabel parse(std::string_view text);
  /// Builds a label from symplectic bit vectors; bit (n-1-q) belongs to qubit q.
  static PauliLabel from_bits(int num_qubits, std::uint32_t v, std::uint32_t w);

  int num_qubits() const { return num_qubits_; }
  std::size_t index() const { return index_; }
  bool is_identity() const { return index_ == 0; }

  /// Pauli acting on qubit q (q = 0 is qubit 1).
  Pauli on_qubit(int q) const;
  std::uint32_t v_bits() const;
  std::uint32_t w_bits() const;

  std::string str() const;
  CMatrix matrix() const;

  friend bool operator==(const PauliLabel&, const PauliLabel&) = default;

 private:
  int num_qubits_;
  std::size_t index_;
};

/// Symplectic form v_a.w_b + w_a.v_b mod 2; 1 iff the operators anticommute.
int symplectic_product(const PauliLabel& a, const PauliLabel& b);

CMatrix single_qubit_pauli(Pauli p);

/// Real 4^n x 4^n superoperator with entries Tr[P_i L(P_j)] / d.
class PauliTransferMatrix {
 public:
  PauliTransferMatrix(int num_qubits, Matrix entries);

  static PauliTransferMatrix identity(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return pauli_count(num_qubits_); }
  const Matrix& matrix() const { return entries_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  bool is_trace_preserving(double tol = kDefaultTolerance) const;
  bool is_unital(double tol = kDefaultTolerance) const;
  bool is_orthogonal(double tol = kDefaultTolerance) const;
  bool approx_equal(const PauliTransferMatrix& other, double tol = kDefaultTolerance) const;
  double max_abs_diff(const PauliTransferMatrix& other) const;

  PauliTransferMatrix transpose() const;

 private:
  int num_qubits_;
  Matrix entries_;
};

using Ptm = PauliTransferMatrix;

/// Number of qubits for a square matrix of dimension 2^n; throws otherwise.
int qubits_for_hilbert_dim(Eigen::Index dim);

Ptm ptm_from_unitary(const CMatrix& unitary, double tol = kDefaultTolerance);

struct KrausOptions {
  /// When false, non-trace-preserving sets are accepted (e.g. effects with
  /// absorbed errors).
  bool require_trace_preserving = true;
  double tolerance = kDefaultTolerance;
};

Ptm ptm_from_kraus(std::span<const CMatrix> kraus, KrausOptions options = {});

/// second * first: `first` is applied before `second`.
Ptm compose(const Ptm& second, const Ptm& first);

Ptm tensor(const Ptm& a, const Ptm& b);

/// Channel rho -> P_k rho P_k; diagonal with signs from the symplectic form.
Ptm pauli_conjugation_ptm(const PauliLabel& k);

/// diag(1, alpha, ..., alpha).
Ptm depolarizing_ptm(int num_qubits, double alpha);

/// Amplitude damping towards |0> with decay probability gamma.
Ptm amplitude_damping_ptm(double gamma);

/// Choi matrix J = sum_ab |a><b| (x) L(|a><b|), rebuilt from the PTM.
CMatrix choi_matrix(const Ptm& ptm);

/// Complete positivity diagnostic: smallest eigenvalue of the Choi matrix.
double min_choi_eigenvalue(const Ptm& ptm);
bool is_cptp(const Ptm& ptm, double tol = 1e-9);

class PauliVector {
 public:
  enum class Kind { State, Effect };

  PauliVector(Kind kind, int num_qubits, Vector coefficients);

  /// x_j = Tr[P_j rho], so that rho = sum_j x_j P_j / d.
  static PauliVector from_density(const CMatrix& rho);
  /// e_j = Tr[P_j E] / d, so that E = sum_j e_j P_j.
  static PauliVector from_effect(const CMatrix& effect);
  /// |b><b| for a computational basis string; bit for qubit 1 is the MSB.
  static PauliVector basis_state(int num_qubits, std::uint32_t bits);
  static PauliVector basis_effect(int num_qubits, std::uint32_t bits);

  Kind kind() const { return kind_; }
  int num_qubits() const { return num_qubits_; }
  const Vector& coefficients() const { return coefficients_; }
  double operator[](std::size_t j) const { return coefficients_(static_cast<Eigen::Index>(j)); }

 private:
  Kind kind_;
  int num_qubits_;
  Vector coefficients_;
};

/// e^T R x = Tr[E L(rho)].
double expectation(const PauliVector& effect, const Ptm& ptm, const PauliVector& state);

enum class Subspace {
  Identity,     // Pi_0
  NonIdentity,  // Pi, all non-identity labels
  Qubit1,       // Pi_1 = P (x) I
  Qubit2,       // Pi_2 = I (x) P
  Both,         // Pi_12 = P (x) P
};

std::string_view to_string(Subspace s);

/// Diagonal 0/1 projector over Pauli indices.
class SubspaceProjector {
 public:
  SubspaceProjector(Subspace label, int num_qubits);

  Subspace label() const { return label_; }
  int num_qubits() const { return num_qubits_; }
  const Vector& diagonal() const { return diagonal_; }
  bool contains(std::size_t index) const { return diagonal_(static_cast<Eigen::Index>(index)) != 0.0; }
  std::vector<std::size_t> indices() const;
  Matrix matrix() const;
  double trace() const { return diagonal_.sum(); }

 private:
  Subspace label_;
  int num_qubits_;
  Vector diagonal_;
};

/// Tr(Pi R) / Tr(Pi).
double project(const Ptm& ptm, const SubspaceProjector& projector);

// Random channels for property tests and the verification suite.
CMatrix haar_unitary(Eigen::Index dim, Rng& rng);
/// `count` Kraus operators from a Haar-random isometry; always trace preserving.
std::vector<CMatrix> random_kraus(int num_qubits, int count, Rng& rng);
Ptm random_channel(int num_qubits, Rng& rng, int kraus_count = 3);

}  // namespace rbaddr
