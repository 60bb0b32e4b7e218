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

#include "rbaddr/clifford.hpp"
#include "rbaddr/twirl.hpp"

namespace rbaddr {
namespace {

std::vector<Ptm> ptms_of(const CliffordGroup& g) {
  std::vector<Ptm> out;
  for (const auto& e : g.elements()) out.push_back(e.ptm);
  return out;
}

std::vector<Ptm> paulis(int n) {
  std::vector<Ptm> out;
  for (std::size_t k = 0; k < pauli_count(n); ++k) out.push_back(pauli_conjugation_ptm(PauliLabel(n, k)));
  return out;
}

CMatrix zz_rotation(double theta) {
  CMatrix u = CMatrix::Zero(4, 4);
  const Complex m = std::exp(Complex(0, -theta / 2)), p = std::exp(Complex(0, theta / 2));
  u(0, 0) = m;
  u(1, 1) = p;
  u(2, 2) = p;
  u(3, 3) = m;
  return u;
}

TEST(FullClifford, SingleQubitMatchesBruteForce) {
  Rng rng(1);
  const auto c1 = ptms_of(shared_group(GroupKind::C1));
  for (int k = 0; k < 25; ++k) {
    const Ptm r = random_channel(1, rng);
    const TwirlOutcome t = twirl_full_clifford(r);
    EXPECT_LT(t.twirled.max_abs_diff(brute_force_twirl(r, c1)), 1e-12);
    EXPECT_NEAR(*t.alphas.full, (r.matrix().trace() - 1) / 3, 1e-14);
  }
}

TEST(FullClifford, TwoQubitMatchesBruteForce) {
  Rng rng(2);
  const auto c2 = enumerate_two_qubit_cliffords();
  const Ptm r = random_channel(2, rng);
  EXPECT_LT(twirl_full_clifford(r).twirled.max_abs_diff(brute_force_twirl(r, c2)), 1e-12);
}

TEST(FullClifford, UnitaryErrorBecomesDepolarizing) {
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const Ptm r = ptm_from_unitary(haar_unitary(2, rng));
    const double a = (r.matrix().trace() - 1) / 3;
    EXPECT_TRUE(twirl_full_clifford(r).twirled.approx_equal(depolarizing_ptm(1, a), 1e-13));
  }
}

TEST(FullClifford, AmplitudeDamping) {
  const double g = 0.1;
  const TwirlOutcome t = twirl_full_clifford(amplitude_damping_ptm(g));
  EXPECT_NEAR(*t.alphas.full, (2 * std::sqrt(1 - g) + 1 - g) / 3, 1e-15);
}

TEST(Twirls, AreIdempotent) {
  Rng rng(4);
  for (int k = 0; k < 10; ++k) {
    const Ptm r2 = random_channel(2, rng);
    const Ptm r1 = random_channel(1, rng);
    const Ptm f = twirl_full_clifford(r2).twirled;
    EXPECT_LT(twirl_full_clifford(f).twirled.max_abs_diff(f), 1e-14);
    const Ptm c = twirl_cxc(r2).twirled;
    EXPECT_LT(twirl_cxc(c).twirled.max_abs_diff(c), 1e-14);
    const Ptm s = twirl_subsystem(r2, Subsystem::First).twirled;
    EXPECT_LT(twirl_subsystem(s, Subsystem::First).twirled.max_abs_diff(s), 1e-14);
    const Ptm p = pauli_twirl(r1);
    EXPECT_LT(pauli_twirl(p).max_abs_diff(p), 0.0 + 1e-15);
    // Nested groups: a CxC-twirled map is fixed further by the full twirl's block structure.
    EXPECT_LT(twirl_full_clifford(c).twirled.max_abs_diff(f), 1e-14);
  }
}

TEST(Twirls, PreserveCptp) {
  Rng rng(5);
  for (int k = 0; k < 10; ++k) {
    const Ptm r = random_channel(2, rng);
    EXPECT_TRUE(is_cptp(twirl_full_clifford(r).twirled));
    EXPECT_TRUE(is_cptp(twirl_cxc(r).twirled));
    EXPECT_TRUE(is_cptp(twirl_subsystem(r, Subsystem::First).twirled));
    EXPECT_TRUE(is_cptp(twirl_subsystem(r, Subsystem::Second).twirled));
    EXPECT_TRUE(is_cptp(pauli_twirl(r)));
  }
}

TEST(Cxc, MatchesBruteForceAndBlocks) {
  Rng rng(6);
  const auto cxc = ptms_of(shared_group(GroupKind::CxC));
  for (int k = 0; k < 10; ++k) {
    const Ptm r = random_channel(2, rng);
    const TwirlOutcome t = twirl_cxc(r);
    EXPECT_LT(t.twirled.max_abs_diff(brute_force_twirl(r, cxc)), 1e-12);
    EXPECT_NEAR(*t.alphas.one_given_two, project(r, SubspaceProjector(Subspace::Qubit1, 2)), 1e-14);
    EXPECT_NEAR(*t.alphas.two_given_one, project(r, SubspaceProjector(Subspace::Qubit2, 2)), 1e-14);
    EXPECT_NEAR(*t.alphas.both, project(r, SubspaceProjector(Subspace::Both, 2)), 1e-14);
  }
}

TEST(Cxc, ProductChannelsHaveNoCorrelation) {
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const auto a = twirl_cxc(tensor(random_channel(1, rng), random_channel(1, rng))).alphas;
    EXPECT_LT(std::abs(*a.both - *a.one_given_two * *a.two_given_one), 1e-13);
  }
}

TEST(Cxc, ZzRotationIsCorrelated) {
  const double theta = 0.1;
  const auto a = twirl_cxc(ptm_from_unitary(zz_rotation(theta))).alphas;
  // Labels commuting with ZZ are fixed, the other eight rotate by theta.
  EXPECT_NEAR(*a.one_given_two, (1 + 2 * std::cos(theta)) / 3, 1e-14);
  EXPECT_NEAR(*a.both, (5 + 4 * std::cos(theta)) / 9, 1e-14);
  EXPECT_NEAR(*a.both - *a.one_given_two * *a.two_given_one, 4 * std::pow(std::sin(theta), 2) / 9, 1e-14);
}

TEST(Subsystem, MatchesBruteForce) {
  Rng rng(8);
  const auto cxi = ptms_of(shared_group(GroupKind::CxI));
  const auto ixc = ptms_of(shared_group(GroupKind::IxC));
  for (int k = 0; k < 10; ++k) {
    const Ptm r = random_channel(2, rng);
    EXPECT_LT(twirl_subsystem(r, Subsystem::First).twirled.max_abs_diff(brute_force_twirl(r, cxi)), 1e-12);
    EXPECT_LT(twirl_subsystem(r, Subsystem::Second).twirled.max_abs_diff(brute_force_twirl(r, ixc)), 1e-12);
    const SubsystemTwirlBlocks b = twirl_cxi(r);
    EXPECT_LT(b.assemble().max_abs_diff(twirl_subsystem(r, Subsystem::First).twirled), 1e-14);
  }
}

TEST(Subsystem, ProductChannelGammaFactorizes) {
  const double a1 = 0.95;
  Rng rng(9);
  const Ptm spectator = random_channel(1, rng);
  const SubsystemTwirlBlocks b = twirl_cxi(tensor(depolarizing_ptm(1, a1), spectator));
  EXPECT_NEAR(b.alpha(), a1, 1e-14);
  EXPECT_LT((b.gamma - a1 * spectator.matrix()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(b.marginal.max_abs_diff(spectator), 1e-14);
}

TEST(Subsystem, GammaDecayOfProductIsExponential) {
  const SubsystemTwirlBlocks b = twirl_cxi(tensor(depolarizing_ptm(1, 0.97), Ptm::identity(1)));
  const std::vector<int> ms = {1, 5, 20, 100};
  const auto curve = gamma_decay_curve(b, ms);
  for (std::size_t i = 0; i < ms.size(); ++i) EXPECT_NEAR(curve[i], std::pow(0.97, ms[i]), 1e-14);
}

TEST(Pauli, KeepsDiagonalAndMatchesBruteForce) {
  Rng rng(10);
  for (int n : {1, 2}) {
    const auto group = paulis(n);
    for (int k = 0; k < 10; ++k) {
      const Ptm r = random_channel(n, rng);
      const Ptm t = pauli_twirl(r);
      EXPECT_LT(t.max_abs_diff(brute_force_twirl(r, group)), 1e-13);
      EXPECT_LT((t.matrix() - Matrix(r.matrix().diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0 + 1e-15);
    }
  }
  const Ptm x90 = pauli_twirl(ptm_from_unitary(generator_unitary(Generator::Xp90)));
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(1, 1) = 1.0;
  EXPECT_TRUE(x90.approx_equal(Ptm(1, expected), 1e-15));
}

TEST(Schur, StandardDecompositionsAgreeWithClosedForms) {
  Rng rng(11);
  for (int k = 0; k < 5; ++k) {
    const Ptm r = random_channel(2, rng);
    EXPECT_LT(schur_general_twirl(r, standard_decomposition(TwirlGroup::Clifford, 2)).max_abs_diff(twirl_full_clifford(r).twirled), 1e-13);
    EXPECT_LT(schur_general_twirl(r, standard_decomposition(TwirlGroup::CxC, 2)).max_abs_diff(twirl_cxc(r).twirled), 1e-13);
    EXPECT_LT(schur_general_twirl(r, standard_decomposition(TwirlGroup::CxI, 2))
                  .max_abs_diff(twirl_subsystem(r, Subsystem::First).twirled),
              1e-13);
    EXPECT_LT(schur_general_twirl(r, standard_decomposition(TwirlGroup::IxC, 2))
                  .max_abs_diff(twirl_subsystem(r, Subsystem::Second).twirled),
              1e-13);
    EXPECT_LT(schur_general_twirl(r, standard_decomposition(TwirlGroup::Pauli, 2)).max_abs_diff(pauli_twirl(r)), 1e-13);
  }
}

}  // namespace
}  // namespace rbaddr
