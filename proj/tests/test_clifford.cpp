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
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "rbaddr/clifford.hpp"

namespace rbaddr {
namespace {

TEST(Generators, NamesRoundTrip) {
  for (Generator g : kGenerators) {
    const auto parsed = parse_generator(to_string(g));
    ASSERT_TRUE(parsed.has_value());
    EXPECT_EQ(*parsed, g);
  }
  EXPECT_FALSE(parse_generator("Z90").has_value());
}

TEST(Generators, XHalfPiMapsZToYToMinusZ) {
  const Ptm r = ptm_from_unitary(generator_unitary(Generator::Xp90));
  // Heisenberg picture (transpose): Z -> Y -> -Z.
  EXPECT_NEAR(r(3, 2), 1.0, 1e-15);
  EXPECT_NEAR(r(2, 3), -1.0, 1e-15);
  EXPECT_NEAR(r(1, 1), 1.0, 1e-15);
  const Ptm inv = ptm_from_unitary(generator_unitary(Generator::Xm90));
  EXPECT_TRUE(compose(inv, r).approx_equal(Ptm::identity(1), 1e-14));
}

TEST(C1, HasTwentyFourDistinctElements) {
  const CliffordGroup& c1 = shared_group(GroupKind::C1);
  ASSERT_EQ(c1.size(), 24u);
  std::set<std::string> keys;
  for (const auto& e : c1.elements()) {
    const auto k = canonical_key(e.ptm);
    ASSERT_TRUE(k.has_value());
    keys.insert(*k);
    EXPECT_TRUE(e.ptm.is_orthogonal());
    EXPECT_TRUE(e.ptm.is_unital());
  }
  EXPECT_EQ(keys.size(), 24u);
}

TEST(C1, WordsReproduceElements) {
  const CliffordGroup& c1 = shared_group(GroupKind::C1);
  for (const auto& e : c1.elements()) {
    ASSERT_EQ(e.words.size(), 1u);
    Ptm acc = Ptm::identity(1);
    for (Generator g : e.words[0]) acc = compose(ptm_from_unitary(generator_unitary(g)), acc);
    EXPECT_TRUE(acc.approx_equal(e.ptm, 1e-12)) << e.index;
  }
  EXPECT_TRUE(c1.element(0).words[0].empty());
}

TEST(C1, AverageWordLength) {
  // Breadth-first shortest words: 1 of length 0, 6 of length 1, 11 of length 2, 6 of length 3.
  EXPECT_NEAR(average_word_length(shared_group(GroupKind::C1)), 44.0 / 24.0, 1e-15);
}

TEST(C1, GroupAxiomsAndInverses) {
  const CliffordGroup& c1 = shared_group(GroupKind::C1);
  for (std::size_t a = 0; a < c1.size(); ++a) {
    EXPECT_EQ(c1.multiply(a, c1.inverse(a)), 0u);
    EXPECT_EQ(c1.multiply(0, a), a);
    for (std::size_t b = 0; b < c1.size(); ++b) {
      EXPECT_TRUE(compose(c1.element(a).ptm, c1.element(b).ptm).approx_equal(c1.element(c1.multiply(a, b)).ptm, 1e-12));
    }
  }
}

TEST(C1, LookupRejectsNonMembers) {
  const CliffordGroup& c1 = shared_group(GroupKind::C1);
  EXPECT_THROW(c1.lookup(depolarizing_ptm(1, 0.5)), NotInGroupError);
  EXPECT_FALSE(c1.find(depolarizing_ptm(1, 0.5)).has_value());
  const Ptm x = ptm_from_unitary(generator_unitary(Generator::X180));
  EXPECT_NO_THROW(c1.lookup(x));
}

TEST(ProductGroups, SizesAndStructure) {
  const auto& cxc = shared_group(GroupKind::CxC);
  const auto& cxi = shared_group(GroupKind::CxI);
  const auto& ixc = shared_group(GroupKind::IxC);
  const auto& c1 = shared_group(GroupKind::C1);
  EXPECT_EQ(cxc.size(), 576u);
  EXPECT_EQ(cxi.size(), 24u);
  EXPECT_EQ(ixc.size(), 24u);
  EXPECT_TRUE(cxc.element(24 * 5 + 7).ptm.approx_equal(tensor(c1.element(5).ptm, c1.element(7).ptm), 1e-14));
  EXPECT_TRUE(cxi.element(9).ptm.approx_equal(tensor(c1.element(9).ptm, Ptm::identity(1)), 1e-14));
  EXPECT_TRUE(ixc.element(9).ptm.approx_equal(tensor(Ptm::identity(1), c1.element(9).ptm), 1e-14));
  Rng rng(2);
  for (int s = 0; s < 500; ++s) {
    const std::size_t a = uniform_index(rng, 576), b = uniform_index(rng, 576);
    EXPECT_TRUE(compose(cxc.element(a).ptm, cxc.element(b).ptm).approx_equal(cxc.element(cxc.multiply(a, b)).ptm, 1e-12));
    EXPECT_EQ(cxc.multiply(a, cxc.inverse(a)), 0u);
  }
}

TEST(Recovery, SequencesComposeToIdentity) {
  Rng rng(17);
  for (GroupKind kind : {GroupKind::C1, GroupKind::CxC, GroupKind::CxI, GroupKind::IxC}) {
    const CliffordGroup& g = shared_group(kind);
    for (int s = 0; s < 50; ++s) {
      const auto m = 1 + uniform_index(rng, 100);
      const auto seq = sample_uniform(g, rng, m);
      Matrix total = Matrix::Identity(static_cast<Eigen::Index>(g.element(0).ptm.dim()),
                                      static_cast<Eigen::Index>(g.element(0).ptm.dim()));
      for (std::size_t idx : seq) total = g.element(idx).ptm.matrix() * total;
      total = g.element(recovery_gate(g, seq)).ptm.matrix() * total;
      EXPECT_LT((total - Matrix::Identity(total.rows(), total.cols())).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Sampling, UniformOverC1) {
  Rng rng(99);
  const int draws = 100000;
  std::vector<int> counts(24, 0);
  for (int i = 0; i < draws; ++i) ++counts[uniform_index(rng, 24)];
  const double expected = draws / 24.0;
  const double sd = std::sqrt(draws * (1.0 / 24) * (23.0 / 24));
  for (int c : counts) EXPECT_LT(std::abs(c - expected), 5 * sd);
}

TEST(TwoQubitClifford, EnumerationSize) {
  const auto all = enumerate_two_qubit_cliffords();
  EXPECT_EQ(all.size(), 11520u);
  EXPECT_TRUE(all.front().approx_equal(Ptm::identity(2), 1e-12));
}

TEST(TwoQubitClifford, CnotIsEntanglingPermutation) {
  const Ptm c = cnot_ptm();
  EXPECT_TRUE(c.is_orthogonal());
  EXPECT_TRUE(compose(c, c).approx_equal(Ptm::identity(2), 1e-14));
  // XI -> XX and IZ -> ZZ with qubit 1 as control.
  EXPECT_NEAR(c(PauliLabel::parse("XX").index(), PauliLabel::parse("XI").index()), 1.0, 1e-14);
  EXPECT_NEAR(c(PauliLabel::parse("ZZ").index(), PauliLabel::parse("IZ").index()), 1.0, 1e-14);
}

TEST(GroupTable, DumpHasOneRowPerElement) {
  std::ostringstream ss;
  write_group_table(ss, shared_group(GroupKind::C1));
  const std::string text = ss.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 25);
  EXPECT_EQ(text.rfind("index,word_q1,r0_0", 0), 0u);
}

}  // namespace
}  // namespace rbaddr
