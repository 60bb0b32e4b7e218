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

#include "rbaddr/clifford.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <unordered_set>

#include <fmt/format.h>

namespace rbaddr {

std::string_view to_string(Generator g) {
  switch (g) {
    case Generator::Xp90: return "X90";
    case Generator::Xm90: return "-X90";
    case Generator::Yp90: return "Y90";
    case Generator::Ym90: return "-Y90";
    case Generator::X180: return "X180";
    case Generator::Y180: return "Y180";
  }
  return "?";
}

std::optional<Generator> parse_generator(std::string_view name) {
  for (Generator g : kGenerators) {
    if (to_string(g) == name) return g;
  }
  return std::nullopt;
}

Axis axis_of(Generator g) {
  switch (g) {
    case Generator::Xp90:
    case Generator::Xm90:
    case Generator::X180:
      return Axis::X;
    default:
      return Axis::Y;
  }
}

double angle_of(Generator g) {
  constexpr double pi = std::numbers::pi;
  switch (g) {
    case Generator::Xp90:
    case Generator::Yp90:
      return pi / 2;
    case Generator::Xm90:
    case Generator::Ym90:
      return -pi / 2;
    case Generator::X180:
    case Generator::Y180:
      return pi;
  }
  return 0.0;
}

CMatrix generator_unitary(Generator g) {
  const double half = angle_of(g) / 2;
  const CMatrix sigma = single_qubit_pauli(axis_of(g) == Axis::X ? Pauli::X : Pauli::Y);
  return std::cos(half) * CMatrix::Identity(2, 2) - Complex(0.0, std::sin(half)) * sigma;
}

std::string format_word(const Word& word) {
  if (word.empty()) return "I";
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += ' ';
    s += to_string(word[i]);
  }
  return s;
}

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::C1: return "C1";
    case GroupKind::CxC: return "CxC";
    case GroupKind::CxI: return "CxI";
    case GroupKind::IxC: return "IxC";
  }
  return "?";
}

std::optional<std::string> canonical_key(const Ptm& ptm, double guard) {
  const Matrix& m = ptm.matrix();
  std::string key;
  key.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double r = std::round(m(i, j));
      if (std::abs(m(i, j) - r) > guard || std::abs(r) > 1.0) return std::nullopt;
      key.push_back(static_cast<char>('1' + static_cast<int>(r)));
    }
  }
  return key;
}

CliffordGroup::CliffordGroup(GroupKind kind, int num_qubits, std::vector<CliffordElement> elements,
                             std::vector<std::uint16_t> mult_table, std::vector<std::uint16_t> inv_table)
    : kind_(kind),
      num_qubits_(num_qubits),
      elements_(std::move(elements)),
      mult_(std::move(mult_table)),
      inv_(std::move(inv_table)) {
  const std::size_t n = elements_.size();
  if (mult_.size() != n * n || inv_.size() != n) throw std::invalid_argument("group table sizes do not match");
  for (const auto& e : elements_) {
    auto key = canonical_key(e.ptm);
    if (!key) throw std::invalid_argument("group element is not a signed Pauli permutation");
    if (!keys_.emplace(std::move(*key), e.index).second) throw std::invalid_argument("duplicate group element");
  }
}

std::optional<std::size_t> CliffordGroup::find(const Ptm& ptm) const {
  if (ptm.num_qubits() != num_qubits_) return std::nullopt;
  const auto key = canonical_key(ptm);
  if (!key) return std::nullopt;
  const auto it = keys_.find(*key);
  if (it == keys_.end()) return std::nullopt;
  return it->second;
}

std::size_t CliffordGroup::lookup(const Ptm& ptm) const {
  if (auto idx = find(ptm)) return *idx;
  throw NotInGroupError(fmt::format("channel is not an element of the {} group", to_string(kind_)));
}

namespace {

// Tables for a group whose elements are already enumerated; products are
// found through canonical keys so no assumption about structure is needed.
std::pair<std::vector<std::uint16_t>, std::vector<std::uint16_t>> build_tables(const std::vector<CliffordElement>& elems) {
  std::unordered_map<std::string, std::size_t> keys;
  for (const auto& e : elems) keys.emplace(*canonical_key(e.ptm), e.index);
  const std::size_t n = elems.size();
  std::vector<std::uint16_t> mult(n * n);
  std::vector<std::uint16_t> inv(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto key = canonical_key(compose(elems[a].ptm, elems[b].ptm));
      const auto it = key ? keys.find(*key) : keys.end();
      if (it == keys.end()) throw std::logic_error("group is not closed under composition");
      mult[a * n + b] = static_cast<std::uint16_t>(it->second);
      if (it->second == 0) inv[a] = static_cast<std::uint16_t>(b);
    }
  }
  return {std::move(mult), std::move(inv)};
}

}  // namespace

CliffordGroup generate_c1() {
  constexpr std::size_t kIterationBound = 1000;
  std::vector<Ptm> gens;
  for (Generator g : kGenerators) gens.push_back(ptm_from_unitary(generator_unitary(g)));

  std::vector<CliffordElement> elems;
  std::unordered_map<std::string, std::size_t> seen;
  std::deque<std::size_t> frontier;
  elems.push_back({0, Ptm::identity(1), {Word{}}});
  seen.emplace(*canonical_key(elems[0].ptm), 0);
  frontier.push_back(0);

  std::size_t iterations = 0;
  while (!frontier.empty()) {
    if (++iterations > kIterationBound) throw std::runtime_error("C1 closure did not terminate");
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    for (std::size_t g = 0; g < gens.size(); ++g) {
      // Snap to exact integers so words of any length compose without dust.
      Matrix next = (gens[g].matrix() * elems[cur].ptm.matrix()).array().round().matrix();
      Ptm candidate(1, std::move(next));
      auto key = canonical_key(candidate);
      if (!key) throw std::runtime_error("generator product is not a signed permutation");
      if (seen.contains(*key)) continue;
      Word word = elems[cur].words[0];
      word.push_back(kGenerators[g]);
      const std::size_t idx = elems.size();
      seen.emplace(std::move(*key), idx);
      elems.push_back({idx, std::move(candidate), {std::move(word)}});
      frontier.push_back(idx);
    }
  }
  auto [mult, inv] = build_tables(elems);
  return CliffordGroup(GroupKind::C1, 1, std::move(elems), std::move(mult), std::move(inv));
}

CliffordGroup product_group(GroupKind kind) {
  CliffordGroup c1 = generate_c1();
  if (kind == GroupKind::C1) return c1;
  const std::size_t n1 = c1.size();
  const Ptm id1 = Ptm::identity(1);
  std::vector<CliffordElement> elems;

  if (kind == GroupKind::CxC) {
    for (std::size_t a = 0; a < n1; ++a) {
      for (std::size_t b = 0; b < n1; ++b) {
        const auto& ea = c1.element(a);
        const auto& eb = c1.element(b);
        elems.push_back({a * n1 + b, tensor(ea.ptm, eb.ptm), {ea.words[0], eb.words[0]}});
      }
    }
    // Tables follow from C1's tables componentwise.
    const std::size_t n = elems.size();
    std::vector<std::uint16_t> mult(n * n), inv(n);
    for (std::size_t x = 0; x < n; ++x) {
      inv[x] = static_cast<std::uint16_t>(c1.inverse(x / n1) * n1 + c1.inverse(x % n1));
      for (std::size_t y = 0; y < n; ++y) {
        mult[x * n + y] = static_cast<std::uint16_t>(c1.multiply(x / n1, y / n1) * n1 + c1.multiply(x % n1, y % n1));
      }
    }
    return CliffordGroup(kind, 2, std::move(elems), std::move(mult), std::move(inv));
  }

  for (std::size_t a = 0; a < n1; ++a) {
    const auto& e = c1.element(a);
    if (kind == GroupKind::CxI) {
      elems.push_back({a, tensor(e.ptm, id1), {e.words[0], Word{}}});
    } else {
      elems.push_back({a, tensor(id1, e.ptm), {Word{}, e.words[0]}});
    }
  }
  std::vector<std::uint16_t> mult(n1 * n1), inv(n1);
  for (std::size_t a = 0; a < n1; ++a) {
    inv[a] = static_cast<std::uint16_t>(c1.inverse(a));
    for (std::size_t b = 0; b < n1; ++b) mult[a * n1 + b] = static_cast<std::uint16_t>(c1.multiply(a, b));
  }
  return CliffordGroup(kind, 2, std::move(elems), std::move(mult), std::move(inv));
}

const CliffordGroup& shared_group(GroupKind kind) {
  static const CliffordGroup c1 = generate_c1();
  static const CliffordGroup cxc = product_group(GroupKind::CxC);
  static const CliffordGroup cxi = product_group(GroupKind::CxI);
  static const CliffordGroup ixc = product_group(GroupKind::IxC);
  switch (kind) {
    case GroupKind::C1: return c1;
    case GroupKind::CxC: return cxc;
    case GroupKind::CxI: return cxi;
    case GroupKind::IxC: return ixc;
  }
  throw std::invalid_argument("unknown group kind");
}

std::size_t recovery_gate(const CliffordGroup& group, std::span<const std::size_t> sequence) {
  std::size_t total = 0;
  for (std::size_t idx : sequence) {
    if (idx >= group.size()) throw std::out_of_range("sequence index outside the group");
    total = group.multiply(idx, total);
  }
  return group.inverse(total);
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index over an empty range");
  const std::uint64_t range = n;
  const std::uint64_t limit = Rng::max() - (Rng::max() % range + 1) % range;
  std::uint64_t x = rng();
  while (x > limit) x = rng();
  return static_cast<std::size_t>(x % range);
}

std::vector<std::size_t> sample_uniform(const CliffordGroup& group, Rng& rng, std::size_t length) {
  if (length == 0) throw std::invalid_argument("sequence length must be at least 1");
  std::vector<std::size_t> out(length);
  for (auto& idx : out) idx = uniform_index(rng, group.size());
  return out;
}

double average_word_length(const CliffordGroup& c1) {
  double total = 0.0;
  for (const auto& e : c1.elements()) total += static_cast<double>(e.words.at(0).size());
  return total / static_cast<double>(c1.size());
}

Ptm cnot_ptm() {
  CMatrix u = CMatrix::Zero(4, 4);
  u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
  Matrix m = ptm_from_unitary(u).matrix().array().round().matrix();
  return Ptm(2, std::move(m));
}

std::vector<Ptm> enumerate_two_qubit_cliffords() {
  const Ptm id1 = Ptm::identity(1);
  std::vector<Matrix> gens;
  for (Generator g : {Generator::Xp90, Generator::Yp90}) {
    const Ptm p(1, ptm_from_unitary(generator_unitary(g)).matrix().array().round().matrix());
    gens.push_back(tensor(p, id1).matrix());
    gens.push_back(tensor(id1, p).matrix());
  }
  gens.push_back(cnot_ptm().matrix());

  std::vector<Ptm> elems{Ptm::identity(2)};
  std::unordered_set<std::string> seen{*canonical_key(elems[0])};
  for (std::size_t cur = 0; cur < elems.size(); ++cur) {
    for (const auto& g : gens) {
      Ptm next(2, g * elems[cur].matrix());
      auto key = canonical_key(next);
      if (!key) throw std::runtime_error("two-qubit Clifford product is not a signed permutation");
      if (seen.insert(std::move(*key)).second) elems.push_back(std::move(next));
    }
  }
  return elems;
}

void write_group_table(std::ostream& out, const CliffordGroup& group) {
  out << "index";
  for (int q = 0; q < group.num_qubits(); ++q) out << ",word_q" << (q + 1);
  const auto d2 = group.element(0).ptm.dim();
  for (std::size_t i = 0; i < d2; ++i) {
    for (std::size_t j = 0; j < d2; ++j) out << ",r" << i << '_' << j;
  }
  out << '\n';
  for (const auto& e : group.elements()) {
    out << e.index;
    for (const auto& w : e.words) out << ',' << format_word(w);
    for (std::size_t i = 0; i < d2; ++i) {
      for (std::size_t j = 0; j < d2; ++j) out << ',' << static_cast<int>(std::round(e.ptm(i, j)));
    }
    out << '\n';
  }
}

}  // namespace rbaddr
