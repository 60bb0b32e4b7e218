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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rbaddr/ptm.hpp"

namespace rbaddr {

/// Physical single-qubit pulses; every Clifford is played as a word of these.
enum class Generator : std::uint8_t { Xp90, Xm90, Yp90, Ym90, X180, Y180 };

inline constexpr std::array<Generator, 6> kGenerators = {Generator::Xp90, Generator::Xm90, Generator::Yp90,
                                                         Generator::Ym90, Generator::X180, Generator::Y180};

enum class Axis : std::uint8_t { X, Y };

std::string_view to_string(Generator g);
std::optional<Generator> parse_generator(std::string_view name);
Axis axis_of(Generator g);
/// Signed rotation angle in radians (pi/2, -pi/2 or pi).
double angle_of(Generator g);
/// exp(-i angle sigma / 2).
CMatrix generator_unitary(Generator g);

using Word = std::vector<Generator>;

std::string format_word(const Word& word);

enum class GroupKind : std::uint8_t { C1, CxC, CxI, IxC };

std::string_view to_string(GroupKind kind);

struct CliffordElement {
  std::size_t index = 0;
  Ptm ptm = Ptm::identity(1);
  /// One generator word per qubit, shortest found during closure.
  std::vector<Word> words;
};

class NotInGroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite group of Clifford channels with multiplication and inverse tables.
/// multiply(a, b) is the index of ptm(a) * ptm(b), i.e. b applied first.
class CliffordGroup {
 public:
  CliffordGroup(GroupKind kind, int num_qubits, std::vector<CliffordElement> elements,
                std::vector<std::uint16_t> mult_table, std::vector<std::uint16_t> inv_table);

  GroupKind kind() const { return kind_; }
  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return elements_.size(); }
  const CliffordElement& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<CliffordElement>& elements() const { return elements_; }

  std::size_t multiply(std::size_t a, std::size_t b) const { return mult_[a * elements_.size() + b]; }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }

  std::optional<std::size_t> find(const Ptm& ptm) const;
  /// Throws NotInGroupError if the channel is not a member.
  std::size_t lookup(const Ptm& ptm) const;

 private:
  GroupKind kind_;
  int num_qubits_;
  std::vector<CliffordElement> elements_;
  std::vector<std::uint16_t> mult_;
  std::vector<std::uint16_t> inv_;
  std::unordered_map<std::string, std::size_t> keys_;
};

/// Canonical key of a signed-permutation PTM (entries rounded to -1, 0, 1).
/// Returns nullopt if any entry is further than `guard` from an integer.
std::optional<std::string> canonical_key(const Ptm& ptm, double guard = 1e-6);

/// Closure of {X(+-pi/2), Y(+-pi/2), X(pi), Y(pi)} by breadth-first search.
CliffordGroup generate_c1();

/// CxC (576 elements, index 24*a + b), CxI and IxC (24 each). C1 is accepted.
CliffordGroup product_group(GroupKind kind);

/// Shared immutable instances.
const CliffordGroup& shared_group(GroupKind kind);

/// Index r with ptm(r) * ptm(s_m) * ... * ptm(s_1) = identity.
std::size_t recovery_gate(const CliffordGroup& group, std::span<const std::size_t> sequence);

/// Unbiased integer in [0, n) by rejection; fully specified for any std-conforming mt19937_64.
std::size_t uniform_index(Rng& rng, std::size_t n);

std::vector<std::size_t> sample_uniform(const CliffordGroup& group, Rng& rng, std::size_t length);

/// Mean generator count per element on one qubit of C1.
double average_word_length(const CliffordGroup& c1);

/// CNOT with qubit 1 as control.
Ptm cnot_ptm();

/// All 11520 two-qubit Cliffords (up to phase), by closure of single-qubit
/// generators on either qubit and CNOT. Elements only; too large for tables.
std::vector<Ptm> enumerate_two_qubit_cliffords();


/// CSV: index, one word column per qubit, then the PTM row-major.
void write_group_table(std::ostream& out, const CliffordGroup& group);

}  // namespace rbaddr
