// Copyright 2026 The SBBE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sbbe/bits.hpp"
#include "sbbe/pauli.hpp"

namespace sbbe {

/// Parity of the number of common one bits of v and w.
bool delta_parity(std::uint64_t v, std::uint64_t w);
std::uint64_t gray_code(std::uint64_t k);
/// Smallest a with 2^a >= m (0 for m <= 1).
std::size_t ceil_log2(std::size_t m);

enum class SchemeKind { Log, LogGray, Linear, LinearMinusOne, Custom };

/// CLI spelling: log, gray, linear, linminus1, custom.
std::string scheme_name(SchemeKind kind);
SchemeKind parse_scheme_kind(std::string_view name);

/// Ancilla register size and one control state per summand.
///
/// Control states are bit vectors of length a; entry i belongs to ancilla i, which
/// is the most significant bit of the register value. Entry i of v_k therefore
/// equals the parity of 2^(a-1-i) AND v_k.
struct AncillaScheme {
  SchemeKind kind = SchemeKind::Log;
  std::size_t a = 0;
  std::vector<BitVector> v;

  static AncillaScheme make(SchemeKind kind, std::size_t m);
  static AncillaScheme custom(std::size_t a, std::vector<BitVector> states);
  static AncillaScheme custom_from_integers(std::size_t a, std::span<const std::uint64_t> states);

  std::size_t size() const { return v.size(); }
  /// Target commutation vector of S_i: bit k is entry i of v_k.
  BitVector target_vector(std::size_t i) const;
};

/// t_i^(k) = 1 iff i <= k and P_i, P_k commute.
std::vector<BitVector> required_t_vectors(std::span<const PauliString> ps);
/// Matrix whose column i is t_vectors[i]; must be unit lower triangular.
BinaryMatrix build_mt(std::span<const BitVector> t_vectors);

struct StabilizerSet {
  std::vector<PauliString> stabilizers;
  /// r_i: bit k set iff T_k is a factor of S_i. Empty when S_i was solved directly.
  std::vector<BitVector> factorizations;
};

/// r_i = M_T^-1 s_i for every ancilla i.
std::vector<BitVector> factorizations_general(std::span<const BitVector> t_vectors,
                                              const AncillaScheme &scheme);
/// Closed form valid when all P_k commute: r_i^(k) is entry i of v_(k-1) xor v_k.
std::vector<BitVector> factorizations_closed_form(const AncillaScheme &scheme);
/// S_i as the canonical product of the T_k selected by each factorization.
std::vector<PauliString> multiply_factorizations(std::span<const PauliString> ts,
                                                 std::span<const BitVector> factorizations);

StabilizerSet stabilizers_general(std::span<const PauliString> ts,
                                  std::span<const BitVector> t_vectors,
                                  const AncillaScheme &scheme);
StabilizerSet stabilizers_commuting_closed_form(std::span<const PauliString> ts,
                                                const AncillaScheme &scheme);

/// Solves for Paulis F_0, F_1, ... with commutation vector targets[i] against refs,
/// each commuting with the earlier ones. Tries x-first and z-first pivot orders and
/// keeps the lower total weight. Returns nullopt if some F_i has no solution.
std::optional<std::vector<PauliString>> solve_commuting_family(
    std::span<const PauliString> refs, std::span<const BitVector> targets);

/// S_i found directly from the transformed strings: S_i anti-commutes with
/// ptildes[k] iff entry i of v_k is 1. Throws sbbe::ValidationError when unsolvable.
StabilizerSet stabilizers_direct(std::span<const PauliString> ptildes, const AncillaScheme &scheme);

/// Best-effort T_k finder for required_t_vectors(ps). Throws sbbe::ValidationError.
std::vector<PauliString> solve_transforms(std::span<const PauliString> ps);

/// "S_0 = T_2; S_1 = T_1 T_2"; an empty factorization prints as "S_i = I".
std::string format_factorizations(std::span<const BitVector> factorizations);
/// Rows "m | a | S_0 = ...; ..." for a fully commuting family of m strings.
std::vector<std::string> stabilizer_table(SchemeKind kind, std::size_t m_min, std::size_t m_max);

}  // namespace sbbe
