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

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sbbe/bits.hpp"

namespace sbbe {

using cdouble = std::complex<double>;

/// Largest qubit count for which dense matrices are built unless overridden.
inline constexpr std::size_t kDefaultDenseCap = 12;

/// Single-qubit Pauli type, numbered as sigma^(0..3).
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);
/// Parses "1"/"2"/"3" or "X"/"Y"/"Z" (case insensitive).
Pauli parse_pauli_type(std::string_view text);
/// The Pauli type that is neither a nor b; a and b must be distinct non-identity types.
Pauli remaining_pauli(Pauli a, Pauli b);
/// Exponent e of i^e in sigma^(a) sigma^(b) = i^e sigma^(a xor b).
int pauli_product_phase_exp(Pauli a, Pauli b);
/// i^e for integer e.
cdouble i_pow(int e);

/// n-qubit Pauli operator i^phase_exp * P_0 (x) ... (x) P_{n-1}.
///
/// Qubit q is stored as (x_q, z_q) with (1,0) = X, (1,1) = Y, (0,1) = Z, so Y is
/// a basis element and not the product XZ. Qubit 0 is the leftmost tensor factor.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n);

  /// Parses e.g. "XYZI", "-iXYZI", "+1ZZ". Throws sbbe::ParseError.
  static PauliString from_string(std::string_view text);
  static PauliString single(std::size_t n, std::size_t qubit, Pauli type);
  static PauliString from_bits(BitVector x, BitVector z, int phase_exp = 0);

  std::size_t num_qubits() const { return x_.size(); }
  const BitVector &x() const { return x_; }
  const BitVector &z() const { return z_; }
  int phase_exp() const { return phase_exp_; }
  cdouble phase() const { return i_pow(phase_exp_); }

  Pauli at(std::size_t q) const;
  void set(std::size_t q, Pauli type);
  void set_phase_exp(int e) { phase_exp_ = ((e % 4) + 4) % 4; }

  /// Same operator with phase_exp = 0.
  PauliString canonical() const;
  bool is_identity() const { return !x_.any() && !z_.any(); }
  std::size_t weight() const;
  std::vector<std::size_t> support() const;
  /// Integer masks with qubit q at bit (n-1-q); requires n <= 64.
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;

  PauliString &operator*=(const PauliString &rhs);
  friend PauliString operator*(PauliString lhs, const PauliString &rhs) { return lhs *= rhs; }
  friend bool operator==(const PauliString &a, const PauliString &b) = default;

  /// "XYZI" form with prefix "", "+i", "-" or "-i".
  std::string to_string() const;

 private:
  BitVector x_;
  BitVector z_;
  int phase_exp_ = 0;
};

PauliString pauli_mul(const PauliString &p, const PauliString &q);
/// True iff pq = -qp (symplectic inner product equals 1).
bool anticommutes(const PauliString &p, const PauliString &q);
/// Bit k set iff t anti-commutes with ps[k].
BitVector commutation_vector(const PauliString &t, std::span<const PauliString> ps);
/// t p t with exact phase.
PauliString conjugate(const PauliString &t, const PauliString &p);
Eigen::MatrixXcd to_dense(const PauliString &p, std::size_t dense_cap = kDefaultDenseCap);
/// Applies p to a state vector of the same qubit ordering.
Eigen::VectorXcd apply_pauli(const PauliString &p, const Eigen::VectorXcd &state);

struct PauliTerm {
  double coefficient = 0.0;
  PauliString pauli;
};

/// A = sum_k alpha_k P_k with real coefficients and phase-free strings.
class WeightedPauliSum {
 public:
  WeightedPauliSum() = default;
  /// Validates normalization (sum alpha_k^2 = 1 within tol), m <= 2n+1, equal n and
  /// distinct strings. Strings carrying a sign have it folded into the coefficient.
  WeightedPauliSum(std::size_t n, std::vector<PauliTerm> terms, double tol = 1e-12);
  /// Same checks except normalization.
  static WeightedPauliSum unnormalized(std::size_t n, std::vector<PauliTerm> terms);

  std::size_t num_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<PauliTerm> &terms() const { return terms_; }
  const PauliTerm &operator[](std::size_t k) const { return terms_[k]; }
  std::vector<double> coefficients() const;
  std::vector<PauliString> strings() const;
  double l1_norm() const;

  Eigen::MatrixXcd to_dense(std::size_t dense_cap = kDefaultDenseCap) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd &state) const;
  std::string to_string() const;

 private:
  struct Unchecked {};
  WeightedPauliSum(std::size_t n, std::vector<PauliTerm> terms, Unchecked);

  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
};

}  // namespace sbbe
