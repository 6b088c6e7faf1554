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

namespace sbbe {

/// Fixed-length packed vector over GF(2).
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  /// Parses a string of '0'/'1' characters; index 0 is the leftmost character.
  static BitVector from_string(std::string_view bits);
  /// Bits of `value` in MSB-first order over `width` positions.
  static BitVector from_integer(std::uint64_t value, std::size_t width);
  static BitVector unit(std::size_t size, std::size_t index);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector &operator^=(const BitVector &other);
  BitVector &operator&=(const BitVector &other);
  friend BitVector operator^(BitVector a, const BitVector &b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector &b) { return a &= b; }

  std::size_t popcount() const;
  bool any() const;
  /// Parity of the AND of two vectors (the GF(2) dot product).
  bool dot(const BitVector &other) const;
  /// Index of the first set bit, or size() when none is set.
  std::size_t first_set() const;
  std::vector<std::size_t> set_indices() const;
  /// Value with index 0 as the most significant of size() bits; requires size() <= 64.
  std::uint64_t to_integer() const;

  std::span<const std::uint64_t> words() const { return words_; }
  /// Raw storage; bits past size() must stay zero.
  std::span<std::uint64_t> mutable_words() { return words_; }
  std::string to_string() const;

  friend bool operator==(const BitVector &a, const BitVector &b) = default;

 private:
  void check_same_size(const BitVector &other) const;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense row-major matrix over GF(2).
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols);

  static BinaryMatrix identity(std::size_t n);
  /// Builds the matrix whose j-th column is columns[j].
  static BinaryMatrix from_columns(std::span<const BitVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { data_[r].set(c, value); }
  const BitVector &row(std::size_t r) const { return data_[r]; }
  BitVector column(std::size_t c) const;

  bool is_unit_lower_triangular() const;

  BitVector operator*(const BitVector &v) const;
  BinaryMatrix operator*(const BinaryMatrix &other) const;
  friend bool operator==(const BinaryMatrix &a, const BinaryMatrix &b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVector> data_;
};

/// Inverse over GF(2) by Gauss-Jordan elimination. Throws sbbe::SingularMatrixError.
BinaryMatrix invert_gf2(const BinaryMatrix &mat);

/// Incrementally maintained linear system A x = b over GF(2).
///
/// Equations are added one at a time and kept in reduced row echelon form.
/// Every reduced row remembers which original equations it combines, so a
/// solve against a new right-hand side costs one pass over the rows. Free
/// variables are set to zero.
class Gf2System {
 public:
  explicit Gf2System(std::size_t unknowns);

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return equations_; }
  std::size_t rank() const { return rows_.size(); }

  /// Appends the equation `coefficients . x = rhs[index]` and returns index.
  std::size_t add_equation(const BitVector &coefficients);

  /// Solves against `rhs` (one bit per equation added so far).
  std::optional<BitVector> solve(const BitVector &rhs) const;

 private:
  struct Row {
    BitVector coeffs;
    BitVector tag;
    std::size_t pivot;
  };

  void grow_tags();

  std::size_t unknowns_;
  std::size_t equations_ = 0;
  std::size_t tag_capacity_ = 64;
  std::vector<Row> rows_;
  // Combinations of equations that reduce to 0 = sum(rhs).
  std::vector<BitVector> dependencies_;
};

}  // namespace sbbe
