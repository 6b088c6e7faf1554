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

#include "sbbe/bits.hpp"

#include <bit>

#include "sbbe/error.hpp"

namespace sbbe {

namespace {
std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }
}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i);
    } else if (bits[i] != '0') {
      throw ParseError("invalid bit character '" + std::string(1, bits[i]) + "'");
    }
  }
  return out;
}

BitVector BitVector::from_integer(std::uint64_t value, std::size_t width) {
  if (width < 64 && (value >> width) != 0) {
    throw ValidationError("value " + std::to_string(value) + " does not fit in " +
                          std::to_string(width) + " bits");
  }
  BitVector out(width);
  for (std::size_t i = 0; i < width && i < 64; ++i) {
    if ((value >> i) & 1u) out.set(width - 1 - i);
  }
  return out;
}

BitVector BitVector::unit(std::size_t size, std::size_t index) {
  BitVector out(size);
  out.set(index);
  return out;
}

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

void BitVector::check_same_size(const BitVector &other) const {
  if (size_ != other.size_) {
    throw DimensionError("bit vector size mismatch: " + std::to_string(size_) + " vs " +
                         std::to_string(other.size_));
  }
}

BitVector &BitVector::operator^=(const BitVector &other) {
  check_same_size(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

BitVector &BitVector::operator&=(const BitVector &other) {
  check_same_size(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

std::size_t BitVector::popcount() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::any() const {
  for (auto w : words_) {
    if (w != 0) return true;
  }
  return false;
}

bool BitVector::dot(const BitVector &other) const {
  check_same_size(other);
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1;
}

std::size_t BitVector::first_set() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) {
      return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
  }
  return size_;
}

std::vector<std::size_t> BitVector::set_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::uint64_t BitVector::to_integer() const {
  if (size_ > 64) throw ValidationError("bit vector wider than 64 bits");
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) value |= std::uint64_t{1} << (size_ - 1 - i);
  }
  return value;
}

std::string BitVector::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
  BinaryMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, i);
  return out;
}

BinaryMatrix BinaryMatrix::from_columns(std::span<const BitVector> columns) {
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  BinaryMatrix out(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw DimensionError("ragged column list");
    for (auto r : columns[c].set_indices()) out.set(r, c);
  }
  return out;
}

BitVector BinaryMatrix::column(std::size_t c) const {
  BitVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (get(r, c)) out.set(r);
  }
  return out;
}

bool BinaryMatrix::is_unit_lower_triangular() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (!get(r, r)) return false;
    for (auto c : data_[r].set_indices()) {
      if (c > r) return false;
    }
  }
  return true;
}

BitVector BinaryMatrix::operator*(const BitVector &v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
  BitVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (data_[r].dot(v)) out.set(r);
  }
  return out;
}

BinaryMatrix BinaryMatrix::operator*(const BinaryMatrix &other) const {
  if (cols_ != other.rows_) throw DimensionError("matrix-matrix shape mismatch");
  BinaryMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    BitVector acc(other.cols_);
    for (auto k : data_[r].set_indices()) acc ^= other.data_[k];
    out.data_[r] = std::move(acc);
  }
  return out;
}

std::string BinaryMatrix::to_string() const {
  std::string out;
  for (const auto &r : data_) {
    out += r.to_string();
    out += '\n';
  }
  return out;
}

BinaryMatrix invert_gf2(const BinaryMatrix &mat) {
  if (mat.rows() != mat.cols()) throw DimensionError("cannot invert a non-square matrix");
  const std::size_t n = mat.rows();
  std::vector<BitVector> left(n), right(n);
  for (std::size_t r = 0; r < n; ++r) {
    left[r] = mat.row(r);
    right[r] = BitVector::unit(n, r);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && !left[pivot].get(col)) ++pivot;
    if (pivot == n) {
      throw SingularMatrixError("matrix is singular over GF(2) (no pivot in column " +
                                std::to_string(col) + ")");
    }
    std::swap(left[pivot], left[col]);
    std::swap(right[pivot], right[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != col && left[r].get(col)) {
        left[r] ^= left[col];
        right[r] ^= right[col];
      }
    }
  }
  BinaryMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (auto c : right[r].set_indices()) out.set(r, c);
  }
  return out;
}

Gf2System::Gf2System(std::size_t unknowns) : unknowns_(unknowns) {}

void Gf2System::grow_tags() {
  tag_capacity_ *= 2;
  auto widen = [this](BitVector &tag) {
    BitVector wider(tag_capacity_);
    for (auto i : tag.set_indices()) wider.set(i);
    tag = std::move(wider);
  };
  for (auto &row : rows_) widen(row.tag);
  for (auto &dep : dependencies_) widen(dep);
}

std::size_t Gf2System::add_equation(const BitVector &coefficients) {
  if (coefficients.size() != unknowns_) {
    throw DimensionError("equation has " + std::to_string(coefficients.size()) +
                         " coefficients, expected " + std::to_string(unknowns_));
  }
  const std::size_t index = equations_++;
  if (equations_ > tag_capacity_) grow_tags();

  BitVector coeffs = coefficients;
  BitVector tag = BitVector::unit(tag_capacity_, index);
  for (const auto &row : rows_) {
    if (coeffs.get(row.pivot)) {
      coeffs ^= row.coeffs;
      tag ^= row.tag;
    }
  }
  const std::size_t pivot = coeffs.first_set();
  if (pivot == coeffs.size()) {
    dependencies_.push_back(std::move(tag));
    return index;
  }
  for (auto &row : rows_) {
    if (row.coeffs.get(pivot)) {
      row.coeffs ^= coeffs;
      row.tag ^= tag;
    }
  }
  rows_.push_back(Row{std::move(coeffs), std::move(tag), pivot});
  return index;
}

std::optional<BitVector> Gf2System::solve(const BitVector &rhs) const {
  if (rhs.size() != equations_) {
    throw DimensionError("right-hand side has " + std::to_string(rhs.size()) +
                         " entries, expected " + std::to_string(equations_));
  }
  BitVector padded(tag_capacity_);
  for (auto i : rhs.set_indices()) padded.set(i);
  for (const auto &dep : dependencies_) {
    if (dep.dot(padded)) return std::nullopt;
  }
  BitVector x(unknowns_);
  for (const auto &row : rows_) {
    if (row.tag.dot(padded)) x.set(row.pivot);
  }
  return x;
}

}  // namespace sbbe
