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

#include "sbbe/pauli.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <sstream>

#include "sbbe/error.hpp"

namespace sbbe {

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': case '_': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
  }
  throw ParseError(std::string("invalid Pauli character '") + c + "'");
}

Pauli parse_pauli_type(std::string_view text) {
  if (text == "1" || text == "X" || text == "x") return Pauli::X;
  if (text == "2" || text == "Y" || text == "y") return Pauli::Y;
  if (text == "3" || text == "Z" || text == "z") return Pauli::Z;
  throw ParseError("invalid Pauli type '" + std::string(text) + "', expected 1, 2, 3 or X, Y, Z");
}

Pauli remaining_pauli(Pauli a, Pauli b) {
  if (a == Pauli::I || b == Pauli::I || a == b) {
    throw ValidationError("remaining_pauli needs two distinct non-identity types");
  }
  return static_cast<Pauli>(static_cast<int>(a) ^ static_cast<int>(b));
}

int pauli_product_phase_exp(Pauli a, Pauli b) {
  if (a == Pauli::I || b == Pauli::I || a == b) return 0;
  // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  return (ib == ia % 3 + 1) ? 1 : 3;
}

cdouble i_pow(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

PauliString::PauliString(std::size_t n) : x_(n), z_(n) {}

PauliString PauliString::from_string(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
    if (pos < text.size() && text[pos] == '1') {
      ++pos;
    } else if (pos < text.size() && text[pos] == 'i') {
      phase += 1;
      ++pos;
    }
  } else if (pos < text.size() && text[pos] == 'i' && text.size() > 1) {
    // A leading lowercase i followed by more characters is a phase, not an identity.
    phase = 1;
    ++pos;
  }
  PauliString out(text.size() - pos);
  for (std::size_t q = 0; pos < text.size(); ++pos, ++q) out.set(q, pauli_from_char(text[pos]));
  out.set_phase_exp(phase);
  return out;
}

PauliString PauliString::single(std::size_t n, std::size_t qubit, Pauli type) {
  if (qubit >= n) throw DimensionError("qubit index out of range");
  PauliString out(n);
  out.set(qubit, type);
  return out;
}

PauliString PauliString::from_bits(BitVector x, BitVector z, int phase_exp) {
  if (x.size() != z.size()) throw DimensionError("x and z parts differ in length");
  PauliString out;
  out.x_ = std::move(x);
  out.z_ = std::move(z);
  out.set_phase_exp(phase_exp);
  return out;
}

Pauli PauliString::at(std::size_t q) const {
  const int x = x_.get(q), z = z_.get(q);
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

void PauliString::set(std::size_t q, Pauli type) {
  x_.set(q, type == Pauli::X || type == Pauli::Y);
  z_.set(q, type == Pauli::Z || type == Pauli::Y);
}

PauliString PauliString::canonical() const {
  PauliString out = *this;
  out.phase_exp_ = 0;
  return out;
}

std::size_t PauliString::weight() const { return (x_ ^ z_).popcount() + (x_ & z_).popcount(); }

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < num_qubits(); ++q) {
    if (x_.get(q) || z_.get(q)) out.push_back(q);
  }
  return out;
}

std::uint64_t PauliString::x_mask() const { return x_.to_integer(); }
std::uint64_t PauliString::z_mask() const { return z_.to_integer(); }

PauliString &PauliString::operator*=(const PauliString &rhs) {
  if (num_qubits() != rhs.num_qubits()) {
    throw DimensionError("Pauli strings act on " + std::to_string(num_qubits()) + " and " +
                         std::to_string(rhs.num_qubits()) + " qubits");
  }
  auto x1 = x_.mutable_words();
  auto z1 = z_.mutable_words();
  auto x2 = rhs.x_.words();
  auto z2 = rhs.z_.words();
  long plus = 0, minus = 0;
  for (std::size_t w = 0; w < x1.size(); ++w) {
    const std::uint64_t X1 = x1[w] & ~z1[w], Y1 = x1[w] & z1[w], Z1 = ~x1[w] & z1[w];
    const std::uint64_t X2 = x2[w] & ~z2[w], Y2 = x2[w] & z2[w], Z2 = ~x2[w] & z2[w];
    plus += std::popcount((X1 & Y2) | (Y1 & Z2) | (Z1 & X2));
    minus += std::popcount((Y1 & X2) | (Z1 & Y2) | (X1 & Z2));
    x1[w] ^= x2[w];
    z1[w] ^= z2[w];
  }
  set_phase_exp(static_cast<int>((phase_exp_ + rhs.phase_exp_ + plus - minus) % 4));
  return *this;
}

std::string PauliString::to_string() const {
  static const char *prefixes[] = {"", "+i", "-", "-i"};
  std::string out = prefixes[phase_exp_];
  for (std::size_t q = 0; q < num_qubits(); ++q) out += pauli_char(at(q));
  return out;
}

PauliString pauli_mul(const PauliString &p, const PauliString &q) { return p * q; }

bool anticommutes(const PauliString &p, const PauliString &q) {
  if (p.num_qubits() != q.num_qubits()) throw DimensionError("Pauli strings differ in qubit count");
  return p.x().dot(q.z()) ^ p.z().dot(q.x());
}

BitVector commutation_vector(const PauliString &t, std::span<const PauliString> ps) {
  BitVector out(ps.size());
  for (std::size_t k = 0; k < ps.size(); ++k) out.set(k, anticommutes(t, ps[k]));
  return out;
}

PauliString conjugate(const PauliString &t, const PauliString &p) { return t * p * t; }

namespace {

void check_dense_cap(std::size_t n, std::size_t cap) {
  if (n > cap || n > 30) {
    throw CapacityError("dense representation of " + std::to_string(n) +
                        " qubits exceeds the cap of " + std::to_string(cap));
  }
}

}  // namespace

Eigen::MatrixXcd to_dense(const PauliString &p, std::size_t dense_cap) {
  const std::size_t n = p.num_qubits();
  check_dense_cap(n, dense_cap);
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t xm = p.x_mask(), zm = p.z_mask();
  const cdouble base = i_pow(p.phase_exp() + std::popcount(xm & zm));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    out(b ^ xm, b) = (std::popcount(b & zm) & 1) ? -base : base;
  }
  return out;
}

Eigen::VectorXcd apply_pauli(const PauliString &p, const Eigen::VectorXcd &state) {
  const std::size_t n = p.num_qubits();
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (static_cast<std::uint64_t>(state.size()) != dim) {
    throw DimensionError("state dimension does not match Pauli string");
  }
  const std::uint64_t xm = p.x_mask(), zm = p.z_mask();
  const cdouble base = i_pow(p.phase_exp() + std::popcount(xm & zm));
  Eigen::VectorXcd out(dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    out(b ^ xm) = ((std::popcount(b & zm) & 1) ? -base : base) * state(b);
  }
  return out;
}

WeightedPauliSum::WeightedPauliSum(std::size_t n, std::vector<PauliTerm> terms, Unchecked)
    : n_(n), terms_(std::move(terms)) {
  if (terms_.empty()) throw ValidationError("a weighted Pauli sum needs at least one term");
  if (terms_.size() > 2 * n_ + 1) {
    throw ValidationError("m = " + std::to_string(terms_.size()) + " exceeds 2n+1 = " +
                          std::to_string(2 * n_ + 1));
  }
  std::set<std::string> seen;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    auto &term = terms_[k];
    if (term.pauli.num_qubits() != n_) {
      throw DimensionError("term " + std::to_string(k) + " acts on " +
                           std::to_string(term.pauli.num_qubits()) + " qubits, expected " +
                           std::to_string(n_));
    }
    if (term.pauli.phase_exp() % 2 != 0) {
      throw ValidationError("term " + std::to_string(k) +
                            " has an imaginary phase; coefficients must be real");
    }
    if (term.pauli.phase_exp() == 2) term.coefficient = -term.coefficient;
    term.pauli = term.pauli.canonical();
    if (!seen.insert(term.pauli.to_string()).second) {
      throw ValidationError("duplicate Pauli string " + term.pauli.to_string());
    }
  }
}

WeightedPauliSum::WeightedPauliSum(std::size_t n, std::vector<PauliTerm> terms, double tol)
    : WeightedPauliSum(n, std::move(terms), Unchecked{}) {
  double norm2 = 0;
  for (const auto &t : terms_) norm2 += t.coefficient * t.coefficient;
  if (std::abs(norm2 - 1.0) > tol) {
    std::ostringstream msg;
    msg << "coefficients are not normalized: sum of squares = " << norm2;
    throw ValidationError(msg.str());
  }
}

WeightedPauliSum WeightedPauliSum::unnormalized(std::size_t n, std::vector<PauliTerm> terms) {
  return WeightedPauliSum(n, std::move(terms), Unchecked{});
}

std::vector<double> WeightedPauliSum::coefficients() const {
  std::vector<double> out;
  for (const auto &t : terms_) out.push_back(t.coefficient);
  return out;
}

std::vector<PauliString> WeightedPauliSum::strings() const {
  std::vector<PauliString> out;
  for (const auto &t : terms_) out.push_back(t.pauli);
  return out;
}

double WeightedPauliSum::l1_norm() const {
  double total = 0;
  for (const auto &t : terms_) total += std::abs(t.coefficient);
  return total;
}

Eigen::MatrixXcd WeightedPauliSum::to_dense(std::size_t dense_cap) const {
  check_dense_cap(n_, dense_cap);
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n_);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto &t : terms_) out += t.coefficient * sbbe::to_dense(t.pauli, dense_cap);
  return out;
}

Eigen::VectorXcd WeightedPauliSum::apply(const Eigen::VectorXcd &state) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.size());
  for (const auto &t : terms_) out += t.coefficient * apply_pauli(t.pauli, state);
  return out;
}

std::string WeightedPauliSum::to_string() const {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (k) out << " + ";
    out << terms_[k].coefficient << "*" << terms_[k].pauli.to_string();
  }
  return out.str();
}

}  // namespace sbbe
