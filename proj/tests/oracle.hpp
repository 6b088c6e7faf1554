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

// Reference constructions for tests. Nothing here calls the library's dense
// routines: Paulis are Kronecker products of literal 2x2 matrices and gates are
// expanded with projectors.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "sbbe/circuit.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli2(char c) {
  Mat m(2, 2);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cd(0, -1), cd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1;
  }
  return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// "XIZ": leftmost letter acts on qubit 0, the most significant tensor factor.
inline Mat pauli(const std::string &s) {
  Mat out = Mat::Identity(1, 1);
  for (char c : s) out = kron(out, pauli2(c));
  return out;
}

inline Mat embed(const Mat &u, std::size_t q, std::size_t n) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t i = 0; i < n; ++i) out = kron(out, i == q ? u : pauli2('I'));
  return out;
}

inline Mat projector(std::size_t q, bool one, std::size_t n) {
  Mat p = Mat::Zero(2, 2);
  p(one ? 1 : 0, one ? 1 : 0) = 1;
  return embed(p, q, n);
}

inline Mat one_qubit(sbbe::GateKind kind, double t, const sbbe::Mat2 &custom) {
  using K = sbbe::GateKind;
  const cd i(0, 1);
  const double r = 1 / std::sqrt(2.0);
  Mat m(2, 2);
  switch (kind) {
    case K::H: m << r, r, r, -r; break;
    case K::X: return pauli2('X');
    case K::Y: return pauli2('Y');
    case K::Z: return pauli2('Z');
    case K::S: m << 1, 0, 0, i; break;
    case K::Sdg: m << 1, 0, 0, -i; break;
    case K::Rx: m << std::cos(t / 2), -i * std::sin(t / 2), -i * std::sin(t / 2), std::cos(t / 2); break;
    case K::Ry: m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2); break;
    case K::Rz: m << std::exp(-i * t / 2.0), 0, 0, std::exp(i * t / 2.0); break;
    case K::Unitary: m << custom[0], custom[1], custom[2], custom[3]; break;
    default: throw std::runtime_error("not a one-qubit kind");
  }
  return m;
}

/// (I - P) + P * op, with P the projector onto the control condition.
inline Mat controlled(const Mat &op, const std::vector<sbbe::Control> &controls, std::size_t n) {
  const auto dim = Eigen::Index{1} << n;
  Mat p = Mat::Identity(dim, dim);
  for (const auto &c : controls) p = p * projector(c.qubit, c.polarity, n);
  return Mat::Identity(dim, dim) - p + p * op;
}

inline Mat gate(const sbbe::Gate &g, std::size_t n) {
  using K = sbbe::GateKind;
  const auto dim = Eigen::Index{1} << n;
  Mat op;
  switch (g.kind) {
    case K::GlobalPhase:
      op = std::exp(cd(0, g.angle)) * Mat::Identity(dim, dim);
      break;
    case K::ControlledPauli: {
      op = g.phase * Mat::Identity(dim, dim);
      for (std::size_t j = 0; j < g.targets.size(); ++j) {
        op = op * embed(pauli2(sbbe::pauli_char(g.payload.at(j))), g.targets[j], n);
      }
      break;
    }
    case K::MultiControlled:
      op = g.phase * embed(one_qubit(g.base, g.angle, g.matrix), g.targets[0], n);
      break;
    case K::CX:
      op = embed(pauli2('X'), g.targets[0], n);
      break;
    default:
      op = embed(one_qubit(g.kind, g.angle, g.matrix), g.targets[0], n);
  }
  return controlled(op, g.controls, n);
}

inline Mat unitary(const sbbe::Circuit &c) {
  const std::size_t n = c.num_qubits();
  Mat u = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto &g : c.gates()) u = gate(g, n) * u;
  return u;
}

inline double max_abs(const Mat &a) { return a.cwiseAbs().maxCoeff(); }

/// min over phases of max |a - e^{i phi} b|, using the largest entry of b.
inline double phase_distance(const Mat &a, const Mat &b) {
  Eigen::Index r = 0, col = 0;
  b.cwiseAbs().maxCoeff(&r, &col);
  const cd ph = a(r, col) / b(r, col);
  return max_abs(a - (ph / std::abs(ph)) * b);
}

/// Hilbert-Schmidt coefficient tr(P^dagger U) / 2^n.
inline cd pauli_coefficient(const Mat &u, const std::string &p) {
  return (pauli(p).adjoint() * u).trace() / static_cast<double>(u.rows());
}

}  // namespace oracle
