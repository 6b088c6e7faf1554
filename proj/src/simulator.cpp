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

#include "sbbe/simulator.hpp"

#include <bit>
#include <cmath>
#include <json.hpp>
#include <random>

#include "sbbe/error.hpp"

namespace sbbe {

namespace {

constexpr std::size_t kMaxSimulatedQubits = 30;

struct ControlMask {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
};

std::uint64_t bit_of(std::size_t q, std::size_t n) { return std::uint64_t{1} << (n - 1 - q); }

ControlMask control_mask(const std::vector<Control> &controls, std::size_t n) {
  ControlMask cm;
  for (const auto &c : controls) {
    cm.mask |= bit_of(c.qubit, n);
    if (c.polarity) cm.value |= bit_of(c.qubit, n);
  }
  return cm;
}

void scale_rows(StateBatch &s, const ControlMask &cm, cdouble factor) {
  const auto dim = static_cast<std::uint64_t>(s.rows());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cm.mask) == cm.value) s.row(static_cast<Eigen::Index>(i)) *= factor;
  }
}

void apply_2x2(StateBatch &s, std::uint64_t tb, const ControlMask &cm, const Mat2 &u) {
  const auto dim = static_cast<std::uint64_t>(s.rows());
  const Eigen::Index cols = s.cols();
  cdouble *data = s.data();
  const bool diagonal = u[1] == 0.0 && u[2] == 0.0;
  const bool antidiagonal = u[0] == 0.0 && u[3] == 0.0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & tb) || (i & cm.mask) != cm.value) continue;
    cdouble *r0 = data + i * cols;
    cdouble *r1 = data + (i | tb) * cols;
    if (diagonal) {
      for (Eigen::Index k = 0; k < cols; ++k) {
        r0[k] *= u[0];
        r1[k] *= u[3];
      }
    } else if (antidiagonal) {
      for (Eigen::Index k = 0; k < cols; ++k) {
        const cdouble a = r0[k];
        r0[k] = u[1] * r1[k];
        r1[k] = u[2] * a;
      }
    } else {
      for (Eigen::Index k = 0; k < cols; ++k) {
        const cdouble a = r0[k], b = r1[k];
        r0[k] = u[0] * a + u[1] * b;
        r1[k] = u[2] * a + u[3] * b;
      }
    }
  }
}

void apply_pauli_rows(StateBatch &s, const Gate &g, std::size_t n) {
  const ControlMask cm = control_mask(g.controls, n);
  std::uint64_t xm = 0, zm = 0;
  int ys = 0;
  for (std::size_t j = 0; j < g.targets.size(); ++j) {
    const Pauli p = g.payload.at(j);
    const std::uint64_t b = bit_of(g.targets[j], n);
    if (p == Pauli::X || p == Pauli::Y) xm |= b;
    if (p == Pauli::Z || p == Pauli::Y) zm |= b;
    if (p == Pauli::Y) ++ys;
  }
  const cdouble base = g.phase * i_pow(ys);
  auto coeff = [&](std::uint64_t b) { return (std::popcount(b & zm) & 1) ? -base : base; };
  const auto dim = static_cast<std::uint64_t>(s.rows());
  const Eigen::Index cols = s.cols();
  cdouble *data = s.data();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cm.mask) != cm.value) continue;
    const std::uint64_t j = i ^ xm;
    if (j < i) continue;
    cdouble *ri = data + i * cols;
    if (j == i) {
      const cdouble c = coeff(i);
      for (Eigen::Index k = 0; k < cols; ++k) ri[k] *= c;
      continue;
    }
    cdouble *rj = data + j * cols;
    // P|i> = coeff(i)|j>, P|j> = coeff(j)|i>.
    const cdouble ci = coeff(i), cj = coeff(j);
    for (Eigen::Index k = 0; k < cols; ++k) {
      const cdouble a = ri[k];
      ri[k] = cj * rj[k];
      rj[k] = ci * a;
    }
  }
}

void check_width(std::size_t n, std::size_t cap) {
  if (n > cap || n > kMaxSimulatedQubits) {
    throw CapacityError("circuit has " + std::to_string(n) + " qubits, above the dense cap of " +
                        std::to_string(cap) + "; raise --dense-cap or skip verification");
  }
}

}  // namespace

void apply_gate(const Gate &g, std::size_t num_qubits, StateBatch &states) {
  const std::size_t n = num_qubits;
  switch (g.kind) {
    case GateKind::GlobalPhase:
      scale_rows(states, control_mask(g.controls, n), std::polar(1.0, g.angle));
      return;
    case GateKind::ControlledPauli:
      apply_pauli_rows(states, g, n);
      return;
    default:
      apply_2x2(states, bit_of(g.targets[0], n), control_mask(g.controls, n), g.target_matrix());
  }
}

void apply_circuit(const Circuit &c, StateBatch &states) {
  check_width(c.num_qubits(), kMaxSimulatedQubits);
  if (static_cast<std::uint64_t>(states.rows()) != (std::uint64_t{1} << c.num_qubits())) {
    throw DimensionError("state dimension " + std::to_string(states.rows()) +
                         " does not match a " + std::to_string(c.num_qubits()) + "-qubit circuit");
  }
  for (const auto &g : c.gates()) apply_gate(g, c.num_qubits(), states);
}

Eigen::VectorXcd apply(const Circuit &c, const Eigen::VectorXcd &state) {
  StateBatch batch = state;
  apply_circuit(c, batch);
  return batch.col(0);
}

Eigen::MatrixXcd to_dense_unitary(const Circuit &c, std::size_t dense_cap) {
  check_width(c.num_qubits(), dense_cap);
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << c.num_qubits());
  StateBatch batch = StateBatch::Identity(dim, dim);
  apply_circuit(c, batch);
  return batch;
}

Eigen::MatrixXcd extract_block(const Eigen::MatrixXcd &u, std::size_t n_sys, std::size_t a) {
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << (n_sys + a));
  if (u.rows() != dim || u.cols() != dim) {
    throw DimensionError("matrix is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                         ", expected dimension " + std::to_string(dim));
  }
  const auto block = static_cast<Eigen::Index>(std::uint64_t{1} << n_sys);
  const Eigen::Index stride = Eigen::Index{1} << a;
  Eigen::MatrixXcd out(block, block);
  for (Eigen::Index i = 0; i < block; ++i) {
    for (Eigen::Index j = 0; j < block; ++j) out(i, j) = u(i * stride, j * stride);
  }
  return out;
}

Eigen::MatrixXcd block_from_circuit(const Circuit &c, std::size_t dense_cap) {
  check_width(c.num_qubits(), dense_cap);
  const std::size_t n = c.layout().n_sys, a = c.layout().n_anc;
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << (n + a));
  const auto block = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  const Eigen::Index stride = Eigen::Index{1} << a;
  StateBatch batch = StateBatch::Zero(dim, block);
  for (Eigen::Index j = 0; j < block; ++j) batch(j * stride, j) = 1.0;
  apply_circuit(c, batch);
  Eigen::MatrixXcd out(block, block);
  for (Eigen::Index i = 0; i < block; ++i) out.row(i) = batch.row(i * stride);
  return out;
}

Eigen::VectorXcd random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
  Eigen::VectorXcd psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) psi(i) = {normal(rng), normal(rng)};
  return psi / psi.norm();
}

double success_probability(const Circuit &c, const Eigen::VectorXcd &psi) {
  const std::size_t n = c.layout().n_sys, a = c.layout().n_anc;
  if (static_cast<std::uint64_t>(psi.size()) != (std::uint64_t{1} << n)) {
    throw DimensionError("system state dimension does not match the circuit layout");
  }
  const Eigen::Index stride = Eigen::Index{1} << a;
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(psi.size() * stride);
  for (Eigen::Index i = 0; i < psi.size(); ++i) full(i * stride) = psi(i);
  const Eigen::VectorXcd out = sbbe::apply(c, full);
  double p = 0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) p += std::norm(out(i * stride));
  return p;
}

BlockReport verify_block_encoding(const Circuit &c, const Eigen::MatrixXcd &target, double lambda,
                                  double tol, std::uint64_t seed, std::size_t dense_cap) {
  const auto block_dim = static_cast<Eigen::Index>(std::uint64_t{1} << c.layout().n_sys);
  if (target.rows() != block_dim || target.cols() != block_dim) {
    throw DimensionError("target operator does not act on the circuit's system register");
  }
  BlockReport report;
  report.lambda_used = lambda;
  const Eigen::MatrixXcd block = block_from_circuit(c, dense_cap);
  const Eigen::MatrixXcd diff = block - lambda * target;
  report.frobenius_error = diff.norm();
  for (Eigen::Index i = 0; i < diff.rows(); ++i) {
    for (Eigen::Index j = 0; j < diff.cols(); ++j) {
      if (std::abs(diff(i, j)) > report.max_abs_error) {
        report.max_abs_error = std::abs(diff(i, j));
        report.worst_row = static_cast<std::size_t>(i);
        report.worst_col = static_cast<std::size_t>(j);
      }
    }
  }
  const Eigen::VectorXcd psi = random_state(c.layout().n_sys, seed);
  report.success_probability_observed = success_probability(c, psi);
  report.success_probability_expected = lambda * lambda * (target * psi).squaredNorm();
  report.passed = report.max_abs_error <= tol &&
                  std::abs(report.success_probability_observed -
                           report.success_probability_expected) <= tol;
  return report;
}

BlockReport verify_block_encoding(const Circuit &c, const WeightedPauliSum &target, double lambda,
                                  double tol, std::uint64_t seed, std::size_t dense_cap) {
  return verify_block_encoding(c, target.to_dense(dense_cap), lambda, tol, seed, dense_cap);
}

std::string to_json(const BlockReport &report) {
  nlohmann::ordered_json j;
  j["passed"] = report.passed;
  j["max_abs_error"] = report.max_abs_error;
  j["frobenius_error"] = report.frobenius_error;
  j["worst_entry"] = {report.worst_row, report.worst_col};
  j["lambda"] = report.lambda_used;
  j["success_probability_observed"] = report.success_probability_observed;
  j["success_probability_expected"] = report.success_probability_expected;
  return j.dump(2);
}

}  // namespace sbbe
