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
#include <cstdint>
#include <string>

#include "sbbe/circuit.hpp"
#include "sbbe/pauli.hpp"

namespace sbbe {

/// Several states side by side: row r is basis state r, column j is state j.
/// Basis state bits follow the qubit order, so qubit q is bit (N-1-q) of r and an
/// index over (system, ancilla) reads sys_index * 2^a + ancilla_value.
using StateBatch = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void apply_gate(const Gate &g, std::size_t num_qubits, StateBatch &states);
void apply_circuit(const Circuit &c, StateBatch &states);
/// Gate-by-gate application to a single state.
Eigen::VectorXcd apply(const Circuit &c, const Eigen::VectorXcd &state);

/// Full unitary; throws sbbe::CapacityError above dense_cap qubits.
Eigen::MatrixXcd to_dense_unitary(const Circuit &c, std::size_t dense_cap = kDefaultDenseCap);

/// <i|<0| U |j>|0> for a unitary over n_sys system qubits followed by a ancillas.
Eigen::MatrixXcd extract_block(const Eigen::MatrixXcd &u, std::size_t n_sys, std::size_t a);
/// Same block computed from the 2^n_sys relevant columns only.
Eigen::MatrixXcd block_from_circuit(const Circuit &c, std::size_t dense_cap = kDefaultDenseCap);

/// Normalized complex Gaussian state on n qubits.
Eigen::VectorXcd random_state(std::size_t n, std::uint64_t seed);
/// Probability of the all-zero ancilla outcome after running c on |psi>|0>.
double success_probability(const Circuit &c, const Eigen::VectorXcd &psi);

struct BlockReport {
  double max_abs_error = 0.0;
  double frobenius_error = 0.0;
  double lambda_used = 0.0;
  double success_probability_observed = 0.0;
  double success_probability_expected = 0.0;
  std::size_t worst_row = 0;
  std::size_t worst_col = 0;
  bool passed = false;
};

/// Compares the top-left block of c with lambda * target. passed requires both the
/// block and the success probability on a seeded random state to agree within tol.
BlockReport verify_block_encoding(const Circuit &c, const Eigen::MatrixXcd &target, double lambda,
                                  double tol, std::uint64_t seed = 1,
                                  std::size_t dense_cap = kDefaultDenseCap);
BlockReport verify_block_encoding(const Circuit &c, const WeightedPauliSum &target, double lambda,
                                  double tol, std::uint64_t seed = 1,
                                  std::size_t dense_cap = kDefaultDenseCap);

std::string to_json(const BlockReport &report);

}  // namespace sbbe
