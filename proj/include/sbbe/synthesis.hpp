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

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sbbe/circuit.hpp"
#include "sbbe/pauli.hpp"

namespace sbbe {

/// exp(i theta P / 2) = R_P(-theta).
struct PauliExponential {
  PauliString pauli;
  double theta = 0.0;
};

/// theta_k = arcsin(alpha_k / sqrt(alpha_0^2 + ... + alpha_k^2)); leading zero
/// coefficients give theta = 0. Throws sbbe::ValidationError if every alpha is zero.
std::vector<double> compute_generic_angles(std::span<const double> alphas);

/// Factors E_0 ... E_{m-2} E_{m-1}^2 E_{m-2} ... E_0 in time order with
/// E_j = exp(i theta_j P_j / 2). Their product is i * sum_k alpha_k P_k.
/// Zero-angle factors are omitted.
std::vector<PauliExponential> generic_factors(std::span<const double> alphas,
                                              std::span<const PauliString> ptildes);

/// Basis change, CX parity ladder, Rz(-theta) and the mirror image. When controls
/// are given only the Rz is conditioned on them.
void append_pauli_exponential(Circuit &c, const PauliExponential &e, std::size_t offset = 0,
                              const std::vector<Control> &controls = {});

/// sum_k alpha_k P_k from 2m-1 Pauli exponentials. ptildes must pairwise
/// anti-commute and carry no phase.
void append_u_generic(Circuit &c, std::span<const double> alphas,
                      std::span<const PauliString> ptildes, std::size_t offset = 0,
                      const std::vector<Control> &controls = {});
Circuit build_u_generic(std::span<const double> alphas, std::span<const PauliString> ptildes);

/// P_0 = sigma^(b)_0, P_k = sigma^(a)_0 ... sigma^(a)_{k-1} sigma^(b)_k, padded to n qubits.
std::vector<PauliString> staircase_strings(Pauli a, Pauli b, std::size_t m, std::size_t n);
/// (a, b) when ptildes is exactly a staircase family.
std::optional<std::pair<Pauli, Pauli>> detect_staircase(std::span<const PauliString> ptildes);

/// mu = -i gamma(c, b) in {+1, -1}, where c is the third Pauli type.
int cascade_mu(Pauli a, Pauli b);
/// Coefficients produced by the cascade for the given angles (n = thetas.size() + 1).
std::vector<double> cascade_coefficients(std::span<const double> thetas, int mu);
/// Inverse of cascade_coefficients. Angles after a vanishing prefix are 0.
/// Throws sbbe::ValidationError for unreachable coefficients.
std::vector<double> solve_cascade_angles(std::span<const double> alphas, int mu);

/// Staircase unitary on qubits offset .. offset+m-1: a ladder of sigma^(c)-controlled
/// sigma^(b) rotations, sigma^(b) on the first qubit, and the ladder with negated
/// angles. With controls only the central sigma^(b) is conditioned.
void append_u_cascade(Circuit &c, Pauli a, Pauli b, std::span<const double> alphas,
                      std::size_t offset = 0, const std::vector<Control> &controls = {});
Circuit build_u_cascade(Pauli a, Pauli b, std::span<const double> alphas);

}  // namespace sbbe
