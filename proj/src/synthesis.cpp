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

#include "sbbe/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sbbe/error.hpp"

namespace sbbe {

namespace {

constexpr double kNormTol = 1e-12;

void check_normalized(std::span<const double> alphas) {
  double norm2 = 0;
  for (double a : alphas) norm2 += a * a;
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw ValidationError("coefficients must satisfy sum alpha_k^2 = 1, got " +
                          std::to_string(norm2));
  }
}

void check_anticommuting(std::span<const PauliString> ps) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (ps[i].phase_exp() != 0) {
      throw ValidationError("transformed string " + std::to_string(i) + " carries a phase");
    }
    for (std::size_t k = i + 1; k < ps.size(); ++k) {
      if (!anticommutes(ps[i], ps[k])) {
        throw ValidationError("transformed strings " + std::to_string(i) + " and " +
                              std::to_string(k) + " commute");
      }
    }
  }
}

Gate pauli_gate(Pauli p, std::size_t q) {
  return Gate::single(static_cast<GateKind>(static_cast<int>(GateKind::X) + static_cast<int>(p) - 1), q);
}

GateKind rotation_kind(Pauli p) {
  switch (p) {
    case Pauli::X: return GateKind::Rx;
    case Pauli::Y: return GateKind::Ry;
    case Pauli::Z: return GateKind::Rz;
    default: throw ValidationError("identity has no rotation");
  }
}

}  // namespace

std::vector<double> compute_generic_angles(std::span<const double> alphas) {
  std::vector<double> thetas;
  double prefix = 0;
  bool seen_nonzero = false;
  for (double a : alphas) {
    prefix += a * a;
    if (std::sqrt(prefix) <= kNormTol) {
      thetas.push_back(0.0);
      continue;
    }
    seen_nonzero = true;
    thetas.push_back(std::asin(std::clamp(a / std::sqrt(prefix), -1.0, 1.0)));
  }
  if (!seen_nonzero) throw ValidationError("all coefficients are zero");
  return thetas;
}

std::vector<PauliExponential> generic_factors(std::span<const double> alphas,
                                              std::span<const PauliString> ptildes) {
  if (alphas.size() != ptildes.size() || alphas.empty()) {
    throw DimensionError("need one coefficient per transformed string");
  }
  check_normalized(alphas);
  check_anticommuting(ptildes);
  const auto thetas = compute_generic_angles(alphas);
  const std::size_t m = alphas.size();
  std::vector<PauliExponential> out;
  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (thetas[j] != 0.0) out.push_back({ptildes[j], thetas[j]});
  }
  if (thetas[m - 1] != 0.0) out.push_back({ptildes[m - 1], 2 * thetas[m - 1]});
  for (std::size_t j = m - 1; j-- > 0;) {
    if (thetas[j] != 0.0) out.push_back({ptildes[j], thetas[j]});
  }
  return out;
}

void append_pauli_exponential(Circuit &c, const PauliExponential &e, std::size_t offset,
                              const std::vector<Control> &controls) {
  const auto support = e.pauli.support();
  if (support.empty()) {
    // exp(i theta/2 I) is a phase.
    c.append(Gate::global_phase(e.theta / 2, controls));
    return;
  }
  for (auto q : support) {
    const Pauli p = e.pauli.at(q);
    if (p == Pauli::X) c.append(Gate::single(GateKind::H, offset + q));
    if (p == Pauli::Y) {
      c.append(Gate::single(GateKind::Sdg, offset + q));
      c.append(Gate::single(GateKind::H, offset + q));
    }
  }
  for (std::size_t j = 0; j + 1 < support.size(); ++j) {
    c.append(Gate::cx(offset + support[j], offset + support[j + 1]));
  }
  const std::size_t last = offset + support.back();
  if (controls.empty()) {
    c.append(Gate::single(GateKind::Rz, last, -e.theta));
  } else {
    c.append(Gate::multi_controlled(controls, last, GateKind::Rz, -e.theta));
  }
  for (std::size_t j = support.size() - 1; j-- > 0;) {
    c.append(Gate::cx(offset + support[j], offset + support[j + 1]));
  }
  for (auto q : support) {
    const Pauli p = e.pauli.at(q);
    if (p == Pauli::X) c.append(Gate::single(GateKind::H, offset + q));
    if (p == Pauli::Y) {
      c.append(Gate::single(GateKind::H, offset + q));
      c.append(Gate::single(GateKind::S, offset + q));
    }
  }
}

void append_u_generic(Circuit &c, std::span<const double> alphas,
                      std::span<const PauliString> ptildes, std::size_t offset,
                      const std::vector<Control> &controls) {
  for (const auto &e : generic_factors(alphas, ptildes)) {
    append_pauli_exponential(c, e, offset, controls);
  }
  // The factors multiply to i * U.
  c.append(Gate::global_phase(-std::numbers::pi / 2, controls));
}

Circuit build_u_generic(std::span<const double> alphas, std::span<const PauliString> ptildes) {
  if (ptildes.empty()) throw ValidationError("no transformed strings");
  Circuit c(ptildes.front().num_qubits());
  append_u_generic(c, alphas, ptildes);
  return c;
}

std::vector<PauliString> staircase_strings(Pauli a, Pauli b, std::size_t m, std::size_t n) {
  if (a == b || a == Pauli::I || b == Pauli::I) {
    throw ValidationError("staircase needs distinct non-identity types a and b");
  }
  if (m > n) throw DimensionError("staircase with m > n");
  std::vector<PauliString> out;
  for (std::size_t k = 0; k < m; ++k) {
    PauliString p(n);
    for (std::size_t i = 0; i < k; ++i) p.set(i, a);
    p.set(k, b);
    out.push_back(std::move(p));
  }
  return out;
}

std::optional<std::pair<Pauli, Pauli>> detect_staircase(std::span<const PauliString> ptildes) {
  if (ptildes.empty()) return std::nullopt;
  const std::size_t m = ptildes.size(), n = ptildes.front().num_qubits();
  if (m > n) return std::nullopt;
  const Pauli b = ptildes[0].at(0);
  if (b == Pauli::I) return std::nullopt;
  // A single string does not fix a; any a != b works.
  const Pauli a = m > 1 ? ptildes[1].at(0) : (b == Pauli::Z ? Pauli::X : Pauli::Z);
  if (a == Pauli::I || a == b) return std::nullopt;
  const auto expected = staircase_strings(a, b, m, n);
  for (std::size_t k = 0; k < m; ++k) {
    if (!(ptildes[k] == expected[k])) return std::nullopt;
  }
  return std::make_pair(a, b);
}

int cascade_mu(Pauli a, Pauli b) {
  const Pauli c = remaining_pauli(a, b);
  // -i * i^e with e from sigma^(c) sigma^(b) = i^e sigma^(a).
  const int e = pauli_product_phase_exp(c, b);
  return e == 1 ? 1 : -1;
}

std::vector<double> cascade_coefficients(std::span<const double> thetas, int mu) {
  const std::size_t n = thetas.size() + 1;
  std::vector<double> out(n);
  double prefix = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    out[k] = prefix * std::cos(thetas[k] / 2);
    prefix *= mu * std::sin(thetas[k] / 2);
  }
  out[n - 1] = prefix;
  return out;
}

std::vector<double> solve_cascade_angles(std::span<const double> alphas, int mu) {
  if (alphas.empty()) throw ValidationError("no coefficients");
  if (mu != 1 && mu != -1) throw ValidationError("mu must be +1 or -1");
  const std::size_t n = alphas.size();
  std::vector<double> thetas(n - 1, 0.0);
  double prefix = 1;  // mu^k prod_{i<k} sin(theta_i / 2)
  std::size_t k = 0;
  for (; k + 1 < n; ++k) {
    if (std::abs(prefix) < 1e-14) break;
    const double x = alphas[k] / prefix;
    if (std::abs(x) > 1 + 1e-9) {
      throw ValidationError("coefficient " + std::to_string(k) + " is not reachable (ratio " +
                            std::to_string(x) + ")");
    }
    thetas[k] = 2 * std::acos(std::clamp(x, -1.0, 1.0));
    prefix *= mu * std::sin(thetas[k] / 2);
  }
  for (std::size_t j = k; j < n; ++j) {
    if (std::abs(prefix) < 1e-14 && std::abs(alphas[j]) > 1e-9) {
      throw ValidationError("coefficient " + std::to_string(j) +
                            " is nonzero after a vanishing prefix");
    }
  }
  // The last coefficient has no cosine; its sign is fixed by flipping theta_{n-2}.
  if (n >= 2 && k == n - 1 && prefix * alphas[n - 1] < 0) thetas[n - 2] = -thetas[n - 2];
  return thetas;
}

void append_u_cascade(Circuit &c, Pauli a, Pauli b, std::span<const double> alphas,
                      std::size_t offset, const std::vector<Control> &controls) {
  const std::size_t m = alphas.size();
  if (m == 0) throw ValidationError("no coefficients");
  if (a == b) throw ValidationError("cascade needs a != b");
  if (offset + m > c.num_qubits()) throw DimensionError("cascade does not fit in the circuit");
  check_normalized(alphas);
  const Pauli cc = remaining_pauli(a, b);
  const int mu = cascade_mu(a, b);
  const auto thetas = solve_cascade_angles(alphas, mu);
  const auto produced = cascade_coefficients(thetas, mu);
  // Only m = 1 with alpha_0 = -1 needs a sign beyond what the angles provide.
  const bool negate = produced[m - 1] * alphas[m - 1] < 0 && m == 1;

  // C_i(theta): rotation on qubit i+1 when qubit i is in the -1 eigenstate of sigma^(c).
  auto ladder_gate = [&](std::size_t i, double theta) {
    if (theta == 0.0) return;
    const std::size_t ctrl = offset + i, tgt = offset + i + 1;
    auto frame_in = [&]() {
      if (cc == Pauli::X) c.append(Gate::single(GateKind::H, ctrl));
      if (cc == Pauli::Y) {
        c.append(Gate::single(GateKind::Sdg, ctrl));
        c.append(Gate::single(GateKind::H, ctrl));
      }
    };
    auto frame_out = [&]() {
      if (cc == Pauli::X) c.append(Gate::single(GateKind::H, ctrl));
      if (cc == Pauli::Y) {
        c.append(Gate::single(GateKind::H, ctrl));
        c.append(Gate::single(GateKind::S, ctrl));
      }
    };
    frame_in();
    c.append(Gate::multi_controlled({Control{ctrl, true}}, tgt, rotation_kind(b), theta));
    frame_out();
  };

  for (std::size_t i = m - 1; i-- > 0;) ladder_gate(i, thetas[i]);
  if (controls.empty()) {
    c.append(pauli_gate(b, offset));
    if (negate) c.append(Gate::global_phase(std::numbers::pi));
  } else {
    PauliString center(1);
    center.set(0, b);
    c.append(Gate::controlled_pauli(controls, {offset}, center, negate ? -1.0 : 1.0));
  }
  for (std::size_t i = 0; i + 1 < m; ++i) ladder_gate(i, -thetas[i]);
}

Circuit build_u_cascade(Pauli a, Pauli b, std::span<const double> alphas) {
  Circuit c(alphas.size());
  append_u_cascade(c, a, b, alphas);
  return c;
}

}  // namespace sbbe
