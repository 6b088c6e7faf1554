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

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sbbe/pauli.hpp"

namespace sbbe {

enum class GateKind {
  H,
  X,
  Y,
  Z,
  S,
  Sdg,
  Rx,
  Ry,
  Rz,
  // Arbitrary single-qubit unitary given by Gate::matrix.
  Unitary,
  // X on targets[0] controlled by controls[0].
  CX,
  // exp(i angle), optionally conditioned on controls.
  GlobalPhase,
  // phase * payload on targets, conditioned on controls.
  ControlledPauli,
  // phase * base(angle) on targets[0], conditioned on controls.
  MultiControlled,
};

std::string gate_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);
bool is_single_qubit_kind(GateKind kind);
bool is_rotation_kind(GateKind kind);

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<cdouble, 4>;
Mat2 single_qubit_matrix(GateKind kind, double angle = 0.0);

/// A control qubit that fires on |1> (polarity true) or on |0>.
struct Control {
  std::size_t qubit = 0;
  bool polarity = true;
  friend bool operator==(const Control &, const Control &) = default;
};

struct Gate {
  GateKind kind = GateKind::H;
  std::vector<std::size_t> targets;
  std::vector<Control> controls;
  double angle = 0.0;
  // ControlledPauli: one factor per entry of targets.
  PauliString payload;
  cdouble phase{1.0, 0.0};
  // MultiControlled: kind of the operation on the target.
  GateKind base = GateKind::X;
  // Unitary, or MultiControlled with base Unitary.
  Mat2 matrix{};

  static Gate single(GateKind kind, std::size_t q, double angle = 0.0);
  static Gate unitary(std::size_t q, const Mat2 &u);
  static Gate cx(std::size_t control, std::size_t target);
  static Gate global_phase(double angle, std::vector<Control> controls = {});
  /// phase * payload, where payload factor j acts on targets[j].
  static Gate controlled_pauli(std::vector<Control> controls, std::vector<std::size_t> targets,
                               PauliString payload, cdouble phase = 1.0);
  /// phase * p with p's qubit q mapped to offset + q; identity factors are dropped.
  static Gate controlled_pauli_string(std::vector<Control> controls, const PauliString &p,
                                      std::size_t offset = 0, cdouble phase = 1.0);
  static Gate multi_controlled(std::vector<Control> controls, std::size_t target, GateKind base,
                               double angle = 0.0, cdouble phase = 1.0);
  static Gate multi_controlled_unitary(std::vector<Control> controls, std::size_t target,
                                       const Mat2 &u);

  /// Operator applied to the target of a MultiControlled gate (phase included).
  Mat2 target_matrix() const;
  std::vector<std::size_t> qubits() const;
  Gate inverse() const;
};

/// Register sizes; system qubits come first, ancillas follow.
struct Layout {
  std::size_t n_sys = 0;
  std::size_t n_anc = 0;
  std::size_t total() const { return n_sys + n_anc; }
  friend bool operator==(const Layout &, const Layout &) = default;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t num_qubits);
  explicit Circuit(Layout layout);

  std::size_t num_qubits() const { return layout_.total(); }
  const Layout &layout() const { return layout_; }
  const std::vector<Gate> &gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Validates qubit indices and control/target disjointness.
  void append(Gate gate);
  /// Appends other with its qubit q mapped to qubit_map[q] (identity when empty).
  void append(const Circuit &other, const std::vector<std::size_t> &qubit_map = {});
  Circuit inverse() const;
  /// Gates [begin, end) as a circuit over the same layout.
  Circuit slice(std::size_t begin, std::size_t end) const;

 private:
  Layout layout_;
  std::vector<Gate> gates_;
};

/// Multi-target controlled X: a CX ladder among the targets, one controlled X on
/// the first target and the mirrored ladder. Uses 2(t-1) CX plus one controlled X.
Circuit cnot_fanout(std::size_t num_qubits, const std::vector<Control> &controls,
                    const std::vector<std::size_t> &targets, cdouble phase = 1.0);

/// Lowers everything to single-qubit gates, CX and uncontrolled GlobalPhase.
Circuit decompose(const Circuit &c);
/// Local cancellation and rotation merging on a lowered circuit; keeps the unitary.
Circuit simplify(const Circuit &c);

struct ResourceReport {
  std::size_t two_qubit_count = 0;
  std::size_t depth = 0;
  std::size_t total_gates = 0;
  std::size_t ancilla_count = 0;
};

/// Counts on the lowered circuit; depth schedules every non-phase gate ASAP.
ResourceReport count_resources(const Circuit &lowered);
/// decompose, simplify, then count.
ResourceReport resources(const Circuit &c);

/// Number of gates of the given kind (no lowering).
std::size_t count_kind(const Circuit &c, GateKind kind);

/// Line format: a header "qubits N sys n anc a" then one gate per line,
/// e.g. "RZ t=2 angle=0.5" or "CPAULI t=0,1 c=3:1,4:0 pauli=XZ phase=0,1".
void write_text(std::ostream &out, const Circuit &c);
std::string to_text(const Circuit &c);
Circuit read_text(std::istream &in);
Circuit from_text(std::string_view text);

/// OpenQASM 3 subset: h x y z s sdg rx ry rz cx gphase over one qubit register.
/// High-level gates are lowered first.
std::string to_qasm(const Circuit &c);
Circuit from_qasm(std::string_view text);

}  // namespace sbbe
