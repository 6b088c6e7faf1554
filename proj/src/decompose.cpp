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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sbbe/circuit.hpp"
#include "sbbe/error.hpp"

namespace sbbe {

namespace {

constexpr double kAngleEps = 1e-14;
constexpr double kMatrixEps = 1e-12;

bool near(const Mat2 &a, const Mat2 &b) {
  for (std::size_t j = 0; j < 4; ++j) {
    if (std::abs(a[j] - b[j]) > kMatrixEps) return false;
  }
  return true;
}

Mat2 scaled(Mat2 u, cdouble s) {
  for (auto &e : u) e *= s;
  return u;
}

Mat2 adjoint(const Mat2 &u) {
  return {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
}

// Principal square root of a 2x2 unitary through its eigen decomposition.
Mat2 unitary_sqrt(const Mat2 &u) {
  Eigen::Matrix2cd m;
  m << u[0], u[1], u[2], u[3];
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(m);
  Eigen::Matrix2cd vecs = solver.eigenvectors();
  // Eigenvectors of a normal matrix with a repeated eigenvalue need not come out
  // orthogonal; any orthonormal basis works in that case.
  if (std::abs(vecs.col(0).dot(vecs.col(1))) > 1e-9) vecs = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  for (int j = 0; j < 2; ++j) d(j, j) = std::sqrt(solver.eigenvalues()(j));
  Eigen::Matrix2cd r = vecs * d * vecs.adjoint();
  return {r(0, 0), r(0, 1), r(1, 0), r(1, 1)};
}

// u = exp(i alpha) Rz(beta) Ry(gamma) Rz(delta).
struct Zyz {
  double alpha, beta, gamma, delta;
};

Zyz zyz_decompose(const Mat2 &u) {
  const cdouble det = u[0] * u[3] - u[1] * u[2];
  const double alpha = std::arg(det) / 2;
  const cdouble unphase = std::polar(1.0, -alpha);
  const cdouble v00 = u[0] * unphase, v10 = u[2] * unphase, v11 = u[3] * unphase;
  const double gamma = 2 * std::atan2(std::abs(v10), std::abs(v00));
  double sum = 0, diff = 0;  // beta + delta, beta - delta
  if (std::abs(v00) > 1e-12) sum = 2 * std::arg(v11);
  if (std::abs(v10) > 1e-12) diff = 2 * std::arg(v10);
  return {alpha, (sum + diff) / 2, gamma, (sum - diff) / 2};
}

class Lowerer {
 public:
  explicit Lowerer(const Circuit &source) : n_(source.num_qubits()), out_(source.layout()) {}

  Circuit take() { return std::move(out_); }

  void lower(const Gate &g) {
    switch (g.kind) {
      case GateKind::Unitary:
        emit_unitary(g.targets[0], g.matrix);
        return;
      case GateKind::GlobalPhase:
        lower_global_phase(g);
        return;
      case GateKind::ControlledPauli:
        lower_controlled_pauli(g);
        return;
      case GateKind::MultiControlled:
        lower_multi_controlled(g.controls, g.targets[0], g.target_matrix(),
                               g.base == GateKind::Unitary ? std::nullopt
                                                           : std::optional<Gate>(g));
        return;
      default:
        out_.append(g);
    }
  }

 private:
  void emit(GateKind kind, std::size_t q, double angle = 0.0) {
    if (is_rotation_kind(kind) && std::abs(angle) < kAngleEps) return;
    out_.append(Gate::single(kind, q, angle));
  }
  void phase(double angle) {
    if (std::abs(angle) > kAngleEps) out_.append(Gate::global_phase(angle));
  }
  void cx(std::size_t c, std::size_t t) { out_.append(Gate::cx(c, t)); }

  void emit_unitary(std::size_t q, const Mat2 &u) {
    for (GateKind k : {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z, GateKind::S,
                       GateKind::Sdg}) {
      if (near(u, single_qubit_matrix(k))) {
        emit(k, q);
        return;
      }
    }
    const Zyz d = zyz_decompose(u);
    emit(GateKind::Rz, q, d.delta);
    emit(GateKind::Ry, q, d.gamma);
    emit(GateKind::Rz, q, d.beta);
    phase(d.alpha);
  }

  // diag(1, exp(i theta)) on q.
  void phase_gate(std::size_t q, double theta) {
    emit(GateKind::Rz, q, theta);
    phase(theta / 2);
  }

  std::vector<std::size_t> pool_excluding(const std::vector<std::size_t> &used) const {
    std::vector<std::size_t> pool;
    for (std::size_t q = 0; q < n_; ++q) {
      if (std::find(used.begin(), used.end(), q) == used.end()) pool.push_back(q);
    }
    return pool;
  }

  void controlled_u(std::size_t c, std::size_t t, const Mat2 &u) {
    if (near(u, single_qubit_matrix(GateKind::X))) {
      cx(c, t);
      return;
    }
    if (near(u, single_qubit_matrix(GateKind::Z))) {
      emit(GateKind::H, t);
      cx(c, t);
      emit(GateKind::H, t);
      return;
    }
    if (near(u, single_qubit_matrix(GateKind::Y))) {
      emit(GateKind::Sdg, t);
      cx(c, t);
      emit(GateKind::S, t);
      return;
    }
    if (std::abs(u[1]) < kMatrixEps && std::abs(u[0] - u[3]) < kMatrixEps) {
      phase_gate(c, std::arg(u[0]));
      return;
    }
    const Zyz d = zyz_decompose(u);
    // C = Rz((delta-beta)/2), B = Ry(-gamma/2) Rz(-(delta+beta)/2), A = Rz(beta) Ry(gamma/2).
    emit(GateKind::Rz, t, (d.delta - d.beta) / 2);
    cx(c, t);
    emit(GateKind::Rz, t, -(d.delta + d.beta) / 2);
    emit(GateKind::Ry, t, -d.gamma / 2);
    cx(c, t);
    emit(GateKind::Ry, t, d.gamma / 2);
    emit(GateKind::Rz, t, d.beta);
    phase_gate(c, d.alpha);
  }

  void toffoli(std::size_t a, std::size_t b, std::size_t t) {
    const double q = std::numbers::pi / 4;
    emit(GateKind::H, t);
    cx(b, t);
    emit(GateKind::Rz, t, -q);
    cx(a, t);
    emit(GateKind::Rz, t, q);
    cx(b, t);
    emit(GateKind::Rz, t, -q);
    cx(a, t);
    emit(GateKind::Rz, b, q);
    emit(GateKind::Rz, t, q);
    emit(GateKind::H, t);
    cx(a, b);
    emit(GateKind::Rz, a, q);
    emit(GateKind::Rz, b, -q);
    cx(a, b);
    phase(std::numbers::pi / 8);
  }

  // X on t when all controls are |1>; pool qubits may be in any state and are restored.
  void mcx(const std::vector<std::size_t> &ctrl, std::size_t t, const std::vector<std::size_t> &pool) {
    const std::size_t c = ctrl.size();
    if (c == 0) {
      emit(GateKind::X, t);
    } else if (c == 1) {
      cx(ctrl[0], t);
    } else if (c == 2) {
      toffoli(ctrl[0], ctrl[1], t);
    } else if (pool.size() >= c - 2) {
      mcx_borrowed(ctrl, t, pool);
    } else if (!pool.empty()) {
      // Split the controls and route through one borrowed qubit.
      const std::size_t b = pool[0];
      const std::size_t half = (c + 1) / 2;
      std::vector<std::size_t> first(ctrl.begin(), ctrl.begin() + static_cast<std::ptrdiff_t>(half));
      std::vector<std::size_t> second(ctrl.begin() + static_cast<std::ptrdiff_t>(half), ctrl.end());
      second.push_back(b);
      std::vector<std::size_t> rest(pool.begin() + 1, pool.end());
      std::vector<std::size_t> pool_first = rest, pool_second = rest;
      pool_first.insert(pool_first.end(), second.begin(), second.end() - 1);
      pool_first.push_back(t);
      pool_second.insert(pool_second.end(), first.begin(), first.end());
      for (int rep = 0; rep < 2; ++rep) {
        mcx(first, b, pool_first);
        mcx(second, t, pool_second);
      }
    } else {
      mcu_by_root(ctrl, t, single_qubit_matrix(GateKind::X), pool);
    }
  }

  // Toffoli chain over c-2 borrowed qubits (4(c-2) Toffolis).
  void mcx_borrowed(const std::vector<std::size_t> &x, std::size_t t,
                    const std::vector<std::size_t> &pool) {
    const std::size_t c = x.size();
    // a[j] for j = 1..c-2 are borrowed, a[c-1] is the target.
    std::vector<std::size_t> a(c);
    for (std::size_t j = 1; j + 1 < c; ++j) a[j] = pool[j - 1];
    a[c - 1] = t;
    auto step = [&](std::size_t k) { toffoli(x[k - 1], a[k - 2], a[k - 1]); };
    auto base = [&]() { toffoli(x[0], x[1], a[1]); };
    // First pass reaches the target, second pass restores the borrowed qubits.
    for (std::size_t k = c; k >= 3; --k) step(k);
    base();
    for (std::size_t k = 3; k <= c; ++k) step(k);
    for (std::size_t k = c - 1; k >= 3; --k) step(k);
    base();
    for (std::size_t k = 3; k + 1 <= c; ++k) step(k);
  }

  // u on t when all controls are |1>.
  void mcu(const std::vector<std::size_t> &ctrl, std::size_t t, const Mat2 &u,
           const std::vector<std::size_t> &pool) {
    const std::size_t c = ctrl.size();
    if (c == 0) {
      emit_unitary(t, u);
      return;
    }
    if (c == 1) {
      controlled_u(ctrl[0], t, u);
      return;
    }
    const Mat2 x = single_qubit_matrix(GateKind::X);
    if (near(u, x)) {
      mcx(ctrl, t, pool);
      return;
    }
    // phase * X: a plain multi-controlled X plus a controlled phase on the last control.
    const cdouble ph = u[1];
    if (std::abs(std::abs(ph) - 1) < kMatrixEps && near(u, scaled(x, ph))) {
      mcx(ctrl, t, pool);
      std::vector<std::size_t> head(ctrl.begin(), ctrl.end() - 1);
      std::vector<std::size_t> pool2 = pool;
      pool2.push_back(t);
      mcu(head, ctrl.back(), Mat2{1.0, 0.0, 0.0, ph}, pool2);
      return;
    }
    mcu_by_root(ctrl, t, u, pool);
  }

  // V = sqrt(u): C_last(V) C^head(X_last) C_last(V^dag) C^head(X_last) C^head(V), c >= 2.
  void mcu_by_root(const std::vector<std::size_t> &ctrl, std::size_t t, const Mat2 &u,
                   const std::vector<std::size_t> &pool) {
    const Mat2 v = unitary_sqrt(u);
    const std::size_t last = ctrl.back();
    std::vector<std::size_t> head(ctrl.begin(), ctrl.end() - 1);
    std::vector<std::size_t> pool_t = pool, pool_last = pool;
    pool_t.push_back(t);
    pool_last.push_back(last);
    controlled_u(last, t, v);
    mcx(head, last, pool_t);
    controlled_u(last, t, adjoint(v));
    mcx(head, last, pool_t);
    mcu(head, t, v, pool_last);
  }

  void lower_multi_controlled(const std::vector<Control> &controls, std::size_t t, const Mat2 &u,
                              const std::optional<Gate> &named) {
    if (controls.empty()) {
      if (named && std::abs(named->phase - 1.0) < kMatrixEps) {
        emit(named->base, t, named->angle);
      } else {
        emit_unitary(t, u);
      }
      return;
    }
    std::vector<std::size_t> ctrl;
    std::vector<std::size_t> used{t};
    for (const auto &c : controls) {
      ctrl.push_back(c.qubit);
      used.push_back(c.qubit);
      if (!c.polarity) emit(GateKind::X, c.qubit);
    }
    mcu(ctrl, t, u, pool_excluding(used));
    for (const auto &c : controls) {
      if (!c.polarity) emit(GateKind::X, c.qubit);
    }
  }

  void lower_global_phase(const Gate &g) {
    if (g.controls.empty()) {
      phase(g.angle);
      return;
    }
    std::vector<Control> head(g.controls.begin(), g.controls.end() - 1);
    const Control last = g.controls.back();
    // exp(i angle) on |last = polarity>.
    const cdouble e = std::polar(1.0, g.angle);
    const Mat2 diag = last.polarity ? Mat2{1.0, 0.0, 0.0, e} : Mat2{e, 0.0, 0.0, 1.0};
    lower_multi_controlled(head, last.qubit, diag, std::nullopt);
  }

  void lower_controlled_pauli(const Gate &g) {
    std::vector<std::size_t> targets;
    std::vector<Pauli> types;
    for (std::size_t j = 0; j < g.targets.size(); ++j) {
      const Pauli p = g.payload.at(j);
      if (p == Pauli::I) continue;
      targets.push_back(g.targets[j]);
      types.push_back(p);
    }
    if (targets.empty()) {
      lower_global_phase(Gate::global_phase(std::arg(g.phase), g.controls));
      return;
    }
    if (g.controls.empty()) {
      for (std::size_t j = 0; j < targets.size(); ++j) {
        emit(static_cast<GateKind>(static_cast<int>(GateKind::X) + static_cast<int>(types[j]) - 1),
             targets[j]);
      }
      phase(std::arg(g.phase));
      return;
    }
    // Rotate every factor to X, fan out, rotate back.
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (types[j] == Pauli::Z) emit(GateKind::H, targets[j]);
      if (types[j] == Pauli::Y) emit(GateKind::Sdg, targets[j]);
    }
    const Circuit fan = cnot_fanout(n_, g.controls, targets, g.phase);
    for (const auto &f : fan.gates()) lower(f);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (types[j] == Pauli::Z) emit(GateKind::H, targets[j]);
      if (types[j] == Pauli::Y) emit(GateKind::S, targets[j]);
    }
  }

  std::size_t n_;
  Circuit out_;
};

}  // namespace

Circuit decompose(const Circuit &c) {
  Lowerer lowerer(c);
  for (const auto &g : c.gates()) lowerer.lower(g);
  return lowerer.take();
}

namespace {

bool cancels(GateKind a, GateKind b) {
  if (a == GateKind::S) return b == GateKind::Sdg;
  if (a == GateKind::Sdg) return b == GateKind::S;
  return a == b && (a == GateKind::H || a == GateKind::X || a == GateKind::Y || a == GateKind::Z);
}

// Maps an angle to (-2 pi, 2 pi]; rotations have period 4 pi.
double wrap_rotation(double angle) {
  const double period = 4 * std::numbers::pi;
  angle = std::fmod(angle, period);
  if (angle > 2 * std::numbers::pi) angle -= period;
  if (angle <= -2 * std::numbers::pi) angle += period;
  return angle;
}

}  // namespace

Circuit simplify(const Circuit &c) {
  std::vector<Gate> gates;
  std::vector<bool> live;
  std::vector<std::vector<std::size_t>> stacks(c.num_qubits());
  double global = 0;

  auto top = [&](std::size_t q) -> std::optional<std::size_t> {
    if (stacks[q].empty()) return std::nullopt;
    return stacks[q].back();
  };
  auto remove = [&](std::size_t idx) {
    live[idx] = false;
    for (auto q : gates[idx].qubits()) stacks[q].pop_back();
  };
  auto push = [&](Gate g) {
    gates.push_back(std::move(g));
    live.push_back(true);
    for (auto q : gates.back().qubits()) stacks[q].push_back(gates.size() - 1);
  };

  for (const auto &g : c.gates()) {
    if (g.kind == GateKind::GlobalPhase) {
      if (!g.controls.empty()) throw ValidationError("simplify expects a lowered circuit");
      global += g.angle;
      continue;
    }
    if (g.kind == GateKind::CX) {
      const auto ct = top(g.controls[0].qubit), tt = top(g.targets[0]);
      if (ct && tt && *ct == *tt && gates[*ct].kind == GateKind::CX &&
          gates[*ct].controls[0].qubit == g.controls[0].qubit &&
          gates[*ct].targets[0] == g.targets[0]) {
        remove(*ct);
        continue;
      }
      push(g);
      continue;
    }
    if (!is_single_qubit_kind(g.kind) || g.kind == GateKind::Unitary) {
      throw ValidationError("simplify expects a lowered circuit, found " + gate_name(g.kind));
    }
    const std::size_t q = g.targets[0];
    const auto prev = top(q);
    if (prev && is_single_qubit_kind(gates[*prev].kind)) {
      Gate &p = gates[*prev];
      if (cancels(p.kind, g.kind)) {
        remove(*prev);
        continue;
      }
      if (is_rotation_kind(g.kind) && p.kind == g.kind) {
        const double merged = wrap_rotation(p.angle + g.angle);
        if (std::abs(merged) < kAngleEps) {
          remove(*prev);
        } else if (std::abs(std::abs(merged) - 2 * std::numbers::pi) < kAngleEps) {
          // R(2 pi) = -I.
          remove(*prev);
          global += std::numbers::pi;
        } else {
          p.angle = merged;
        }
        continue;
      }
    }
    if (is_rotation_kind(g.kind)) {
      const double a = wrap_rotation(g.angle);
      if (std::abs(a) < kAngleEps) continue;
      if (std::abs(std::abs(a) - 2 * std::numbers::pi) < kAngleEps) {
        global += std::numbers::pi;
        continue;
      }
      Gate w = g;
      w.angle = a;
      push(std::move(w));
      continue;
    }
    push(g);
  }

  Circuit out(c.layout());
  for (std::size_t j = 0; j < gates.size(); ++j) {
    if (live[j]) out.append(gates[j]);
  }
  global = std::remainder(global, 2 * std::numbers::pi);
  if (std::abs(global) > kAngleEps) out.append(Gate::global_phase(global));
  return out;
}

ResourceReport count_resources(const Circuit &lowered) {
  ResourceReport report;
  report.ancilla_count = lowered.layout().n_anc;
  std::vector<std::size_t> level(lowered.num_qubits(), 0);
  for (const auto &g : lowered.gates()) {
    if (g.kind == GateKind::GlobalPhase) continue;
    const auto qs = g.qubits();
    if (qs.size() >= 2) ++report.two_qubit_count;
    ++report.total_gates;
    std::size_t d = 0;
    for (auto q : qs) d = std::max(d, level[q]);
    for (auto q : qs) level[q] = d + 1;
    report.depth = std::max(report.depth, d + 1);
  }
  return report;
}

ResourceReport resources(const Circuit &c) { return count_resources(simplify(decompose(c))); }

}  // namespace sbbe
