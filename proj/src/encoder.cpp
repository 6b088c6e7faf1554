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

#include "sbbe/encoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <random>
#include <sstream>

#include "sbbe/error.hpp"
#include "sbbe/synthesis.hpp"

namespace sbbe {

namespace {

std::string pair_label(std::size_t i, std::size_t k) {
  return "(" + std::to_string(i) + "," + std::to_string(k) + ")";
}

PauliString product_of(std::size_t n, std::size_t begin, std::size_t end, Pauli type) {
  PauliString p(n);
  for (std::size_t i = begin; i < end; ++i) p.set(i, type);
  return p;
}

/// Appends phase * T on the system register, conditioned on controls.
void append_controlled_string(Circuit &c, const std::vector<Control> &controls,
                              const PauliString &t, cdouble phase) {
  if (t.is_identity()) {
    const cdouble total = phase * t.phase();
    if (std::abs(total - 1.0) > 1e-15) c.append(Gate::global_phase(std::arg(total), controls));
    return;
  }
  if (controls.empty()) {
    const cdouble total = phase * t.phase();
    for (auto q : t.support()) {
      c.append(Gate::single(static_cast<GateKind>(static_cast<int>(GateKind::X) +
                                                  static_cast<int>(t.at(q)) - 1),
                            q));
    }
    if (std::abs(total - 1.0) > 1e-15) c.append(Gate::global_phase(std::arg(total)));
    return;
  }
  c.append(Gate::controlled_pauli_string(controls, t, 0, phase));
}

void append_u(Circuit &c, const TransformSet &t, std::span<const double> alphas, UForm form,
              const std::vector<Control> &controls, SbbeCircuit *info) {
  const auto stair = detect_staircase(t.ptildes);
  UForm use = form;
  if (use == UForm::Auto) use = stair ? UForm::Cascade : UForm::Generic;
  if (use == UForm::Cascade) {
    if (!stair) throw ValidationError("cascade form needs staircase transformed strings");
    append_u_cascade(c, stair->first, stair->second, alphas, 0, controls);
    if (info) info->exponentials = 0;
  } else {
    const auto factors = generic_factors(alphas, t.ptildes);
    for (const auto &e : factors) append_pauli_exponential(c, e, 0, controls);
    c.append(Gate::global_phase(-std::numbers::pi / 2, controls));
    if (info) info->exponentials = factors.size();
  }
  if (info) info->form_used = use;
}

std::vector<PauliString> tag_stabilizers_checked(const EncodingPlan &plan) {
  const auto bad = stabilizer_violations(plan.stabilizers.stabilizers, plan.transforms.ptildes,
                                         plan.scheme);
  if (!bad.empty()) throw ValidationError("inconsistent plan: " + bad.front());
  return plan.stabilizers.stabilizers;
}

void append_tag(Circuit &c, std::size_t n, std::span<const PauliString> stabilizers) {
  for (std::size_t i = 0; i < stabilizers.size(); ++i) c.append(Gate::single(GateKind::H, n + i));
  for (std::size_t i = 0; i < stabilizers.size(); ++i) {
    append_controlled_string(c, {Control{n + i, true}}, stabilizers[i], 1.0);
  }
}

void append_correction(Circuit &c, std::size_t n, const TransformSet &t,
                       const AncillaScheme &scheme) {
  for (std::size_t k = 0; k < t.size(); ++k) {
    std::vector<Control> controls;
    if (scheme.a > 0) {
      for (auto i : distinguishing_bits(scheme.v, k)) {
        controls.push_back(Control{n + i, scheme.v[k].get(i)});
      }
    }
    append_controlled_string(c, controls, t.ts[k], t.gamma(k));
  }
}

}  // namespace

TransformSet make_transform_set(std::span<const PauliString> ps, std::vector<PauliString> ts) {
  if (ps.size() != ts.size()) {
    throw DimensionError("need one transformation per Pauli string (" + std::to_string(ps.size()) +
                         " strings, " + std::to_string(ts.size()) + " transformations)");
  }
  TransformSet out;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (ts[k].num_qubits() != ps[k].num_qubits()) {
      throw DimensionError("transformation " + std::to_string(k) + " has the wrong width");
    }
    ts[k] = ts[k].canonical();
    const PauliString r = pauli_mul(ts[k], ps[k].canonical());
    out.gamma_exps.push_back(r.phase_exp());
    out.ptildes.push_back(r.canonical());
  }
  out.ts = std::move(ts);
  return out;
}

bool TransformReport::meets_anticommute_condition() const {
  for (const auto &n : notes) {
    if (n.kind == "anticommute_condition" || n.kind == "t_anticommute") return false;
  }
  for (const auto &v : violations) {
    if (v.kind == "anticommute_condition" || v.kind == "t_anticommute") return false;
  }
  return true;
}

std::string TransformReport::to_string() const {
  std::ostringstream out;
  for (const auto &v : violations) out << "violation " << v.kind << " " << pair_label(v.i, v.k) << ": " << v.message << "\n";
  for (const auto &v : notes) out << "note " << v.kind << " " << pair_label(v.i, v.k) << ": " << v.message << "\n";
  return out.str();
}

TransformReport verify_transform_set(const TransformSet &t, const WeightedPauliSum &op,
                                     bool strict) {
  TransformReport report;
  const auto ps = op.strings();
  const std::size_t m = ps.size();
  if (t.ts.size() != m || t.ptildes.size() != m || t.gamma_exps.size() != m) {
    report.violations.push_back({"shape", m, t.ts.size(), "transform set size does not match the operator"});
    return report;
  }
  auto &soft = strict ? report.violations : report.notes;
  for (std::size_t k = 0; k < m; ++k) {
    PauliString lhs = t.ptildes[k];
    lhs.set_phase_exp(t.gamma_exps[k]);
    if (t.ptildes[k].phase_exp() != 0 || !(lhs == pauli_mul(t.ts[k], ps[k]))) {
      report.violations.push_back({"gamma", k, k, "gamma_" + std::to_string(k) + " P~_" +
                                                      std::to_string(k) + " != T_" +
                                                      std::to_string(k) + " P_" + std::to_string(k)});
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      if (!anticommutes(t.ptildes[i], t.ptildes[k])) {
        report.violations.push_back({"ptilde_commute", i, k,
                                     "P~_" + std::to_string(i) + " and P~_" + std::to_string(k) +
                                         " commute"});
      }
      if (anticommutes(t.ts[i], t.ts[k])) {
        soft.push_back({"t_anticommute", i, k,
                        "T_" + std::to_string(i) + " and T_" + std::to_string(k) + " anti-commute"});
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      const bool want = i <= k && !anticommutes(ps[i], ps[k]);
      if (anticommutes(t.ts[i], ps[k]) != want) {
        soft.push_back({"anticommute_condition", i, k,
                        "T_" + std::to_string(i) + " should " + (want ? "anti-commute" : "commute") +
                            " with P_" + std::to_string(k)});
      }
    }
  }
  return report;
}

TransformSet build_transforms(const WeightedPauliSum &op,
                              const std::optional<std::vector<PauliString>> &user_ts, bool strict) {
  const auto ps = op.strings();
  TransformSet t;
  if (user_ts) {
    t = make_transform_set(ps, *user_ts);
  } else {
    bool all_anti = true;
    for (std::size_t i = 0; i < ps.size() && all_anti; ++i) {
      for (std::size_t k = i + 1; k < ps.size(); ++k) {
        if (!anticommutes(ps[i], ps[k])) {
          all_anti = false;
          break;
        }
      }
    }
    std::vector<PauliString> ts = all_anti ? std::vector<PauliString>(ps.size(), PauliString(op.num_qubits()))
                                           : solve_transforms(ps);
    t = make_transform_set(ps, std::move(ts));
  }
  const auto report = verify_transform_set(t, op, strict);
  if (!report.ok()) throw ValidationError("invalid transformation set:\n" + report.to_string());
  return t;
}

Pauli default_s(Pauli ell) { return ell == Pauli::Z ? Pauli::X : Pauli::Z; }

std::vector<double> random_alphas(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> out(m);
  double norm2 = 0;
  do {
    norm2 = 0;
    for (auto &x : out) {
      x = normal(rng);
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  for (auto &x : out) x /= std::sqrt(norm2);
  return out;
}

ExampleOperator example_operator(ExampleId which, Pauli ell, std::size_t m,
                                 std::span<const double> alphas, std::size_t n,
                                 std::optional<Pauli> s_opt) {
  if (n == 0) n = m;
  if (ell == Pauli::I) throw ValidationError("ell must be 1, 2 or 3");
  if (m == 0 || m > n) throw ValidationError("examples need 1 <= m <= n");
  if (alphas.size() != m) throw DimensionError("need m coefficients");
  const Pauli s = s_opt.value_or(default_s(ell));
  if (s == ell || s == Pauli::I) throw ValidationError("s must differ from ell");
  const Pauli r = remaining_pauli(s, ell);

  std::vector<PauliTerm> terms;
  std::vector<PauliString> ts;
  switch (which) {
    case ExampleId::Ex1:
      for (std::size_t k = 0; k < m; ++k) {
        terms.push_back({alphas[k], PauliString::single(n, k, ell)});
        ts.push_back(product_of(n, 0, k, s));
      }
      break;
    case ExampleId::Ex2:
      if (m < 3) throw ValidationError("the nearest-neighbour ring needs m >= 3");
      for (std::size_t k = 0; k < m; ++k) {
        PauliString p(n);
        p.set(k == 0 ? m - 1 : k - 1, ell);
        p.set(k, ell);
        terms.push_back({alphas[k], p});
        if (k == 0) {
          ts.push_back(PauliString::single(n, m - 1, ell));
        } else {
          PauliString t = product_of(n, 0, k - 1, s);
          t.set(k - 1, r);
          ts.push_back(t);
        }
      }
      break;
    case ExampleId::Ex3:
      for (std::size_t k = 0; k < m; ++k) {
        terms.push_back({alphas[k], product_of(n, 0, k + 1, ell)});
        ts.push_back(PauliString::single(n, k, s));
      }
      break;
    default:
      throw ValidationError("unknown example");
  }
  ExampleOperator out{WeightedPauliSum(n, std::move(terms)), {}, s, r};
  out.transforms = make_transform_set(out.op.strings(), std::move(ts));
  return out;
}

std::string u_form_name(UForm f) {
  switch (f) {
    case UForm::Auto: return "auto";
    case UForm::Generic: return "generic";
    case UForm::Cascade: return "cascade";
  }
  return "auto";
}

UForm parse_u_form(std::string_view name) {
  if (name == "auto") return UForm::Auto;
  if (name == "generic") return UForm::Generic;
  if (name == "cascade") return UForm::Cascade;
  throw ParseError("unknown U form '" + std::string(name) + "' (auto, generic, cascade)");
}

std::string stabilizer_route_name(StabilizerRoute r) {
  switch (r) {
    case StabilizerRoute::Auto: return "auto";
    case StabilizerRoute::Products: return "products";
    case StabilizerRoute::Direct: return "direct";
  }
  return "auto";
}

StabilizerRoute parse_stabilizer_route(std::string_view name) {
  if (name == "auto") return StabilizerRoute::Auto;
  if (name == "products") return StabilizerRoute::Products;
  if (name == "direct") return StabilizerRoute::Direct;
  throw ParseError("unknown stabilizer route '" + std::string(name) + "' (auto, products, direct)");
}

std::vector<std::string> stabilizer_violations(std::span<const PauliString> stabilizers,
                                               std::span<const PauliString> ptildes,
                                               const AncillaScheme &scheme) {
  std::vector<std::string> out;
  if (stabilizers.size() != scheme.a || ptildes.size() != scheme.size()) {
    out.push_back("expected " + std::to_string(scheme.a) + " stabilizers for " +
                  std::to_string(scheme.size()) + " control states");
    return out;
  }
  for (std::size_t i = 0; i < stabilizers.size(); ++i) {
    for (std::size_t k = 0; k < ptildes.size(); ++k) {
      if (anticommutes(stabilizers[i], ptildes[k]) != scheme.v[k].get(i)) {
        out.push_back("S_" + std::to_string(i) + " vs P~_" + std::to_string(k) +
                      ": expected " + (scheme.v[k].get(i) ? "anti-commuting" : "commuting"));
      }
    }
  }
  return out;
}

AncillaScheme scheme_for(SchemeKind kind, std::size_t m) {
  if (m == 1) return AncillaScheme{kind, 0, {BitVector(0)}};
  return AncillaScheme::make(kind, m);
}

EncodingPlan make_plan(const WeightedPauliSum &op, const TransformSet &transforms,
                       const AncillaScheme &scheme, StabilizerRoute route) {
  if (scheme.size() != op.size()) {
    throw ValidationError("scheme has " + std::to_string(scheme.size()) + " control states for " +
                          std::to_string(op.size()) + " terms");
  }
  const auto report = verify_transform_set(transforms, op);
  if (!report.ok()) throw ValidationError("invalid transformation set:\n" + report.to_string());
  EncodingPlan plan{op, transforms, scheme, {}, std::pow(2.0, -0.5 * scheme.a), route};
  if (scheme.a == 0) {
    plan.route_used = StabilizerRoute::Direct;
    return plan;
  }
  const bool products_ok = report.meets_anticommute_condition();
  if (route == StabilizerRoute::Products && !products_ok) {
    throw ValidationError("the T_k do not meet the commutation conditions needed for the product route:\n" +
                          report.to_string());
  }
  if (route != StabilizerRoute::Direct && products_ok) {
    const auto ps = op.strings();
    plan.stabilizers = stabilizers_general(transforms.ts, required_t_vectors(ps), scheme);
    plan.route_used = StabilizerRoute::Products;
    if (stabilizer_violations(plan.stabilizers.stabilizers, transforms.ptildes, scheme).empty()) {
      return plan;
    }
    if (route == StabilizerRoute::Products) {
      throw ValidationError("product-route stabilizers do not tag the transformed strings");
    }
  }
  plan.stabilizers = stabilizers_direct(transforms.ptildes, scheme);
  plan.route_used = StabilizerRoute::Direct;
  return plan;
}

EncodingPlan make_plan(const WeightedPauliSum &op, SchemeKind kind, StabilizerRoute route) {
  return make_plan(op, build_transforms(op), scheme_for(kind, op.size()), route);
}

std::vector<std::size_t> distinguishing_bits(std::span<const BitVector> v, std::size_t k) {
  const std::size_t a = v[k].size();
  std::vector<std::size_t> remaining;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j != k) remaining.push_back(j);
  }
  std::vector<std::size_t> chosen;
  std::vector<bool> used(a, false);
  while (!remaining.empty()) {
    std::size_t best = a, best_count = 0;
    for (std::size_t i = 0; i < a; ++i) {
      if (used[i]) continue;
      std::size_t count = 0;
      for (auto j : remaining) count += v[j].get(i) != v[k].get(i);
      if (count > best_count) {
        best = i;
        best_count = count;
      }
    }
    if (best == a) throw ValidationError("control state " + std::to_string(k) + " is not distinct");
    used[best] = true;
    chosen.push_back(best);
    std::erase_if(remaining, [&](std::size_t j) { return v[j].get(best) != v[k].get(best); });
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

SbbeCircuit assemble_sbbe(const EncodingPlan &plan, UForm form) {
  const std::size_t n = plan.op.num_qubits(), a = plan.scheme.a;
  const auto stabilizers = tag_stabilizers_checked(plan);
  SbbeCircuit out;
  out.lambda = plan.lambda;
  Circuit &c = out.circuit = Circuit(Layout{n, a});
  append_tag(c, n, stabilizers);
  out.stages.u = c.size();
  append_u(c, plan.transforms, plan.op.coefficients(), form, {}, &out);
  out.stages.untag = c.size();
  c.append(c.slice(0, out.stages.u).inverse());
  out.stages.correct = c.size();
  append_correction(c, n, plan.transforms, plan.scheme);
  out.stages.final_h = c.size();
  for (std::size_t i = 0; i < a; ++i) c.append(Gate::single(GateKind::H, n + i));
  out.stages.end = c.size();
  return out;
}

namespace {

/// Rotation Ry(thetas[p]) on target for each value p of the controls (controls[0]
/// is the most significant bit of p), built from 2^l rotations and 2^l CX.
void append_uniform_ry(Circuit &c, const std::vector<std::size_t> &controls, std::size_t target,
                       const std::vector<double> &thetas) {
  const std::size_t l = controls.size();
  if (l == 0) {
    if (thetas[0] != 0.0) c.append(Gate::single(GateKind::Ry, target, thetas[0]));
    return;
  }
  const std::size_t count = std::size_t{1} << l;
  if (std::all_of(thetas.begin(), thetas.end(), [](double t) { return t == 0.0; })) return;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t g = gray_code(i);
    double angle = 0;
    for (std::size_t p = 0; p < count; ++p) {
      angle += (std::popcount(p & g) & 1) ? -thetas[p] : thetas[p];
    }
    angle /= static_cast<double>(count);
    if (std::abs(angle) > 1e-15) c.append(Gate::single(GateKind::Ry, target, angle));
    const std::uint64_t change = g ^ gray_code((i + 1) % count);
    const auto bit = static_cast<std::size_t>(std::countr_zero(change));
    c.append(Gate::cx(controls[l - 1 - bit], target));
  }
}

}  // namespace

LcuCircuit assemble_lcu(const WeightedPauliSum &op) {
  const std::size_t n = op.num_qubits(), m = op.size();
  const std::size_t a = std::max<std::size_t>(1, ceil_log2(m));
  const double l1 = op.l1_norm();
  if (l1 == 0.0) throw ValidationError("operator has no nonzero coefficient");
  std::vector<double> w(std::size_t{1} << a, 0.0);
  for (std::size_t k = 0; k < m; ++k) w[k] = std::abs(op[k].coefficient) / l1;

  Circuit prepare(Layout{n, a});
  for (std::size_t level = 0; level < a; ++level) {
    const std::size_t block = std::size_t{1} << (a - level);
    std::vector<double> thetas(std::size_t{1} << level);
    for (std::size_t p = 0; p < thetas.size(); ++p) {
      double left = 0, right = 0;
      for (std::size_t j = 0; j < block / 2; ++j) {
        left += w[p * block + j];
        right += w[p * block + block / 2 + j];
      }
      thetas[p] = (left + right == 0.0) ? 0.0 : 2 * std::atan2(std::sqrt(right), std::sqrt(left));
    }
    std::vector<std::size_t> controls;
    for (std::size_t j = 0; j < level; ++j) controls.push_back(n + j);
    append_uniform_ry(prepare, controls, n + level, thetas);
  }

  LcuCircuit out;
  out.lambda = 1.0 / l1;
  Circuit &c = out.circuit = prepare;
  for (std::size_t k = 0; k < m; ++k) {
    if (op[k].coefficient == 0.0) continue;
    std::vector<Control> controls;
    for (std::size_t i = 0; i < a; ++i) controls.push_back(Control{n + i, ((k >> (a - 1 - i)) & 1) != 0});
    append_controlled_string(c, controls, op[k].pauli, op[k].coefficient < 0 ? -1.0 : 1.0);
  }
  c.append(prepare.inverse());
  return out;
}

double CombinationSpec::phi() const {
  if (beta < 0 || beta > 1) throw ValidationError("beta must lie in [0, 1]");
  return 2 * std::acos(std::sqrt(beta));
}

WeightedPauliSum combination_operator(const CombinationSpec &spec, std::span<const double> alphas,
                                      std::size_t n) {
  const std::size_t m = alphas.size();
  if (n == 0) n = m;
  if (spec.ell1 == spec.ell2) throw ValidationError("the two Pauli types must differ");
  std::vector<PauliTerm> terms;
  for (std::size_t k = 0; k < m; ++k) {
    terms.push_back({spec.beta * alphas[k], PauliString::single(n, k, spec.ell1)});
  }
  for (std::size_t k = 0; k < m; ++k) {
    terms.push_back({(1 - spec.beta) * alphas[k], PauliString::single(n, k, spec.ell2)});
  }
  return WeightedPauliSum::unnormalized(n, std::move(terms));
}

CombinationCircuit assemble_combination(const CombinationSpec &spec,
                                        std::span<const double> alphas, SchemeKind kind,
                                        std::size_t n, UForm form) {
  const std::size_t m = alphas.size();
  if (n == 0) n = m;
  if (spec.ell1 == spec.ell2 || spec.ell1 == Pauli::I || spec.ell2 == Pauli::I) {
    throw ValidationError("need two distinct non-identity Pauli types");
  }
  const Pauli s = remaining_pauli(spec.ell1, spec.ell2);
  const auto first = example_operator(ExampleId::Ex1, spec.ell1, m, alphas, n, s);
  const auto second = example_operator(ExampleId::Ex1, spec.ell2, m, alphas, n, s);
  if (first.transforms.gamma_exps != second.transforms.gamma_exps) {
    throw ValidationError("the two operands need identical phases to share the correction");
  }
  const AncillaScheme scheme = scheme_for(kind, m);
  const std::size_t a = scheme.a;

  // Both operand families must be tagged by the same stabilizers.
  std::vector<PauliString> refs = first.transforms.ptildes;
  refs.insert(refs.end(), second.transforms.ptildes.begin(), second.transforms.ptildes.end());
  std::vector<BitVector> targets;
  for (std::size_t i = 0; i < a; ++i) {
    BitVector t(2 * m);
    for (std::size_t k = 0; k < m; ++k) {
      t.set(k, scheme.v[k].get(i));
      t.set(m + k, scheme.v[k].get(i));
    }
    targets.push_back(t);
  }
  auto stabilizers = solve_commuting_family(refs, targets);
  if (!stabilizers) throw ValidationError("no shared stabilizers tag both operand families");

  CombinationCircuit out;
  out.lambda = std::pow(2.0, -0.5 * a);
  out.target = combination_operator(spec, alphas, n);
  Circuit &c = out.circuit = Circuit(Layout{n, a + 1});
  const std::size_t lcu = n + a;
  const double phi = spec.phi();
  if (phi != 0.0) c.append(Gate::single(GateKind::Ry, lcu, phi));
  const std::size_t tag_begin = c.size();
  append_tag(c, n, *stabilizers);
  const std::size_t tag_end = c.size();
  append_u(c, first.transforms, alphas, form, {Control{lcu, false}}, nullptr);
  append_u(c, second.transforms, alphas, form, {Control{lcu, true}}, nullptr);
  c.append(c.slice(tag_begin, tag_end).inverse());
  append_correction(c, n, first.transforms, scheme);
  if (phi != 0.0) c.append(Gate::single(GateKind::Ry, lcu, -phi));
  for (std::size_t i = 0; i < a; ++i) c.append(Gate::single(GateKind::H, n + i));
  return out;
}

std::string plan_to_json(const EncodingPlan &plan) {
  nlohmann::ordered_json j;
  j["n"] = plan.op.num_qubits();
  auto &terms = j["terms"] = nlohmann::ordered_json::array();
  for (const auto &t : plan.op.terms()) {
    terms.push_back({{"coefficient", t.coefficient}, {"pauli", t.pauli.to_string()}});
  }
  auto &ts = j["transforms"] = nlohmann::ordered_json::array();
  for (const auto &t : plan.transforms.ts) ts.push_back(t.to_string());
  j["gammas"] = plan.transforms.gamma_exps;
  j["scheme"] = {{"kind", scheme_name(plan.scheme.kind)}, {"a", plan.scheme.a}};
  auto &states = j["scheme"]["states"] = nlohmann::ordered_json::array();
  for (const auto &v : plan.scheme.v) states.push_back(v.to_string());
  auto &stabs = j["stabilizers"] = nlohmann::ordered_json::array();
  for (const auto &s : plan.stabilizers.stabilizers) stabs.push_back(s.to_string());
  j["lambda"] = plan.lambda;
  return j.dump(2) + "\n";
}

EncodingPlan plan_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const std::size_t n = j.at("n").get<std::size_t>();
    std::vector<PauliTerm> terms;
    for (const auto &t : j.at("terms")) {
      terms.push_back({t.at("coefficient").get<double>(),
                       PauliString::from_string(t.at("pauli").get<std::string>())});
    }
    WeightedPauliSum op(n, std::move(terms), 1e-9);
    TransformSet transforms;
    if (j.contains("transforms")) {
      std::vector<PauliString> ts;
      for (const auto &t : j["transforms"]) ts.push_back(PauliString::from_string(t.get<std::string>()));
      transforms = build_transforms(op, ts);
    } else {
      transforms = build_transforms(op);
    }
    if (j.contains("gammas") && j["gammas"].get<std::vector<int>>() != transforms.gamma_exps) {
      throw ValidationError("stored gammas do not match T_k P_k");
    }
    AncillaScheme scheme = scheme_for(SchemeKind::Log, op.size());
    if (j.contains("scheme")) {
      const auto &js = j["scheme"];
      const SchemeKind kind = parse_scheme_kind(js.value("kind", std::string("log")));
      if (js.contains("states")) {
        std::vector<BitVector> states;
        for (const auto &v : js["states"]) states.push_back(BitVector::from_string(v.get<std::string>()));
        const std::size_t a = states.empty() ? 0 : states.front().size();
        scheme = a == 0 ? scheme_for(kind, op.size()) : AncillaScheme::custom(a, std::move(states));
        scheme.kind = kind;
      } else {
        scheme = scheme_for(kind, op.size());
      }
    }
    if (j.contains("stabilizers")) {
      EncodingPlan plan{op, transforms, scheme, {}, std::pow(2.0, -0.5 * scheme.a),
                        StabilizerRoute::Direct};
      for (const auto &s : j["stabilizers"]) {
        plan.stabilizers.stabilizers.push_back(PauliString::from_string(s.get<std::string>()));
      }
      const auto bad = stabilizer_violations(plan.stabilizers.stabilizers, transforms.ptildes, scheme);
      if (!bad.empty()) throw ValidationError("stored stabilizers are inconsistent: " + bad.front());
      return plan;
    }
    return make_plan(op, transforms, scheme);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("malformed plan: ") + e.what());
  }
}

}  // namespace sbbe
