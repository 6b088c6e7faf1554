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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sbbe/circuit.hpp"
#include "sbbe/pauli.hpp"
#include "sbbe/scheme.hpp"

namespace sbbe {

/// T_k P_k = gamma_k P~_k with gamma_k = i^gamma_exps[k].
struct TransformSet {
  std::vector<PauliString> ts;
  std::vector<int> gamma_exps;
  std::vector<PauliString> ptildes;

  std::size_t size() const { return ts.size(); }
  cdouble gamma(std::size_t k) const { return i_pow(gamma_exps[k]); }
};

/// Computes gamma_k and P~_k from the given T_k (phases on T_k are dropped).
TransformSet make_transform_set(std::span<const PauliString> ps, std::vector<PauliString> ts);

struct TransformIssue {
  std::string kind;  // ptilde_commute, gamma, shape, anticommute_condition, t_anticommute
  std::size_t i = 0;
  std::size_t k = 0;
  std::string message;
};

/// Violations break the encoding. Notes record departures from the sufficient
/// conditions (T_i acting on P_k as required, T_k pairwise commuting) that still
/// leave the P~_k pairwise anti-commuting; strict mode promotes them to violations.
struct TransformReport {
  std::vector<TransformIssue> violations;
  std::vector<TransformIssue> notes;
  bool ok() const { return violations.empty(); }
  bool meets_anticommute_condition() const;
  std::string to_string() const;
};

TransformReport verify_transform_set(const TransformSet &t, const WeightedPauliSum &op,
                                     bool strict = false);

/// Identity T_k when the P_k already anti-commute pairwise, the solver otherwise.
/// User T_k are validated; throws sbbe::ValidationError naming the offending pairs.
TransformSet build_transforms(const WeightedPauliSum &op,
                              const std::optional<std::vector<PauliString>> &user_ts = std::nullopt,
                              bool strict = false);

enum class ExampleId { Ex1 = 1, Ex2 = 2, Ex3 = 3 };

struct ExampleOperator {
  WeightedPauliSum op;
  TransformSet transforms;
  Pauli s = Pauli::X;
  Pauli r = Pauli::Y;
};

/// 3 unless ell is 3, then 1.
Pauli default_s(Pauli ell);
/// Normalized standard normal coefficients.
std::vector<double> random_alphas(std::size_t m, std::uint64_t seed);

/// Ex1: alpha_k sigma^(l)_k. Ex2: nearest-neighbour ring sigma^(l)_(k-1) sigma^(l)_k
/// (m >= 3). Ex3: alpha_k sigma^(l)_0 ... sigma^(l)_k. n defaults to m.
ExampleOperator example_operator(ExampleId which, Pauli ell, std::size_t m,
                                 std::span<const double> alphas, std::size_t n = 0,
                                 std::optional<Pauli> s = std::nullopt);

enum class UForm { Auto, Generic, Cascade };
enum class StabilizerRoute { Auto, Products, Direct };
std::string u_form_name(UForm f);
UForm parse_u_form(std::string_view name);
std::string stabilizer_route_name(StabilizerRoute r);
StabilizerRoute parse_stabilizer_route(std::string_view name);

struct EncodingPlan {
  WeightedPauliSum op;
  TransformSet transforms;
  AncillaScheme scheme;
  StabilizerSet stabilizers;
  double lambda = 1.0;
  StabilizerRoute route_used = StabilizerRoute::Direct;
};

/// Entry (i, k) of the result is wrong when S_i does not anti-commute with P~_k
/// exactly when entry i of v_k is set.
std::vector<std::string> stabilizer_violations(std::span<const PauliString> stabilizers,
                                               std::span<const PauliString> ptildes,
                                               const AncillaScheme &scheme);

/// m = 1 always gets a = 0.
AncillaScheme scheme_for(SchemeKind kind, std::size_t m);
EncodingPlan make_plan(const WeightedPauliSum &op, const TransformSet &transforms,
                       const AncillaScheme &scheme,
                       StabilizerRoute route = StabilizerRoute::Auto);
EncodingPlan make_plan(const WeightedPauliSum &op, SchemeKind kind,
                       StabilizerRoute route = StabilizerRoute::Auto);

/// Gate index ranges of the stages: [tag, u) is H and the controlled S_i, [u, untag)
/// is U, [untag, correct) undoes the tag, [correct, final_h) is the correction.
struct StageOffsets {
  std::size_t tag = 0, u = 0, untag = 0, correct = 0, final_h = 0, end = 0;
};

struct SbbeCircuit {
  Circuit circuit;
  StageOffsets stages;
  UForm form_used = UForm::Generic;
  std::size_t exponentials = 0;
  double lambda = 1.0;
};

/// Ancilla bit positions that separate v_k from every other control state.
std::vector<std::size_t> distinguishing_bits(std::span<const BitVector> v, std::size_t k);

SbbeCircuit assemble_sbbe(const EncodingPlan &plan, UForm form = UForm::Auto);

struct LcuCircuit {
  Circuit circuit;
  double lambda = 1.0;
};

/// PREPARE / SELECT / UNPREPARE with amplitudes sqrt(|alpha_k| / sum |alpha|); the
/// block equals A / sum |alpha_k|. Accepts unnormalized sums.
LcuCircuit assemble_lcu(const WeightedPauliSum &op);

struct CombinationSpec {
  double beta = 0.5;
  Pauli ell1 = Pauli::X;
  Pauli ell2 = Pauli::Y;
  /// 2 arccos sqrt(beta): the branch weights are cos^2(phi/2) and sin^2(phi/2).
  double phi() const;
};

/// beta A1^(l1) + (1 - beta) A1^(l2) over the same alphas.
WeightedPauliSum combination_operator(const CombinationSpec &spec, std::span<const double> alphas,
                                      std::size_t n = 0);

struct CombinationCircuit {
  Circuit circuit;
  double lambda = 1.0;
  WeightedPauliSum target;
};

/// One LCU qubit (the last ancilla) selects between U1^(s,l1) and U1^(s,l2); the
/// tag, untag and correction stages are shared.
CombinationCircuit assemble_combination(const CombinationSpec &spec,
                                        std::span<const double> alphas, SchemeKind kind,
                                        std::size_t n = 0, UForm form = UForm::Auto);

std::string plan_to_json(const EncodingPlan &plan);
/// Missing stabilizers are recomputed; supplied ones are validated.
EncodingPlan plan_from_json(std::string_view text);

}  // namespace sbbe
