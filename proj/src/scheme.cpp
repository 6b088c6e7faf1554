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

#include "sbbe/scheme.hpp"

#include <bit>
#include <set>

#include "sbbe/error.hpp"

namespace sbbe {

bool delta_parity(std::uint64_t v, std::uint64_t w) { return std::popcount(v & w) & 1; }

std::uint64_t gray_code(std::uint64_t k) { return k ^ (k >> 1); }

std::size_t ceil_log2(std::size_t m) {
  std::size_t a = 0;
  while ((std::size_t{1} << a) < m) ++a;
  return a;
}

std::string scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Log: return "log";
    case SchemeKind::LogGray: return "gray";
    case SchemeKind::Linear: return "linear";
    case SchemeKind::LinearMinusOne: return "linminus1";
    case SchemeKind::Custom: return "custom";
  }
  return "?";
}

SchemeKind parse_scheme_kind(std::string_view name) {
  if (name == "log") return SchemeKind::Log;
  if (name == "gray") return SchemeKind::LogGray;
  if (name == "linear") return SchemeKind::Linear;
  if (name == "linminus1") return SchemeKind::LinearMinusOne;
  if (name == "custom") return SchemeKind::Custom;
  throw ParseError("unknown scheme '" + std::string(name) +
                   "', expected log, gray, linear, linminus1 or custom");
}

AncillaScheme AncillaScheme::make(SchemeKind kind, std::size_t m) {
  if (m == 0) throw ValidationError("scheme needs m >= 1");
  AncillaScheme out;
  out.kind = kind;
  switch (kind) {
    case SchemeKind::Log:
    case SchemeKind::LogGray:
      out.a = ceil_log2(m);
      for (std::size_t k = 0; k < m; ++k) {
        out.v.push_back(BitVector::from_integer(kind == SchemeKind::Log ? k : gray_code(k), out.a));
      }
      break;
    case SchemeKind::Linear:
      out.a = m;
      for (std::size_t k = 0; k < m; ++k) out.v.push_back(BitVector::unit(m, m - 1 - k));
      break;
    case SchemeKind::LinearMinusOne:
      out.a = m - 1;
      for (std::size_t k = 0; k < m; ++k) {
        BitVector state(out.a);
        for (std::size_t i = 0; i < k; ++i) state.set(i);
        out.v.push_back(std::move(state));
      }
      break;
    case SchemeKind::Custom:
      throw ValidationError("custom schemes need explicit control states");
  }
  return out;
}

AncillaScheme AncillaScheme::custom(std::size_t a, std::vector<BitVector> states) {
  if (states.empty()) throw ValidationError("custom scheme needs at least one control state");
  std::set<std::string> seen;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (states[k].size() != a) {
      throw ValidationError("control state " + std::to_string(k) + " has " +
                            std::to_string(states[k].size()) + " bits, expected " +
                            std::to_string(a));
    }
    if (!seen.insert(states[k].to_string()).second) {
      throw ValidationError("control state " + states[k].to_string() + " is repeated");
    }
  }
  return AncillaScheme{SchemeKind::Custom, a, std::move(states)};
}

AncillaScheme AncillaScheme::custom_from_integers(std::size_t a,
                                                  std::span<const std::uint64_t> states) {
  std::vector<BitVector> v;
  for (auto s : states) v.push_back(BitVector::from_integer(s, a));
  return custom(a, std::move(v));
}

BitVector AncillaScheme::target_vector(std::size_t i) const {
  BitVector out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out.set(k, v[k].get(i));
  return out;
}

std::vector<BitVector> required_t_vectors(std::span<const PauliString> ps) {
  const std::size_t m = ps.size();
  std::vector<BitVector> out(m, BitVector(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = i; k < m; ++k) out[i].set(k, !anticommutes(ps[i], ps[k]));
  }
  return out;
}

BinaryMatrix build_mt(std::span<const BitVector> t_vectors) {
  BinaryMatrix mt = BinaryMatrix::from_columns(t_vectors);
  if (mt.rows() != mt.cols()) throw DimensionError("commutation vectors must have length m");
  if (!mt.is_unit_lower_triangular()) {
    throw ValidationError("commutation matrix of the T set is not unit lower triangular");
  }
  return mt;
}

std::vector<BitVector> factorizations_general(std::span<const BitVector> t_vectors,
                                              const AncillaScheme &scheme) {
  if (t_vectors.size() != scheme.size()) {
    throw DimensionError("scheme has " + std::to_string(scheme.size()) + " control states for " +
                         std::to_string(t_vectors.size()) + " transformations");
  }
  const BinaryMatrix inverse = invert_gf2(build_mt(t_vectors));
  std::vector<BitVector> out;
  for (std::size_t i = 0; i < scheme.a; ++i) out.push_back(inverse * scheme.target_vector(i));
  return out;
}

std::vector<BitVector> factorizations_closed_form(const AncillaScheme &scheme) {
  const std::size_t m = scheme.size();
  std::vector<BitVector> out(scheme.a, BitVector(m));
  for (std::size_t k = 0; k < m; ++k) {
    BitVector step = scheme.v[k];
    if (k > 0) step ^= scheme.v[k - 1];
    for (auto i : step.set_indices()) out[i].set(k);
  }
  return out;
}

std::vector<PauliString> multiply_factorizations(std::span<const PauliString> ts,
                                                 std::span<const BitVector> factorizations) {
  if (ts.empty()) throw ValidationError("empty transformation list");
  std::vector<PauliString> out;
  for (const auto &r : factorizations) {
    if (r.size() != ts.size()) throw DimensionError("factorization length differs from m");
    PauliString s(ts.front().num_qubits());
    for (auto k : r.set_indices()) s *= ts[k];
    out.push_back(s.canonical());
  }
  return out;
}

StabilizerSet stabilizers_general(std::span<const PauliString> ts,
                                  std::span<const BitVector> t_vectors,
                                  const AncillaScheme &scheme) {
  StabilizerSet out;
  out.factorizations = factorizations_general(t_vectors, scheme);
  if (scheme.a > 0) out.stabilizers = multiply_factorizations(ts, out.factorizations);
  return out;
}

StabilizerSet stabilizers_commuting_closed_form(std::span<const PauliString> ts,
                                                const AncillaScheme &scheme) {
  if (ts.size() != scheme.size()) {
    throw DimensionError("scheme has " + std::to_string(scheme.size()) + " control states for " +
                         std::to_string(ts.size()) + " transformations");
  }
  StabilizerSet out;
  out.factorizations = factorizations_closed_form(scheme);
  if (scheme.a > 0) out.stabilizers = multiply_factorizations(ts, out.factorizations);
  return out;
}

namespace {

// Coefficients of the symplectic form against q, for unknowns laid out as
// (x, z) or (z, x).
BitVector symplectic_row(const PauliString &q, bool z_first) {
  const std::size_t n = q.num_qubits();
  BitVector row(2 * n);
  for (auto i : q.z().set_indices()) row.set(z_first ? n + i : i);
  for (auto i : q.x().set_indices()) row.set(z_first ? i : n + i);
  return row;
}

PauliString from_solution(const BitVector &sol, std::size_t n, bool z_first) {
  BitVector x(n), z(n);
  for (auto i : sol.set_indices()) {
    const bool is_x = (i < n) != z_first;
    (is_x ? x : z).set(i % n);
  }
  return PauliString::from_bits(std::move(x), std::move(z));
}

std::optional<std::vector<PauliString>> solve_family_once(std::span<const PauliString> refs,
                                                          std::span<const BitVector> targets,
                                                          bool z_first) {
  const std::size_t n = refs.front().num_qubits();
  const std::size_t m = refs.size();
  Gf2System system(2 * n);
  for (const auto &r : refs) system.add_equation(symplectic_row(r, z_first));
  std::vector<PauliString> out;
  for (const auto &target : targets) {
    if (target.size() != m) throw DimensionError("target vector length differs from reference count");
    BitVector rhs(system.equations());
    for (auto k : target.set_indices()) rhs.set(k);
    auto sol = system.solve(rhs);
    if (!sol) return std::nullopt;
    out.push_back(from_solution(*sol, n, z_first));
    system.add_equation(symplectic_row(out.back(), z_first));
  }
  return out;
}

std::size_t total_weight(const std::vector<PauliString> &ps) {
  std::size_t w = 0;
  for (const auto &p : ps) w += p.weight();
  return w;
}

}  // namespace

std::optional<std::vector<PauliString>> solve_commuting_family(
    std::span<const PauliString> refs, std::span<const BitVector> targets) {
  if (refs.empty()) throw ValidationError("no reference strings");
  auto best = solve_family_once(refs, targets, false);
  auto other = solve_family_once(refs, targets, true);
  if (!best || (other && total_weight(*other) < total_weight(*best))) best = std::move(other);
  return best;
}

StabilizerSet stabilizers_direct(std::span<const PauliString> ptildes, const AncillaScheme &scheme) {
  if (ptildes.size() != scheme.size()) {
    throw DimensionError("scheme has " + std::to_string(scheme.size()) + " control states for " +
                         std::to_string(ptildes.size()) + " strings");
  }
  StabilizerSet out;
  if (scheme.a == 0) return out;
  std::vector<BitVector> targets;
  for (std::size_t i = 0; i < scheme.a; ++i) targets.push_back(scheme.target_vector(i));
  auto found = solve_commuting_family(ptildes, targets);
  if (!found) {
    throw ValidationError("no commuting stabilizers realize the " + scheme_name(scheme.kind) +
                          " control states for these strings");
  }
  out.stabilizers = std::move(*found);
  return out;
}

std::vector<PauliString> solve_transforms(std::span<const PauliString> ps) {
  if (ps.empty()) throw ValidationError("no Pauli strings");
  auto found = solve_commuting_family(ps, required_t_vectors(ps));
  if (!found) {
    throw ValidationError(
        "no commuting transformation set satisfies the required commutation vectors");
  }
  return std::move(*found);
}

std::string format_factorizations(std::span<const BitVector> factorizations) {
  std::string out;
  for (std::size_t i = 0; i < factorizations.size(); ++i) {
    if (i) out += "; ";
    out += "S_" + std::to_string(i) + " =";
    const auto factors = factorizations[i].set_indices();
    if (factors.empty()) out += " I";
    for (auto k : factors) out += " T_" + std::to_string(k);
  }
  return out;
}

std::vector<std::string> stabilizer_table(SchemeKind kind, std::size_t m_min, std::size_t m_max) {
  std::vector<std::string> rows;
  for (std::size_t m = m_min; m <= m_max; ++m) {
    const AncillaScheme scheme = AncillaScheme::make(kind, m);
    std::vector<BitVector> all_commuting(m, BitVector(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = i; k < m; ++k) all_commuting[i].set(k);
    }
    const auto r = factorizations_general(all_commuting, scheme);
    rows.push_back(std::to_string(m) + " | " + std::to_string(scheme.a) + " | " +
                   format_factorizations(r));
  }
  return rows;
}

}  // namespace sbbe
