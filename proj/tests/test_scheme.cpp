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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "sbbe/error.hpp"
#include "sbbe/scheme.hpp"

using namespace sbbe;

namespace {

std::vector<std::string> states_of(SchemeKind kind, std::size_t m) {
  std::vector<std::string> out;
  for (const auto &v : AncillaScheme::make(kind, m).v) out.push_back(v.to_string());
  return out;
}

std::vector<std::string> golden_rows(const std::string &name) {
  std::ifstream in(std::string(SBBE_GOLDEN_DIR) + "/table_" + name + ".txt");
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) rows.push_back(line);
  return rows;
}

/// Random P family plus all-commuting flags used to build t vectors.
std::vector<PauliString> random_family(std::mt19937_64 &rng, std::size_t n, std::size_t m) {
  std::vector<PauliString> ps;
  while (ps.size() < m) {
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) p.set(q, static_cast<Pauli>(rng() % 4));
    if (p.is_identity()) continue;
    bool dup = false;
    for (const auto &e : ps) dup = dup || e == p;
    if (!dup) ps.push_back(p);
  }
  return ps;
}

}  // namespace

TEST(scheme, control_states) {
  EXPECT_EQ(states_of(SchemeKind::Log, 4), (std::vector<std::string>{"00", "01", "10", "11"}));
  EXPECT_EQ(states_of(SchemeKind::LogGray, 4), (std::vector<std::string>{"00", "01", "11", "10"}));
  EXPECT_EQ(states_of(SchemeKind::Linear, 3), (std::vector<std::string>{"001", "010", "100"}));
  EXPECT_EQ(states_of(SchemeKind::LinearMinusOne, 4), (std::vector<std::string>{"000", "100", "110", "111"}));
  EXPECT_EQ(AncillaScheme::make(SchemeKind::Log, 5).a, 3u);
}

TEST(scheme, parity_helpers) {
  EXPECT_TRUE(delta_parity(0b101, 0b100));
  EXPECT_FALSE(delta_parity(0b101, 0b101));
  EXPECT_EQ(gray_code(5), 7u);
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(5), 3u);
  EXPECT_EQ(parse_scheme_kind("linminus1"), SchemeKind::LinearMinusOne);
  EXPECT_THROW(parse_scheme_kind("nope"), ParseError);
}

TEST(scheme, custom_rejects_repeats_and_widths) {
  EXPECT_THROW(AncillaScheme::custom(2, {BitVector::from_string("01"), BitVector::from_string("01")}),
               ValidationError);
  EXPECT_THROW(AncillaScheme::custom(2, {BitVector::from_string("011")}), ValidationError);
}

TEST(tables, documented_rows) {
  EXPECT_EQ(stabilizer_table(SchemeKind::Linear, 5, 5).front(),
            "5 | 5 | S_0 = T_4; S_1 = T_3 T_4; S_2 = T_2 T_3; S_3 = T_1 T_2; S_4 = T_0 T_1");
  EXPECT_NE(stabilizer_table(SchemeKind::Log, 7, 7).front().find("S_1 = T_2 T_4 T_6"), std::string::npos);
  EXPECT_NE(stabilizer_table(SchemeKind::Log, 13, 13).front().find("S_1 = T_4 T_8 T_12"), std::string::npos);
  for (auto kind : {SchemeKind::Log, SchemeKind::LogGray, SchemeKind::LinearMinusOne}) {
    EXPECT_EQ(stabilizer_table(kind, 2, 2).front(), "2 | 1 | S_0 = T_1");
  }
  EXPECT_EQ(stabilizer_table(SchemeKind::Linear, 2, 2).front(), "2 | 2 | S_0 = T_1; S_1 = T_0 T_1");
}

TEST(tables, golden_files) {
  const std::pair<SchemeKind, const char *> cases[] = {{SchemeKind::Linear, "linear"},
                                                       {SchemeKind::Log, "log"},
                                                       {SchemeKind::LinearMinusOne, "linminus1"},
                                                       {SchemeKind::LogGray, "gray"}};
  for (const auto &[kind, name] : cases) {
    const auto golden = golden_rows(name);
    ASSERT_EQ(golden.size(), 13u) << name;
    EXPECT_EQ(stabilizer_table(kind, 2, 14), golden) << name;
  }
}

TEST(factorizations, closed_form_matches_general_solve) {
  for (auto kind : {SchemeKind::Linear, SchemeKind::Log, SchemeKind::LogGray, SchemeKind::LinearMinusOne}) {
    for (std::size_t m = 2; m <= 14; ++m) {
      const auto scheme = AncillaScheme::make(kind, m);
      std::vector<BitVector> t(m, BitVector(m));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = i; k < m; ++k) t[i].set(k);
      }
      EXPECT_EQ(factorizations_general(t, scheme), factorizations_closed_form(scheme))
          << scheme_name(kind) << " m=" << m;
    }
  }
}

TEST(factorizations, solve_property_random_families) {
  // M_T r_i = s_i for whatever commutation structure the family has.
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 4, m = 2 + rng() % (2 * n);
    const auto ps = random_family(rng, n, m);
    const auto t = required_t_vectors(ps);
    const BinaryMatrix mt = build_mt(t);
    EXPECT_TRUE(mt.is_unit_lower_triangular());
    const auto scheme = AncillaScheme::make(SchemeKind::Log, m);
    const auto r = factorizations_general(t, scheme);
    for (std::size_t i = 0; i < scheme.a; ++i) EXPECT_EQ(mt * r[i], scheme.target_vector(i));
  }
}

TEST(transforms, solver_meets_required_commutation) {
  std::mt19937_64 rng(9);
  int solved = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 5, m = 2 + rng() % (2 * n);
    const auto ps = random_family(rng, n, m);
    std::vector<PauliString> ts;
    try {
      ts = solve_transforms(ps);
    } catch (const ValidationError &) {
      continue;
    }
    ++solved;
    const auto want = required_t_vectors(ps);
    for (std::size_t i = 0; i < m; ++i) {
      EXPECT_EQ(commutation_vector(ts[i], ps), want[i]);
      for (std::size_t k = 0; k < m; ++k) EXPECT_FALSE(anticommutes(ts[i], ts[k]));
    }
  }
  EXPECT_GT(solved, 20);
}

TEST(stabilizers, direct_solve_tags_anticommuting_family) {
  // Staircase strings Z, XZ, XXZ, ... pairwise anti-commute.
  for (std::size_t m = 2; m <= 8; ++m) {
    std::vector<PauliString> pt;
    for (std::size_t k = 0; k < m; ++k) {
      PauliString p(m);
      for (std::size_t i = 0; i < k; ++i) p.set(i, Pauli::X);
      p.set(k, Pauli::Z);
      pt.push_back(p);
    }
    for (auto kind : {SchemeKind::Linear, SchemeKind::Log, SchemeKind::LogGray, SchemeKind::LinearMinusOne}) {
      const auto scheme = AncillaScheme::make(kind, m);
      const auto set = stabilizers_direct(pt, scheme);
      ASSERT_EQ(set.stabilizers.size(), scheme.a);
      for (std::size_t i = 0; i < scheme.a; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
          EXPECT_EQ(anticommutes(set.stabilizers[i], pt[k]), scheme.v[k].get(i));
        }
      }
    }
  }
}

TEST(stabilizers, format) {
  std::vector<BitVector> f{BitVector::from_string("0100"), BitVector(4)};
  EXPECT_EQ(format_factorizations(f), "S_0 = T_1; S_1 = I");
}
