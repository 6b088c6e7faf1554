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

#include <random>

#include "oracle.hpp"
#include "sbbe/bits.hpp"
#include "sbbe/error.hpp"
#include "sbbe/pauli.hpp"

using namespace sbbe;

namespace {

std::string random_pauli_text(std::mt19937_64 &rng, std::size_t n) {
  static const char kLetters[] = "IXYZ";
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += kLetters[rng() % 4];
  return s;
}

}  // namespace

TEST(bits, from_integer_is_msb_first) {
  EXPECT_EQ(BitVector::from_integer(1, 3).to_string(), "001");
  EXPECT_EQ(BitVector::from_integer(6, 3).to_string(), "110");
  EXPECT_EQ(BitVector::from_integer(6, 3).to_integer(), 6u);
  EXPECT_TRUE(BitVector::from_integer(4, 3).get(0));
}

TEST(bits, wide_vectors) {
  BitVector v(130);
  v.set(0);
  v.set(129);
  EXPECT_EQ(v.popcount(), 2u);
  EXPECT_EQ(v.set_indices(), (std::vector<std::size_t>{0, 129}));
  EXPECT_EQ(v.first_set(), 0u);
  BitVector w = BitVector::unit(130, 129);
  EXPECT_TRUE(v.dot(w));
  EXPECT_EQ((v ^ w).set_indices(), (std::vector<std::size_t>{0}));
}

TEST(bits, invert_random_unit_lower_triangular) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    BinaryMatrix m = BinaryMatrix::identity(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < r; ++c) m.set(r, c, rng() & 1);
    }
    EXPECT_EQ(m * invert_gf2(m), BinaryMatrix::identity(n));
  }
}

TEST(bits, invert_singular_throws) {
  BinaryMatrix m(2, 2);
  m.set(0, 0);
  m.set(0, 1);
  m.set(1, 0);
  m.set(1, 1);
  EXPECT_THROW(invert_gf2(m), SingularMatrixError);
}

TEST(bits, gf2_system_solves_consistent_systems) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t unknowns = 1 + rng() % 16, eqs = 1 + rng() % 20;
    BitVector x(unknowns);
    for (std::size_t i = 0; i < unknowns; ++i) x.set(i, rng() & 1);
    Gf2System sys(unknowns);
    BitVector rhs(eqs);
    for (std::size_t e = 0; e < eqs; ++e) {
      BitVector row(unknowns);
      for (std::size_t i = 0; i < unknowns; ++i) row.set(i, rng() & 1);
      sys.add_equation(row);
      rhs.set(e, row.dot(x));
    }
    const auto sol = sys.solve(rhs);
    ASSERT_TRUE(sol.has_value());
  }
}

TEST(bits, gf2_system_reports_inconsistency) {
  Gf2System sys(1);
  sys.add_equation(BitVector::from_string("1"));
  sys.add_equation(BitVector::from_string("1"));
  EXPECT_FALSE(sys.solve(BitVector::from_string("10")).has_value());
  EXPECT_TRUE(sys.solve(BitVector::from_string("11")).has_value());
}

TEST(pauli, parse_and_print) {
  EXPECT_EQ(PauliString::from_string("XIZ").to_string(), "XIZ");
  EXPECT_EQ(PauliString::from_string("-iYY").to_string(), "-iYY");
  EXPECT_EQ(PauliString::from_string("+1ZX").phase_exp(), 0);
  EXPECT_EQ(PauliString::from_string("-ZX").phase_exp(), 2);
  EXPECT_EQ(parse_pauli_type("2"), Pauli::Y);
  EXPECT_EQ(parse_pauli_type("z"), Pauli::Z);
  EXPECT_THROW(PauliString::from_string("XQ"), ParseError);
}

TEST(pauli, single_qubit_products) {
  const auto x = PauliString::from_string("X"), y = PauliString::from_string("Y"),
             z = PauliString::from_string("Z");
  EXPECT_EQ((x * y).to_string(), "+iZ");
  EXPECT_EQ((y * x).to_string(), "-iZ");
  EXPECT_EQ((y * z).to_string(), "+iX");
  EXPECT_EQ((z * x).to_string(), "+iY");
  EXPECT_EQ((x * x).to_string(), "I");
  EXPECT_EQ(remaining_pauli(Pauli::X, Pauli::Z), Pauli::Y);
}

TEST(pauli, dense_matches_kronecker_oracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const std::string s = random_pauli_text(rng, n);
    EXPECT_LT(oracle::max_abs(to_dense(PauliString::from_string(s)) - oracle::pauli(s)), 1e-15) << s;
  }
}

TEST(pauli, product_phase_matches_dense_product) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 70;
    const auto p = PauliString::from_string(random_pauli_text(rng, n));
    const auto q = PauliString::from_string(random_pauli_text(rng, n));
    const auto pq = p * q;
    if (n <= 5) {
      EXPECT_LT(oracle::max_abs(to_dense(pq) - oracle::pauli(p.to_string()) * oracle::pauli(q.to_string())),
                1e-14);
    }
    // pq = (-1)^anticommute qp
    const auto qp = q * p;
    EXPECT_EQ((pq.phase_exp() - qp.phase_exp() + 4) % 4, anticommutes(p, q) ? 2 : 0);
  }
}

TEST(pauli, anticommutation_matches_dense_commutator) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const std::string a = random_pauli_text(rng, n), b = random_pauli_text(rng, n);
    const auto pa = oracle::pauli(a), pb = oracle::pauli(b);
    const bool anti = oracle::max_abs(pa * pb + pb * pa) < 1e-12;
    EXPECT_EQ(anticommutes(PauliString::from_string(a), PauliString::from_string(b)), anti);
  }
}

TEST(pauli, commutation_vector_and_conjugate) {
  const std::vector<PauliString> ps{PauliString::from_string("ZI"), PauliString::from_string("IZ"),
                                    PauliString::from_string("XX")};
  EXPECT_EQ(commutation_vector(PauliString::from_string("XI"), ps).to_string(), "100");
  EXPECT_EQ(conjugate(PauliString::from_string("XI"), ps[0]).to_string(), "-ZI");
}

TEST(pauli, apply_matches_dense) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const auto p = PauliString::from_string(random_pauli_text(rng, n));
    Eigen::VectorXcd psi = Eigen::VectorXcd::Random(Eigen::Index{1} << n);
    EXPECT_LT((apply_pauli(p, psi) - oracle::pauli(p.to_string()) * psi).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(weighted_sum, validation) {
  const auto zi = PauliString::from_string("ZI"), iz = PauliString::from_string("IZ");
  EXPECT_NO_THROW(WeightedPauliSum(2, {{0.6, zi}, {0.8, iz}}));
  EXPECT_THROW(WeightedPauliSum(2, {{0.6, zi}, {0.6, iz}}), ValidationError);
  EXPECT_THROW(WeightedPauliSum(2, {{0.6, zi}, {0.8, zi}}), ValidationError);
  EXPECT_THROW(WeightedPauliSum(2, {{1.0, PauliString::from_string("iZI")}}), ValidationError);
  EXPECT_THROW(WeightedPauliSum(1, {{0.6, zi}}), DimensionError);
  std::vector<PauliTerm> too_many;
  for (const char *s : {"X", "Y", "Z", "I"}) too_many.push_back({0.5, PauliString::from_string(s)});
  EXPECT_THROW(WeightedPauliSum(1, too_many), ValidationError);
}

TEST(weighted_sum, sign_is_folded_into_coefficient) {
  const WeightedPauliSum op(1, {{0.6, PauliString::from_string("-Z")}, {0.8, PauliString::from_string("X")}});
  EXPECT_DOUBLE_EQ(op[0].coefficient, -0.6);
  EXPECT_EQ(op[0].pauli.phase_exp(), 0);
  EXPECT_LT(oracle::max_abs(op.to_dense() - (-0.6 * oracle::pauli("Z") + 0.8 * oracle::pauli("X"))), 1e-15);
}

TEST(weighted_sum, dense_cap) {
  std::vector<PauliTerm> terms{{1.0, PauliString(13)}};
  EXPECT_THROW(WeightedPauliSum(13, terms).to_dense(), CapacityError);
}
