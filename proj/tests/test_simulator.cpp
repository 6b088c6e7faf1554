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
#include "sbbe/error.hpp"
#include "sbbe/simulator.hpp"

using namespace sbbe;

namespace {

Circuit random_circuit(std::mt19937_64 &rng, Layout layout, std::size_t gates) {
  std::uniform_real_distribution<double> angle(-3, 3);
  const std::size_t n = layout.total();
  Circuit c(layout);
  for (std::size_t g = 0; g < gates; ++g) {
    const std::size_t t = rng() % n, o = (t + 1 + rng() % (n - 1)) % n;
    switch (rng() % 5) {
      case 0: c.append(Gate::single(GateKind::H, t)); break;
      case 1: c.append(Gate::single(GateKind::Ry, t, angle(rng))); break;
      case 2: c.append(Gate::cx(o, t)); break;
      case 3: {
        PauliString p(1);
        p.set(0, static_cast<Pauli>(1 + rng() % 3));
        c.append(Gate::controlled_pauli({Control{o, (rng() & 1) != 0}}, {t}, p, std::polar(1.0, angle(rng))));
        break;
      }
      default:
        c.append(Gate::multi_controlled({Control{o, false}}, t, GateKind::Rx, angle(rng)));
    }
  }
  return c;
}

}  // namespace

TEST(simulator, unitary_matches_reference) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = random_circuit(rng, Layout{2, 2}, 30);
    EXPECT_LT(oracle::max_abs(to_dense_unitary(c) - oracle::unitary(c)), 1e-12);
  }
}

TEST(simulator, single_state_matches_batch) {
  std::mt19937_64 rng(2);
  const Circuit c = random_circuit(rng, Layout{3, 1}, 40);
  const Eigen::VectorXcd psi = random_state(4, 7);
  EXPECT_LT((sbbe::apply(c, psi) - oracle::unitary(c) * psi).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(simulator, block_from_columns_matches_full_extraction) {
  std::mt19937_64 rng(3);
  const Circuit c = random_circuit(rng, Layout{2, 3}, 50);
  const oracle::Mat u = oracle::unitary(c);
  oracle::Mat ref(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) ref(i, j) = u(i * 8, j * 8);
  }
  EXPECT_LT(oracle::max_abs(block_from_circuit(c) - ref), 1e-12);
  EXPECT_LT(oracle::max_abs(extract_block(to_dense_unitary(c), 2, 3) - ref), 1e-12);
}

TEST(simulator, success_probability_is_block_norm) {
  std::mt19937_64 rng(4);
  const Circuit c = random_circuit(rng, Layout{2, 2}, 40);
  const Eigen::VectorXcd psi = random_state(2, 3);
  EXPECT_NEAR(success_probability(c, psi), (block_from_circuit(c) * psi).squaredNorm(), 1e-12);
}

TEST(simulator, random_state_is_seeded_and_normalized) {
  EXPECT_NEAR(random_state(5, 1).norm(), 1.0, 1e-14);
  EXPECT_EQ(random_state(3, 9), random_state(3, 9));
  EXPECT_NE(random_state(3, 9), random_state(3, 10));
}

TEST(simulator, capacity_and_dimension_errors) {
  EXPECT_THROW(to_dense_unitary(Circuit(13)), CapacityError);
  EXPECT_THROW(to_dense_unitary(Circuit(5), 4), CapacityError);
  EXPECT_THROW(sbbe::apply(Circuit(2), Eigen::VectorXcd::Zero(8)), DimensionError);
  EXPECT_THROW(extract_block(Eigen::MatrixXcd::Identity(4, 4), 1, 2), DimensionError);
}

TEST(verify, detects_scale_and_phase_errors) {
  // H on one ancilla and nothing on the system: block is I / sqrt(2).
  Circuit c(Layout{1, 1});
  c.append(Gate::single(GateKind::H, 1));
  const WeightedPauliSum id(1, {{1.0, PauliString(1)}});
  const double lambda = 1 / std::sqrt(2.0);
  EXPECT_TRUE(verify_block_encoding(c, id, lambda, 1e-12).passed);
  const auto bad = verify_block_encoding(c, id, 1.0, 1e-6);
  EXPECT_FALSE(bad.passed);
  EXPECT_NEAR(bad.max_abs_error, 1 - lambda, 1e-12);
  c.append(Gate::global_phase(0.1));
  EXPECT_FALSE(verify_block_encoding(c, id, lambda, 1e-6).passed);
  EXPECT_NE(to_json(bad).find("\"passed\": false"), std::string::npos);
}
