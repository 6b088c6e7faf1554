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

// Random operators whose transformation sets meet the sufficient conditions by
// construction: T_k pairwise commute, and T_i anti-commutes with P_k exactly when
// i <= k and P_i, P_k commute.

#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "sbbe/pauli.hpp"

namespace gen {

inline sbbe::PauliString random_pauli(std::mt19937_64 &rng, std::size_t n) {
  sbbe::PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) p.set(q, static_cast<sbbe::Pauli>(rng() % 4));
  return p;
}

struct ValidSet {
  sbbe::WeightedPauliSum op;
  std::vector<sbbe::PauliString> ts;
};

inline std::optional<ValidSet> try_valid_set(std::mt19937_64 &rng, std::size_t n, std::size_t m) {
  std::vector<sbbe::PauliString> ts;
  for (int tries = 0; ts.size() < m && tries < 1000; ++tries) {
    auto t = random_pauli(rng, n);
    bool ok = !t.is_identity();
    for (const auto &u : ts) ok = ok && !sbbe::anticommutes(t, u);
    if (ok) ts.push_back(t);
  }
  if (ts.size() < m) return std::nullopt;

  std::vector<sbbe::PauliString> ps;
  for (std::size_t k = 0; k < m; ++k) {
    bool placed = false;
    for (int tries = 0; !placed && tries < 5000; ++tries) {
      auto p = random_pauli(rng, n);
      bool ok = !p.is_identity();
      for (const auto &e : ps) ok = ok && !(e == p);
      for (std::size_t i = 0; ok && i < m; ++i) {
        const bool want = i < k ? !sbbe::anticommutes(ps[i], p) : i == k;
        ok = sbbe::anticommutes(ts[i], p) == want;
      }
      if (ok) {
        ps.push_back(p);
        placed = true;
      }
    }
    if (!placed) return std::nullopt;
  }
  std::normal_distribution<double> normal;
  std::vector<double> alphas(m);
  double norm = 0;
  for (auto &a : alphas) norm += (a = normal(rng)) * a;
  std::vector<sbbe::PauliTerm> terms;
  for (std::size_t k = 0; k < m; ++k) terms.push_back({alphas[k] / std::sqrt(norm), ps[k]});
  return ValidSet{sbbe::WeightedPauliSum(n, terms), ts};
}

/// n in 1..n_max and 2 <= m <= min(2n + 1, m_max).
inline ValidSet valid_set(std::mt19937_64 &rng, std::size_t n_max, std::size_t m_max) {
  for (;;) {
    const std::size_t n = 1 + rng() % n_max;
    const std::size_t top = std::min(2 * n + 1, m_max);
    const std::size_t m = 2 + rng() % (top - 1);
    if (auto s = try_valid_set(rng, n, m)) return *s;
  }
}

}  // namespace gen
