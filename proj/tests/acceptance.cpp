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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "sbbe/encoder.hpp"
#include "sbbe/error.hpp"
#include "sbbe/scheme.hpp"
#include "sbbe/simulator.hpp"
#include "sbbe/synthesis.hpp"

using namespace sbbe;

namespace {

const SchemeKind kSchemes[] = {SchemeKind::Log, SchemeKind::LogGray, SchemeKind::Linear,
                               SchemeKind::LinearMinusOne};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

oracle::Mat dense_target(const WeightedPauliSum &op) {
  const auto dim = Eigen::Index{1} << op.num_qubits();
  oracle::Mat out = oracle::Mat::Zero(dim, dim);
  for (const auto &t : op.terms()) out += t.coefficient * oracle::pauli(t.pauli.to_string());
  return out;
}

/// Examples 1-3 with l = 1 and n = m, every scheme that fits in 12 qubits.
template <class F>
void for_each_config(std::size_t m_max, F &&f) {
  for (int ex = 1; ex <= 3; ++ex) {
    for (std::size_t m = ex == 2 ? 3 : 2; m <= m_max; ++m) {
      for (auto kind : kSchemes) {
        if (m + scheme_for(kind, m).a > 12) continue;
        f(static_cast<ExampleId>(ex), m, kind);
      }
    }
  }
}

Outcome criterion1() {
  double worst = 0;
  std::size_t runs = 0;
  for_each_config(6, [&](ExampleId ex, std::size_t m, SchemeKind kind) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto e = example_operator(ex, Pauli::X, m, random_alphas(m, seed));
      const auto plan = make_plan(e.op, e.transforms, scheme_for(kind, m));
      const auto s = assemble_sbbe(plan);
      const double lambda = std::pow(2.0, -0.5 * plan.scheme.a);
      worst = std::max(worst, oracle::max_abs(block_from_circuit(s.circuit) - lambda * dense_target(e.op)));
      ++runs;
    }
  });
  return {worst <= 1e-9, std::to_string(runs) + " circuits, max error " + fmt(worst)};
}

Outcome criterion2() {
  double worst = 0;
  std::size_t states = 0;
  for_each_config(5, [&](ExampleId ex, std::size_t m, SchemeKind kind) {
    auto e = example_operator(ex, Pauli::X, m, random_alphas(m, 100 + m));
    const auto plan = make_plan(e.op, e.transforms, scheme_for(kind, m));
    const auto s = assemble_sbbe(plan);
    const oracle::Mat a = dense_target(e.op);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Eigen::VectorXcd psi = random_state(m, seed);
      const double want = plan.lambda * plan.lambda * (a * psi).squaredNorm();
      worst = std::max(worst, std::abs(success_probability(s.circuit, psi) - want));
      ++states;
    }
  });
  return {worst <= 1e-9, std::to_string(states) + " states, max deviation " + fmt(worst)};
}

Outcome criterion3() {
  const std::pair<const char *, const char *> cases[] = {
      {"linear", "linear"}, {"log", "log"}, {"linminus1", "linminus1"}, {"gray", "gray"}};
  std::size_t matched = 0;
  std::string bad;
  for (const auto &[scheme, file] : cases) {
    std::ifstream in(std::string(SBBE_GOLDEN_DIR) + "/table_" + file + ".txt");
    std::ostringstream golden;
    golden << in.rdbuf();
    std::ostringstream out, err;
    const char *argv[] = {"sbbe", "tables", "--scheme", scheme, "--m-min", "2", "--m-max", "14"};
    const int code = cli::run_cli(8, argv, out, err);
    if (code == cli::kExitOk && !golden.str().empty() && out.str() == golden.str()) ++matched;
    else bad += std::string(" ") + scheme;
  }
  return {matched == 4, std::to_string(matched) + "/4 tables byte-identical" + (bad.empty() ? "" : ";" + bad)};
}

/// Letter-wise parity count, independent of the symplectic representation.
bool strings_anticommute(const std::string &a, const std::string &b) {
  auto letters = [](const std::string &s) { return s.substr(s.find_first_of("IXYZ")); };
  const std::string x = letters(a), y = letters(b);
  int odd = 0;
  for (std::size_t q = 0; q < x.size(); ++q) odd ^= x[q] != 'I' && y[q] != 'I' && x[q] != y[q];
  return odd != 0;
}

Outcome criterion4() {
  std::mt19937_64 rng(2026);
  std::size_t valid = 0, nontrivial = 0, caught = 0;
  bool pairs_ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    const auto vs = gen::valid_set(rng, 8, 7);
    const auto &op = vs.op;
    const std::size_t m = op.size(), n = op.num_qubits();
    const TransformSet set = build_transforms(op, vs.ts, true);
    ++valid;
    bool already = true;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = i + 1; k < m; ++k) {
        already = already && anticommutes(op[i].pauli, op[k].pauli);
        pairs_ok = pairs_ok && strings_anticommute(set.ptildes[i].to_string(), set.ptildes[k].to_string());
      }
    }
    nontrivial += !already;

    // Fault: multiply T_k by a one-qubit Pauli that anti-commutes with P~_i.
    const std::size_t k = rng() % m, i = (k + 1 + rng() % (m - 1)) % m;
    std::size_t q = 0;
    while (set.ptildes[i].at(q) == Pauli::I) ++q;
    const Pauli other = set.ptildes[i].at(q) == Pauli::Z ? Pauli::X : Pauli::Z;
    auto ts = set.ts;
    ts[k] = pauli_mul(ts[k], PauliString::single(n, q, other));
    const auto report = verify_transform_set(make_transform_set(op.strings(), ts), op);
    bool named = false;
    for (const auto &v : report.violations) {
      named = named || (v.kind == "ptilde_commute" && std::min(v.i, v.k) == std::min(i, k) &&
                        std::max(v.i, v.k) == std::max(i, k));
    }
    bool thrown = false;
    try {
      build_transforms(op, ts);
    } catch (const ValidationError &) {
      thrown = true;
    }
    caught += named && thrown;
  }
  const bool pass = valid == 200 && pairs_ok && caught == 200;
  return {pass, std::to_string(valid) + " valid sets (" + std::to_string(nontrivial) + " with commuting P_k) " +
                    (pairs_ok ? "anti-commute pairwise" : "NOT pairwise anti-commuting") + ", " +
                    std::to_string(caught) + "/200 faults named and rejected"};
}

Outcome criterion5() {
  std::size_t agree = 0, total = 0;
  for (auto kind : kSchemes) {
    for (std::size_t m = 2; m <= 14; ++m) {
      const auto scheme = AncillaScheme::make(kind, m);
      std::vector<BitVector> t(m, BitVector(m));
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = i; k < m; ++k) t[i].set(k);
      }
      agree += factorizations_general(t, scheme) == factorizations_closed_form(scheme);
      ++total;
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " (scheme, m) identical"};
}

Outcome criterion6() {
  const std::pair<Pauli, Pauli> pairs[] = {{Pauli::X, Pauli::Z}, {Pauli::Z, Pauli::X}, {Pauli::X, Pauli::Y},
                                           {Pauli::Y, Pauli::X}, {Pauli::Y, Pauli::Z}, {Pauli::Z, Pauli::Y}};
  std::mt19937_64 rng(6);
  double law_err = 0, phase_err = 0;
  std::size_t cases = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto [a, b] = pairs[trial % 6];
      const auto alphas = random_alphas(n, rng());
      const int mu = cascade_mu(a, b);
      const auto thetas = solve_cascade_angles(alphas, mu);
      const auto ps = staircase_strings(a, b, n, n);
      const oracle::Mat u = oracle::unitary(build_u_cascade(a, b, alphas));
      for (std::size_t k = 0; k < n; ++k) {
        double law = std::pow(mu, static_cast<double>(k));
        for (std::size_t i = 0; i < k; ++i) law *= std::sin(thetas[i] / 2);
        if (k + 1 < n) law *= std::cos(thetas[k] / 2);
        const auto got = oracle::pauli_coefficient(u, ps[k].to_string());
        law_err = std::max({law_err, std::abs(got - oracle::cd(law)), std::abs(law - alphas[k])});
      }
      phase_err = std::max(phase_err, oracle::phase_distance(u, oracle::unitary(build_u_generic(alphas, ps))));
      ++cases;
    }
  }
  return {law_err <= 1e-10 && phase_err <= 1e-9, std::to_string(cases) + " cascades, law error " + fmt(law_err) +
                                                     ", cascade vs generic " + fmt(phase_err)};
}

Outcome criterion7() {
  double worst = 0;
  std::size_t exact_count = 0, total = 0;
  for (std::size_t t = 1; t <= 6; ++t) {
    std::vector<std::size_t> targets;
    for (std::size_t j = 1; j <= t; ++j) targets.push_back(j);
    const Circuit lowered = decompose(cnot_fanout(t + 1, {Control{0, true}}, targets));
    Circuit ref(t + 1);
    for (auto q : targets) ref.append(Gate::cx(0, q));
    worst = std::max(worst, oracle::max_abs(oracle::unitary(lowered) - oracle::unitary(ref)));
    exact_count += count_resources(lowered).two_qubit_count == 2 * (t - 1) + 1;
    ++total;
  }
  return {worst <= 1e-10 && exact_count == total,
          "t = 1..6, max error " + fmt(worst) + ", " + std::to_string(exact_count) + "/" +
              std::to_string(total) + " with 2(t-1)+1 two-qubit gates"};
}

Outcome criterion8() {
  std::string detail;
  bool pass = true;
  for (std::size_t m : {12, 22, 32}) {
    auto e = example_operator(ExampleId::Ex1, Pauli::X, m, random_alphas(m, 1));
    auto count = [&](SchemeKind kind) {
      const auto plan = make_plan(e.op, e.transforms, scheme_for(kind, m));
      return resources(assemble_sbbe(plan).circuit).two_qubit_count;
    };
    const auto lin = count(SchemeKind::Linear), log = count(SchemeKind::Log);
    const auto alphas = random_alphas(m, 1);
    const CombinationSpec spec{0.5, Pauli::X, Pauli::Y};
    const auto sb = resources(assemble_combination(spec, alphas, SchemeKind::Log).circuit).two_qubit_count;
    const auto lcu = resources(assemble_lcu(combination_operator(spec, alphas)).circuit).two_qubit_count;
    pass = pass && lin < log && sb < lcu;
    detail += " m=" + std::to_string(m) + ": ex1 " + std::to_string(lin) + "<" + std::to_string(log) + ", ex4 " +
              std::to_string(sb) + "<" + std::to_string(lcu) + ";";
  }
  detail.pop_back();
  return {pass, detail.substr(1)};
}

Outcome criterion9() {
  double worst = 0;
  const auto alphas = random_alphas(3, 9);
  for (double beta : {0.0, 0.3, 0.7, 1.0}) {
    const CombinationSpec spec{beta, Pauli::X, Pauli::Y};
    const auto c = assemble_combination(spec, alphas, SchemeKind::Log);
    worst = std::max(worst, oracle::max_abs(block_from_circuit(c.circuit) - c.lambda * dense_target(c.target)));
  }
  return {worst <= 1e-9, "phi = 2 arccos sqrt(beta), max error " + fmt(worst)};
}

/// 2n + 1 pairwise anti-commuting strings: Z..Z X_q, Z..Z Y_q and Z^n.
std::vector<PauliString> majoranas(std::size_t n, std::size_t m) {
  std::vector<PauliString> out;
  for (std::size_t q = 0; q < n; ++q) {
    for (Pauli last : {Pauli::X, Pauli::Y}) {
      PauliString p(n);
      for (std::size_t i = 0; i < q; ++i) p.set(i, Pauli::Z);
      p.set(q, last);
      out.push_back(p);
    }
  }
  PauliString all(n);
  for (std::size_t i = 0; i < n; ++i) all.set(i, Pauli::Z);
  out.push_back(all);
  out.resize(m, PauliString(n));
  return out;
}

Outcome criterion10() {
  double worst = 0;
  std::size_t exact_count = 0, total = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t m = 1; m <= std::min<std::size_t>(11, 2 * n + 1); ++m) {
      const auto ps = majoranas(n, m);
      const auto alphas = random_alphas(m, 10 * n + m);
      oracle::Mat want = oracle::Mat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
      for (std::size_t k = 0; k < m; ++k) want += alphas[k] * oracle::pauli(ps[k].to_string());
      worst = std::max(worst, oracle::max_abs(oracle::unitary(build_u_generic(alphas, ps)) - want));
      exact_count += generic_factors(alphas, ps).size() == 2 * m - 1;
      ++total;
    }
  }
  return {worst <= 1e-9 && exact_count == total,
          std::to_string(total) + " (n, m) cases, max error " + fmt(worst) + ", " + std::to_string(exact_count) +
              "/" + std::to_string(total) + " with 2m-1 exponentials"};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    double time_limit = 0;  // seconds, 0 for none
  };
  const std::vector<Criterion> criteria{
      {"1 exact block, examples 1-3, all schemes", criterion1, 60},
      {"2 success probability", criterion2},
      {"3 golden stabilizer tables", criterion3},
      {"4 transform sets anti-commute, faults rejected", criterion4},
      {"5 closed-form vs general stabilizers", criterion5},
      {"6 cascade coefficient law", criterion6},
      {"7 CNOT fan-out", criterion7},
      {"8 resource trends", criterion8, 30},
      {"9 weighted combination block", criterion9},
      {"10 generic U synthesis", criterion10},
  };
  int failed = 0;
  for (const auto &[name, run, limit] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit > 0 && secs > limit) {
      o.pass = false;
      o.detail += "; over the " + fmt(limit) + "s budget";
    }
    std::printf("%s criterion %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    failed += !o.pass;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
