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

#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sbbe/encoder.hpp"
#include "sbbe/error.hpp"
#include "sbbe/scheme.hpp"
#include "sbbe/simulator.hpp"

namespace sbbe::cli {

namespace {

struct SpecOptions {
  int example = 0;
  std::string ell = "1";
  std::string ell2 = "2";
  std::string s;
  std::size_t m = 0;
  std::size_t n = 0;
  std::string scheme = "log";
  std::string v_file;
  std::string t_file;
  std::string plan;
  std::uint64_t seed = 1;
  double beta = 0.5;
  std::string u_form = "auto";
  std::string stabilizers = "auto";
  std::string method = "sbbe";
  int inject_gamma_fault = -1;
};

struct Built {
  Circuit circuit;
  WeightedPauliSum target;
  double lambda = 1.0;
  std::optional<EncodingPlan> plan;
  std::string method;
  std::string u_form;
  std::size_t exponentials = 0;
};

void add_spec_options(CLI::App &cmd, SpecOptions &o) {
  cmd.add_option("--example", o.example, "Example operator 1..4")->check(CLI::Range(1, 4));
  cmd.add_option("--ell", o.ell, "Pauli type of the example (1/2/3 or X/Y/Z)");
  cmd.add_option("--ell2", o.ell2, "Second Pauli type for example 4");
  cmd.add_option("--s", o.s, "Transformation type s (default 3, or 1 when ell is 3)");
  cmd.add_option("--m", o.m, "Number of terms");
  cmd.add_option("--n", o.n, "System qubits (default m)");
  cmd.add_option("--scheme", o.scheme, "log, gray, linear, linminus1 or custom");
  cmd.add_option("--v-file", o.v_file, "Custom control states, one bit string or integer per line");
  cmd.add_option("--t-file", o.t_file, "Transformations T_k, one Pauli string per line");
  cmd.add_option("--plan", o.plan, "Plan JSON file (overrides the example flags)");
  cmd.add_option("--seed", o.seed, "Seed for the random coefficients");
  cmd.add_option("--beta", o.beta, "Mixing weight for example 4")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--u-form", o.u_form, "auto, generic or cascade");
  cmd.add_option("--stabilizers", o.stabilizers, "auto, products or direct");
  cmd.add_option("--method", o.method, "sbbe or lcu")->check(CLI::IsMember({"sbbe", "lcu"}));
  cmd.add_option("--inject-gamma-fault", o.inject_gamma_fault,
                 "Negate gamma_k for this k (exercises verification)");
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> non_empty_lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

AncillaScheme read_v_file(const std::string &path, std::size_t m) {
  const auto lines = non_empty_lines(read_file(path));
  if (lines.size() != m) {
    throw ValidationError("v-file lists " + std::to_string(lines.size()) + " states for " +
                          std::to_string(m) + " terms");
  }
  std::vector<BitVector> states;
  bool bits = true;
  for (const auto &l : lines) bits = bits && l.find_first_not_of("01") == std::string::npos;
  if (bits) {
    for (const auto &l : lines) states.push_back(BitVector::from_string(l));
    const std::size_t a = states.front().size();
    return AncillaScheme::custom(a, std::move(states));
  }
  std::vector<std::uint64_t> values;
  for (const auto &l : lines) values.push_back(std::stoull(l));
  std::uint64_t top = 0;
  for (auto v : values) top = std::max(top, v);
  std::size_t a = 0;
  while (a < 64 && (std::uint64_t{1} << a) <= top) ++a;
  return AncillaScheme::custom_from_integers(a, values);
}

Built build(const SpecOptions &o) {
  Built b;
  b.method = o.method;
  const UForm form = parse_u_form(o.u_form);
  const StabilizerRoute route = parse_stabilizer_route(o.stabilizers);
  std::optional<WeightedPauliSum> op;
  std::optional<TransformSet> transforms;

  if (!o.plan.empty()) {
    EncodingPlan plan = plan_from_json(read_file(o.plan));
    op = plan.op;
    transforms = plan.transforms;
    if (o.method == "sbbe") b.plan = std::move(plan);
  } else {
    if (o.example == 0) throw ParseError("give --plan or --example");
    if (o.m == 0) throw ParseError("--m is required with --example");
    const Pauli ell = parse_pauli_type(o.ell);
    const auto alphas = random_alphas(o.m, o.seed);
    if (o.example == 4) {
      const CombinationSpec spec{o.beta, ell, parse_pauli_type(o.ell2)};
      if (o.method == "lcu") {
        const auto target = combination_operator(spec, alphas, o.n);
        auto lcu = assemble_lcu(target);
        b.circuit = std::move(lcu.circuit);
        b.lambda = lcu.lambda;
        b.target = target;
        return b;
      }
      auto comb = assemble_combination(spec, alphas, parse_scheme_kind(o.scheme), o.n, form);
      b.circuit = std::move(comb.circuit);
      b.lambda = comb.lambda;
      b.target = comb.target;
      b.u_form = u_form_name(form);
      return b;
    }
    std::optional<Pauli> s;
    if (!o.s.empty()) s = parse_pauli_type(o.s);
    auto ex = example_operator(static_cast<ExampleId>(o.example), ell, o.m, alphas, o.n, s);
    op = ex.op;
    transforms = ex.transforms;
    if (!o.t_file.empty()) {
      std::vector<PauliString> ts;
      for (const auto &l : non_empty_lines(read_file(o.t_file))) ts.push_back(PauliString::from_string(l));
      transforms = build_transforms(*op, ts);
    }
    if (o.method == "sbbe") {
      const SchemeKind kind = parse_scheme_kind(o.scheme);
      AncillaScheme scheme = kind == SchemeKind::Custom
                                 ? (o.v_file.empty() ? throw ParseError("--scheme custom needs --v-file")
                                                     : read_v_file(o.v_file, op->size()))
                                 : scheme_for(kind, op->size());
      b.plan = make_plan(*op, *transforms, scheme, route);
    }
  }

  if (o.method == "lcu") {
    auto lcu = assemble_lcu(*op);
    b.circuit = std::move(lcu.circuit);
    b.lambda = lcu.lambda;
    b.target = *op;
    return b;
  }
  EncodingPlan plan = *b.plan;
  if (o.inject_gamma_fault >= 0) {
    const auto k = static_cast<std::size_t>(o.inject_gamma_fault);
    if (k >= plan.transforms.size()) throw ValidationError("--inject-gamma-fault index out of range");
    plan.transforms.gamma_exps[k] = (plan.transforms.gamma_exps[k] + 2) % 4;
  }
  auto sb = assemble_sbbe(plan, form);
  b.circuit = std::move(sb.circuit);
  b.lambda = sb.lambda;
  b.u_form = u_form_name(sb.form_used);
  b.exponentials = sb.exponentials;
  b.target = *op;
  return b;
}

void print_resources(std::ostream &out, const Built &b) {
  const ResourceReport r = resources(b.circuit);
  out << "method " << b.method << "\n";
  out << "qubits " << b.circuit.num_qubits() << " sys " << b.circuit.layout().n_sys << " anc "
      << b.circuit.layout().n_anc << "\n";
  out << "lambda " << b.lambda << "\n";
  if (b.plan) {
    out << "scheme " << scheme_name(b.plan->scheme.kind) << "\n";
    out << "stabilizer_route " << stabilizer_route_name(b.plan->route_used) << "\n";
  }
  if (!b.u_form.empty()) out << "u_form " << b.u_form << "\n";
  if (b.u_form == "generic") out << "pauli_exponentials " << b.exponentials << "\n";
  out << "two_qubit_count " << r.two_qubit_count << "\n";
  out << "depth " << r.depth << "\n";
  out << "total_gates " << r.total_gates << "\n";
}

Circuit load_circuit(const std::string &path) {
  const std::string text = read_file(path);
  if (text.find("OPENQASM") != std::string::npos) return from_qasm(text);
  return from_text(text);
}

int cmd_synth(const SpecOptions &o, const std::string &out_path, const std::string &format,
              const std::string &plan_out, std::ostream &out) {
  const Built b = build(o);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw ParseError("cannot write " + out_path);
    f << (format == "qasm" ? to_qasm(b.circuit) : to_text(b.circuit));
  }
  if (!plan_out.empty()) {
    if (!b.plan) throw ParseError("--plan-out needs an SBBE plan (examples 1-3 or --plan)");
    std::ofstream f(plan_out);
    if (!f) throw ParseError("cannot write " + plan_out);
    f << plan_to_json(*b.plan);
  }
  print_resources(out, b);
  return kExitOk;
}

int cmd_verify(const SpecOptions &o, const std::string &circuit_path, double tol,
               std::size_t dense_cap, std::ostream &out) {
  Built b = build(o);
  if (!circuit_path.empty()) b.circuit = load_circuit(circuit_path);
  const Eigen::MatrixXcd target = b.target.to_dense(dense_cap);
  const BlockReport r = verify_block_encoding(b.circuit, target, b.lambda, tol, o.seed, dense_cap);
  out << to_json(r) << "\n";
  if (!r.passed) {
    const Eigen::MatrixXcd block = block_from_circuit(b.circuit, dense_cap);
    std::size_t bad = 0;
    for (Eigen::Index i = 0; i < block.rows(); ++i) {
      for (Eigen::Index j = 0; j < block.cols(); ++j) {
        bad += std::abs(block(i, j) - b.lambda * target(i, j)) > tol;
      }
    }
    out << "FAILED: " << bad << " of " << block.size() << " block entries exceed tol " << tol
        << "; worst entry (" << r.worst_row << "," << r.worst_col << ") error " << r.max_abs_error
        << "\n";
    return kExitVerifyFailed;
  }
  out << "PASSED\n";
  return kExitOk;
}

int cmd_tables(const std::string &scheme, std::size_t m_min, std::size_t m_max, std::ostream &out) {
  if (m_min < 2 || m_max < m_min) throw ParseError("need 2 <= m-min <= m-max");
  if (scheme == "all") {
    for (auto kind : {SchemeKind::Linear, SchemeKind::Log, SchemeKind::LinearMinusOne,
                      SchemeKind::LogGray}) {
      out << "# " << scheme_name(kind) << "\n";
      for (const auto &row : stabilizer_table(kind, m_min, m_max)) out << row << "\n";
    }
    return kExitOk;
  }
  const SchemeKind kind = parse_scheme_kind(scheme);
  if (kind == SchemeKind::Custom) throw ParseError("tables are defined for the built-in schemes");
  for (const auto &row : stabilizer_table(kind, m_min, m_max)) out << row << "\n";
  return kExitOk;
}

struct BenchOptions {
  std::vector<int> examples{1};
  std::vector<std::size_t> m_grid;
  std::vector<std::string> schemes{"linear", "log"};
  std::vector<std::string> methods{"sbbe", "lcu"};
  std::string out;
  std::size_t dense_cap = kDefaultDenseCap;
  double tol = 1e-9;
};

std::vector<std::size_t> parse_size_list(const std::string &text) {
  std::vector<std::size_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" ") == std::string::npos) continue;
    std::size_t used = 0;
    const auto v = std::stoull(item, &used);
    if (item.find_first_not_of(" ", used) != std::string::npos) throw ParseError("bad m value '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> default_m_grid() {
  std::vector<std::size_t> g;
  for (std::size_t m = 2; m <= 492; m += 10) g.push_back(m);
  return g;
}

int cmd_bench(const SpecOptions &base, const BenchOptions &bo, std::ostream &out, std::ostream &err) {
  std::ostringstream csv;
  csv << "example,m,n,scheme,method,two_qubit_count,depth,seed,verified\n";
  int failures = 0;
  for (int example : bo.examples) {
    for (std::size_t m : bo.m_grid) {
      for (const auto &method : bo.methods) {
        // LCU does not use the ancilla scheme, so it gets one row per cell.
        const std::vector<std::string> schemes =
            method == "lcu" ? std::vector<std::string>{"binary"} : bo.schemes;
        for (const auto &scheme : schemes) {
          SpecOptions o = base;
          o.example = example;
          o.m = m;
          o.n = base.n == 0 ? m : base.n;
          o.method = method;
          if (method == "sbbe") o.scheme = scheme;
          csv << example << "," << m << "," << o.n << "," << scheme << "," << method << ",";
          try {
            const Built b = build(o);
            const Circuit lowered = simplify(decompose(b.circuit));
            const ResourceReport r = count_resources(lowered);
            std::string verified = "unverified";
            if (lowered.num_qubits() <= bo.dense_cap) {
              const auto rep = verify_block_encoding(lowered, b.target, b.lambda, bo.tol, o.seed,
                                                     bo.dense_cap);
              verified = rep.passed ? "true" : "false";
              if (!rep.passed) ++failures;
            }
            csv << r.two_qubit_count << "," << r.depth << "," << o.seed << "," << verified << "\n";
          } catch (const std::exception &e) {
            ++failures;
            err << "cell example=" << example << " m=" << m << " scheme=" << scheme
                << " method=" << method << " failed: " << e.what() << "\n";
            csv << ",," << o.seed << ",error\n";
          }
        }
      }
    }
  }
  if (bo.out.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(bo.out);
    if (!f) throw ParseError("cannot write " + bo.out);
    f << csv.str();
  }
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Stabilizer-based block encodings of weighted Pauli sums", "sbbe"};
  app.require_subcommand(1);

  SpecOptions synth_o, verify_o, bench_o;
  std::string synth_out, synth_format = "text", plan_out;
  auto *synth = app.add_subcommand("synth", "Build a block-encoding circuit and report resources");
  add_spec_options(*synth, synth_o);
  synth->add_option("--out", synth_out, "Write the circuit to this file");
  synth->add_option("--format", synth_format, "text or qasm")->check(CLI::IsMember({"text", "qasm"}));
  synth->add_option("--plan-out", plan_out, "Write the plan JSON to this file");

  std::string circuit_path;
  double tol = 1e-9;
  std::size_t dense_cap = kDefaultDenseCap;
  auto *verify = app.add_subcommand("verify", "Check a circuit's top-left block against lambda * A");
  add_spec_options(*verify, verify_o);
  verify->add_option("--circuit", circuit_path, "Circuit file to check instead of a fresh build");
  verify->add_option("--tol", tol, "Max-abs tolerance");
  verify->add_option("--dense-cap", dense_cap, "Largest qubit count to simulate");

  std::string table_scheme = "all";
  std::size_t m_min = 2, m_max = 14;
  auto *tables = app.add_subcommand("tables", "Print stabilizer factorizations per m");
  tables->add_option("--scheme", table_scheme, "linear, log, linminus1, gray or all");
  tables->add_option("--m-min", m_min, "Smallest m");
  tables->add_option("--m-max", m_max, "Largest m");

  BenchOptions bench_b;
  bench_b.m_grid = default_m_grid();
  auto *bench = app.add_subcommand("bench", "Resource sweep as CSV");
  bench->add_option("--examples", bench_b.examples, "Comma-separated example ids")->delimiter(',');
  std::optional<std::string> m_grid_text;
  bench->add_option("--m-grid", m_grid_text, "Comma-separated m values; empty for none");
  bench->add_option("--schemes", bench_b.schemes, "Comma-separated SBBE schemes")->delimiter(',');
  bench->add_option("--methods", bench_b.methods, "Comma-separated methods (sbbe, lcu)")->delimiter(',');
  bench->add_option("--ell", bench_o.ell, "Pauli type");
  bench->add_option("--ell2", bench_o.ell2, "Second Pauli type for example 4");
  bench->add_option("--beta", bench_o.beta, "Mixing weight for example 4");
  bench->add_option("--u-form", bench_o.u_form, "auto, generic or cascade");
  bench->add_option("--seed", bench_o.seed, "Seed for the random coefficients");
  bench->add_option("--tol", bench_b.tol, "Verification tolerance");
  bench->add_option("--dense-cap", bench_b.dense_cap, "Verify cells up to this many qubits");
  bench->add_option("--out", bench_b.out, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(synth_o, synth_out, synth_format, plan_out, out);
    if (*verify) return cmd_verify(verify_o, circuit_path, tol, dense_cap, out);
    if (*tables) return cmd_tables(table_scheme, m_min, m_max, out);
    if (*bench) {
      for (auto e : bench_b.examples) {
        if (e < 1 || e > 4) throw ParseError("examples must be 1..4");
      }
      if (m_grid_text) bench_b.m_grid = parse_size_list(*m_grid_text);
      return cmd_bench(bench_o, bench_b, out, err);
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sbbe::cli
