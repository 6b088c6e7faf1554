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

#include "sbbe/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>

#include "sbbe/error.hpp"

namespace sbbe {

namespace {

struct KindName {
  GateKind kind;
  const char *name;
};

constexpr KindName kKindNames[] = {
    {GateKind::H, "H"},         {GateKind::X, "X"},
    {GateKind::Y, "Y"},         {GateKind::Z, "Z"},
    {GateKind::S, "S"},         {GateKind::Sdg, "SDG"},
    {GateKind::Rx, "RX"},       {GateKind::Ry, "RY"},
    {GateKind::Rz, "RZ"},       {GateKind::Unitary, "U"},
    {GateKind::CX, "CX"},       {GateKind::GlobalPhase, "GPHASE"},
    {GateKind::ControlledPauli, "CPAULI"}, {GateKind::MultiControlled, "MC"},
};

Mat2 adjoint(const Mat2 &u) {
  return {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
}

GateKind inverse_kind(GateKind kind) {
  if (kind == GateKind::S) return GateKind::Sdg;
  if (kind == GateKind::Sdg) return GateKind::S;
  return kind;
}

}  // namespace

std::string gate_name(GateKind kind) {
  for (const auto &kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (const auto &kn : kKindNames) {
    if (upper == kn.name) return kn.kind;
  }
  throw ParseError("unknown gate '" + std::string(name) + "'");
}

bool is_single_qubit_kind(GateKind kind) {
  switch (kind) {
    case GateKind::H: case GateKind::X: case GateKind::Y: case GateKind::Z:
    case GateKind::S: case GateKind::Sdg: case GateKind::Rx: case GateKind::Ry:
    case GateKind::Rz: case GateKind::Unitary:
      return true;
    default:
      return false;
  }
}

bool is_rotation_kind(GateKind kind) {
  return kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz;
}

Mat2 single_qubit_matrix(GateKind kind, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const cdouble i{0, 1};
  const double r = std::numbers::sqrt2 / 2;
  switch (kind) {
    case GateKind::H: return {r, r, r, -r};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, -i, i, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::S: return {1.0, 0.0, 0.0, i};
    case GateKind::Sdg: return {1.0, 0.0, 0.0, -i};
    case GateKind::Rx: return {c, -i * s, -i * s, c};
    case GateKind::Ry: return {c, -s, s, c};
    case GateKind::Rz: return {std::polar(1.0, -angle / 2), 0.0, 0.0, std::polar(1.0, angle / 2)};
    default:
      throw ValidationError("gate " + gate_name(kind) + " has no fixed single-qubit matrix");
  }
}

Gate Gate::single(GateKind kind, std::size_t q, double angle) {
  if (!is_single_qubit_kind(kind) || kind == GateKind::Unitary) {
    throw ValidationError("Gate::single needs a named single-qubit kind, got " + gate_name(kind));
  }
  Gate g;
  g.kind = kind;
  g.targets = {q};
  g.angle = angle;
  return g;
}

Gate Gate::unitary(std::size_t q, const Mat2 &u) {
  Gate g;
  g.kind = GateKind::Unitary;
  g.targets = {q};
  g.matrix = u;
  return g;
}

Gate Gate::cx(std::size_t control, std::size_t target) {
  Gate g;
  g.kind = GateKind::CX;
  g.targets = {target};
  g.controls = {Control{control, true}};
  return g;
}

Gate Gate::global_phase(double angle, std::vector<Control> controls) {
  Gate g;
  g.kind = GateKind::GlobalPhase;
  g.angle = angle;
  g.controls = std::move(controls);
  return g;
}

Gate Gate::controlled_pauli(std::vector<Control> controls, std::vector<std::size_t> targets,
                            PauliString payload, cdouble phase) {
  if (payload.num_qubits() != targets.size()) {
    throw DimensionError("payload has " + std::to_string(payload.num_qubits()) +
                         " factors for " + std::to_string(targets.size()) + " targets");
  }
  Gate g;
  g.kind = GateKind::ControlledPauli;
  g.controls = std::move(controls);
  g.targets = std::move(targets);
  g.phase = phase * payload.phase();
  payload.set_phase_exp(0);
  g.payload = std::move(payload);
  return g;
}

Gate Gate::controlled_pauli_string(std::vector<Control> controls, const PauliString &p,
                                   std::size_t offset, cdouble phase) {
  const auto support = p.support();
  std::vector<std::size_t> targets;
  PauliString payload(support.size());
  for (std::size_t j = 0; j < support.size(); ++j) {
    targets.push_back(offset + support[j]);
    payload.set(j, p.at(support[j]));
  }
  return controlled_pauli(std::move(controls), std::move(targets), std::move(payload),
                          phase * p.phase());
}

Gate Gate::multi_controlled(std::vector<Control> controls, std::size_t target, GateKind base,
                            double angle, cdouble phase) {
  if (!is_single_qubit_kind(base) || base == GateKind::Unitary) {
    throw ValidationError("multi-controlled base must be a named single-qubit gate");
  }
  Gate g;
  g.kind = GateKind::MultiControlled;
  g.controls = std::move(controls);
  g.targets = {target};
  g.base = base;
  g.angle = angle;
  g.phase = phase;
  return g;
}

Gate Gate::multi_controlled_unitary(std::vector<Control> controls, std::size_t target,
                                    const Mat2 &u) {
  Gate g;
  g.kind = GateKind::MultiControlled;
  g.controls = std::move(controls);
  g.targets = {target};
  g.base = GateKind::Unitary;
  g.matrix = u;
  return g;
}

Mat2 Gate::target_matrix() const {
  Mat2 u;
  if (kind == GateKind::MultiControlled) {
    u = base == GateKind::Unitary ? matrix : single_qubit_matrix(base, angle);
    for (auto &e : u) e *= phase;
  } else if (kind == GateKind::Unitary) {
    u = matrix;
  } else if (kind == GateKind::CX) {
    u = single_qubit_matrix(GateKind::X);
  } else {
    u = single_qubit_matrix(kind, angle);
  }
  return u;
}

std::vector<std::size_t> Gate::qubits() const {
  std::vector<std::size_t> out;
  for (const auto &c : controls) out.push_back(c.qubit);
  out.insert(out.end(), targets.begin(), targets.end());
  return out;
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::S:
    case GateKind::Sdg:
      g.kind = inverse_kind(kind);
      break;
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::GlobalPhase:
      g.angle = -angle;
      break;
    case GateKind::Unitary:
      g.matrix = adjoint(matrix);
      break;
    case GateKind::ControlledPauli:
      g.phase = std::conj(phase);
      break;
    case GateKind::MultiControlled:
      if (base == GateKind::Unitary) {
        g.matrix = adjoint(matrix);
      } else {
        g.base = inverse_kind(base);
        if (is_rotation_kind(base)) g.angle = -angle;
        g.phase = std::conj(phase);
      }
      break;
    default:
      break;
  }
  return g;
}

Circuit::Circuit(std::size_t num_qubits) : layout_{num_qubits, 0} {}

Circuit::Circuit(Layout layout) : layout_(layout) {}

void Circuit::append(Gate gate) {
  std::set<std::size_t> seen;
  for (auto q : gate.qubits()) {
    if (q >= num_qubits()) {
      throw DimensionError(gate_name(gate.kind) + " gate uses qubit " + std::to_string(q) +
                           " in a " + std::to_string(num_qubits()) + "-qubit circuit");
    }
    if (!seen.insert(q).second) {
      throw ValidationError(gate_name(gate.kind) + " gate uses qubit " + std::to_string(q) +
                            " more than once");
    }
  }
  const bool needs_target = gate.kind != GateKind::GlobalPhase;
  if (needs_target && gate.targets.empty()) {
    throw ValidationError(gate_name(gate.kind) + " gate has no target");
  }
  if ((is_single_qubit_kind(gate.kind) || gate.kind == GateKind::CX ||
       gate.kind == GateKind::MultiControlled) &&
      gate.targets.size() != 1) {
    throw ValidationError(gate_name(gate.kind) + " gate needs exactly one target");
  }
  if (is_single_qubit_kind(gate.kind) && !gate.controls.empty()) {
    throw ValidationError("use MultiControlled for controlled single-qubit gates");
  }
  if (gate.kind == GateKind::CX && (gate.controls.size() != 1 || !gate.controls[0].polarity)) {
    throw ValidationError("CX needs exactly one positive control");
  }
  gates_.push_back(std::move(gate));
}

void Circuit::append(const Circuit &other, const std::vector<std::size_t> &qubit_map) {
  if (qubit_map.empty()) {
    if (other.num_qubits() > num_qubits()) {
      throw DimensionError("appended circuit is wider than the destination");
    }
    for (const auto &g : other.gates_) append(g);
    return;
  }
  if (qubit_map.size() != other.num_qubits()) {
    throw DimensionError("qubit map size differs from the appended circuit width");
  }
  for (Gate g : other.gates_) {
    for (auto &t : g.targets) t = qubit_map[t];
    for (auto &c : g.controls) c.qubit = qubit_map[c.qubit];
    append(std::move(g));
  }
}

Circuit Circuit::inverse() const {
  Circuit out(layout_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
  return out;
}

Circuit Circuit::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > gates_.size()) throw DimensionError("slice out of range");
  Circuit out(layout_);
  out.gates_.assign(gates_.begin() + static_cast<std::ptrdiff_t>(begin),
                    gates_.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

Circuit cnot_fanout(std::size_t num_qubits, const std::vector<Control> &controls,
                    const std::vector<std::size_t> &targets, cdouble phase) {
  if (targets.empty()) throw ValidationError("fan-out needs at least one target");
  for (const auto &c : controls) {
    if (std::find(targets.begin(), targets.end(), c.qubit) != targets.end()) {
      throw ValidationError("fan-out control " + std::to_string(c.qubit) + " is also a target");
    }
  }
  Circuit out(num_qubits);
  for (std::size_t j = targets.size() - 1; j >= 1; --j) out.append(Gate::cx(targets[j - 1], targets[j]));
  out.append(Gate::multi_controlled(controls, targets[0], GateKind::X, 0.0, phase));
  for (std::size_t j = 1; j < targets.size(); ++j) out.append(Gate::cx(targets[j - 1], targets[j]));
  return out;
}

std::size_t count_kind(const Circuit &c, GateKind kind) {
  return static_cast<std::size_t>(std::count_if(
      c.gates().begin(), c.gates().end(), [kind](const Gate &g) { return g.kind == kind; }));
}

namespace {

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

double parse_double(const std::string &text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw ParseError("trailing characters");
    return v;
  } catch (const std::exception &) {
    throw ParseError("invalid number '" + text + "'");
  }
}

std::size_t parse_index(const std::string &text) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("invalid qubit index '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string format_complex(cdouble z) { return format_double(z.real()) + "," + format_double(z.imag()); }

cdouble parse_complex(const std::string &text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw ParseError("complex value needs 're,im', got '" + text + "'");
  return {parse_double(parts[0]), parse_double(parts[1])};
}

}  // namespace

void write_text(std::ostream &out, const Circuit &c) {
  out << "qubits " << c.num_qubits() << " sys " << c.layout().n_sys << " anc "
      << c.layout().n_anc << "\n";
  for (const auto &g : c.gates()) {
    out << gate_name(g.kind);
    if (!g.targets.empty()) {
      out << " t=";
      for (std::size_t j = 0; j < g.targets.size(); ++j) out << (j ? "," : "") << g.targets[j];
    }
    if (!g.controls.empty()) {
      out << " c=";
      for (std::size_t j = 0; j < g.controls.size(); ++j) {
        out << (j ? "," : "") << g.controls[j].qubit << ":" << (g.controls[j].polarity ? 1 : 0);
      }
    }
    const bool has_angle = is_rotation_kind(g.kind) || g.kind == GateKind::GlobalPhase ||
                           (g.kind == GateKind::MultiControlled && is_rotation_kind(g.base));
    if (has_angle) out << " angle=" << format_double(g.angle);
    if (g.kind == GateKind::MultiControlled) out << " base=" << gate_name(g.base);
    if (g.kind == GateKind::ControlledPauli) out << " pauli=" << g.payload.to_string();
    if ((g.kind == GateKind::ControlledPauli || g.kind == GateKind::MultiControlled) &&
        g.phase != cdouble(1.0)) {
      out << " phase=" << format_complex(g.phase);
    }
    if (g.kind == GateKind::Unitary ||
        (g.kind == GateKind::MultiControlled && g.base == GateKind::Unitary)) {
      out << " matrix=";
      for (std::size_t j = 0; j < 4; ++j) out << (j ? "," : "") << format_complex(g.matrix[j]);
    }
    out << "\n";
  }
}

std::string to_text(const Circuit &c) {
  std::ostringstream out;
  write_text(out, c);
  return out.str();
}

Circuit read_text(std::istream &in) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&line_no](const std::string &msg) {
    throw ParseError("line " + std::to_string(line_no) + ": " + msg);
  };
  std::optional<Circuit> circuit;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;
    if (!circuit) {
      Layout layout;
      std::size_t total = 0;
      std::string k1, k2;
      if (head != "qubits" || !(words >> total >> k1 >> layout.n_sys >> k2 >> layout.n_anc) ||
          k1 != "sys" || k2 != "anc" || layout.total() != total) {
        fail("expected header 'qubits N sys n anc a'");
      }
      circuit.emplace(layout);
      continue;
    }
    Gate g;
    try {
      g.kind = parse_gate_kind(head);
    } catch (const ParseError &e) {
      fail(e.what());
    }
    std::string field;
    while (words >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) fail("expected key=value, got '" + field + "'");
      const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
      try {
        if (key == "t") {
          for (const auto &s : split(value, ',')) g.targets.push_back(parse_index(s));
        } else if (key == "c") {
          for (const auto &s : split(value, ',')) {
            const auto colon = s.find(':');
            if (colon == std::string::npos) fail("control needs 'qubit:polarity'");
            const auto pol = s.substr(colon + 1);
            if (pol != "0" && pol != "1") fail("control polarity must be 0 or 1");
            g.controls.push_back(Control{parse_index(s.substr(0, colon)), pol == "1"});
          }
        } else if (key == "angle") {
          g.angle = parse_double(value);
        } else if (key == "base") {
          g.base = parse_gate_kind(value);
        } else if (key == "pauli") {
          g.payload = PauliString::from_string(value);
        } else if (key == "phase") {
          g.phase = parse_complex(value);
        } else if (key == "matrix") {
          const auto parts = split(value, ',');
          if (parts.size() != 8) fail("matrix needs 8 numbers");
          for (std::size_t j = 0; j < 4; ++j) {
            g.matrix[j] = {parse_double(parts[2 * j]), parse_double(parts[2 * j + 1])};
          }
        } else {
          fail("unknown key '" + key + "'");
        }
      } catch (const ParseError &e) {
        fail(e.what());
      }
    }
    if (g.kind == GateKind::ControlledPauli && g.payload.num_qubits() != g.targets.size()) {
      fail("pauli payload length differs from the target count");
    }
    try {
      circuit->append(std::move(g));
    } catch (const Error &e) {
      fail(e.what());
    }
  }
  if (!circuit) throw ParseError("missing circuit header");
  return std::move(*circuit);
}

Circuit from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_text(in);
}

std::string to_qasm(const Circuit &c) {
  const Circuit lowered = decompose(c);
  std::ostringstream out;
  out << "OPENQASM 3.0;\ninclude \"stdgates.inc\";\n";
  out << "// layout sys " << c.layout().n_sys << " anc " << c.layout().n_anc << "\n";
  out << "qubit[" << lowered.num_qubits() << "] q;\n";
  for (const auto &g : lowered.gates()) {
    switch (g.kind) {
      case GateKind::CX:
        out << "cx q[" << g.controls[0].qubit << "], q[" << g.targets[0] << "];\n";
        break;
      case GateKind::GlobalPhase:
        out << "gphase(" << format_double(g.angle) << ");\n";
        break;
      case GateKind::Rx:
      case GateKind::Ry:
      case GateKind::Rz: {
        std::string name = gate_name(g.kind);
        std::transform(name.begin(), name.end(), name.begin(), ::tolower);
        out << name << "(" << format_double(g.angle) << ") q[" << g.targets[0] << "];\n";
        break;
      }
      default: {
        std::string name = gate_name(g.kind);
        std::transform(name.begin(), name.end(), name.begin(), ::tolower);
        out << name << " q[" << g.targets[0] << "];\n";
      }
    }
  }
  return out.str();
}

Circuit from_qasm(std::string_view text) {
  static const std::regex header(R"(^\s*qubit\[(\d+)\]\s+q\s*;\s*$)");
  static const std::regex layout(R"(^\s*//\s*layout\s+sys\s+(\d+)\s+anc\s+(\d+)\s*$)");
  static const std::regex gphase(R"(^\s*gphase\(([^)]*)\)\s*;\s*$)");
  static const std::regex gate(
      R"(^\s*([a-z]+)(?:\(([^)]*)\))?\s+q\[(\d+)\](?:\s*,\s*q\[(\d+)\])?\s*;\s*$)");
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Circuit> circuit;
  std::optional<Layout> declared;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::smatch match;
    if (std::regex_match(line, match, layout)) {
      declared = Layout{parse_index(match[1]), parse_index(match[2])};
      continue;
    }
    const auto comment = line.find("//");
    if (comment != std::string::npos) line.resize(comment);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.rfind("OPENQASM", 0) == 0 || line.rfind("include", 0) == 0) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (std::regex_match(line, match, header)) {
      const std::size_t n = parse_index(match[1]);
      if (declared && declared->total() != n) throw ParseError(where + "layout comment does not match qubit count");
      circuit.emplace(declared ? *declared : Layout{n, 0});
      continue;
    }
    if (!circuit) throw ParseError(where + "gate before qubit declaration");
    if (std::regex_match(line, match, gphase)) {
      circuit->append(Gate::global_phase(parse_double(match[1])));
      continue;
    }
    if (!std::regex_match(line, match, gate)) throw ParseError(where + "unsupported statement");
    const std::string name = match[1];
    const std::size_t q0 = parse_index(match[3]);
    if (name == "cx") {
      if (!match[4].matched) throw ParseError(where + "cx needs two qubits");
      circuit->append(Gate::cx(q0, parse_index(match[4])));
      continue;
    }
    GateKind kind;
    try {
      kind = parse_gate_kind(name);
    } catch (const ParseError &) {
      throw ParseError(where + "unsupported gate '" + name + "'");
    }
    if (!is_single_qubit_kind(kind) || kind == GateKind::Unitary || match[4].matched) {
      throw ParseError(where + "unsupported gate '" + name + "'");
    }
    const double angle = match[2].matched ? parse_double(match[2]) : 0.0;
    circuit->append(Gate::single(kind, q0, angle));
  }
  if (!circuit) throw ParseError("missing qubit declaration");
  return std::move(*circuit);
}

}  // namespace sbbe
