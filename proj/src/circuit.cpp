// Copyright 2026 The hsim Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hsim/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <sstream>

namespace hsim {

namespace {

void check_index(int q, int qubits) {
  if (q < 0 || q >= qubits)
    throw Error("gate qubit " + std::to_string(q) + " out of range for " +
                std::to_string(qubits) + " qubits");
}

void validate_gate(const Gate& g, int qubits) {
  check_index(g.q0, qubits);
  if (g.kind == Gate::Kind::CNOT) {
    check_index(g.q1, qubits);
    if (g.q0 == g.q1) throw Error("CNOT control equals target");
  }
}

}  // namespace

void Circuit::append(const Gate& g) {
  validate_gate(g, qubits);
  gates.push_back(g);
}

void apply_gate(const Gate& g, int qubits, Eigen::VectorXcd& psi) {
  validate_gate(g, qubits);
  const std::size_t dim = std::size_t{1} << qubits;
  if (psi.size() != static_cast<long>(dim))
    throw Error("state dimension does not match qubit count");
  // Qubit 0 is the most significant bit of the basis index.
  const std::size_t bit = std::size_t{1} << (qubits - 1 - g.q0);
  switch (g.kind) {
    case Gate::Kind::H: {
      const double inv = 1.0 / std::sqrt(2.0);
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & bit)) {
          cxd a = psi[static_cast<long>(i)], b = psi[static_cast<long>(i | bit)];
          psi[static_cast<long>(i)] = inv * (a + b);
          psi[static_cast<long>(i | bit)] = inv * (a - b);
        }
      break;
    }
    case Gate::Kind::S:
      for (std::size_t i = 0; i < dim; ++i)
        if (i & bit) psi[static_cast<long>(i)] *= cxd(0, 1);
      break;
    case Gate::Kind::Sdg:
      for (std::size_t i = 0; i < dim; ++i)
        if (i & bit) psi[static_cast<long>(i)] *= cxd(0, -1);
      break;
    case Gate::Kind::RZ: {
      const cxd lo = std::exp(cxd(0, -g.angle / 2));
      const cxd hi = std::exp(cxd(0, +g.angle / 2));
      for (std::size_t i = 0; i < dim; ++i)
        psi[static_cast<long>(i)] *= (i & bit) ? hi : lo;
      break;
    }
    case Gate::Kind::CNOT: {
      const std::size_t tbit = std::size_t{1} << (qubits - 1 - g.q1);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & bit) && !(i & tbit))
          std::swap(psi[static_cast<long>(i)], psi[static_cast<long>(i | tbit)]);
      break;
    }
  }
}

Eigen::VectorXcd apply_circuit(const Circuit& c, Eigen::VectorXcd psi) {
  for (const Gate& g : c.gates) apply_gate(g, c.qubits, psi);
  if (c.global_phase != 0.0) psi *= std::exp(cxd(0, c.global_phase));
  return psi;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  if (c.qubits > 12)
    throw Error("circuit_unitary: " + std::to_string(c.qubits) +
                " qubits exceeds the dense cap of 12");
  const long dim = 1L << c.qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::VectorXcd col(dim);
  for (long j = 0; j < dim; ++j) {
    col = u.col(j);
    for (const Gate& g : c.gates) apply_gate(g, c.qubits, col);
    u.col(j) = col;
  }
  if (c.global_phase != 0.0) u *= std::exp(cxd(0, c.global_phase));
  return u;
}

ResourceCount resource_count(const Circuit& c) {
  ResourceCount rc;
  std::vector<long> layer(static_cast<std::size_t>(c.qubits), 0);
  for (const Gate& g : c.gates) {
    ++rc.total;
    long at = layer[static_cast<std::size_t>(g.q0)];
    if (g.kind == Gate::Kind::CNOT) {
      ++rc.two_qubit;
      at = std::max(at, layer[static_cast<std::size_t>(g.q1)]);
    }
    if (g.kind == Gate::Kind::RZ) ++rc.rz;
    ++at;
    layer[static_cast<std::size_t>(g.q0)] = at;
    if (g.kind == Gate::Kind::CNOT) layer[static_cast<std::size_t>(g.q1)] = at;
    rc.depth = std::max(rc.depth, at);
  }
  return rc;
}

std::string export_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "OPENQASM 3.0;\n";
  os << "qubit[" << c.qubits << "] q;\n";
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case Gate::Kind::H: os << "h q[" << g.q0 << "];\n"; break;
      case Gate::Kind::S: os << "s q[" << g.q0 << "];\n"; break;
      case Gate::Kind::Sdg: os << "sdg q[" << g.q0 << "];\n"; break;
      case Gate::Kind::RZ:
        os << "rz(" << full_double(g.angle) << ") q[" << g.q0 << "];\n";
        break;
      case Gate::Kind::CNOT:
        os << "cx q[" << g.q0 << "], q[" << g.q1 << "];\n";
        break;
    }
  }
  return os.str();
}

namespace {

// Minimal recursive-descent over one gate line of the exported subset.
struct LineParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit LineParser(const std::string& line) : s(line) {}

  void expect(const std::string& lit) {
    if (s.compare(pos, lit.size(), lit) != 0)
      throw Error("circuit import: expected '" + lit + "' in '" + s + "'");
    pos += lit.size();
  }
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  int integer() {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (ec != std::errc() || ptr == s.data() + pos)
      throw Error("circuit import: expected integer in '" + s + "'");
    pos = static_cast<std::size_t>(ptr - s.data());
    return v;
  }
  double real() {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + s.size(), v);
    if (ec != std::errc() || ptr == s.data() + pos)
      throw Error("circuit import: expected number in '" + s + "'");
    pos = static_cast<std::size_t>(ptr - s.data());
    return v;
  }
  int qubit_ref() {
    skip_ws();
    expect("q[");
    int q = integer();
    expect("]");
    return q;
  }
  void finish() {
    skip_ws();
    expect(";");
    skip_ws();
    if (pos != s.size())
      throw Error("circuit import: trailing text in '" + s + "'");
  }
};

}  // namespace

Circuit import_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  if (lines.size() < 2 || lines[0] != "OPENQASM 3.0;")
    throw Error("circuit import: missing OPENQASM 3.0 header");
  LineParser decl(lines[1]);
  decl.expect("qubit[");
  int n = decl.integer();
  decl.expect("] q");
  decl.finish();
  if (n < 0) throw Error("circuit import: negative qubit count");

  Circuit c;
  c.qubits = n;
  for (std::size_t k = 2; k < lines.size(); ++k) {
    LineParser p(lines[k]);
    p.skip_ws();
    if (p.s.compare(p.pos, 4, "sdg ") == 0) {
      p.pos += 3;
      c.append(Gate::Sdg(p.qubit_ref()));
    } else if (p.s.compare(p.pos, 2, "s ") == 0) {
      p.pos += 1;
      c.append(Gate::S(p.qubit_ref()));
    } else if (p.s.compare(p.pos, 2, "h ") == 0) {
      p.pos += 1;
      c.append(Gate::H(p.qubit_ref()));
    } else if (p.s.compare(p.pos, 3, "rz(") == 0) {
      p.pos += 3;
      double a = p.real();
      p.expect(")");
      c.append(Gate::RZ(a, p.qubit_ref()));
    } else if (p.s.compare(p.pos, 3, "cx ") == 0) {
      p.pos += 2;
      int ctl = p.qubit_ref();
      p.expect(",");
      int tgt = p.qubit_ref();
      c.append(Gate::CNOT(ctl, tgt));
    } else {
      throw Error("circuit import: unrecognized gate line '" + lines[k] + "'");
    }
    p.finish();
  }
  return c;
}

}  // namespace hsim
