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

#ifndef HSIM_CIRCUIT_HPP
#define HSIM_CIRCUIT_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsim/common.hpp"

namespace hsim {

// Gate set {H, S, Sdg, RZ, CNOT}: the smallest set that closes Pauli basis
// changes (Y-basis change = Sdg then H).  RZ(phi) = diag(e^{-i phi/2},
// e^{+i phi/2}), so exp(-i theta Z) = RZ(2 theta).
struct Gate {
  enum class Kind { H, S, Sdg, RZ, CNOT };
  Kind kind = Kind::H;
  int q0 = 0;          // the qubit; for CNOT, the control
  int q1 = -1;         // CNOT target, unused otherwise
  double angle = 0.0;  // RZ only

  static Gate H(int q) { return {Kind::H, q, -1, 0.0}; }
  static Gate S(int q) { return {Kind::S, q, -1, 0.0}; }
  static Gate Sdg(int q) { return {Kind::Sdg, q, -1, 0.0}; }
  static Gate RZ(double angle, int q) { return {Kind::RZ, q, -1, angle}; }
  static Gate CNOT(int control, int target) {
    return {Kind::CNOT, control, target, 0.0};
  }

  bool operator==(const Gate& o) const {
    return kind == o.kind && q0 == o.q0 && q1 == o.q1 && angle == o.angle;
  }
};

// Gates apply in list order: gates[0] acts first on the state.  Identity
// terms of a compiled Hamiltonian land in global_phase (radians), never in
// gates; the full unitary is e^{i global_phase} times the gate product.
struct Circuit {
  int qubits = 0;
  std::vector<Gate> gates;
  double global_phase = 0.0;

  void append(const Gate& g);  // validates indices against qubit count
};

// State layout matches the register convention: qubit 0 is the most
// significant bit of the basis index.
void apply_gate(const Gate& g, int qubits, Eigen::VectorXcd& psi);
Eigen::VectorXcd apply_circuit(const Circuit& c, Eigen::VectorXcd psi);

Eigen::MatrixXcd circuit_unitary(const Circuit& c);  // qubit count <= 12

struct ResourceCount {
  long total = 0;
  long two_qubit = 0;
  long rz = 0;
  long depth = 0;  // greedy layering over qubit-disjoint gates
  bool operator==(const ResourceCount& o) const {
    return total == o.total && two_qubit == o.two_qubit && rz == o.rz &&
           depth == o.depth;
  }
};
ResourceCount resource_count(const Circuit& c);

// Text format: "OPENQASM 3.0;\nqubit[N] q;\n" then one gate per line, angles
// with 17 significant digits.  The importer accepts exactly this subset; the
// global phase is not part of the text form.
std::string export_circuit(const Circuit& c);
Circuit import_circuit(const std::string& text);  // throws Error on junk

}  // namespace hsim

#endif
