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

#include "hsim/trotter.hpp"

#include <algorithm>
#include <numeric>

namespace hsim {

std::vector<Gate> pauli_rotation_circuit(const PauliString& p, double theta) {
  if (p.phase != cxd(1.0, 0.0))
    throw Error("pauli rotation requires phase +1");
  std::vector<int> support;
  for (std::size_t q = 0; q < p.letters.size(); ++q)
    if (p.letters[q] != 'I') support.push_back(static_cast<int>(q));
  if (support.empty())
    throw Error("identity string has no rotation; fold it into the phase");

  std::vector<Gate> pre, post;
  for (int q : support) {
    switch (p.letters[static_cast<std::size_t>(q)]) {
      case 'X':  // H Z H = X
        pre.push_back(Gate::H(q));
        post.push_back(Gate::H(q));
        break;
      case 'Y':  // (S H) Z (H Sdg) = Y
        pre.push_back(Gate::Sdg(q));
        pre.push_back(Gate::H(q));
        post.push_back(Gate::H(q));
        post.push_back(Gate::S(q));
        break;
      default:  // Z needs no change of basis
        break;
    }
  }

  std::vector<Gate> gates = pre;
  // Parity ladder: after it, Z on the last support qubit reads the joint
  // parity of the whole support.
  for (std::size_t k = 0; k + 1 < support.size(); ++k)
    gates.push_back(Gate::CNOT(support[k], support[k + 1]));
  gates.push_back(Gate::RZ(2.0 * theta, support.back()));
  for (std::size_t k = support.size() - 1; k-- > 0;)
    gates.push_back(Gate::CNOT(support[k], support[k + 1]));
  // Each qubit's undo sub-sequence is already in application order (H then S
  // inverts H after Sdg); sub-sequences on distinct qubits commute.
  gates.insert(gates.end(), post.begin(), post.end());
  return gates;
}

Circuit trotterize(const QubitHamiltonian& hq, const TrotterPlan& plan) {
  if (plan.steps < 1) throw Error("trotterize: step count must be >= 1");
  if (plan.order != 1 && plan.order != 2)
    throw Error("trotterize: order must be 1 or 2");
  if (hq.strings.empty()) throw Error("trotterize: empty Hamiltonian");

  std::vector<std::size_t> order = plan.term_order;
  if (order.empty()) {
    order.resize(hq.strings.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
  } else {
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    bool perm = sorted.size() == hq.strings.size();
    for (std::size_t k = 0; perm && k < sorted.size(); ++k)
      if (sorted[k] != k) perm = false;
    if (!perm) throw Error("trotterize: term_order is not a permutation");
  }

  Circuit c;
  c.qubits = static_cast<int>(hq.qubits);
  const double dt = plan.t / plan.steps;
  const std::string identity(hq.qubits, 'I');

  auto emit = [&](std::size_t j, double theta) {
    const auto& [letters, weight] = hq.strings[j];
    if (letters == identity) return;  // handled as a global phase below
    for (const Gate& g :
         pauli_rotation_circuit({letters, cxd(1.0, 0.0)}, weight * theta))
      c.append(g);
  };

  for (int step = 0; step < plan.steps; ++step) {
    if (plan.order == 1) {
      for (std::size_t j : order) emit(j, dt);
    } else {
      for (std::size_t j : order) emit(j, dt / 2);
      for (auto it = order.rbegin(); it != order.rend(); ++it)
        emit(*it, dt / 2);
    }
  }

  // exp(-i w_I t I) contributes exactly a phase, for any order and n.
  for (const auto& [letters, weight] : hq.strings)
    if (letters == identity) c.global_phase -= weight * plan.t;
  return c;
}

}  // namespace hsim
