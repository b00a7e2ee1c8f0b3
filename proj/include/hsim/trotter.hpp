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

#ifndef HSIM_TROTTER_HPP
#define HSIM_TROTTER_HPP

#include <cstddef>
#include <vector>

#include "hsim/circuit.hpp"
#include "hsim/encodings.hpp"

namespace hsim {

// Gates realizing exp(-i theta P) for a non-identity Pauli word with phase
// +1: per-qubit basis changes into Z, a CNOT parity ladder over the support,
// RZ(2 theta) on the last support qubit, then the mirror image.
std::vector<Gate> pauli_rotation_circuit(const PauliString& p, double theta);

struct TrotterPlan {
  double t = 0.0;
  int steps = 1;  // slice count n >= 1
  int order = 1;  // 1 = product formula, 2 = symmetric (Strang) splitting
  std::vector<std::size_t> term_order;  // permutation; empty = natural order
};

// Product-formula compilation: per slice, one rotation of angle w_j * t/n per
// term in term_order (order 2 walks the list forward then backward at half
// angle).  Identity words accumulate into the circuit's global phase.
Circuit trotterize(const QubitHamiltonian& hq, const TrotterPlan& plan);

}  // namespace hsim

#endif
