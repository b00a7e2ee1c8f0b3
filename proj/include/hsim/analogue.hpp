// Copyright 2026 The hsim Authors.
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

// Analogue backend: a tunable Bose-Hubbard chain.  A target Hamiltonian that
// has already been reduced to qubits is matched against the chain restricted
// to its hard-core (occupation 0/1) subspace by fitting the hardware
// parameters, and states are evolved under the full chain with the
// out-of-subspace probability reported as leakage.

#ifndef HSIM_ANALOGUE_HPP
#define HSIM_ANALOGUE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsim/encodings.hpp"
#include "hsim/operators.hpp"

namespace hsim {

// L sites of local dimension d with tunable global hopping J >= 0, global
// on-site interaction U >= 0 and one unbounded energy offset per site.
struct HardwareTemplate {
  std::size_t sites = 1;
  int cutoff = 2;
};

struct CalibrationParams {
  double J = 0.0;
  double U = 0.0;
  std::vector<double> eps;  // exactly one offset per template site
};

CalibrationParams zero_params(const HardwareTemplate& tpl);

// -J sum_j (b+_j b_{j+1} + h.c.)  +  (U/2) sum_j n_j(n_j - 1)  +  sum_j eps_j n_j
Hamiltonian instantiate_template(const HardwareTemplate& tpl,
                                 const CalibrationParams& params);

// Orthogonal projector onto the encoded subspace: occupation <= 1 on every
// mapped simulator site and occupation 0 on unmapped ones.
Eigen::MatrixXcd subspace_projector(const EncodingMap& map,
                                    const HardwareTemplate& tpl);

// The simulator block on the encoded subspace, rows and columns ordered by
// the qubit basis index the map assigns to each occupation pattern (target
// site 0 most significant).
Eigen::MatrixXcd template_block(const HardwareTemplate& tpl,
                                const CalibrationParams& params,
                                const EncodingMap& map);

struct CalibrationResult {
  CalibrationParams params;
  double residual = 0.0;
  long iterations = 0;  // objective evaluations consumed over all starts
  bool converged = false;
  std::uint64_t seed = 0;
  std::vector<double> accepted;  // winning start's accepted objective values
};

// Fits the template block to `target` up to a uniform energy shift, measured
// in Frobenius norm, using a deterministic multistart coordinate pattern
// search.  Same seed, same result, bit for bit.
CalibrationResult calibrate(const QubitHamiltonian& target,
                            const HardwareTemplate& tpl,
                            const EncodingMap& map,
                            const CalibrationParams& init,
                            std::uint64_t seed = 0);

std::string calibration_to_json(const CalibrationResult& result);

struct AnalogueEvolution {
  Eigen::VectorXcd state;  // decoded and renormalized
  double leakage = 0.0;    // probability mass that left the subspace
};

// Evolves a target-space state under the instantiated template for time t,
// then projects back.  Throws once more than `leak_bound` of the probability
// has abandoned the encoded subspace.
AnalogueEvolution analogue_evolve(const HardwareTemplate& tpl,
                                  const CalibrationParams& params,
                                  const EncodingMap& map,
                                  const Eigen::VectorXcd& psi0, double t,
                                  double leak_bound = 0.5);

}  // namespace hsim

#endif
