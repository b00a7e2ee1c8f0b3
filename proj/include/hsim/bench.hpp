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

// Benchmark harness: Trotter error scaling, conserved-charge drift tracking,
// and digital/analogue/hybrid strategy comparison against the dense oracle.
// Everything here is a deterministic function of its inputs and the seed, so
// repeated runs produce byte-identical serialized output.

#ifndef HSIM_BENCH_HPP
#define HSIM_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsim/analogue.hpp"
#include "hsim/encodings.hpp"
#include "hsim/model.hpp"

namespace hsim {

// Seeded Gaussian unit vector; the shared initial state for experiments.
Eigen::VectorXcd random_state(long dim, std::uint64_t seed);

// Binds unset parameters to their defaults and reduces the model to qubits.
QubitHamiltonian model_to_qubits(const Model& model);

// ---------------------------------------------------------------------------
// Trotter error scaling

struct ScalingRow {
  int n = 0;
  double error = 0.0;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  double slope = 0.0;    // log-log least-squares fit
  double ci_low = 0.0;   // 95% bootstrap interval, 200 seeded resamples
  double ci_high = 0.0;
  bool exact = false;    // every error under 1e-10; no meaningful slope
};

ScalingResult trotter_scaling_experiment(const QubitHamiltonian& hq, double t,
                                         const std::vector<int>& slice_counts,
                                         int order, std::uint64_t seed,
                                         int jobs = 1);

std::string scaling_to_csv(const ScalingResult& r);
std::string scaling_to_json(const ScalingResult& r);

// ---------------------------------------------------------------------------
// Conserved-charge drift

struct DriftResult {
  std::vector<double> times;
  // deviations[k][l] = |<G_l>(t_k) - <G_l>(0)|
  std::vector<std::vector<double>> deviations;
  // commutator_max[k] = max_l |<psi_k| [H, G_l] |psi_k>|
  std::vector<double> commutator_max;
};

// steps = 0 evolves exactly; otherwise an order-`order` compiled circuit with
// that many slices is applied per grid time.
DriftResult gauss_drift_experiment(const Model& model,
                                   const std::vector<double>& times, int steps,
                                   int order, std::uint64_t seed);

std::string drift_to_csv(const DriftResult& r);
std::string drift_to_json(const DriftResult& r);

// ---------------------------------------------------------------------------
// Strategy comparison

struct Strategy {
  enum class Kind { Digital, Analogue, Hybrid };
  Kind kind = Kind::Digital;
  std::string name;  // report label; defaults to a generated one
  // digital / hybrid
  int steps = 1;
  int order = 1;  // digital only; the hybrid split is first order
  // analogue / hybrid; params.eps empty means calibrate here, with the seed.
  // sites == 0 sizes the chain to the model's qubit count at run time.
  HardwareTemplate tpl{0, 2};
  CalibrationParams params;
  // hybrid: indices of the strings evolved on the analogue side
  std::vector<std::size_t> analogue_terms;
};

Strategy digital_strategy(int steps, int order = 1);
Strategy analogue_strategy(HardwareTemplate tpl = {0, 2});
Strategy hybrid_strategy(int steps, std::vector<std::size_t> analogue_terms,
                         HardwareTemplate tpl = {0, 2});

struct StrategyReport {
  std::string name;
  bool ok = false;
  std::string error;  // failure reason when !ok
  std::vector<double> times;
  std::vector<double> fidelities;  // vs the exact oracle, within [0, 1]
  long gates = 0;
  long two_qubit = 0;
  long rz = 0;
  long depth = 0;
  long parameters = 0;    // analogue/hybrid tunable-parameter count
  double residual = 0.0;  // analogue/hybrid calibration residual
};

struct CompareReport {
  std::string model;
  std::uint64_t seed = 0;
  std::vector<StrategyReport> strategies;  // input order
  std::vector<std::size_t> ranking;        // successful entries, best first
};

// Runs every strategy on the same seeded initial state over `times`
// (strictly increasing, starting at >= 0).  A strategy that cannot run is
// reported with ok = false and does not stop the others.  Ranking is by
// final-time fidelity, breaking exact ties toward cheaper resources and
// then input order.
CompareReport strategy_compare(const std::string& model_name,
                               const QubitHamiltonian& hq,
                               const std::vector<Strategy>& strategies,
                               const std::vector<double>& times,
                               std::uint64_t seed, int jobs = 1);

std::string compare_to_json(const CompareReport& r);

}  // namespace hsim

#endif
