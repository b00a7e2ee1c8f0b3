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

#ifndef HSIM_EXACT_HPP
#define HSIM_EXACT_HPP

#include <Eigen/Dense>

#include "hsim/common.hpp"

// Dense reference evolution.  States are plain normalized VectorXcd; every
// entry point checks its preconditions (unit norm, Hermiticity, matching
// dimensions) and throws Error on violation, so callers can treat results as
// ground truth for the compiled paths.

namespace hsim {

// exp(-i H t) via Hermitian eigendecomposition.  H must be Hermitian to
// 1e-10 in the max norm; the eigen-residual ||H V - V D|| is re-checked at
// 1e-9 before the result is trusted.  t may be negative.
Eigen::MatrixXcd evolution_operator(const Eigen::MatrixXcd& H, double t);

Eigen::VectorXcd evolve_exact(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& psi0,
                              double t);

double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

// Global-phase-invariant distance between unitaries:
//   min_phi ||U - e^{i phi} V||_F = sqrt(2 dim - 2 |tr(U^dagger V)|).
double operator_error(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V);

// Re <psi|O|psi> for Hermitian O; the imaginary residue must stay below
// 1e-10 or an Error is raised.
double expectation(const Eigen::MatrixXcd& O, const Eigen::VectorXcd& psi);

double hermitian_deviation(const Eigen::MatrixXcd& M);  // max |M - M^dagger|

}  // namespace hsim

#endif
