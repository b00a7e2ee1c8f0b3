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

#include "hsim/exact.hpp"

#include <algorithm>
#include <cmath>

namespace hsim {

double hermitian_deviation(const Eigen::MatrixXcd& M) {
  return (M - M.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd evolution_operator(const Eigen::MatrixXcd& H, double t) {
  if (H.rows() != H.cols()) throw Error("evolution_operator: matrix not square");
  if (H.rows() == 0) throw Error("evolution_operator: empty matrix");
  if (hermitian_deviation(H) > 1e-10)
    throw Error("evolution_operator: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success)
    throw Error("evolution_operator: eigendecomposition failed");
  const Eigen::MatrixXcd& V = es.eigenvectors();
  const Eigen::VectorXd& lam = es.eigenvalues();
  double residual = (H * V - V * lam.asDiagonal().toDenseMatrix().cast<cxd>())
                        .cwiseAbs()
                        .maxCoeff();
  double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if (residual > 1e-9 * scale)
    throw Error("evolution_operator: eigendecomposition residual too large");
  Eigen::VectorXcd phases(lam.size());
  for (long k = 0; k < lam.size(); ++k)
    phases(k) = std::exp(cxd(0.0, -lam(k) * t));
  return V * phases.asDiagonal() * V.adjoint();
}

Eigen::VectorXcd evolve_exact(const Eigen::MatrixXcd& H, const Eigen::VectorXcd& psi0,
                              double t) {
  if (H.rows() != psi0.size())
    throw Error("evolve_exact: state and Hamiltonian dimensions differ");
  if (std::abs(psi0.norm() - 1.0) > 1e-8)
    throw Error("evolve_exact: initial state is not normalized");
  return evolution_operator(H, t) * psi0;
}

double fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) throw Error("fidelity: dimension mismatch");
  double f = std::norm(a.dot(b));
  return std::clamp(f, 0.0, 1.0);
}

double operator_error(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V) {
  if (U.rows() != U.cols() || V.rows() != V.cols() || U.rows() != V.rows())
    throw Error("operator_error: dimension mismatch");
  const long n = U.rows();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  if ((U.adjoint() * U - I).norm() > 1e-8 || (V.adjoint() * V - I).norm() > 1e-8)
    throw Error("operator_error: inputs must be unitary");
  // Minimum over a global phase c (|c| = 1) of ||U - c V||_F, attained at
  // c = conj(tr(U^dag V))/|tr(U^dag V)|.  Differencing after phase alignment
  // stays accurate near zero, where the algebraically equivalent
  // sqrt(2n - 2|tr|) form loses everything to cancellation.
  const cxd z = (U.adjoint() * V).trace();
  const double mag = std::abs(z);
  const cxd c = mag > 0.0 ? std::conj(z) / mag : cxd(1.0, 0.0);
  return (U - c * V).norm();
}

double expectation(const Eigen::MatrixXcd& O, const Eigen::VectorXcd& psi) {
  if (O.rows() != psi.size()) throw Error("expectation: dimension mismatch");
  if (hermitian_deviation(O) > 1e-10)
    throw Error("expectation: observable is not Hermitian");
  cxd v = psi.dot(O * psi);
  if (std::abs(v.imag()) >= 1e-10)
    throw Error("expectation: imaginary residue exceeds tolerance");
  return v.real();
}

}  // namespace hsim
