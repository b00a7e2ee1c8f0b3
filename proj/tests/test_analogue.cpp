#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hsim/analogue.hpp"
#include "hsim/exact.hpp"
#include "test_support.hpp"

using namespace hsim;

namespace {

using hsim_test::pauli_expand;

// Unconstrained least squares over the parameter blocks plus a uniform shift:
// the exact optimum of the objective calibrate searches for.
double lsq_residual(const std::vector<Eigen::MatrixXcd>& basis,
                    const Eigen::MatrixXcd& T, Eigen::VectorXd* coeffs) {
  const long dim = T.rows();
  const long rows = 2 * dim * dim;
  const long cols = static_cast<long>(basis.size()) + 1;
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  auto put = [&](const Eigen::MatrixXcd& M, long col) {
    for (long i = 0; i < dim; ++i)
      for (long j = 0; j < dim; ++j) {
        A(2 * (i * dim + j), col) = M(i, j).real();
        A(2 * (i * dim + j) + 1, col) = M(i, j).imag();
      }
  };
  for (std::size_t k = 0; k < basis.size(); ++k) put(basis[k], long(k));
  put(Eigen::MatrixXcd::Identity(dim, dim), cols - 1);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) {
      b(2 * (i * dim + j)) = T(i, j).real();
      b(2 * (i * dim + j) + 1) = T(i, j).imag();
    }
  Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);
  if (coeffs) *coeffs = x;
  return (A * x - b).norm();
}

std::vector<Eigen::MatrixXcd> parameter_blocks(const HardwareTemplate& tpl,
                                               const EncodingMap& map) {
  std::vector<Eigen::MatrixXcd> basis;
  CalibrationParams p = zero_params(tpl);
  p.J = 1.0;
  basis.push_back(template_block(tpl, p, map));
  p.J = 0.0;
  p.U = 1.0;
  basis.push_back(template_block(tpl, p, map));
  p.U = 0.0;
  for (std::size_t j = 0; j < tpl.sites; ++j) {
    p.eps[j] = 1.0;
    basis.push_back(template_block(tpl, p, map));
    p.eps[j] = 0.0;
  }
  return basis;
}

}  // namespace

TEST_CASE("chain instantiation: hopping block, on-site energies, offsets") {
  // hopping only: the one-particle sector is a 2x2 with eigenvalues -J, +J
  HardwareTemplate two{2, 2};
  CalibrationParams p = zero_params(two);
  p.J = 1.0;
  Eigen::MatrixXcd H = hamiltonian_matrix(instantiate_template(two, p));
  REQUIRE(H.rows() == 4);
  CHECK(std::abs(H(2, 1) - cxd(-1.0, 0.0)) < 1e-14);  // (0,1) -> (1,0)
  Eigen::Matrix2cd onep;
  onep << H(1, 1), H(1, 2), H(2, 1), H(2, 2);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(onep);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(1) == doctest::Approx(1.0));

  // on-site interaction: diag U/2 * n(n-1) over occupations 0,1,2
  HardwareTemplate one3{1, 3};
  CalibrationParams q = zero_params(one3);
  q.U = 2.0;
  Eigen::MatrixXcd D = hamiltonian_matrix(instantiate_template(one3, q));
  CHECK(std::abs(D(0, 0)) < 1e-14);
  CHECK(std::abs(D(1, 1)) < 1e-14);
  CHECK(std::abs(D(2, 2) - cxd(2.0, 0.0)) < 1e-14);

  // offsets: site-1 occupation costs 5
  CalibrationParams r = zero_params(two);
  r.eps = {0.0, 5.0};
  Eigen::MatrixXcd E = hamiltonian_matrix(instantiate_template(two, r));
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(E(i, i) - cxd(i % 2 ? 5.0 : 0.0, 0.0)) < 1e-14);

  CHECK(hermiticity_check(instantiate_template(two, p)).pass);
}

TEST_CASE("chain instantiation rejects out-of-bounds parameters") {
  HardwareTemplate tpl{2, 2};
  CalibrationParams p = zero_params(tpl);
  p.J = -0.5;
  CHECK_THROWS_AS((void)instantiate_template(tpl, p), Error);
  p.J = 0.0;
  p.U = -1.0;
  CHECK_THROWS_AS((void)instantiate_template(tpl, p), Error);
  p.U = 0.0;
  p.eps = {1.0};  // wrong arity
  CHECK_THROWS_AS((void)instantiate_template(tpl, p), Error);
  CHECK_THROWS_AS((void)instantiate_template(HardwareTemplate{2, 1},
                                             zero_params(HardwareTemplate{2, 1})),
                  Error);
}

TEST_CASE("subspace projector: identity at hard-core, rank drop above") {
  HardwareTemplate hard{2, 2};
  EncodingMap map2 = identity_encoding(2, 2);
  Eigen::MatrixXcd P2 = subspace_projector(map2, hard);
  CHECK((P2 - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  HardwareTemplate soft{1, 3};
  Eigen::MatrixXcd P3 = subspace_projector(identity_encoding(1, 3), soft);
  REQUIRE(P3.rows() == 3);
  CHECK(P3(0, 0) == cxd(1, 0));
  CHECK(P3(1, 1) == cxd(1, 0));
  CHECK(P3(2, 2) == cxd(0, 0));

  for (std::size_t L : {1, 2, 3}) {
    HardwareTemplate tpl{L, 3};
    Eigen::MatrixXcd P = subspace_projector(identity_encoding(L, 3), tpl);
    CHECK((P * P - P).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((P - P.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(P.trace().real() - double(1 << L)) < 1e-12);
  }

  // cutoff disagreement between map and template
  CHECK_THROWS_AS((void)subspace_projector(identity_encoding(2, 3), hard),
                  Error);
}

TEST_CASE("projected block uses the qubit ordering of the map") {
  HardwareTemplate tpl{2, 3};
  EncodingMap map = identity_encoding(2, 3);
  CalibrationParams p = zero_params(tpl);
  p.J = 0.7;
  Eigen::MatrixXcd B = template_block(tpl, p, map);
  REQUIRE(B.rows() == 4);
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(4, 4);
  want(1, 2) = want(2, 1) = -0.7;  // single particle hops between the sites
  CHECK((B - want).cwiseAbs().maxCoeff() < 1e-14);

  // the doubly occupied state only couples out of the subspace, and the
  // interaction term vanishes identically on occupations {0, 1}
  p.U = 5.0;
  Eigen::MatrixXcd BU = template_block(tpl, p, map);
  CHECK((BU - want).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("calibration recovers parameters drawn from the chain family") {
  HardwareTemplate tpl{2, 2};
  EncodingMap map = identity_encoding(2, 2);
  CalibrationParams truth = zero_params(tpl);
  truth.J = 0.7;
  truth.U = 3.0;  // invisible on the hard-core block
  truth.eps = {0.3, -0.2};
  QubitHamiltonian target = pauli_expand(template_block(tpl, truth, map));

  CalibrationParams init = zero_params(tpl);
  init.J = 1.0;
  init.U = 1.0;
  CalibrationResult res = calibrate(target, tpl, map, init, 11);
  CHECK(res.converged);
  CHECK(res.residual < 1e-8);
  CHECK(std::abs(res.params.J - 0.7) < 1e-6);
  CHECK(std::abs(res.params.eps[0] - 0.3) < 1e-6);
  CHECK(std::abs(res.params.eps[1] + 0.2) < 1e-6);
  CHECK(res.iterations <= 10000);

  // accepted objective values never increase
  for (std::size_t i = 1; i < res.accepted.size(); ++i)
    CHECK(res.accepted[i] <= res.accepted[i - 1]);
}

TEST_CASE("a pure Z field maps to an opposite-sign detuning") {
  double omega = 1.3;
  QubitHamiltonian target;
  target.qubits = 1;
  target.strings = {{"Z", omega / 2}};
  HardwareTemplate tpl{1, 2};
  EncodingMap map = identity_encoding(1, 2);
  CalibrationResult res = calibrate(target, tpl, map, zero_params(tpl), 3);
  CHECK(res.converged);
  CHECK(res.residual < 1e-8);
  CHECK(std::abs(res.params.eps[0] + omega) < 1e-6);

  // evolved states match the target evolution up to the recorded shift
  Eigen::MatrixXcd T = qubit_matrix(target);
  Eigen::VectorXcd psi0 = hsim_test::random_unit_vector(2, 99);
  for (double t : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    AnalogueEvolution got = analogue_evolve(tpl, res.params, map, psi0, t);
    CHECK(got.leakage < 1e-12);
    Eigen::VectorXcd want = evolve_exact(T, psi0, t);
    CAPTURE(t);
    CHECK(fidelity(got.state, want) >= 0.999);
  }
}

TEST_CASE("a target outside the reachable family degrades gracefully") {
  QubitHamiltonian target;
  target.qubits = 1;
  target.strings = {{"Y", 1.0}};
  HardwareTemplate tpl{1, 2};
  CalibrationResult res =
      calibrate(target, tpl, identity_encoding(1, 2), zero_params(tpl), 5);
  CHECK_FALSE(res.converged);
  // best reachable distance to a diagonal-plus-shift family is |Y| off-diag
  CHECK(std::abs(res.residual - std::sqrt(2.0)) < 1e-6);
}

TEST_CASE("residual agrees with the closed-form least-squares optimum") {
  HardwareTemplate tpl{2, 2};
  EncodingMap map = identity_encoding(2, 2);
  CalibrationParams truth = zero_params(tpl);
  truth.J = 0.8;
  truth.eps = {0.4, -0.6};
  Eigen::MatrixXcd M = template_block(tpl, truth, map) +
                       0.05 * hsim_test::random_hermitian(4, 314);
  QubitHamiltonian target = pauli_expand(M);

  CalibrationResult res =
      calibrate(target, tpl, map, zero_params(tpl), 17);
  Eigen::VectorXd coeffs;
  double best = lsq_residual(parameter_blocks(tpl, map), qubit_matrix(target),
                             &coeffs);
  CHECK(coeffs(0) > 0.0);  // hopping optimum stays inside the J >= 0 bound
  CHECK(res.residual >= best - 1e-9);
  CHECK(res.residual - best < 1e-6);

  // adding a uniform energy shift to the target changes nothing but lambda
  QubitHamiltonian shifted = target;
  shifted.strings.emplace_back("II", 0.37);
  std::sort(shifted.strings.begin(), shifted.strings.end());
  CalibrationResult res2 =
      calibrate(shifted, tpl, map, zero_params(tpl), 17);
  CHECK(std::abs(res2.residual - res.residual) < 1e-9);
  CHECK(std::abs(res2.params.J - res.params.J) < 1e-5);
  CHECK(std::abs(res2.params.eps[0] - res.params.eps[0]) < 1e-5);
  CHECK(std::abs(res2.params.eps[1] - res.params.eps[1]) < 1e-5);
}

TEST_CASE("calibration is reproducible bit for bit under a fixed seed") {
  QubitHamiltonian target;
  target.qubits = 1;
  target.strings = {{"X", 0.4}, {"Z", 0.9}};
  HardwareTemplate tpl{1, 2};
  EncodingMap map = identity_encoding(1, 2);
  CalibrationResult a = calibrate(target, tpl, map, zero_params(tpl), 123);
  CalibrationResult b = calibrate(target, tpl, map, zero_params(tpl), 123);
  CHECK(a.residual == b.residual);
  CHECK(a.params.J == b.params.J);
  CHECK(a.params.U == b.params.U);
  CHECK(a.params.eps == b.params.eps);
  CHECK(a.iterations == b.iterations);
  CHECK(a.accepted == b.accepted);
  CHECK(a.seed == 123);
}

TEST_CASE("leakage follows the two-level exchange with the doubly occupied pair") {
  // |11> couples only to (|20>+|02>)/sqrt(2) with strength 2J, so the
  // out-of-subspace probability is sin^2(2Jt)
  HardwareTemplate tpl{2, 3};
  EncodingMap map = identity_encoding(2, 3);
  CalibrationParams p = zero_params(tpl);
  p.J = 1.0;
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(4);
  psi0(3) = 1.0;

  AnalogueEvolution still = analogue_evolve(tpl, p, map, psi0, 0.0);
  CHECK(still.leakage < 1e-12);
  CHECK(fidelity(still.state, psi0) > 1.0 - 1e-12);

  AnalogueEvolution gentle = analogue_evolve(tpl, p, map, psi0, 0.1);
  CHECK(std::abs(gentle.leakage - std::pow(std::sin(0.2), 2)) < 1e-9);
  CHECK(std::abs(gentle.state.norm() - 1.0) < 1e-12);

  CHECK_THROWS_WITH_AS((void)analogue_evolve(tpl, p, map, psi0, 0.7),
                       doctest::Contains("abandoned"), Error);

  // hard-core chains cannot leak at all
  HardwareTemplate hard{2, 2};
  AnalogueEvolution safe = analogue_evolve(hard, zero_params(hard),
                                           identity_encoding(2, 2), psi0, 0.7);
  CHECK(safe.leakage == 0.0);
}

TEST_CASE("evolution input validation") {
  HardwareTemplate tpl{1, 2};
  EncodingMap map = identity_encoding(1, 2);
  Eigen::VectorXcd bad_dim = Eigen::VectorXcd::Zero(4);
  bad_dim(0) = 1.0;
  CHECK_THROWS_AS(
      (void)analogue_evolve(tpl, zero_params(tpl), map, bad_dim, 1.0), Error);
  Eigen::VectorXcd unnorm = Eigen::VectorXcd::Zero(2);
  unnorm(0) = 2.0;
  CHECK_THROWS_AS(
      (void)analogue_evolve(tpl, zero_params(tpl), map, unnorm, 1.0), Error);
  CHECK_THROWS_AS((void)calibrate(QubitHamiltonian{2, {{"ZZ", 1.0}}}, tpl, map,
                                  zero_params(tpl)),
                  Error);
  CHECK_THROWS_AS((void)identity_encoding(0, 2), Error);
}

TEST_CASE("calibration report serializes with stable field order") {
  CalibrationResult r;
  r.params.J = 1.5;
  r.params.U = 0.0;
  r.params.eps = {-2.0};
  r.residual = 0.25;
  r.iterations = 42;
  r.converged = true;
  r.seed = 7;
  CHECK(calibration_to_json(r) ==
        "{\n"
        "  \"converged\": true,\n"
        "  \"iterations\": 42,\n"
        "  \"params\": {\n"
        "    \"J\": 1.5,\n"
        "    \"U\": 0.0,\n"
        "    \"eps\": [\n"
        "      -2.0\n"
        "    ]\n"
        "  },\n"
        "  \"residual\": 0.25,\n"
        "  \"seed\": 7\n"
        "}\n");
}
