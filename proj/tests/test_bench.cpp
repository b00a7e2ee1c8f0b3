#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsim/bench.hpp"
#include "hsim/exact.hpp"
#include "hsim/model.hpp"
#include "test_support.hpp"

using namespace hsim;

namespace {

Model load_model(const char* name) {
  std::string path = std::string(HSIM_MODELS_DIR) + "/" + name;
  ParseResult got = parse_model(read_text_file(path));
  REQUIRE(got.ok());
  return *got.model;
}

QubitHamiltonian xz_single() {
  return QubitHamiltonian{1, {{"X", 1.0}, {"Z", 1.0}}};
}

}  // namespace

TEST_CASE("seeded initial states are normalized and reproducible") {
  Eigen::VectorXcd a = random_state(8, 42);
  Eigen::VectorXcd b = random_state(8, 42);
  Eigen::VectorXcd c = random_state(8, 43);
  CHECK(std::abs(a.norm() - 1.0) < 1e-12);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a - c).cwiseAbs().maxCoeff() > 1e-3);
  CHECK_THROWS_AS((void)random_state(0, 1), Error);
}

TEST_CASE("model reduction binds declared defaults") {
  QubitHamiltonian hq = model_to_qubits(load_model("xz_chain.hml"));
  CHECK(hq.qubits == 4);
  CHECK(hq.strings.size() == 6);
}

TEST_CASE("error scaling slope and bootstrap interval on a one-qubit field") {
  ScalingResult r = trotter_scaling_experiment(
      xz_single(), 1.0, {2, 4, 8, 16, 32, 64, 128, 256}, 1, 2026);
  REQUIRE(r.rows.size() == 8);
  CHECK_FALSE(r.exact);
  CHECK(r.slope > -1.15);
  CHECK(r.slope < -0.85);
  CHECK(r.ci_low <= r.slope + 1e-9);
  CHECK(r.ci_high >= r.slope - 1e-9);
  for (std::size_t i = 1; i < r.rows.size(); ++i)
    CHECK(r.rows[i].error < r.rows[i - 1].error);
}

TEST_CASE("single-term scaling is flagged exact") {
  QubitHamiltonian hq{1, {{"Z", 0.8}}};
  ScalingResult r = trotter_scaling_experiment(hq, 1.0, {1, 2, 4}, 1, 5);
  CHECK(r.exact);
  for (const ScalingRow& row : r.rows) CHECK(row.error < 1e-10);
  CHECK(r.slope == 0.0);
}

TEST_CASE("scaling output is byte-stable and jobs-independent") {
  std::vector<int> ns = {2, 4, 8, 16};
  std::string a =
      scaling_to_json(trotter_scaling_experiment(xz_single(), 1.0, ns, 1, 7, 1));
  std::string b =
      scaling_to_json(trotter_scaling_experiment(xz_single(), 1.0, ns, 1, 7, 1));
  std::string c =
      scaling_to_json(trotter_scaling_experiment(xz_single(), 1.0, ns, 1, 7, 3));
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("scaling CSV format is frozen") {
  ScalingResult r;
  r.rows = {{2, 0.5}, {4, 0.25}};
  CHECK(scaling_to_csv(r) == "n,operator_error\n2,0.5\n4,0.25\n");
}

TEST_CASE("conserved charges hold still under exact evolution") {
  Model model = load_model("schwinger_l2.hml");
  DriftResult r =
      gauss_drift_experiment(model, {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}, 0, 1, 11);
  REQUIRE(r.times.size() == 6);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    for (double dev : r.deviations[k]) CHECK(dev < 1e-10);
    CHECK(r.commutator_max[k] < 1e-10);
  }
}

TEST_CASE("compiled circuits conserve the charges exactly") {
  // The words of each hopping bond mutually commute, so one slice multiplies
  // out to the exponential of the grouped bond term — which commutes with the
  // charges — times diagonal rotations.  Slicing therefore never breaks the
  // charges on this model; deviations sit at rounding noise at any n.
  Model model = load_model("schwinger_l2.hml");
  for (int steps : {5, 25}) {
    DriftResult r = gauss_drift_experiment(model, {2.5, 5.0}, steps, 1, 11);
    for (const auto& row : r.deviations)
      for (double dev : row) CHECK(dev < 1e-10);
  }

  DriftResult frozen = gauss_drift_experiment(model, {0.0}, 0, 1, 11);
  for (double dev : frozen.deviations[0]) CHECK(dev < 1e-12);
}

TEST_CASE("models without charge metadata are rejected for drift runs") {
  CHECK_THROWS_AS(
      (void)gauss_drift_experiment(load_model("xz_single.hml"), {1.0}, 0, 1, 1),
      Error);
}

TEST_CASE("more slices win the strategy ranking on a one-qubit field") {
  std::vector<Strategy> strategies = {digital_strategy(1), digital_strategy(64)};
  CompareReport rep =
      strategy_compare("xz", xz_single(), strategies, {0.5, 1.0}, 3);
  REQUIRE(rep.strategies.size() == 2);
  REQUIRE(rep.strategies[0].ok);
  REQUIRE(rep.strategies[1].ok);
  for (const StrategyReport& s : rep.strategies)
    for (double f : s.fidelities) {
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
    }
  CHECK(rep.strategies[1].fidelities.back() >=
        rep.strategies[0].fidelities.back());
  REQUIRE(rep.ranking.size() == 2);
  CHECK(rep.ranking[0] == 1);
  CHECK(rep.strategies[1].gates > rep.strategies[0].gates);
}

TEST_CASE("an analogue run on a reachable target is near perfect") {
  HardwareTemplate tpl{2, 2};
  CalibrationParams truth = zero_params(tpl);
  truth.J = 0.6;
  truth.eps = {0.5, -0.1};
  QubitHamiltonian target = hsim_test::pauli_expand(
      template_block(tpl, truth, identity_encoding(2, 2)));
  CompareReport rep = strategy_compare("chain", target, {analogue_strategy()},
                                       {0.5, 1.0, 1.5, 2.0}, 21);
  REQUIRE(rep.strategies.size() == 1);
  REQUIRE(rep.strategies[0].ok);
  CHECK(rep.strategies[0].residual < 1e-6);
  for (double f : rep.strategies[0].fidelities) CHECK(f >= 0.999);
  CHECK(rep.strategies[0].parameters == 4);
}

TEST_CASE("hybrid endpoints coincide with the pure strategies") {
  QubitHamiltonian hq = xz_single();
  std::vector<Strategy> strategies = {
      digital_strategy(8),
      hybrid_strategy(8, {}),        // everything digital
      analogue_strategy(),
      hybrid_strategy(8, {0, 1}),    // everything analogue
  };
  CompareReport rep =
      strategy_compare("xz", hq, strategies, {0.4, 0.8, 1.2}, 17);
  for (const StrategyReport& s : rep.strategies) {
    CAPTURE(s.name);
    CAPTURE(s.error);
    REQUIRE(s.ok);
  }
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(rep.strategies[1].fidelities[k] -
                   rep.strategies[0].fidelities[k]) < 1e-12);
    CHECK(std::abs(rep.strategies[3].fidelities[k] -
                   rep.strategies[2].fidelities[k]) < 1e-12);
  }
  // the all-digital hybrid reports the same gate counts as pure digital
  CHECK(rep.strategies[1].gates == rep.strategies[0].gates);
  CHECK(rep.strategies[1].depth == rep.strategies[0].depth);
  // and the all-analogue hybrid carries the same calibration residual
  CHECK(rep.strategies[3].residual == rep.strategies[2].residual);
}

TEST_CASE("one failing strategy does not poison the rest") {
  QubitHamiltonian hq = xz_single();
  Strategy bad_partition = hybrid_strategy(4, {5});
  Strategy bad_template = analogue_strategy(HardwareTemplate{3, 2});
  CompareReport rep = strategy_compare(
      "xz", hq, {digital_strategy(4), bad_partition, bad_template}, {1.0}, 1);
  REQUIRE(rep.strategies.size() == 3);
  CHECK(rep.strategies[0].ok);
  CHECK_FALSE(rep.strategies[1].ok);
  CHECK(rep.strategies[1].error.find("partition") != std::string::npos);
  CHECK_FALSE(rep.strategies[2].ok);
  CHECK(rep.strategies[2].error.find("match") != std::string::npos);
  REQUIRE(rep.ranking.size() == 1);
  CHECK(rep.ranking[0] == 0);

  CompareReport empty = strategy_compare("xz", hq, {}, {1.0}, 1);
  CHECK(empty.strategies.empty());
  CHECK(empty.ranking.empty());
}

TEST_CASE("comparison reports are byte-stable and jobs-independent") {
  QubitHamiltonian hq = xz_single();
  std::vector<Strategy> strategies = {digital_strategy(4), analogue_strategy(),
                                      hybrid_strategy(4, {1})};
  std::string a =
      compare_to_json(strategy_compare("xz", hq, strategies, {0.5, 1.0}, 9, 1));
  std::string b =
      compare_to_json(strategy_compare("xz", hq, strategies, {0.5, 1.0}, 9, 1));
  std::string c =
      compare_to_json(strategy_compare("xz", hq, strategies, {0.5, 1.0}, 9, 3));
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("comparison JSON layout is frozen") {
  CompareReport rep;
  rep.model = "toy";
  rep.seed = 9;
  StrategyReport s;
  s.name = "digital n=4 order=1";
  s.ok = true;
  s.times = {0.5, 1.0};
  s.fidelities = {1.0, 0.5};
  s.gates = 4;
  s.two_qubit = 1;
  s.rz = 2;
  s.depth = 3;
  rep.strategies.push_back(s);
  rep.ranking = {0};
  CHECK(compare_to_json(rep) ==
        "{\n"
        "  \"model\": \"toy\",\n"
        "  \"ranking\": [\n"
        "    \"digital n=4 order=1\"\n"
        "  ],\n"
        "  \"seed\": 9,\n"
        "  \"strategies\": [\n"
        "    {\n"
        "      \"depth\": 3,\n"
        "      \"error\": \"\",\n"
        "      \"fidelities\": [\n"
        "        1.0,\n"
        "        0.5\n"
        "      ],\n"
        "      \"gates\": 4,\n"
        "      \"name\": \"digital n=4 order=1\",\n"
        "      \"ok\": true,\n"
        "      \"parameters\": 0,\n"
        "      \"residual\": 0.0,\n"
        "      \"rz\": 2,\n"
        "      \"times\": [\n"
        "        0.5,\n"
        "        1.0\n"
        "      ],\n"
        "      \"two_qubit\": 1\n"
        "    }\n"
        "  ]\n"
        "}\n");
}

TEST_CASE("bad grids are rejected up front") {
  QubitHamiltonian hq = xz_single();
  CHECK_THROWS_AS((void)strategy_compare("xz", hq, {digital_strategy(1)}, {},
                                         1),
                  Error);
  CHECK_THROWS_AS(
      (void)strategy_compare("xz", hq, {digital_strategy(1)}, {1.0, 1.0}, 1),
      Error);
  CHECK_THROWS_AS(
      (void)strategy_compare("xz", hq, {digital_strategy(1)}, {-1.0, 1.0}, 1),
      Error);
}
