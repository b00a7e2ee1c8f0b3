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

#include "hsim/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <random>
#include <thread>

#include "hsim/exact.hpp"
#include "hsim/trotter.hpp"
#include "json.hpp"

namespace hsim {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Runs fn(0..count-1) on up to `jobs` threads.  Items are pure and write only
// their own slot, so the result is identical for every jobs value; the first
// failure by item index wins, matching the sequential behaviour.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  if (jobs < 2 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(count);
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  std::size_t threads = std::min<std::size_t>(std::size_t(jobs), count);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& failure : failures)
    if (failure) std::rethrow_exception(failure);
}

void check_grid(const std::vector<double>& times) {
  if (times.empty()) throw Error("time grid must not be empty");
  if (times.front() < 0.0) throw Error("time grid must start at t >= 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw Error("time grid must be strictly increasing");
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y,
                 bool* degenerate) {
  double xm = 0, ym = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= double(x.size());
  ym /= double(x.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - xm) * (y[i] - ym);
    den += (x[i] - xm) * (x[i] - xm);
  }
  if (degenerate) *degenerate = den < 1e-12;
  return den < 1e-12 ? 0.0 : num / den;
}

}  // namespace

Eigen::VectorXcd random_state(long dim, std::uint64_t seed) {
  if (dim < 1) throw Error("random_state: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd psi(dim);
  for (long i = 0; i < dim; ++i) {
    double re = gauss(rng);
    double im = gauss(rng);
    psi(i) = cxd(re, im);
  }
  psi /= psi.norm();
  return psi;
}

QubitHamiltonian model_to_qubits(const Model& model) {
  Hamiltonian bound = model.hamiltonian.bind_defaults();
  if (!bound.fully_bound())
    throw Error("model has parameters without default values");
  return encode_to_qubits(bound);
}

// ---------------------------------------------------------------------------

ScalingResult trotter_scaling_experiment(const QubitHamiltonian& hq, double t,
                                         const std::vector<int>& slice_counts,
                                         int order, std::uint64_t seed,
                                         int jobs) {
  if (slice_counts.empty()) throw Error("scaling: need at least one slice count");
  for (int n : slice_counts)
    if (n < 1) throw Error("scaling: slice counts must be >= 1");

  const Eigen::MatrixXcd exact = evolution_operator(qubit_matrix(hq), t);
  ScalingResult out;
  out.rows.resize(slice_counts.size());
  parallel_for(slice_counts.size(), jobs, [&](std::size_t i) {
    TrotterPlan plan;
    plan.t = t;
    plan.steps = slice_counts[i];
    plan.order = order;
    Eigen::MatrixXcd u = circuit_unitary(trotterize(hq, plan));
    out.rows[i] = ScalingRow{slice_counts[i], operator_error(u, exact)};
  });

  out.exact = true;
  for (const ScalingRow& row : out.rows)
    if (row.error >= 1e-10) out.exact = false;
  if (out.exact || out.rows.size() < 2) return out;

  std::vector<double> lx, ly;
  for (const ScalingRow& row : out.rows) {
    lx.push_back(std::log(double(row.n)));
    ly.push_back(std::log(std::max(row.error, 1e-300)));
  }
  out.slope = lsq_slope(lx, ly, nullptr);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, out.rows.size() - 1);
  std::vector<double> slopes;
  slopes.reserve(200);
  for (int b = 0; b < 200; ++b) {
    std::vector<double> bx, by;
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
      std::size_t j = pick(rng);
      bx.push_back(lx[j]);
      by.push_back(ly[j]);
    }
    bool degenerate = false;
    double s = lsq_slope(bx, by, &degenerate);
    slopes.push_back(degenerate ? out.slope : s);
  }
  std::sort(slopes.begin(), slopes.end());
  out.ci_low = slopes[4];    // 2.5th percentile of 200
  out.ci_high = slopes[194]; // 97.5th percentile
  return out;
}

std::string scaling_to_csv(const ScalingResult& r) {
  std::string out = "n,operator_error\n";
  for (const ScalingRow& row : r.rows)
    out += std::to_string(row.n) + "," + fmt_double(row.error) + "\n";
  return out;
}

std::string scaling_to_json(const ScalingResult& r) {
  nlohmann::json j;
  j["exact"] = r.exact;
  j["slope"] = r.slope;
  j["ci_low"] = r.ci_low;
  j["ci_high"] = r.ci_high;
  j["rows"] = nlohmann::json::array();
  for (const ScalingRow& row : r.rows)
    j["rows"].push_back({row.n, row.error});
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

DriftResult gauss_drift_experiment(const Model& model,
                                   const std::vector<double>& times, int steps,
                                   int order, std::uint64_t seed) {
  check_grid(times);
  if (steps < 0) throw Error("drift: slice count must be >= 0");
  std::vector<GaussOperator> charges = parse_gauss_operators(model);
  if (charges.empty()) throw Error("model declares no conserved charges");

  QubitHamiltonian hq = model_to_qubits(model);
  const Eigen::MatrixXcd H = qubit_matrix(hq);
  std::vector<Eigen::MatrixXcd> G, comm;
  for (const GaussOperator& charge : charges) {
    Eigen::MatrixXcd g = qubit_matrix(encode_to_qubits(charge.op.bind_defaults()));
    G.push_back(g);
    comm.push_back(H * g - g * H);
  }

  const Eigen::VectorXcd psi0 = random_state(H.rows(), seed);
  std::vector<double> refs;
  for (const Eigen::MatrixXcd& g : G) refs.push_back(expectation(g, psi0));

  DriftResult out;
  out.times = times;
  out.deviations.resize(times.size());
  out.commutator_max.resize(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    Eigen::VectorXcd psi;
    if (steps == 0) {
      psi = evolve_exact(H, psi0, times[k]);
    } else {
      TrotterPlan plan;
      plan.t = times[k];
      plan.steps = steps;
      plan.order = order;
      psi = apply_circuit(trotterize(hq, plan), psi0);
    }
    double worst = 0.0;
    for (std::size_t l = 0; l < G.size(); ++l) {
      out.deviations[k].push_back(std::abs(expectation(G[l], psi) - refs[l]));
      worst = std::max(worst, std::abs(psi.dot(comm[l] * psi)));
    }
    out.commutator_max[k] = worst;
  }
  return out;
}

std::string drift_to_csv(const DriftResult& r) {
  std::string out = "t,charge,deviation,commutator_max\n";
  for (std::size_t k = 0; k < r.times.size(); ++k)
    for (std::size_t l = 0; l < r.deviations[k].size(); ++l)
      out += fmt_double(r.times[k]) + "," + std::to_string(l) + "," +
             fmt_double(r.deviations[k][l]) + "," +
             fmt_double(r.commutator_max[k]) + "\n";
  return out;
}

std::string drift_to_json(const DriftResult& r) {
  nlohmann::json j;
  j["times"] = r.times;
  j["deviations"] = r.deviations;
  j["commutator_max"] = r.commutator_max;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

Strategy digital_strategy(int steps, int order) {
  Strategy s;
  s.kind = Strategy::Kind::Digital;
  s.steps = steps;
  s.order = order;
  s.name = "digital n=" + std::to_string(steps) + " order=" + std::to_string(order);
  return s;
}

Strategy analogue_strategy(HardwareTemplate tpl) {
  Strategy s;
  s.kind = Strategy::Kind::Analogue;
  s.tpl = tpl;
  s.name = "analogue d=" + std::to_string(tpl.cutoff);
  return s;
}

Strategy hybrid_strategy(int steps, std::vector<std::size_t> analogue_terms,
                         HardwareTemplate tpl) {
  Strategy s;
  s.kind = Strategy::Kind::Hybrid;
  s.steps = steps;
  s.tpl = tpl;
  s.analogue_terms = std::move(analogue_terms);
  s.name = "hybrid n=" + std::to_string(steps) + " |analogue|=" +
           std::to_string(s.analogue_terms.size());
  return s;
}

namespace {

// Calibration residual of explicitly supplied parameters, so reports carry a
// meaningful number either way.
double residual_at(const QubitHamiltonian& target, const HardwareTemplate& tpl,
                   const EncodingMap& map, const CalibrationParams& params) {
  Eigen::MatrixXcd D = template_block(tpl, params, map) - qubit_matrix(target);
  double lambda = D.trace().real() / double(D.rows());
  D.diagonal().array() -= lambda;
  return D.norm();
}

struct AnalogueSetup {
  HardwareTemplate tpl;
  EncodingMap map;
  CalibrationParams params;
  double residual = 0.0;
};

AnalogueSetup prepare_analogue(const QubitHamiltonian& target,
                               const Strategy& s, std::uint64_t seed) {
  AnalogueSetup setup;
  setup.tpl = s.tpl;
  if (setup.tpl.sites == 0) setup.tpl.sites = target.qubits;  // match model
  if (setup.tpl.sites != target.qubits)
    throw Error("analogue template does not match the qubit count");
  setup.map = identity_encoding(setup.tpl.sites, setup.tpl.cutoff);
  if (s.params.eps.empty()) {
    CalibrationResult cal =
        calibrate(target, setup.tpl, setup.map, zero_params(setup.tpl), seed);
    setup.params = cal.params;
    setup.residual = cal.residual;
  } else {
    setup.params = s.params;
    setup.residual = residual_at(target, setup.tpl, setup.map, setup.params);
  }
  return setup;
}

StrategyReport run_strategy(const QubitHamiltonian& hq, const Strategy& s,
                            const std::vector<double>& times,
                            const std::vector<Eigen::VectorXcd>& oracle,
                            const Eigen::VectorXcd& psi0, std::uint64_t seed) {
  StrategyReport rep;
  rep.name = s.name;
  rep.times = times;

  switch (s.kind) {
    case Strategy::Kind::Digital: {
      for (std::size_t k = 0; k < times.size(); ++k) {
        TrotterPlan plan;
        plan.t = times[k];
        plan.steps = s.steps;
        plan.order = s.order;
        Eigen::VectorXcd psi = apply_circuit(trotterize(hq, plan), psi0);
        rep.fidelities.push_back(fidelity(psi, oracle[k]));
      }
      TrotterPlan full;
      full.t = times.back();
      full.steps = s.steps;
      full.order = s.order;
      ResourceCount rc = resource_count(trotterize(hq, full));
      rep.gates = rc.total;
      rep.two_qubit = rc.two_qubit;
      rep.rz = rc.rz;
      rep.depth = rc.depth;
      break;
    }
    case Strategy::Kind::Analogue: {
      AnalogueSetup setup = prepare_analogue(hq, s, seed);
      for (std::size_t k = 0; k < times.size(); ++k) {
        AnalogueEvolution ev =
            analogue_evolve(setup.tpl, setup.params, setup.map, psi0, times[k]);
        rep.fidelities.push_back(fidelity(ev.state, oracle[k]));
      }
      rep.parameters = 2 + long(setup.tpl.sites);
      rep.residual = setup.residual;
      break;
    }
    case Strategy::Kind::Hybrid: {
      std::vector<bool> in_a(hq.strings.size(), false);
      for (std::size_t idx : s.analogue_terms) {
        if (idx >= hq.strings.size() || in_a[idx])
          throw Error("hybrid partition is not a subset of the term list");
        in_a[idx] = true;
      }
      QubitHamiltonian part_a{hq.qubits, {}}, part_d{hq.qubits, {}};
      for (std::size_t i = 0; i < hq.strings.size(); ++i)
        (in_a[i] ? part_a : part_d).strings.push_back(hq.strings[i]);
      if (s.steps < 1) throw Error("hybrid slice count must be >= 1");

      Eigen::MatrixXcd block;
      AnalogueSetup setup;
      if (!part_a.strings.empty()) {
        setup = prepare_analogue(part_a, s, seed);
        block = template_block(setup.tpl, setup.params, setup.map);
        rep.parameters = 2 + long(setup.tpl.sites);
        rep.residual = setup.residual;
      }

      for (std::size_t k = 0; k < times.size(); ++k) {
        double dt = times[k] / s.steps;
        Eigen::MatrixXcd ua;
        Circuit cd;
        if (!part_a.strings.empty()) ua = evolution_operator(block, dt);
        if (!part_d.strings.empty()) {
          TrotterPlan slice;
          slice.t = dt;
          slice.steps = 1;
          slice.order = 1;
          cd = trotterize(part_d, slice);
        }
        Eigen::VectorXcd psi = psi0;
        for (int step = 0; step < s.steps; ++step) {
          if (!part_a.strings.empty()) psi = ua * psi;
          if (!part_d.strings.empty()) psi = apply_circuit(cd, psi);
        }
        rep.fidelities.push_back(fidelity(psi, oracle[k]));
      }
      if (!part_d.strings.empty()) {
        TrotterPlan full;
        full.t = times.back();
        full.steps = s.steps;
        full.order = 1;
        ResourceCount rc = resource_count(trotterize(part_d, full));
        rep.gates = rc.total;
        rep.two_qubit = rc.two_qubit;
        rep.rz = rc.rz;
        rep.depth = rc.depth;
      }
      break;
    }
  }
  rep.ok = true;
  return rep;
}

}  // namespace

CompareReport strategy_compare(const std::string& model_name,
                               const QubitHamiltonian& hq,
                               const std::vector<Strategy>& strategies,
                               const std::vector<double>& times,
                               std::uint64_t seed, int jobs) {
  check_grid(times);
  if (hq.qubits == 0 || hq.qubits > 20)
    throw Error("strategy comparison needs 1..20 qubits");
  if (hq.strings.empty()) throw Error("strategy comparison needs a nonempty Hamiltonian");

  CompareReport out;
  out.model = model_name;
  out.seed = seed;
  if (strategies.empty()) return out;

  const Eigen::MatrixXcd H = qubit_matrix(hq);
  const Eigen::VectorXcd psi0 = random_state(H.rows(), seed);
  std::vector<Eigen::VectorXcd> oracle;
  for (double t : times) oracle.push_back(evolve_exact(H, psi0, t));

  out.strategies.resize(strategies.size());
  parallel_for(strategies.size(), jobs, [&](std::size_t i) {
    try {
      out.strategies[i] =
          run_strategy(hq, strategies[i], times, oracle, psi0, seed);
    } catch (const std::exception& e) {
      StrategyReport failed;
      failed.name = strategies[i].name;
      failed.ok = false;
      failed.error = e.what();
      out.strategies[i] = std::move(failed);
    }
  });

  for (std::size_t i = 0; i < out.strategies.size(); ++i)
    if (out.strategies[i].ok) out.ranking.push_back(i);
  std::sort(out.ranking.begin(), out.ranking.end(),
            [&](std::size_t a, std::size_t b) {
              const StrategyReport& ra = out.strategies[a];
              const StrategyReport& rb = out.strategies[b];
              double fa = ra.fidelities.back();
              double fb = rb.fidelities.back();
              if (fa != fb) return fa > fb;
              if (ra.two_qubit != rb.two_qubit) return ra.two_qubit < rb.two_qubit;
              if (ra.gates != rb.gates) return ra.gates < rb.gates;
              if (ra.parameters != rb.parameters) return ra.parameters < rb.parameters;
              return a < b;
            });
  return out;
}

std::string compare_to_json(const CompareReport& r) {
  nlohmann::json j;
  j["model"] = r.model;
  j["seed"] = r.seed;
  j["ranking"] = nlohmann::json::array();
  for (std::size_t idx : r.ranking) j["ranking"].push_back(r.strategies[idx].name);
  j["strategies"] = nlohmann::json::array();
  for (const StrategyReport& s : r.strategies) {
    nlohmann::json e;
    e["name"] = s.name;
    e["ok"] = s.ok;
    e["error"] = s.error;
    e["times"] = s.times;
    e["fidelities"] = s.fidelities;
    e["gates"] = s.gates;
    e["two_qubit"] = s.two_qubit;
    e["rz"] = s.rz;
    e["depth"] = s.depth;
    e["parameters"] = s.parameters;
    e["residual"] = s.residual;
    j["strategies"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

}  // namespace hsim
