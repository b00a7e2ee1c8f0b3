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

// Command-line front end.  Exit codes: 0 success, 1 input problems (bad
// flags, unreadable files, model diagnostics), 2 internal failure during a
// run.  All machine-readable output goes to stdout; progress notes and
// wall-clock timing go to stderr so stdout stays byte-reproducible.

#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "CLI11.hpp"
#include "json.hpp"

#include "hsim/analogue.hpp"
#include "hsim/bench.hpp"
#include "hsim/circuit.hpp"
#include "hsim/common.hpp"
#include "hsim/encodings.hpp"
#include "hsim/exact.hpp"
#include "hsim/model.hpp"
#include "hsim/trotter.hpp"

namespace {

// Thrown for problems the user can fix; carries the exit code (always 1).
struct CliFailure {
  std::string message;
};

hsim::Model load_model(const std::string& path, std::size_t dim_cap) {
  std::string text;
  try {
    text = hsim::read_text_file(path);
  } catch (const hsim::Error& e) {
    throw CliFailure{std::string(e.what()) + "\n"};
  }
  hsim::ParseResult parsed = hsim::parse_model(text, dim_cap);
  std::string report;
  for (const hsim::Diagnostic& d : parsed.diagnostics)
    report += path + ": " + hsim::diagnostic_to_string(d) + "\n";
  if (!parsed.ok()) {
    if (report.empty()) report = path + ": invalid model\n";
    throw CliFailure{report};
  }
  bool fatal = false;
  for (const hsim::Diagnostic& d : hsim::validate(*parsed.model)) {
    report += path + ": " + hsim::diagnostic_to_string(d) + "\n";
    fatal = fatal || d.severity == hsim::Diagnostic::Severity::Error;
  }
  if (fatal) throw CliFailure{report};
  if (!report.empty()) std::fputs(report.c_str(), stderr);  // warnings only
  return *parsed.model;
}

// Reduction failures (e.g. parameters without default values) are input
// problems, not run failures.
hsim::QubitHamiltonian reduce_model(const hsim::Model& m) {
  try {
    return hsim::model_to_qubits(m);
  } catch (const hsim::Error& e) {
    throw CliFailure{std::string(e.what()) + "\n"};
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliFailure{"cannot open '" + path + "' for writing\n"};
  out << content;
  if (!out) throw CliFailure{"failed writing '" + path + "'\n"};
}

void emit(const std::string& text) { std::fwrite(text.data(), 1, text.size(), stdout); }

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// "L,d" -> sites/cutoff; sites 0 sizes the chain to the model at run time.
hsim::HardwareTemplate parse_template(const std::string& spec) {
  hsim::HardwareTemplate tpl{0, 2};
  if (spec.empty()) return tpl;
  std::size_t comma = spec.find(',');
  try {
    if (comma == std::string::npos) {
      tpl.cutoff = std::stoi(spec);
    } else {
      tpl.sites = static_cast<std::size_t>(std::stoul(spec.substr(0, comma)));
      tpl.cutoff = std::stoi(spec.substr(comma + 1));
    }
  } catch (const std::exception&) {
    throw CliFailure{"bad template '" + spec + "': expected 'sites,cutoff'\n"};
  }
  if (tpl.cutoff < 2)
    throw CliFailure{"bad template '" + spec + "': cutoff must be >= 2\n"};
  return tpl;
}

// all | none | diag | list of indices / ranges joined with '+', e.g. 0+2-4.
std::vector<std::size_t> parse_terms(const std::string& spec,
                                     const hsim::QubitHamiltonian& hq) {
  std::vector<std::size_t> out;
  if (spec == "all") {
    for (std::size_t i = 0; i < hq.strings.size(); ++i) out.push_back(i);
    return out;
  }
  if (spec == "none") return out;
  if (spec == "diag") {
    for (std::size_t i = 0; i < hq.strings.size(); ++i) {
      const std::string& word = hq.strings[i].first;
      if (word.find_first_not_of("IZ") == std::string::npos) out.push_back(i);
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t next = spec.find('+', pos);
    std::string token = spec.substr(pos, next == std::string::npos
                                             ? std::string::npos
                                             : next - pos);
    try {
      std::size_t dash = token.find('-');
      std::size_t lo, hi;
      if (dash == std::string::npos) {
        lo = hi = std::stoul(token);
      } else {
        lo = std::stoul(token.substr(0, dash));
        hi = std::stoul(token.substr(dash + 1));
      }
      if (lo > hi) throw std::invalid_argument("empty range");
      for (std::size_t i = lo; i <= hi; ++i) out.push_back(i);
    } catch (const std::exception&) {
      throw CliFailure{"bad term selector '" + spec +
                       "': use all, none, diag, or indices like 0+2-4\n"};
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  for (std::size_t i : out)
    if (i >= hq.strings.size())
      throw CliFailure{"term index " + std::to_string(i) +
                       " out of range: the model has " +
                       std::to_string(hq.strings.size()) + " terms\n"};
  return out;
}

// kind[:key=value,...] with kinds digital (n, order), analogue (sites, d)
// and hybrid (n, d, terms).
hsim::Strategy parse_strategy(const std::string& spec,
                              const hsim::QubitHamiltonian& hq) {
  std::size_t colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::vector<std::pair<std::string, std::string>> opts;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t next = rest.find(',', pos);
      std::string item = rest.substr(
          pos, next == std::string::npos ? std::string::npos : next - pos);
      std::size_t eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw CliFailure{"bad strategy option '" + item + "' in '" + spec +
                         "'\n"};
      opts.emplace_back(item.substr(0, eq), item.substr(eq + 1));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
  }
  auto to_int = [&](const std::string& key, const std::string& value) {
    try {
      return std::stoi(value);
    } catch (const std::exception&) {
      throw CliFailure{"bad value for '" + key + "' in '" + spec + "'\n"};
    }
  };
  int n = 1, order = 1, cutoff = 2;
  std::size_t sites = 0;
  std::string terms = "diag";
  for (const auto& [key, value] : opts) {
    if (key == "n") n = to_int(key, value);
    else if (key == "order") order = to_int(key, value);
    else if (key == "d") cutoff = to_int(key, value);
    else if (key == "sites") sites = static_cast<std::size_t>(to_int(key, value));
    else if (key == "terms") terms = value;
    else throw CliFailure{"unknown strategy option '" + key + "' in '" + spec + "'\n"};
  }
  if (n < 1) throw CliFailure{"strategy '" + spec + "': n must be >= 1\n"};
  if (cutoff < 2) throw CliFailure{"strategy '" + spec + "': d must be >= 2\n"};
  if (kind == "digital") {
    if (order != 1 && order != 2)
      throw CliFailure{"strategy '" + spec + "': order must be 1 or 2\n"};
    return hsim::digital_strategy(n, order);
  }
  if (kind == "analogue")
    return hsim::analogue_strategy({sites, cutoff});
  if (kind == "hybrid")
    return hsim::hybrid_strategy(n, parse_terms(terms, hq), {sites, cutoff});
  throw CliFailure{"unknown strategy kind '" + kind +
                   "': use digital, analogue or hybrid\n"};
}

std::vector<hsim::Strategy> parse_strategies(const std::string& list,
                                             const hsim::QubitHamiltonian& hq) {
  std::vector<hsim::Strategy> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t next = list.find(';', pos);
    std::string item = list.substr(
        pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!item.empty()) out.push_back(parse_strategy(item, hq));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

// K evenly spaced points ending at t, excluding zero.
std::vector<double> end_grid(double t, int points) {
  if (t <= 0.0) throw CliFailure{"--time must be positive\n"};
  if (points < 1) throw CliFailure{"--points must be >= 1\n"};
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = t * double(i + 1) / double(points);
  return grid;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-') ? c : '_';
  return out;
}

struct Options {
  std::uint64_t seed = 0;
  std::size_t dim_cap = 4096;
  bool quiet = false;
  int jobs = 1;
};

int run_validate(const Options& opt, const std::string& file) {
  hsim::Model m = load_model(file, opt.dim_cap);
  emit(hsim::print_model(m));
  return 0;
}

int run_compile(const Options& opt, const std::string& file, double t,
                int steps, int order, const std::string& out_path) {
  hsim::Model m = load_model(file, opt.dim_cap);
  hsim::QubitHamiltonian hq = reduce_model(m);
  hsim::Circuit c = hsim::trotterize(hq, hsim::TrotterPlan{t, steps, order, {}});
  std::string text = hsim::export_circuit(c);
  if (out_path.empty())
    emit(text);
  else
    write_file(out_path, text);
  if (!opt.quiet) {
    hsim::ResourceCount rc = hsim::resource_count(c);
    std::fprintf(stderr, "compiled %zu terms to %ld gates (%ld two-qubit, depth %ld)\n",
                 hq.strings.size(), rc.total, rc.two_qubit, rc.depth);
  }
  return 0;
}

int run_simulate(const Options& opt, const std::string& file,
                 const std::string& mode, double t, int steps, int order,
                 int grid_points, const std::string& tpl_spec,
                 const std::string& terms_spec, double leak_bound) {
  hsim::Model m = load_model(file, opt.dim_cap);
  hsim::QubitHamiltonian hq = reduce_model(m);
  const long dim = 1L << hq.qubits;
  Eigen::MatrixXcd H = hsim::qubit_matrix(hq);
  Eigen::VectorXcd psi0 = hsim::random_state(dim, opt.seed);
  std::vector<double> times = end_grid(t, grid_points);

  std::vector<Eigen::VectorXcd> oracle(times.size());
  for (std::size_t k = 0; k < times.size(); ++k)
    oracle[k] = hsim::evolve_exact(H, psi0, times[k]);

  nlohmann::json j;
  j["model"] = m.name;
  j["mode"] = mode;
  j["seed"] = opt.seed;
  j["times"] = times;
  std::vector<double> fidelity, energy;

  auto record = [&](const Eigen::VectorXcd& psi, std::size_t k) {
    fidelity.push_back(hsim::fidelity(oracle[k], psi));
    energy.push_back(hsim::expectation(H, psi));
  };

  if (mode == "exact") {
    for (std::size_t k = 0; k < times.size(); ++k) record(oracle[k], k);
  } else if (mode == "digital") {
    hsim::Circuit final;
    for (std::size_t k = 0; k < times.size(); ++k) {
      hsim::Circuit c =
          hsim::trotterize(hq, hsim::TrotterPlan{times[k], steps, order, {}});
      record(hsim::apply_circuit(c, psi0), k);
      if (k + 1 == times.size()) final = c;
    }
    hsim::ResourceCount rc = hsim::resource_count(final);
    j["resources"] = {{"gates", rc.total},
                      {"two_qubit", rc.two_qubit},
                      {"rz", rc.rz},
                      {"depth", rc.depth}};
  } else if (mode == "analogue") {
    hsim::HardwareTemplate tpl = parse_template(tpl_spec);
    if (tpl.sites == 0) tpl.sites = hq.qubits;
    if (tpl.sites != hq.qubits)
      throw CliFailure{"template has " + std::to_string(tpl.sites) +
                       " sites but the model reduces to " +
                       std::to_string(hq.qubits) + " qubits\n"};
    hsim::EncodingMap map = hsim::identity_encoding(tpl.sites, tpl.cutoff);
    hsim::CalibrationResult cal =
        hsim::calibrate(hq, tpl, map, hsim::zero_params(tpl), opt.seed);
    std::vector<double> leakage;
    for (std::size_t k = 0; k < times.size(); ++k) {
      hsim::AnalogueEvolution ev = hsim::analogue_evolve(
          tpl, cal.params, map, psi0, times[k], leak_bound);
      record(ev.state, k);
      leakage.push_back(ev.leakage);
    }
    j["leakage"] = leakage;
    j["residual"] = cal.residual;
    j["converged"] = cal.converged;
    j["parameters"] = 2 + tpl.sites;
  } else if (mode == "hybrid") {
    hsim::HardwareTemplate tpl = parse_template(tpl_spec);
    if (tpl.sites == 0) tpl.sites = hq.qubits;
    if (tpl.sites != hq.qubits)
      throw CliFailure{"template has " + std::to_string(tpl.sites) +
                       " sites but the model reduces to " +
                       std::to_string(hq.qubits) + " qubits\n"};
    std::vector<std::size_t> analogue_terms = parse_terms(terms_spec, hq);
    std::vector<char> is_analogue(hq.strings.size(), 0);
    for (std::size_t i : analogue_terms) is_analogue[i] = 1;
    hsim::QubitHamiltonian part_a{hq.qubits, {}}, part_d{hq.qubits, {}};
    for (std::size_t i = 0; i < hq.strings.size(); ++i)
      (is_analogue[i] ? part_a : part_d).strings.push_back(hq.strings[i]);

    hsim::EncodingMap map = hsim::identity_encoding(tpl.sites, tpl.cutoff);
    double residual = 0.0;
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(dim, dim);
    if (!part_a.strings.empty()) {
      hsim::CalibrationResult cal =
          hsim::calibrate(part_a, tpl, map, hsim::zero_params(tpl), opt.seed);
      residual = cal.residual;
      block = hsim::template_block(tpl, cal.params, map);
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
      double dt = times[k] / steps;
      Eigen::MatrixXcd ua;
      if (!part_a.strings.empty()) ua = hsim::evolution_operator(block, dt);
      hsim::Circuit cd;
      if (!part_d.strings.empty())
        cd = hsim::trotterize(part_d, hsim::TrotterPlan{dt, 1, 1, {}});
      Eigen::VectorXcd psi = psi0;
      for (int s = 0; s < steps; ++s) {
        if (!part_a.strings.empty()) psi = ua * psi;
        if (!part_d.strings.empty()) psi = hsim::apply_circuit(cd, psi);
      }
      record(psi, k);
    }
    hsim::ResourceCount rc{};
    if (!part_d.strings.empty())
      rc = hsim::resource_count(
          hsim::trotterize(part_d, hsim::TrotterPlan{t, steps, 1, {}}));
    j["resources"] = {{"gates", rc.total},
                      {"two_qubit", rc.two_qubit},
                      {"rz", rc.rz},
                      {"depth", rc.depth}};
    j["residual"] = residual;
    j["parameters"] = part_a.strings.empty() ? 0 : long(2 + tpl.sites);
    j["analogue_terms"] = analogue_terms;
  } else {
    throw CliFailure{"unknown mode '" + mode +
                     "': use exact, digital, analogue or hybrid\n"};
  }

  j["fidelity"] = fidelity;
  j["energy"] = energy;
  emit(j.dump(2) + "\n");
  return 0;
}

int run_calibrate(const Options& opt, const std::string& file,
                  const std::string& tpl_spec, const std::string& out_path) {
  hsim::Model m = load_model(file, opt.dim_cap);
  hsim::QubitHamiltonian hq = reduce_model(m);
  hsim::HardwareTemplate tpl = parse_template(tpl_spec);
  if (tpl.sites == 0) tpl.sites = hq.qubits;
  if (tpl.sites != hq.qubits)
    throw CliFailure{"template has " + std::to_string(tpl.sites) +
                     " sites but the target reduces to " +
                     std::to_string(hq.qubits) + " qubits\n"};
  hsim::EncodingMap map = hsim::identity_encoding(tpl.sites, tpl.cutoff);
  hsim::CalibrationResult cal =
      hsim::calibrate(hq, tpl, map, hsim::zero_params(tpl), opt.seed);
  std::string text = hsim::calibration_to_json(cal);
  if (out_path.empty())
    emit(text);
  else
    write_file(out_path, text);
  if (!opt.quiet)
    std::fprintf(stderr, "residual %.3e after %ld evaluations (%s)\n",
                 cal.residual, long(cal.iterations),
                 cal.converged ? "converged" : "not converged");
  return 0;
}

int run_scaling(const Options& opt, const std::string& file, double t,
                int order, const std::string& n_list,
                const std::string& out_path, const std::string& plot_prefix) {
  hsim::Model m = load_model(file, opt.dim_cap);
  hsim::QubitHamiltonian hq = reduce_model(m);
  std::vector<int> ns;
  std::size_t pos = 0;
  while (pos <= n_list.size()) {
    std::size_t next = n_list.find(',', pos);
    std::string token = n_list.substr(
        pos, next == std::string::npos ? std::string::npos : next - pos);
    try {
      ns.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw CliFailure{"bad slice count '" + token + "' in --n-list\n"};
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  hsim::ScalingResult r =
      hsim::trotter_scaling_experiment(hq, t, ns, order, opt.seed, opt.jobs);
  emit(hsim::scaling_to_json(r));
  if (!out_path.empty()) write_file(out_path, hsim::scaling_to_csv(r));
  if (!plot_prefix.empty()) {
    std::string dat;
    for (const hsim::ScalingRow& row : r.rows)
      dat += std::to_string(row.n) + " " + fmt17(row.error) + "\n";
    write_file(plot_prefix + "_scaling.dat", dat);
  }
  return 0;
}

int run_drift(const Options& opt, const std::string& file, double t_max,
              int points, int steps, int order, const std::string& out_path,
              const std::string& plot_prefix) {
  hsim::Model m = load_model(file, opt.dim_cap);
  if (points < 1) throw CliFailure{"--points must be >= 1\n"};
  if (points > 1 && t_max <= 0.0)
    throw CliFailure{"--t-max must be positive\n"};
  try {
    if (hsim::parse_gauss_operators(m).empty())
      throw CliFailure{"model declares no conserved charges\n"};
  } catch (const hsim::Error& e) {
    throw CliFailure{std::string(e.what()) + "\n"};
  }
  std::vector<double> times(points);
  for (int i = 0; i < points; ++i)
    times[i] = points == 1 ? 0.0 : t_max * double(i) / double(points - 1);
  hsim::DriftResult r =
      hsim::gauss_drift_experiment(m, times, steps, order, opt.seed);
  emit(hsim::drift_to_json(r));
  if (!out_path.empty()) write_file(out_path, hsim::drift_to_csv(r));
  if (!plot_prefix.empty()) {
    std::size_t charges = r.deviations.empty() ? 0 : r.deviations[0].size();
    for (std::size_t l = 0; l < charges; ++l) {
      std::string dat;
      for (std::size_t k = 0; k < r.times.size(); ++k)
        dat += fmt17(r.times[k]) + " " + fmt17(r.deviations[k][l]) + "\n";
      write_file(plot_prefix + "_charge" + std::to_string(l) + ".dat", dat);
    }
  }
  return 0;
}

int run_compare(const Options& opt, const std::string& file,
                const std::string& strategy_list, double t, int points,
                const std::string& out_path, const std::string& plot_prefix) {
  hsim::Model m = load_model(file, opt.dim_cap);
  hsim::QubitHamiltonian hq = reduce_model(m);
  std::vector<hsim::Strategy> strategies = parse_strategies(strategy_list, hq);
  std::vector<double> times = end_grid(t, points);
  hsim::CompareReport rep =
      hsim::strategy_compare(m.name, hq, strategies, times, opt.seed, opt.jobs);
  emit(hsim::compare_to_json(rep));
  if (!out_path.empty()) {
    std::string csv = "strategy,t,fidelity\n";
    for (const hsim::StrategyReport& s : rep.strategies) {
      if (!s.ok) continue;
      for (std::size_t k = 0; k < s.times.size(); ++k)
        csv += s.name + "," + fmt17(s.times[k]) + "," + fmt17(s.fidelities[k]) +
               "\n";
    }
    write_file(out_path, csv);
  }
  if (!plot_prefix.empty()) {
    for (const hsim::StrategyReport& s : rep.strategies) {
      if (!s.ok) continue;
      std::string dat;
      for (std::size_t k = 0; k < s.times.size(); ++k)
        dat += fmt17(s.times[k]) + " " + fmt17(s.fidelities[k]) + "\n";
      write_file(plot_prefix + "_" + sanitize(s.name) + ".dat", dat);
    }
  }
  if (!opt.quiet && !rep.ranking.empty())
    std::fprintf(stderr, "best strategy: %s\n",
                 rep.strategies[rep.ranking[0]].name.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian simulation compiler and benchmark harness"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--seed", opt.seed, "Seed for states, resampling and calibration starts");
  app.add_option("--dim-cap", opt.dim_cap, "Largest allowed register dimension");
  app.add_option("--jobs", opt.jobs, "Concurrent work items for benchmark runs")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", opt.quiet, "Suppress progress notes on stderr");

  std::string file, out_path, mode = "exact", tpl_spec, terms_spec = "diag";
  std::string n_list = "2,4,8,16,32,64,128,256", strategy_list, plot_prefix;
  double t = 1.0, t_max = 5.0, leak_bound = 0.5;
  int steps = 1, order = 1, points = 1, drift_points = 11, drift_steps = 0;

  CLI::App* validate = app.add_subcommand(
      "validate", "Parse and check a model file; print its canonical form");
  validate->add_option("file", file, "Model file (.hml)")->required();

  CLI::App* compile = app.add_subcommand(
      "compile", "Compile a model to a quantum circuit");
  compile->add_option("file", file, "Model file (.hml)")->required();
  compile->add_option("--time", t, "Evolution time")->required();
  compile->add_option("--steps", steps, "Slice count")->check(CLI::PositiveNumber);
  compile->add_option("--order", order, "Splitting order")->check(CLI::IsMember({1, 2}));
  compile->add_option("-o,--out", out_path, "Output circuit file (default stdout)");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Evolve a seeded random state and report fidelity and energy");
  simulate->add_option("file", file, "Model file (.hml)")->required();
  simulate->add_option("--mode", mode, "exact, digital, analogue or hybrid")
      ->check(CLI::IsMember({"exact", "digital", "analogue", "hybrid"}));
  simulate->add_option("--time", t, "Final evolution time")->required();
  simulate->add_option("--steps", steps, "Slice count (digital/hybrid)")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--order", order, "Splitting order (digital)")
      ->check(CLI::IsMember({1, 2}));
  simulate->add_option("--grid", points, "Number of report times up to --time")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--template", tpl_spec,
                       "Hardware chain as 'sites,cutoff' (analogue/hybrid)");
  simulate->add_option("--analogue-terms", terms_spec,
                       "Terms evolved on the analogue side (hybrid): all, "
                       "none, diag, or indices like 0+2-4");
  simulate->add_option("--leak-bound", leak_bound,
                       "Abort when this much population leaves the encoding");

  CLI::App* calibrate_cmd = app.add_subcommand(
      "calibrate", "Fit hardware chain parameters to a target model");
  calibrate_cmd->add_option("file", file, "Target model file (.hml)")->required();
  calibrate_cmd->add_option("--template", tpl_spec,
                            "Hardware chain as 'sites,cutoff'");
  calibrate_cmd->add_option("-o,--out", out_path,
                            "Output parameter file (default stdout)");

  CLI::App* bench = app.add_subcommand("bench", "Benchmark experiments");
  bench->require_subcommand(1);

  CLI::App* scaling = bench->add_subcommand(
      "trotter-scaling", "Circuit error versus slice count, with fitted slope");
  scaling->add_option("file", file, "Model file (.hml)")->required();
  scaling->add_option("--time", t, "Evolution time");
  scaling->add_option("--order", order, "Splitting order")->check(CLI::IsMember({1, 2}));
  scaling->add_option("--n-list", n_list, "Comma-separated slice counts");
  scaling->add_option("-o,--out", out_path, "Also write a CSV table here");
  scaling->add_option("--plot-data", plot_prefix,
                      "Write (x, y) series files with this prefix");

  CLI::App* drift = bench->add_subcommand(
      "gauss-drift", "Conserved-charge drift along an evolution");
  drift->add_option("file", file, "Model file (.hml)")->required();
  drift->add_option("--t-max", t_max, "End of the time grid");
  drift->add_option("--points", drift_points, "Grid size including t = 0")
      ->check(CLI::PositiveNumber);
  drift->add_option("--steps", drift_steps,
                    "Circuit slice count; 0 evolves exactly")
      ->check(CLI::NonNegativeNumber);
  drift->add_option("--order", order, "Splitting order")->check(CLI::IsMember({1, 2}));
  drift->add_option("-o,--out", out_path, "Also write a CSV table here");
  drift->add_option("--plot-data", plot_prefix,
                    "Write (x, y) series files with this prefix");

  CLI::App* compare = bench->add_subcommand(
      "strategy-compare", "Fidelity and resources across evolution strategies");
  compare->add_option("file", file, "Model file (.hml)")->required();
  compare->add_option("--strategies", strategy_list,
                      "Semicolon-separated list, e.g. "
                      "'digital:n=4;analogue:d=3;hybrid:n=8,terms=diag'")
      ->required();
  compare->add_option("--time", t, "Final evolution time");
  compare->add_option("--points", points, "Number of report times up to --time");
  compare->add_option("-o,--out", out_path, "Also write a CSV table here");
  compare->add_option("--plot-data", plot_prefix,
                      "Write (x, y) series files with this prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  auto started = std::chrono::steady_clock::now();
  int rc = 0;
  try {
    if (*validate) rc = run_validate(opt, file);
    else if (*compile) rc = run_compile(opt, file, t, steps, order, out_path);
    else if (*simulate)
      rc = run_simulate(opt, file, mode, t, steps, order, points, tpl_spec,
                        terms_spec, leak_bound);
    else if (*calibrate_cmd) rc = run_calibrate(opt, file, tpl_spec, out_path);
    else if (*scaling)
      rc = run_scaling(opt, file, t, order, n_list, out_path, plot_prefix);
    else if (*drift)
      rc = run_drift(opt, file, t_max, drift_points, drift_steps, order,
                     out_path, plot_prefix);
    else if (*compare)
      rc = run_compare(opt, file, strategy_list, t, points, out_path,
                       plot_prefix);
  } catch (const CliFailure& f) {
    std::fputs(f.message.c_str(), stderr);
    return 1;
  } catch (const hsim::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
  if (!opt.quiet) {
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    std::fprintf(stderr, "wall-clock: %.3f s\n", secs);
  }
  return rc;
}
