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

#include "hsim/analogue.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "hsim/exact.hpp"
#include "json.hpp"

namespace hsim {

namespace {

constexpr double kTol = 1e-8;    // residual below this counts as converged
constexpr double kGtol = 1e-6;   // first-order flatness that stops a search
constexpr long kMaxEvals = 10000;
constexpr double kRadiusFloor = 1e-12;

void check_template(const HardwareTemplate& tpl) {
  if (tpl.sites < 1) throw Error("template chain must have at least one site");
  if (tpl.cutoff < 2) throw Error("template cutoff must be at least 2");
  if (static_cast<double>(tpl.sites) * std::log2(double(tpl.cutoff)) > 24.0)
    throw Error("template dimension exceeds the dense limit");
}

void check_map(const EncodingMap& map, const HardwareTemplate& tpl) {
  if (map.simulator.size() != tpl.sites)
    throw Error("map/register mismatch: site count");
  for (std::size_t i = 0; i < tpl.sites; ++i) {
    Site s = map.simulator.site(static_cast<int>(i));
    if (s.kind != SiteKind::BosonMode || s.dim != tpl.cutoff)
      throw Error("map/register mismatch: site " + std::to_string(i));
  }
  if (map.target_to_sim.empty()) throw Error("map/register mismatch: empty map");
  std::vector<bool> seen(tpl.sites, false);
  for (int v : map.target_to_sim) {
    if (v < 0 || static_cast<std::size_t>(v) >= tpl.sites || seen[v])
      throw Error("map/register mismatch: bad simulator site " +
                  std::to_string(v));
    seen[v] = true;
  }
}

// Basis index of the simulator state with the given per-site occupations all
// zero except bits of `b` placed on the mapped sites (target site 0 most
// significant, matching the qubit ordering).
std::vector<long> subspace_indices(const EncodingMap& map,
                                   const HardwareTemplate& tpl) {
  const std::size_t L = tpl.sites;
  std::vector<long> stride(L);
  stride[L - 1] = 1;
  for (std::size_t i = L - 1; i-- > 0;)
    stride[i] = stride[i + 1] * tpl.cutoff;
  const std::size_t m = map.target_to_sim.size();
  std::vector<long> idx(std::size_t(1) << m);
  for (std::size_t b = 0; b < idx.size(); ++b) {
    long s = 0;
    for (std::size_t k = 0; k < m; ++k)
      if ((b >> (m - 1 - k)) & 1) s += stride[map.target_to_sim[k]];
    idx[b] = s;
  }
  return idx;
}

}  // namespace

CalibrationParams zero_params(const HardwareTemplate& tpl) {
  CalibrationParams p;
  p.eps.assign(tpl.sites, 0.0);
  return p;
}

Hamiltonian instantiate_template(const HardwareTemplate& tpl,
                                 const CalibrationParams& params) {
  check_template(tpl);
  if (params.J < 0.0) throw Error("template bounds violated: J must be >= 0");
  if (params.U < 0.0) throw Error("template bounds violated: U must be >= 0");
  if (params.eps.size() != tpl.sites)
    throw Error("template offsets: expected " + std::to_string(tpl.sites) +
                " values");
  std::size_t dim = 1;
  for (std::size_t i = 0; i < tpl.sites; ++i) dim *= std::size_t(tpl.cutoff);
  std::vector<Site> sites(tpl.sites, Site{SiteKind::BosonMode, tpl.cutoff});
  Hamiltonian h{SiteRegister(sites, dim)};
  const int L = static_cast<int>(tpl.sites);
  for (int j = 0; j + 1 < L; ++j) {
    if (params.J == 0.0) break;
    h.add_term(Coefficient(-params.J), {{j, PrimitiveOp::Create},
                                        {j + 1, PrimitiveOp::Annihilate}});
    h.add_term(Coefficient(-params.J), {{j + 1, PrimitiveOp::Create},
                                        {j, PrimitiveOp::Annihilate}});
  }
  for (int j = 0; j < L; ++j) {
    if (params.U != 0.0)
      h.add_term(Coefficient(0.5 * params.U), {{j, PrimitiveOp::N2}});
    if (params.eps[std::size_t(j)] != 0.0)
      h.add_term(Coefficient(params.eps[std::size_t(j)]),
                 {{j, PrimitiveOp::Number}});
  }
  return h;
}

Eigen::MatrixXcd subspace_projector(const EncodingMap& map,
                                    const HardwareTemplate& tpl) {
  check_template(tpl);
  check_map(map, tpl);
  const std::size_t L = tpl.sites;
  std::vector<bool> mapped(L, false);
  for (int v : map.target_to_sim) mapped[std::size_t(v)] = true;
  long dim = 1;
  for (std::size_t i = 0; i < L; ++i) dim *= tpl.cutoff;
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(dim, dim);
  for (long s = 0; s < dim; ++s) {
    long rest = s;
    bool keep = true;
    for (std::size_t i = L; i-- > 0;) {  // least significant site last
      int digit = static_cast<int>(rest % tpl.cutoff);
      rest /= tpl.cutoff;
      if (digit > (mapped[i] ? 1 : 0)) {
        keep = false;
        break;
      }
    }
    if (keep) P(s, s) = 1.0;
  }
  return P;
}

Eigen::MatrixXcd template_block(const HardwareTemplate& tpl,
                                const CalibrationParams& params,
                                const EncodingMap& map) {
  check_template(tpl);
  check_map(map, tpl);
  Eigen::MatrixXcd H = hamiltonian_matrix(instantiate_template(tpl, params));
  std::vector<long> idx = subspace_indices(map, tpl);
  const long dim = static_cast<long>(idx.size());
  Eigen::MatrixXcd B(dim, dim);
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c) B(r, c) = H(idx[std::size_t(r)], idx[std::size_t(c)]);
  return B;
}

namespace {

struct SearchOutcome {
  std::vector<double> x;
  double f = std::numeric_limits<double>::infinity();
  long evals = 0;
  std::vector<double> accepted;
};

void clamp_bounds(std::vector<double>& x) {
  if (x[0] < 0.0) x[0] = 0.0;  // J
  if (x[1] < 0.0) x[1] = 0.0;  // U
}

// Compass search: cycle the coordinates trying +/- r, accept strict descent,
// halve r after a sweep with no accepted move.  A completed unimproved sweep
// doubles as a finite-difference probe; once those differences are flat at
// first order the search has stalled and stops.
template <typename F>
SearchOutcome compass_search(std::vector<double> x, long budget, F&& evaluate) {
  clamp_bounds(x);
  SearchOutcome out;
  double f = evaluate(x);
  ++out.evals;
  out.accepted.push_back(f);
  double r = 1.0;
  const std::size_t n = x.size();
  while (f >= kTol && out.evals < budget && r >= kRadiusFloor) {
    bool improved = false;
    bool flat = true;
    for (std::size_t c = 0; c < n && out.evals < budget; ++c) {
      double fp = std::numeric_limits<double>::quiet_NaN();
      double fm = std::numeric_limits<double>::quiet_NaN();
      bool moved = false;
      for (int sgn : {+1, -1}) {
        std::vector<double> y = x;
        y[std::size_t(c)] += sgn * r;
        clamp_bounds(y);
        if (y[c] == x[c]) continue;  // clamped back onto the current point
        double fy = evaluate(y);
        ++out.evals;
        if (fy < f) {
          x = std::move(y);
          f = fy;
          out.accepted.push_back(f);
          moved = true;
          improved = true;
          break;
        }
        (sgn > 0 ? fp : fm) = fy;
        if (out.evals >= budget) break;
      }
      if (moved || improved) continue;  // probe data is stale once x moved
      double g = 0.0;
      if (!std::isnan(fp) && !std::isnan(fm))
        g = std::abs(fp - fm) / (2.0 * r);
      else if (!std::isnan(fp))
        g = std::abs(fp - f) / r;
      else if (!std::isnan(fm))
        g = std::abs(fm - f) / r;
      if (g >= kGtol) flat = false;
    }
    if (!improved && out.evals < budget) {
      if (r <= kGtol && flat) break;
      r *= 0.5;
    }
  }
  out.x = std::move(x);
  out.f = f;
  return out;
}

}  // namespace

CalibrationResult calibrate(const QubitHamiltonian& target,
                            const HardwareTemplate& tpl,
                            const EncodingMap& map,
                            const CalibrationParams& init,
                            std::uint64_t seed) {
  check_template(tpl);
  check_map(map, tpl);
  if (target.qubits != map.target_to_sim.size())
    throw Error("calibrate: target/map dimension mismatch");
  if (init.J < 0.0 || init.U < 0.0)
    throw Error("calibrate: init outside template bounds");
  if (init.eps.size() != tpl.sites)
    throw Error("calibrate: init offsets: expected " +
                std::to_string(tpl.sites) + " values");

  const Eigen::MatrixXcd T = qubit_matrix(target);
  const long dim = T.rows();

  // The block is linear in the parameters, so cache one block per parameter
  // and evaluate candidates as linear combinations.
  const std::size_t L = tpl.sites;
  std::vector<Eigen::MatrixXcd> basis;
  {
    CalibrationParams p = zero_params(tpl);
    p.J = 1.0;
    basis.push_back(template_block(tpl, p, map));
    p.J = 0.0;
    p.U = 1.0;
    basis.push_back(template_block(tpl, p, map));
    p.U = 0.0;
    for (std::size_t j = 0; j < L; ++j) {
      p.eps[j] = 1.0;
      basis.push_back(template_block(tpl, p, map));
      p.eps[j] = 0.0;
    }
  }

  auto evaluate = [&](const std::vector<double>& x) -> double {
    Eigen::MatrixXcd D = -T;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (x[k] != 0.0) D += x[k] * basis[k];
    double lambda = D.trace().real() / double(dim);
    D.diagonal().array() -= lambda;  // optimal uniform shift, closed form
    double f = D.norm();
    if (!std::isfinite(f)) throw Error("calibrate: non-finite objective");
    return f;
  };

  std::vector<std::vector<double>> starts;
  {
    std::vector<double> x0 = {init.J, init.U};
    x0.insert(x0.end(), init.eps.begin(), init.eps.end());
    starts.push_back(std::move(x0));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 1; s < 8; ++s) {
      std::vector<double> x = {3.0 * unit(rng), 3.0 * unit(rng)};
      for (std::size_t j = 0; j < L; ++j) x.push_back(6.0 * unit(rng) - 3.0);
      starts.push_back(std::move(x));
    }
  }

  long used = 0;
  SearchOutcome best;
  for (const auto& start : starts) {
    if (used >= kMaxEvals || best.f < kTol) break;
    SearchOutcome got = compass_search(start, kMaxEvals - used, evaluate);
    used += got.evals;
    if (got.f < best.f) best = std::move(got);
  }

  CalibrationResult result;
  result.params.J = best.x[0];
  result.params.U = best.x[1];
  result.params.eps.assign(best.x.begin() + 2, best.x.end());
  result.residual = best.f;
  result.iterations = used;
  result.converged = best.f < kTol;
  result.seed = seed;
  result.accepted = std::move(best.accepted);
  return result;
}

std::string calibration_to_json(const CalibrationResult& result) {
  nlohmann::json j;
  j["params"]["J"] = result.params.J;
  j["params"]["U"] = result.params.U;
  j["params"]["eps"] = result.params.eps;
  j["residual"] = result.residual;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["seed"] = result.seed;
  return j.dump(2) + "\n";
}

AnalogueEvolution analogue_evolve(const HardwareTemplate& tpl,
                                  const CalibrationParams& params,
                                  const EncodingMap& map,
                                  const Eigen::VectorXcd& psi0, double t,
                                  double leak_bound) {
  check_template(tpl);
  check_map(map, tpl);
  std::vector<long> idx = subspace_indices(map, tpl);
  if (psi0.size() != static_cast<long>(idx.size()))
    throw Error("analogue_evolve: state dimension mismatch");
  if (std::abs(psi0.norm() - 1.0) > 1e-6)
    throw Error("analogue_evolve: state must be normalized");

  Eigen::MatrixXcd H = hamiltonian_matrix(instantiate_template(tpl, params));
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(H.rows());
  for (std::size_t b = 0; b < idx.size(); ++b) full(idx[b]) = psi0(long(b));
  Eigen::VectorXcd evolved = evolve_exact(H, full, t);

  Eigen::VectorXcd sub(psi0.size());
  for (std::size_t b = 0; b < idx.size(); ++b) sub(long(b)) = evolved(idx[b]);
  double kept = sub.squaredNorm();
  AnalogueEvolution out;
  out.leakage = std::max(0.0, 1.0 - kept);
  if (out.leakage > leak_bound) throw Error("encoding subspace abandoned");
  out.state = kept > 0.0 ? Eigen::VectorXcd(sub / std::sqrt(kept)) : sub;
  return out;
}

}  // namespace hsim
