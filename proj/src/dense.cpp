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

#include <vector>

#include "hsim/operators.hpp"

namespace hsim {

namespace {

void decode_occupations(const SiteRegister& reg, std::size_t index, std::vector<int>& occ) {
  occ.resize(reg.size());
  for (std::size_t s = reg.size(); s-- > 0;) {
    int d = reg.site(static_cast<int>(s)).dim;
    occ[s] = static_cast<int>(index % static_cast<std::size_t>(d));
    index /= static_cast<std::size_t>(d);
  }
}

std::size_t encode_occupations(const SiteRegister& reg, const std::vector<int>& occ) {
  std::size_t index = 0;
  for (std::size_t s = 0; s < reg.size(); ++s)
    index = index * static_cast<std::size_t>(reg.site(static_cast<int>(s)).dim) +
            static_cast<std::size_t>(occ[s]);
  return index;
}

}  // namespace

Eigen::MatrixXcd term_matrix(const SiteRegister& reg, const OperatorTerm& t) {
  const std::size_t dim = reg.total_dim();
  if (dim > reg.dim_cap())
    throw Error("register dimension exceeds cap");
  cxd c = t.coeff().numeric_value();  // throws if symbolic
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<long>(dim), static_cast<long>(dim));
  std::vector<int> occ;
  for (std::size_t col = 0; col < dim; ++col) {
    decode_occupations(reg, col, occ);
    cxd amp = c;
    bool alive = true;
    // Rightmost (highest-site) factor acts first.
    for (std::size_t k = t.factors().size(); k-- > 0;) {
      const TermFactor& f = t.factors()[k];
      const Site& site = reg.site(f.site);
      auto r = apply_primitive(f.op, site.dim, occ[static_cast<std::size_t>(f.site)]);
      if (!r) {
        alive = false;
        break;
      }
      if (site.kind == SiteKind::FermionMode &&
          (f.op == PrimitiveOp::Create || f.op == PrimitiveOp::Annihilate)) {
        int below = 0;
        for (int s = 0; s < f.site; ++s)
          if (reg.site(s).kind == SiteKind::FermionMode)
            below += occ[static_cast<std::size_t>(s)];
        if (below % 2) amp = -amp;
      }
      amp *= r->second;
      occ[static_cast<std::size_t>(f.site)] = r->first;
    }
    if (alive) m(static_cast<long>(encode_occupations(reg, occ)), static_cast<long>(col)) += amp;
  }
  return m;
}

Eigen::MatrixXcd hamiltonian_matrix(const Hamiltonian& h) {
  const std::size_t dim = h.site_register().total_dim();
  Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Zero(static_cast<long>(dim), static_cast<long>(dim));
  for (const auto& t : h.terms()) m += term_matrix(h.site_register(), t);
  return m;
}

bool terms_commute(const SiteRegister& reg, const OperatorTerm& a, const OperatorTerm& b) {
  Eigen::MatrixXcd ma = term_matrix(reg, a);
  Eigen::MatrixXcd mb = term_matrix(reg, b);
  return ((ma * mb - mb * ma).cwiseAbs().maxCoeff()) < 1e-12;
}

HermiticityReport hermiticity_check(const Hamiltonian& h) {
  Eigen::MatrixXcd m = hamiltonian_matrix(h);
  double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return {dev <= 1e-10, dev};
}

}  // namespace hsim
