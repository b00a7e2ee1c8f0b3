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

#include "hsim/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hsim {

std::string site_kind_name(SiteKind k) {
  switch (k) {
    case SiteKind::Qubit: return "qubit";
    case SiteKind::FermionMode: return "fermion";
    case SiteKind::SpinHalf: return "spin";
    case SiteKind::BosonMode: return "boson";
  }
  return "?";
}

SiteRegister::SiteRegister(std::vector<Site> sites, std::size_t dim_cap)
    : sites_(std::move(sites)), dim_cap_(dim_cap) {
  total_dim_ = 1;
  for (const auto& s : sites_) {
    if (s.kind == SiteKind::BosonMode) {
      if (s.dim < 2) throw Error("boson cutoff must be at least 2");
    } else if (s.dim != 2) {
      throw Error(site_kind_name(s.kind) + " site must have dimension 2");
    }
    if (total_dim_ > dim_cap_ / static_cast<std::size_t>(s.dim))
      throw Error("register dimension exceeds cap of " + std::to_string(dim_cap_));
    total_dim_ *= static_cast<std::size_t>(s.dim);
  }
}

SiteRegister SiteRegister::qubits(int n, std::size_t dim_cap) {
  return SiteRegister(std::vector<Site>(n, Site{SiteKind::Qubit, 2}), dim_cap);
}

const Site& SiteRegister::site(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= sites_.size())
    throw Error("site index " + std::to_string(i) + " out of range");
  return sites_[static_cast<std::size_t>(i)];
}

bool SiteRegister::all_dim_two() const {
  for (const auto& s : sites_)
    if (s.dim != 2) return false;
  return true;
}

const char* op_token(PrimitiveOp op) {
  switch (op) {
    case PrimitiveOp::I: return "I";
    case PrimitiveOp::X: return "X";
    case PrimitiveOp::Y: return "Y";
    case PrimitiveOp::Z: return "Z";
    case PrimitiveOp::Splus: return "Sp";
    case PrimitiveOp::Sminus: return "Sm";
    case PrimitiveOp::Create: return "Cr";
    case PrimitiveOp::Annihilate: return "An";
    case PrimitiveOp::Number: return "N";
    case PrimitiveOp::N2: return "N2";
  }
  return "?";
}

std::optional<PrimitiveOp> op_from_token(const std::string& tok) {
  static const std::map<std::string, PrimitiveOp> table = {
      {"I", PrimitiveOp::I},       {"X", PrimitiveOp::X},
      {"Y", PrimitiveOp::Y},       {"Z", PrimitiveOp::Z},
      {"Sp", PrimitiveOp::Splus},  {"Sm", PrimitiveOp::Sminus},
      {"Cr", PrimitiveOp::Create}, {"An", PrimitiveOp::Annihilate},
      {"N", PrimitiveOp::Number},  {"N2", PrimitiveOp::N2}};
  auto it = table.find(tok);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

PrimitiveOp op_adjoint(PrimitiveOp op) {
  switch (op) {
    case PrimitiveOp::Splus: return PrimitiveOp::Sminus;
    case PrimitiveOp::Sminus: return PrimitiveOp::Splus;
    case PrimitiveOp::Create: return PrimitiveOp::Annihilate;
    case PrimitiveOp::Annihilate: return PrimitiveOp::Create;
    default: return op;  // I,X,Y,Z,N,N2 are self-adjoint
  }
}

bool op_compatible(PrimitiveOp op, SiteKind kind) {
  switch (op) {
    case PrimitiveOp::I:
      return true;
    case PrimitiveOp::X:
    case PrimitiveOp::Y:
    case PrimitiveOp::Z:
      return kind == SiteKind::Qubit || kind == SiteKind::SpinHalf;
    case PrimitiveOp::Splus:
    case PrimitiveOp::Sminus:
      return kind == SiteKind::SpinHalf || kind == SiteKind::Qubit;
    case PrimitiveOp::Create:
    case PrimitiveOp::Annihilate:
    case PrimitiveOp::Number:
      return kind == SiteKind::FermionMode || kind == SiteKind::BosonMode;
    case PrimitiveOp::N2:
      return kind == SiteKind::BosonMode;
  }
  return false;
}

// Maps one occupation basis vector to (occupation, amplitude), or nothing if
// the state is annihilated.  Every primitive is a scaled one-to-one map on
// basis states, which keeps the dense realization a single pass per column.
std::optional<std::pair<int, cxd>> apply_primitive(PrimitiveOp op, int dim, int n) {
  switch (op) {
    case PrimitiveOp::I: return {{n, 1.0}};
    case PrimitiveOp::X: return {{1 - n, 1.0}};
    case PrimitiveOp::Y: return {{1 - n, n == 0 ? cxd(0, 1) : cxd(0, -1)}};
    case PrimitiveOp::Z: return {{n, n == 0 ? 1.0 : -1.0}};
    case PrimitiveOp::Splus:  // (X+iY)/2 = |0><1|
      if (n == 1) return {{0, 1.0}};
      return std::nullopt;
    case PrimitiveOp::Sminus:  // (X-iY)/2 = |1><0|
      if (n == 0) return {{1, 1.0}};
      return std::nullopt;
    case PrimitiveOp::Create:
      if (n + 1 < dim) return {{n + 1, std::sqrt(double(n + 1))}};
      return std::nullopt;
    case PrimitiveOp::Annihilate:
      if (n > 0) return {{n - 1, std::sqrt(double(n))}};
      return std::nullopt;
    case PrimitiveOp::Number:
      if (n == 0) return std::nullopt;
      return {{n, double(n)}};
    case PrimitiveOp::N2:
      if (n < 2) return std::nullopt;
      return {{n, double(n) * double(n - 1)}};
  }
  return std::nullopt;
}

Eigen::MatrixXcd primitive_matrix(PrimitiveOp op, int dim) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n)
    if (auto r = apply_primitive(op, dim, n)) m(r->first, n) = r->second;
  return m;
}

namespace {

bool odd_fermionic(const SiteRegister& reg, const TermFactor& f) {
  return reg.site(f.site).kind == SiteKind::FermionMode &&
         (f.op == PrimitiveOp::Create || f.op == PrimitiveOp::Annihilate);
}

}  // namespace

OperatorTerm OperatorTerm::make(const SiteRegister& reg, Coefficient coeff,
                                std::vector<TermFactor> factors) {
  for (const auto& f : factors) {
    const Site& s = reg.site(f.site);  // range-checks
    if (!op_compatible(f.op, s.kind))
      throw Error(std::string("operator ") + op_token(f.op) +
                  " incompatible with site kind " + site_kind_name(s.kind) +
                  " at site " + std::to_string(f.site));
  }
  // Count inversions among odd fermionic factors: each one is a swap of two
  // anticommuting operators, so the parity lands in the coefficient.
  long inversions = 0;
  for (std::size_t a = 0; a + 1 < factors.size(); ++a)
    for (std::size_t b = a + 1; b < factors.size(); ++b)
      if (factors[a].site > factors[b].site && odd_fermionic(reg, factors[a]) &&
          odd_fermionic(reg, factors[b]))
        ++inversions;
  std::stable_sort(factors.begin(), factors.end(),
                   [](const TermFactor& x, const TermFactor& y) { return x.site < y.site; });
  for (std::size_t a = 0; a + 1 < factors.size(); ++a)
    if (factors[a].site == factors[a + 1].site)
      throw Error("duplicate site index " + std::to_string(factors[a].site) +
                  " in term (repeated factors on one site are not allowed)");
  std::erase_if(factors, [](const TermFactor& f) { return f.op == PrimitiveOp::I; });
  if (factors.empty()) factors.push_back({0, PrimitiveOp::I});
  OperatorTerm t;
  t.coeff_ = (inversions % 2) ? -coeff : coeff;
  t.factors_ = std::move(factors);
  return t;
}

OperatorTerm OperatorTerm::adjoint(const SiteRegister& reg) const {
  std::vector<TermFactor> adj;
  adj.reserve(factors_.size());
  long odd = 0;
  for (const auto& f : factors_) {
    if (odd_fermionic(reg, f)) ++odd;
    adj.push_back({f.site, op_adjoint(f.op)});
  }
  // Conjugating reverses the product; restoring ascending site order costs
  // odd*(odd-1)/2 transpositions of anticommuting factors.
  Coefficient c = coeff_.conj();
  if ((odd * (odd - 1) / 2) % 2) c = -c;
  return make(reg, std::move(c), std::move(adj));
}

OperatorTerm term_product(const SiteRegister& reg, const OperatorTerm& a,
                          const OperatorTerm& b) {
  std::vector<TermFactor> merged;
  for (const auto& f : a.factors())
    if (f.op != PrimitiveOp::I) merged.push_back(f);
  for (const auto& f : b.factors()) {
    if (f.op == PrimitiveOp::I) continue;
    for (const auto& g : merged)
      if (g.site == f.site) throw Error("term_product requires disjoint supports");
    merged.push_back(f);
  }
  return OperatorTerm::make(reg, a.coeff() * b.coeff(), std::move(merged));
}

void Hamiltonian::declare_parameter(const std::string& name, std::optional<double> value) {
  for (const auto& p : params_)
    if (p.name == name) throw Error("parameter '" + name + "' declared twice");
  params_.push_back({name, value});
}

bool Hamiltonian::has_parameter(const std::string& name) const {
  for (const auto& p : params_)
    if (p.name == name) return true;
  return false;
}

void Hamiltonian::add_term(OperatorTerm t) {
  for (const auto& sym : t.coeff().symbols())
    if (!has_parameter(sym))
      throw Error("coefficient uses undeclared parameter '" + sym + "'");
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (terms_[k].same_factors(t)) {
      OperatorTerm merged = OperatorTerm::make(reg_, terms_[k].coeff() + t.coeff(),
                                               terms_[k].factors());
      if (merged.coeff().is_zero())
        terms_.erase(terms_.begin() + static_cast<long>(k));
      else
        terms_[k] = merged;
      return;
    }
  }
  if (!t.coeff().is_zero()) terms_.push_back(std::move(t));
}

void Hamiltonian::add_term(Coefficient c, std::vector<TermFactor> factors) {
  add_term(OperatorTerm::make(reg_, std::move(c), std::move(factors)));
}

Hamiltonian Hamiltonian::bind_parameters(const std::map<std::string, double>& bindings) const {
  for (const auto& [name, v] : bindings) {
    (void)v;
    if (!has_parameter(name)) {
      std::ostringstream os;
      os << "cannot bind undeclared parameter '" << name << "'; declared:";
      if (params_.empty()) os << " (none)";
      for (const auto& p : params_) os << ' ' << p.name;
      throw Error(os.str());
    }
  }
  Hamiltonian out(reg_);
  for (const auto& p : params_)
    if (!bindings.count(p.name)) out.params_.push_back(p);
  for (const auto& t : terms_) {
    Coefficient c = t.coeff().substitute(bindings);
    if (!c.is_zero()) out.add_term(OperatorTerm::make(reg_, c, t.factors()));
  }
  return out;
}

Hamiltonian Hamiltonian::bind_defaults() const {
  std::map<std::string, double> b;
  for (const auto& p : params_)
    if (p.value) b[p.name] = *p.value;
  return bind_parameters(b);
}

bool Hamiltonian::fully_bound() const {
  for (const auto& t : terms_)
    if (!t.coeff().is_numeric()) return false;
  return true;
}

}  // namespace hsim
