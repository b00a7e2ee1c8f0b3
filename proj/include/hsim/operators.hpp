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

#ifndef HSIM_OPERATORS_HPP
#define HSIM_OPERATORS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsim/coefficient.hpp"
#include "hsim/common.hpp"

namespace hsim {

enum class SiteKind { Qubit, FermionMode, SpinHalf, BosonMode };

struct Site {
  SiteKind kind = SiteKind::Qubit;
  int dim = 2;  // 2 except for BosonMode, where it is the occupation cutoff
  bool operator==(const Site& o) const { return kind == o.kind && dim == o.dim; }
};

std::string site_kind_name(SiteKind k);

// Ordered list of sites.  Site 0 is the most significant Kronecker factor:
// basis index = sum_j n_j * prod_{k>j} dim_k.  The total dimension is capped
// so dense realizations stay desk-sized; the cap is configurable per register.
class SiteRegister {
 public:
  SiteRegister() = default;
  explicit SiteRegister(std::vector<Site> sites, std::size_t dim_cap = 4096);

  static SiteRegister qubits(int n, std::size_t dim_cap = 4096);

  std::size_t size() const { return sites_.size(); }
  const Site& site(int i) const;
  std::size_t total_dim() const { return total_dim_; }
  std::size_t dim_cap() const { return dim_cap_; }
  bool all_dim_two() const;

  bool operator==(const SiteRegister& o) const { return sites_ == o.sites_; }
  bool operator!=(const SiteRegister& o) const { return !(*this == o); }

 private:
  std::vector<Site> sites_;
  std::size_t total_dim_ = 1;
  std::size_t dim_cap_ = 4096;
};

// N2 is diag(n(n-1)) on a boson site: the on-site interaction ladder.  It is
// a separate primitive because repeated factors on one site are not allowed.
enum class PrimitiveOp { I, X, Y, Z, Splus, Sminus, Create, Annihilate, Number, N2 };

const char* op_token(PrimitiveOp op);  // "I","X",...,"Sp","Sm","Cr","An","N","N2"
std::optional<PrimitiveOp> op_from_token(const std::string& tok);
PrimitiveOp op_adjoint(PrimitiveOp op);
bool op_compatible(PrimitiveOp op, SiteKind kind);
Eigen::MatrixXcd primitive_matrix(PrimitiveOp op, int dim);

// Action on one occupation basis vector: (new occupation, amplitude), or
// nothing when the state is annihilated.
std::optional<std::pair<int, cxd>> apply_primitive(PrimitiveOp op, int dim, int n);

struct TermFactor {
  int site = 0;
  PrimitiveOp op = PrimitiveOp::I;
  bool operator==(const TermFactor& o) const { return site == o.site && op == o.op; }
};

// Product of one-site primitives with a coefficient.  Canonical form: factors
// sorted by strictly increasing site, identities dropped (a pure identity
// term keeps a single I@0).  Reordering Create/Annihilate factors that live
// on FermionMode sites flips the sign of the coefficient per swap, so the
// canonical form of a fermionic product keeps track of operator order even
// though the stored list is sorted.
class OperatorTerm {
 public:
  OperatorTerm() = default;

  // Canonicalizes and validates against the register.  Throws Error on
  // duplicate sites, out-of-range indices, or op/kind mismatches.
  static OperatorTerm make(const SiteRegister& reg, Coefficient coeff,
                           std::vector<TermFactor> factors);

  const Coefficient& coeff() const { return coeff_; }
  const std::vector<TermFactor>& factors() const { return factors_; }
  void scale(const Coefficient& c) { coeff_ = coeff_ * c; }

  // True Hermitian conjugate: factor-wise adjoints plus the fermionic
  // reordering sign (reversing k odd fermionic factors costs k(k-1)/2 swaps).
  OperatorTerm adjoint(const SiteRegister& reg) const;

  bool same_factors(const OperatorTerm& o) const { return factors_ == o.factors_; }
  bool operator==(const OperatorTerm& o) const {
    return factors_ == o.factors_ && coeff_ == o.coeff_;
  }

 private:
  Coefficient coeff_;
  std::vector<TermFactor> factors_;
};

// Operator product of two terms with disjoint support, canonicalized (the
// fermionic reordering sign lands in the coefficient).
OperatorTerm term_product(const SiteRegister& reg, const OperatorTerm& a,
                          const OperatorTerm& b);

struct Parameter {
  std::string name;
  std::optional<double> value;  // declared default, if any
  bool operator==(const Parameter& o) const { return name == o.name && value == o.value; }
};

class Hamiltonian {
 public:
  Hamiltonian() = default;
  explicit Hamiltonian(SiteRegister reg) : reg_(std::move(reg)) {}

  const SiteRegister& site_register() const { return reg_; }
  const std::vector<OperatorTerm>& terms() const { return terms_; }
  const std::vector<Parameter>& parameters() const { return params_; }

  void declare_parameter(const std::string& name, std::optional<double> value = {});
  bool has_parameter(const std::string& name) const;

  // Merges into an existing term with the same factor list; exact-zero
  // coefficients are dropped.  Adding twice then canonicalizing again is a
  // no-op (idempotence is tested).
  void add_term(OperatorTerm t);
  void add_term(Coefficient c, std::vector<TermFactor> factors);

  // Partial binding; names not declared here are an error that lists the
  // declared ones.  Bound parameters disappear from the declaration list.
  Hamiltonian bind_parameters(const std::map<std::string, double>& bindings) const;
  Hamiltonian bind_defaults() const;  // binds every parameter with a default
  bool fully_bound() const;

  bool operator==(const Hamiltonian& o) const {
    return reg_ == o.reg_ && terms_ == o.terms_ && params_ == o.params_;
  }

 private:
  SiteRegister reg_;
  std::vector<OperatorTerm> terms_;
  std::vector<Parameter> params_;
};

// ---- dense realizations ---------------------------------------------------
//
// Terms are realized in the occupation-number basis of the register.  For
// everything except fermionic ladder operators this is the plain Kronecker
// product of the per-site primitives (identity on untouched sites).  A
// Create/Annihilate factor on a FermionMode site additionally picks up the
// fermionic sign (-1)^(number of occupied fermion modes below it), so the
// realization agrees with the canonical anticommuting algebra and matches the
// Jordan-Wigner image matrix for matrix, not just up to unitary equivalence.

Eigen::MatrixXcd term_matrix(const SiteRegister& reg, const OperatorTerm& t);
Eigen::MatrixXcd hamiltonian_matrix(const Hamiltonian& h);

// max-norm commutator test at 1e-12; both terms must be numeric.
bool terms_commute(const SiteRegister& reg, const OperatorTerm& a,
                   const OperatorTerm& b);

struct HermiticityReport {
  bool pass = false;
  double max_deviation = 0.0;  // max |H - H^dagger| entry-wise
};
HermiticityReport hermiticity_check(const Hamiltonian& h);

}  // namespace hsim

#endif
