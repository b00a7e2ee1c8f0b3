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

#include "hsim/encodings.hpp"

#include <cmath>
#include <cstdlib>

namespace hsim {

namespace {

// Single-qubit Pauli group product: a*b = phase * c.
std::pair<cxd, char> mul1(char a, char b) {
  if (a == 'I') return {cxd(1, 0), b};
  if (b == 'I') return {cxd(1, 0), a};
  if (a == b) return {cxd(1, 0), 'I'};
  // cyclic: XY = iZ, YZ = iX, ZX = iY; reversed order flips the sign
  auto cyc = [](char x, char y) {
    return (x == 'X' && y == 'Y') || (x == 'Y' && y == 'Z') ||
           (x == 'Z' && y == 'X');
  };
  char third = 'X' ^ 'Y' ^ 'Z' ^ a ^ b;  // the letter that is neither a nor b
  return {cyc(a, b) ? cxd(0, 1) : cxd(0, -1), third};
}

}  // namespace

PauliString pauli_identity(std::size_t n) {
  return {std::string(n, 'I'), cxd(1.0, 0.0)};
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
  if (a.letters.size() != b.letters.size())
    throw Error("pauli_mul: length mismatch");
  PauliString out;
  out.letters.resize(a.letters.size());
  out.phase = a.phase * b.phase;
  for (std::size_t q = 0; q < a.letters.size(); ++q) {
    auto [ph, c] = mul1(a.letters[q], b.letters[q]);
    out.phase *= ph;
    out.letters[q] = c;
  }
  return out;
}

Eigen::Matrix2cd pauli_letter_matrix(char letter) {
  Eigen::Matrix2cd m;
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cxd(0, -1), cxd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw Error(std::string("unknown Pauli letter '") + letter + "'");
  }
  return m;
}

Eigen::MatrixXcd pauli_word_matrix(const std::string& letters) {
  // letters[0] is the most significant Kronecker factor, matching the
  // register convention of the dense realizations.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : letters) {
    Eigen::Matrix2cd p = pauli_letter_matrix(c);
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (long r = 0; r < m.rows(); ++r)
      for (long s = 0; s < m.cols(); ++s)
        next.block(r * 2, s * 2, 2, 2) = m(r, s) * p;
    m.swap(next);
  }
  return m;
}

PauliPolynomial PauliPolynomial::identity(std::size_t qubits) {
  PauliPolynomial p(qubits);
  p.add(std::string(qubits, 'I'), cxd(1.0, 0.0));
  return p;
}

void PauliPolynomial::add(const std::string& letters, cxd weight) {
  if (letters.size() != qubits_) throw Error("pauli word length mismatch");
  cxd& w = words_[letters];
  w += weight;
  if (w == cxd(0.0, 0.0)) words_.erase(letters);
}

void PauliPolynomial::scale(cxd s) {
  if (s == cxd(0.0, 0.0)) {
    words_.clear();
    return;
  }
  for (auto& [k, w] : words_) w *= s;
}

PauliPolynomial& PauliPolynomial::operator+=(const PauliPolynomial& o) {
  if (o.qubits_ != qubits_) throw Error("pauli polynomial size mismatch");
  for (const auto& [k, w] : o.words_) add(k, w);
  return *this;
}

PauliPolynomial PauliPolynomial::operator*(const PauliPolynomial& o) const {
  if (o.qubits_ != qubits_) throw Error("pauli polynomial size mismatch");
  PauliPolynomial out(qubits_);
  for (const auto& [ka, wa] : words_)
    for (const auto& [kb, wb] : o.words_) {
      PauliString prod = pauli_mul({ka, 1.0}, {kb, 1.0});
      out.add(prod.letters, wa * wb * prod.phase);
    }
  return out;
}

Eigen::MatrixXcd PauliPolynomial::matrix() const {
  long dim = 1L << qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [k, w] : words_) m += w * pauli_word_matrix(k);
  return m;
}

Eigen::MatrixXcd qubit_matrix(const QubitHamiltonian& qh) {
  long dim = 1L << qh.qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [k, w] : qh.strings) m += w * pauli_word_matrix(k);
  return m;
}

namespace {

// Single-site image as (letter, weight) pairs; shared by both encoders.
std::vector<std::pair<char, cxd>> dim2_image(PrimitiveOp op) {
  const cxd half(0.5, 0.0), ihalf(0.0, 0.5);
  switch (op) {
    case PrimitiveOp::I: return {{'I', 1.0}};
    case PrimitiveOp::X: return {{'X', 1.0}};
    case PrimitiveOp::Y: return {{'Y', 1.0}};
    case PrimitiveOp::Z: return {{'Z', 1.0}};
    // With |0> the +1 eigenstate of Z, the raising operator |0><1| is
    // (X + iY)/2 and the occupation diag(0, 1) is (I - Z)/2.
    case PrimitiveOp::Splus: return {{'X', half}, {'Y', ihalf}};
    case PrimitiveOp::Sminus: return {{'X', half}, {'Y', -ihalf}};
    case PrimitiveOp::Create: return {{'X', half}, {'Y', -ihalf}};
    case PrimitiveOp::Annihilate: return {{'X', half}, {'Y', ihalf}};
    case PrimitiveOp::Number: return {{'I', half}, {'Z', -half}};
    case PrimitiveOp::N2: return {};  // n(n-1) vanishes on {0, 1}
  }
  throw Error("unreachable primitive");
}

bool needs_string(PrimitiveOp op) {
  return op == PrimitiveOp::Create || op == PrimitiveOp::Annihilate;
}

QubitHamiltonian realize(const PauliPolynomial& total, const char* what) {
  QubitHamiltonian qh;
  qh.qubits = total.qubits();
  for (const auto& [letters, w] : total.words()) {
    if (std::abs(w.imag()) > 1e-10)
      throw Error(std::string(what) +
                  ": encoded weight is not real; input is not Hermitian");
    if (std::abs(w.real()) < 1e-12) continue;
    qh.strings.emplace_back(letters, w.real());
  }
  return qh;  // map order is already lexicographic
}

QubitHamiltonian encode_dim2(const Hamiltonian& h, const char* what) {
  const SiteRegister& reg = h.site_register();
  if (!h.fully_bound())
    throw Error(std::string(what) + ": parameters must be bound first");
  std::size_t n = reg.size();
  PauliPolynomial total = PauliPolynomial::zero(n);
  for (const OperatorTerm& t : h.terms()) {
    PauliPolynomial prod = PauliPolynomial::identity(n);
    for (const TermFactor& f : t.factors())
      prod = prod * jw_factor_image(reg, f);
    prod.scale(t.coeff().numeric_value());
    total += prod;
  }
  return realize(total, what);
}

}  // namespace

PauliPolynomial jw_factor_image(const SiteRegister& reg, const TermFactor& f) {
  std::size_t n = reg.size();
  const Site& s = reg.site(f.site);
  PauliPolynomial out(n);
  std::string base(n, 'I');
  // Ladder operators on fermionic modes anticommute across sites; the Z
  // string over lower-indexed fermionic modes supplies exactly the sign the
  // occupation-basis realization carries.  Spin, qubit and hard-core boson
  // sites commute and stay out of every string.
  if (s.kind == SiteKind::FermionMode && needs_string(f.op))
    for (int j = 0; j < f.site; ++j)
      if (reg.site(j).kind == SiteKind::FermionMode) base[j] = 'Z';
  for (const auto& [letter, weight] : dim2_image(f.op)) {
    std::string word = base;
    word[f.site] = letter;
    out.add(word, weight);
  }
  return out;
}

QubitHamiltonian jordan_wigner(const Hamiltonian& h) {
  for (std::size_t i = 0; i < h.site_register().size(); ++i)
    if (h.site_register().site(static_cast<int>(i)).kind == SiteKind::BosonMode)
      throw Error("jordan_wigner: boson modes are not encodable; reduce them first");
  return encode_dim2(h, "jordan_wigner");
}

QubitHamiltonian boson_binary_reduce(const Hamiltonian& h) {
  const SiteRegister& reg = h.site_register();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const Site& s = reg.site(static_cast<int>(i));
    if (s.kind == SiteKind::FermionMode)
      throw Error("boson_binary_reduce: fermionic modes need the Jordan-Wigner path");
    if (s.kind == SiteKind::BosonMode && s.dim != 2)
      throw Error("boson_binary_reduce: occupation cutoff " +
                  std::to_string(s.dim) +
                  " unsupported; only hard-core (cutoff 2) modes reduce");
  }
  return encode_dim2(h, "boson_binary_reduce");
}

QubitHamiltonian encode_to_qubits(const Hamiltonian& h) {
  const SiteRegister& reg = h.site_register();
  bool any_boson = false;
  for (std::size_t i = 0; i < reg.size(); ++i)
    if (reg.site(static_cast<int>(i)).kind == SiteKind::BosonMode)
      any_boson = true;
  return any_boson ? boson_binary_reduce(h) : jordan_wigner(h);
}

EncodingMap parity_encode(const SiteRegister& target, int cutoff,
                          std::size_t dim_cap) {
  if (target.size() == 0)
    throw Error("non-alternating register: no sites");
  if (target.size() % 2 == 0)
    throw Error("non-alternating register: must end on a matter site");
  for (std::size_t i = 0; i < target.size(); ++i) {
    SiteKind expect =
        (i % 2 == 0) ? SiteKind::FermionMode : SiteKind::SpinHalf;
    if (target.site(static_cast<int>(i)).kind != expect)
      throw Error("non-alternating register: site " + std::to_string(i) +
                  " is " + site_kind_name(target.site(static_cast<int>(i)).kind) +
                  ", expected " + site_kind_name(expect));
  }
  EncodingMap out;
  std::vector<Site> sim(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    sim[i] = Site{SiteKind::BosonMode, cutoff};
    out.target_to_sim.push_back(static_cast<int>(i));
    out.roles.push_back(i % 2 == 0 ? EncodingMap::Role::Matter
                                   : EncodingMap::Role::GaugeLink);
  }
  out.simulator = SiteRegister(sim, dim_cap);
  return out;
}

EncodingMap identity_encoding(std::size_t sites, int cutoff,
                              std::size_t dim_cap) {
  if (sites == 0) throw Error("identity encoding needs at least one site");
  EncodingMap out;
  std::vector<Site> sim(sites, Site{SiteKind::BosonMode, cutoff});
  for (std::size_t i = 0; i < sites; ++i) {
    out.target_to_sim.push_back(static_cast<int>(i));
    out.roles.push_back(EncodingMap::Role::Matter);
  }
  out.simulator = SiteRegister(sim, dim_cap);
  return out;
}

}  // namespace hsim
