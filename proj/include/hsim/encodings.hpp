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

#ifndef HSIM_ENCODINGS_HPP
#define HSIM_ENCODINGS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hsim/operators.hpp"

namespace hsim {

// One Pauli word with an explicit scalar phase.  The phase of a product of
// canonical words is always in {1, -1, i, -i}.
struct PauliString {
  std::string letters;  // one of 'I','X','Y','Z' per qubit
  cxd phase{1.0, 0.0};

  std::size_t size() const { return letters.size(); }
  bool operator==(const PauliString& o) const {
    return letters == o.letters && phase == o.phase;
  }
};

PauliString pauli_identity(std::size_t n);
PauliString pauli_mul(const PauliString& a, const PauliString& b);
Eigen::Matrix2cd pauli_letter_matrix(char letter);
Eigen::MatrixXcd pauli_word_matrix(const std::string& letters);  // phase-free

// Complex-linear combination of Pauli words: the scratch algebra in which
// per-factor images are composed before realness is enforced.  Words are
// keyed by their letters; phases are folded into the weights.
class PauliPolynomial {
 public:
  explicit PauliPolynomial(std::size_t qubits) : qubits_(qubits) {}
  static PauliPolynomial zero(std::size_t qubits) {
    return PauliPolynomial(qubits);
  }
  static PauliPolynomial identity(std::size_t qubits);

  std::size_t qubits() const { return qubits_; }
  const std::map<std::string, cxd>& words() const { return words_; }

  void add(const std::string& letters, cxd weight);
  void scale(cxd s);
  PauliPolynomial& operator+=(const PauliPolynomial& o);
  PauliPolynomial operator*(const PauliPolynomial& o) const;  // matrix product

  Eigen::MatrixXcd matrix() const;

 private:
  std::size_t qubits_;
  std::map<std::string, cxd> words_;
};

// Hermitian combination: real weights, words deduplicated and sorted.
struct QubitHamiltonian {
  std::size_t qubits = 0;
  std::vector<std::pair<std::string, double>> strings;  // lexicographic order
};

Eigen::MatrixXcd qubit_matrix(const QubitHamiltonian& qh);

// Image of one term factor under the fermion-to-qubit map: ladder operators
// on fermionic modes become (X -/+ iY)/2 dressed with a Z string over every
// lower-indexed fermionic mode; spin and qubit sites contribute no strings.
PauliPolynomial jw_factor_image(const SiteRegister& reg, const TermFactor& f);

// Requirements: parameters bound, no boson sites.  The result's dense matrix
// equals the occupation-basis matrix of `h` entry for entry.
QubitHamiltonian jordan_wigner(const Hamiltonian& h);

// Hard-core identification of cutoff-2 boson modes with qubits: Cr -> (X-iY)/2,
// N -> (I-Z)/2, N2 -> 0.  No strings; fermionic sites are rejected.
QubitHamiltonian boson_binary_reduce(const Hamiltonian& h);

// Dispatch: registers with boson sites take the hard-core reduction (all
// cutoffs must be 2); everything else goes through jordan_wigner.
QubitHamiltonian encode_to_qubits(const Hamiltonian& h);

// Structural placement of a matter/gauge chain onto simulator hardware:
// matter site l sits at simulator site 2l, the link (l, l+1) at 2l+1.
struct EncodingMap {
  enum class Role { Matter, GaugeLink, Unused };
  std::vector<int> target_to_sim;  // injective, indexed by target site
  std::vector<Role> roles;         // indexed by simulator site
  SiteRegister simulator;          // chain of BosonMode(cutoff)
};

EncodingMap parity_encode(const SiteRegister& target, int cutoff,
                          std::size_t dim_cap = 4096);

// One boson site per target site, identity index map, every site matter.
// For targets that are already qubit-shaped rather than staggered chains.
EncodingMap identity_encoding(std::size_t sites, int cutoff,
                              std::size_t dim_cap = 4096);

}  // namespace hsim

#endif
