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

#ifndef HSIM_MODEL_HPP
#define HSIM_MODEL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hsim/operators.hpp"

// The .hml model language.  Line-oriented, case-sensitive, LF line endings,
// '#' comments:
//
//   model <name>
//   param <ident> [= <float>]
//   site <int> qubit|fermion|spin|boson(<int>)
//   hermitize
//   term <coeff> : <op>@<site> ...      op in I X Y Z Sp Sm Cr An N N2
//   meta <ident> "<string>"
//
// A coefficient is a sum of signed products of numbers, parameter names and
// the literal `i` (e.g. `1+0i`, `-0.5*kappa`, `2*i*J`).  `hermitize` appends
// the Hermitian conjugate of every term whose conjugate is not already
// present; for fermionic products the conjugate picks up the anticommutation
// reordering sign.

namespace hsim {

struct Diagnostic {
  enum class Severity { Warning, Error };
  Severity severity = Severity::Error;
  int line = 0;  // 1-based; 0 means model-level
  std::string message;
  std::string token;  // offending token, possibly empty
};

std::string diagnostic_to_string(const Diagnostic& d);

struct Model {
  std::string name;
  Hamiltonian hamiltonian;
  bool hermitize = false;
  std::vector<std::pair<std::string, std::string>> metadata;  // in file order

  bool operator==(const Model& o) const {
    return name == o.name && hamiltonian == o.hamiltonian &&
           hermitize == o.hermitize && metadata == o.metadata;
  }
};

struct ParseResult {
  std::optional<Model> model;  // present iff no error-severity diagnostics
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return model.has_value(); }
};

// Total: never throws, reports every problem with a 1-based line number.
ParseResult parse_model(const std::string& text, std::size_t dim_cap = 4096);

// Canonical, byte-stable form: params in declaration order, sites by index,
// merged terms with canonical coefficients.  parse(print(m)) == m.
std::string print_model(const Model& m);

// Semantic re-check of a built model.  Hermiticity failure is a warning, or
// an error when the model asked for `hermitize`; malformed `meta gauss`
// entries are errors.
std::vector<Diagnostic> validate(const Model& m);

// Conserved-charge definitions from `meta gauss "G:<k> = <coeff> : <factors>
// [; ...]"` entries.  Throws Error on malformed input.
struct GaussOperator {
  int index = 0;
  Hamiltonian op;
};
std::vector<GaussOperator> parse_gauss_operators(const Model& m);

std::string read_text_file(const std::string& path);  // throws Error

}  // namespace hsim

#endif
