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

#ifndef HSIM_COEFFICIENT_HPP
#define HSIM_COEFFICIENT_HPP

#include <map>
#include <string>
#include <vector>

#include "hsim/common.hpp"

namespace hsim {

// Linear coefficient algebra over named real parameters: sums of monomials
//
//   c * sym_1 * sym_2 * ... ,   c complex (the literal `i` is folded into c)
//
// which is exactly what the model grammar can express (signs and products,
// no division).  Monomials are kept canonical: symbol lists sorted, exact
// zeros dropped, like monomials merged.  Equality is structural.
class Coefficient {
 public:
  using Symbols = std::vector<std::string>;  // sorted, may repeat a name

  Coefficient() = default;  // zero
  Coefficient(double re) : Coefficient(cxd(re, 0.0)) {}
  Coefficient(cxd value);
  static Coefficient symbol(const std::string& name);

  Coefficient& operator+=(const Coefficient& o);
  friend Coefficient operator+(Coefficient a, const Coefficient& b) {
    a += b;
    return a;
  }
  Coefficient operator-() const;
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b) {
    return a + (-b);
  }
  Coefficient operator*(const Coefficient& o) const;

  // Complex conjugate; parameters are real so symbols are untouched.
  Coefficient conj() const;

  bool is_zero() const { return terms_.empty(); }
  bool is_numeric() const;
  cxd numeric_value() const;  // requires is_numeric()

  // All bindings must cover the symbols used; missing names are reported.
  cxd evaluate(const std::map<std::string, double>& bindings) const;
  // Partial substitution: bound symbols are folded into the scalars.
  Coefficient substitute(const std::map<std::string, double>& bindings) const;

  std::vector<std::string> symbols() const;  // distinct, sorted

  bool operator==(const Coefficient& o) const { return terms_ == o.terms_; }
  bool operator!=(const Coefficient& o) const { return !(*this == o); }

  // Canonical rendering, re-parsable by the model grammar.  Purely numeric
  // values always print as "re+imi" (e.g. "1+0i"); symbolic monomials print
  // as '*'-joined products, constants last.
  std::string to_string() const;

 private:
  std::map<Symbols, cxd> terms_;
  void prune();
};

}  // namespace hsim

#endif
