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

#include "hsim/coefficient.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace hsim {

std::string canon_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string full_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Coefficient::Coefficient(cxd value) {
  if (value != cxd(0.0, 0.0)) terms_[{}] = value;
}

Coefficient Coefficient::symbol(const std::string& name) {
  Coefficient c;
  c.terms_[{name}] = cxd(1.0, 0.0);
  return c;
}

void Coefficient::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == cxd(0.0, 0.0))
      it = terms_.erase(it);
    else
      ++it;
  }
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
  for (const auto& [syms, val] : o.terms_) terms_[syms] += val;
  prune();
  return *this;
}

Coefficient Coefficient::operator-() const {
  Coefficient r = *this;
  for (auto& [syms, val] : r.terms_) val = -val;
  return r;
}

Coefficient Coefficient::operator*(const Coefficient& o) const {
  Coefficient r;
  for (const auto& [sa, va] : terms_)
    for (const auto& [sb, vb] : o.terms_) {
      Symbols merged = sa;
      merged.insert(merged.end(), sb.begin(), sb.end());
      std::sort(merged.begin(), merged.end());
      r.terms_[merged] += va * vb;
    }
  r.prune();
  return r;
}

Coefficient Coefficient::conj() const {
  Coefficient r = *this;
  for (auto& [syms, val] : r.terms_) val = std::conj(val);
  r.prune();
  return r;
}

bool Coefficient::is_numeric() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

cxd Coefficient::numeric_value() const {
  if (terms_.empty()) return {0.0, 0.0};
  if (!is_numeric()) throw Error("coefficient is symbolic; bind parameters first");
  return terms_.begin()->second;
}

cxd Coefficient::evaluate(const std::map<std::string, double>& bindings) const {
  cxd total{0.0, 0.0};
  for (const auto& [syms, val] : terms_) {
    cxd v = val;
    for (const auto& s : syms) {
      auto it = bindings.find(s);
      if (it == bindings.end())
        throw Error("unbound parameter '" + s + "' in coefficient");
      v *= it->second;
    }
    total += v;
  }
  return total;
}

Coefficient Coefficient::substitute(const std::map<std::string, double>& bindings) const {
  Coefficient r;
  for (const auto& [syms, val] : terms_) {
    cxd v = val;
    Symbols rest;
    for (const auto& s : syms) {
      auto it = bindings.find(s);
      if (it != bindings.end())
        v *= it->second;
      else
        rest.push_back(s);
    }
    r.terms_[rest] += v;
  }
  r.prune();
  return r;
}

std::vector<std::string> Coefficient::symbols() const {
  std::vector<std::string> out;
  for (const auto& [syms, val] : terms_)
    for (const auto& s : syms)
      if (!std::binary_search(out.begin(), out.end(), s))
        out.insert(std::upper_bound(out.begin(), out.end(), s), s);
  return out;
}

namespace {

// One printed summand: sign, optional scalar, optional i, symbols.
void print_part(std::ostringstream& os, bool first, double value, bool imag,
                const Coefficient::Symbols& syms) {
  double mag = std::abs(value);
  if (value < 0)
    os << '-';
  else if (!first)
    os << '+';
  std::vector<std::string> atoms;
  if (mag != 1.0 || (!imag && syms.empty())) atoms.push_back(canon_double(mag));
  if (imag) atoms.push_back("i");
  for (const auto& s : syms) atoms.push_back(s);
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (k) os << '*';
    os << atoms[k];
  }
}

}  // namespace

std::string Coefficient::to_string() const {
  if (is_numeric()) {
    cxd v = terms_.empty() ? cxd(0, 0) : terms_.begin()->second;
    double re = v.real() == 0.0 ? 0.0 : v.real();
    double im = v.imag() == 0.0 ? 0.0 : v.imag();
    std::string s = canon_double(re);
    s += im < 0 ? '-' : '+';
    s += canon_double(std::abs(im));
    s += 'i';
    return s;
  }
  std::ostringstream os;
  bool first = true;
  // symbolic monomials first, numeric remainder last
  for (const auto& [syms, val] : terms_) {
    if (syms.empty()) continue;
    if (val.real() != 0.0) {
      print_part(os, first, val.real(), false, syms);
      first = false;
    }
    if (val.imag() != 0.0) {
      print_part(os, first, val.imag(), true, syms);
      first = false;
    }
  }
  auto it = terms_.find(Symbols{});
  if (it != terms_.end()) {
    if (it->second.real() != 0.0) {
      print_part(os, first, it->second.real(), false, {});
      first = false;
    }
    if (it->second.imag() != 0.0) {
      print_part(os, first, it->second.imag(), true, {});
      first = false;
    }
  }
  return os.str();
}

}  // namespace hsim
