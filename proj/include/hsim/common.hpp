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

#ifndef HSIM_COMMON_HPP
#define HSIM_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace hsim {

using cxd = std::complex<double>;

// Library-level failure: bad input, contract violation, numerical breakdown.
// The CLI maps this to exit code 2; parser problems are reported as
// Diagnostic values instead and never throw.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest decimal string that round-trips through a double ("1", "0.5",
// "1e+20", ...).  Used by the canonical model printer and the data writers so
// that re-running a deterministic pipeline reproduces files byte for byte.
std::string canon_double(double v);

// %.17g rendering, for places where a fixed significant-digit count is part
// of the file format (circuit export).
std::string full_double(double v);

}  // namespace hsim

#endif
