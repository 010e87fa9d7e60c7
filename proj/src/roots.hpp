// Copyright 2026 The pwshapes Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "pws/errors.hpp"

namespace pws::detail {

inline double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

// Root of f in [a, b] given sign-changing endpoint values.
template <class F>
double bracket_root(F&& f, double a, double b, double fa, double fb, const char* what) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) throw NumericalError(std::string(what) + ": root not bracketed");
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(52);
  auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
  if (iters >= 200) throw NumericalError(std::string(what) + ": bracketing solver did not converge");
  return 0.5 * (r.first + r.second);
}

}  // namespace pws::detail
