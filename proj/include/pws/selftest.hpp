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

#include <cstdint>
#include <string>
#include <vector>

namespace pws {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Module names accepted by selftest().
const std::vector<std::string>& selftest_modules();

// Invariant suite of one module: heis, body, lifting, sphere, ode, isoperim,
// converge. Randomized checks draw from a generator seeded with `seed`.
// Throws DomainError for an unknown module.
std::vector<CheckResult> selftest(const std::string& module, std::uint64_t seed);

}  // namespace pws
