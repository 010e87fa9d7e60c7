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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pws/quadrature.hpp"

namespace pws {

enum class Exec { serial, parallel };

// Sum of row(i) for i < n. Rows are evaluated independently and combined by
// pairwise summation in index order, so both execution modes return the same
// bits.
template <class Row>
double sum_rows(std::size_t n, Row&& row, Exec exec) {
  std::vector<double> rows(n);
  const auto count = static_cast<std::int64_t>(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < count; ++i) rows[i] = row(static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < count; ++i) rows[i] = row(static_cast<std::size_t>(i));
  }
  return pairwise_sum(rows);
}

// Calls f(i) for i < n; f must only write slot i of its outputs.
template <class F>
void for_each_index(std::size_t n, F&& f, Exec exec) {
  const auto count = static_cast<std::int64_t>(n);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
  }
}

int max_threads();

}  // namespace pws
