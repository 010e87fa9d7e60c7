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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pws {

inline constexpr int kGaussNodes = 8;
inline constexpr int kDefaultPanels = 512;

// 8-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::array<double, kGaussNodes> x;
  std::array<double, kGaussNodes> w;
};
const GaussRule& gauss_rule();

template <class F>
double gauss_legendre(F&& f, double a, double b) {
  const GaussRule& g = gauss_rule();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int k = 0; k < kGaussNodes; ++k) s += g.w[k] * f(c + h * g.x[k]);
  return h * s;
}

// Composite rule on [a, b]: `panels` equal panels, further split at every
// point of `extra` (kinks of the integrand) inside [a, b]. Within one panel
// width of a kink the uniform breaks give way to a geometric grading toward it.
struct PanelRule {
  std::vector<double> breaks;  // panel endpoints, a = breaks.front()
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t num_panels() const { return breaks.size() - 1; }
  std::size_t size() const { return nodes.size(); }
};

PanelRule make_panel_rule(double a, double b, int panels, std::span<const double> extra = {});

// Breakpoints of make_panel_rule without the nodes.
std::vector<double> make_breaks(double a, double b, int panels, std::span<const double> extra = {});

// Maps periodic kink locations into [a, a + period]. A kink at a is also
// reported at a + period so both ends of a periodic interval get graded.
std::vector<double> wrap_kinks(std::span<const double> kinks, double a, double period);

double pairwise_sum(std::span<const double> values);

}  // namespace pws
