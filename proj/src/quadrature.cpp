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

#include "pws/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "pws/errors.hpp"

namespace pws {

const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    using G = boost::math::quadrature::gauss<double, kGaussNodes>;
    const auto& xs = G::abscissa();
    const auto& ws = G::weights();
    GaussRule r{};
    constexpr int half = kGaussNodes / 2;
    for (int k = 0; k < half; ++k) {
      r.x[half - 1 - k] = -xs[k];
      r.w[half - 1 - k] = ws[k];
      r.x[half + k] = xs[k];
      r.w[half + k] = ws[k];
    }
    return r;
  }();
  return rule;
}

namespace {

constexpr double kGradingRatio = 0.35;
constexpr int kGradingLevels = 20;

}  // namespace

std::vector<double> make_breaks(double a, double b, int panels, std::span<const double> extra) {
  if (panels < 1 || !(b > a)) throw DomainError("make_breaks: need panels >= 1 and b > a");
  const double h = (b - a) / panels;
  const double snap = 1e-12 * (b - a);
  std::vector<double> kinks;
  for (double e : extra) {
    if (e < a - snap || e > b + snap) continue;
    kinks.push_back(std::clamp(e, a, b));
  }
  std::sort(kinks.begin(), kinks.end());
  auto nearest_kink = [&](double x) {
    double best = b - a;
    for (double k : kinks) best = std::min(best, std::abs(x - k));
    return best;
  };
  std::vector<double> br;
  br.reserve(panels + 1 + kinks.size() * (2 * kGradingLevels + 3));
  // Uniform breaks closer than one panel to a kink are replaced by the
  // graded ones below; otherwise a break just short of the kink leaves a
  // full-width neighbour panel that sees the singularity almost at its end.
  for (int k = 0; k <= panels; ++k) {
    const double x = k == panels ? b : a + h * k;
    if (k == 0 || k == panels || nearest_kink(x) >= h) br.push_back(x);
  }
  // Geometric refinement toward each kink: the integrands lose smoothness
  // there (e.g. a square-root singularity in the chart velocity), and equal
  // panels ending at the kink converge only algebraically.
  for (double k : kinks) {
    br.push_back(k);
    for (int j = 0; j <= kGradingLevels; ++j) {
      const double d = h * std::pow(kGradingRatio, j);
      if (d < 16.0 * snap) break;
      for (double x : {k - d, k + d}) {
        if (x > a + snap && x < b - snap && nearest_kink(x) > d * (1.0 - 1e-9)) br.push_back(x);
      }
    }
  }
  std::sort(br.begin(), br.end());
  std::vector<double> out;
  out.reserve(br.size());
  for (double x : br) {
    if (out.empty() || x - out.back() > snap) out.push_back(x);
  }
  out.back() = b;
  return out;
}

PanelRule make_panel_rule(double a, double b, int panels, std::span<const double> extra) {
  PanelRule r;
  r.breaks = make_breaks(a, b, panels, extra);
  const GaussRule& g = gauss_rule();
  const std::size_t np = r.breaks.size() - 1;
  r.nodes.reserve(np * kGaussNodes);
  r.weights.reserve(np * kGaussNodes);
  for (std::size_t p = 0; p < np; ++p) {
    const double c = 0.5 * (r.breaks[p] + r.breaks[p + 1]);
    const double h = 0.5 * (r.breaks[p + 1] - r.breaks[p]);
    for (int k = 0; k < kGaussNodes; ++k) {
      r.nodes.push_back(c + h * g.x[k]);
      r.weights.push_back(h * g.w[k]);
    }
  }
  return r;
}

std::vector<double> wrap_kinks(std::span<const double> kinks, double a, double period) {
  std::vector<double> out;
  out.reserve(kinks.size() + 1);
  for (double k : kinks) {
    double s = std::fmod(k - a, period);
    if (s < 0) s += period;
    if (period - s < 1e-12 * period) s = 0.0;
    out.push_back(a + s);
    if (s == 0.0) out.push_back(a + period);
  }
  return out;
}

namespace {
double pairwise(const double* p, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += p[i];
    return s;
  }
  const std::size_t m = n / 2;
  return pairwise(p, m) + pairwise(p + m, n - m);
}
}  // namespace

double pairwise_sum(std::span<const double> values) { return pairwise(values.data(), values.size()); }

}  // namespace pws
