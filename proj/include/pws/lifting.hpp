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

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "pws/body.hpp"
#include "pws/heis.hpp"
#include "pws/quadrature.hpp"

namespace pws {

struct CurveSample {
  double s = 0.0;
  HeisPoint point;
  FrameVector velocity;
};

class LiftedCurve {
 public:
  LiftedCurve() = default;
  // Throws DataError on non-finite data or non-increasing s.
  LiftedCurve(std::vector<CurveSample> samples, std::optional<double> period);

  // From coordinate velocities; the frame velocity is computed with to_frame.
  static LiftedCurve from_coordinates(std::span<const double> s, std::span<const HeisPoint> points,
                                      std::span<const CoordVector> velocities, std::optional<double> period);

  const std::vector<CurveSample>& samples() const { return samples_; }
  std::optional<double> period() const { return period_; }
  double horizontality_residual() const { return residual_; }
  const HeisPoint& end() const { return samples_.back().point; }

 private:
  std::vector<CurveSample> samples_;
  std::optional<double> period_;
  double residual_ = 0.0;
};

inline double horizontality_residual(const LiftedCurve& c) { return c.horizontality_residual(); }

struct PlanarJet {
  PlanarVector p;
  PlanarVector dp;
};
using PlanarCurve = std::function<PlanarJet(double)>;

// t(s) = t0 + int_{grid[0]}^{s} <gamma, J gamma'>, evaluated with 8-point
// Gauss-Legendre on each grid interval split into `subdivisions` pieces.
LiftedCurve horizontal_lift(const PlanarCurve& gamma, double t0, std::span<const double> grid, int subdivisions = 1);

// Lift of u -> gamma(u + v) - gamma(v) from the origin over u in [0, P].
LiftedCurve lift_translated_loop(const ConvexBody& body, double v, int panels = kDefaultPanels);
LiftedCurve lift_translated_loop(const ConvexBody& body, ChartKind chart, double v, int panels = kDefaultPanels);

// Antiderivative of a P-periodic integrand, tabulated at panel breakpoints.
// value(s) is valid for every real s and grows by `period_increment()` per
// period.
class PeriodicAntiderivative {
 public:
  PeriodicAntiderivative() = default;
  PeriodicAntiderivative(std::function<double(double)> integrand, double period, int panels,
                         std::span<const double> kinks);

  double value(double s) const;
  double period_increment() const { return total_; }
  double period() const { return period_; }
  // value(s) - period_increment() * s / period(), which is periodic.
  double periodic_part(double s) const;

 private:
  std::function<double(double)> f_;
  double period_ = 0.0;
  std::vector<double> breaks_;
  std::vector<double> cumulative_;
  double total_ = 0.0;
};

// t(s) = int_0^s <gamma, J gamma'> for a chart of the boundary.
PeriodicAntiderivative make_lift_table(const ConvexBody& body, ChartKind chart, int panels = kDefaultPanels);

// Arc length of a chart with its inverse.
class ArcLengthTable {
 public:
  ArcLengthTable(const ConvexBody& body, ChartKind chart, int panels = kDefaultPanels);

  double length_at(double s) const { return table_.value(s); }
  double param_at(double sigma) const;
  double total() const { return table_.period_increment(); }

 private:
  ConvexBody body_;
  ChartKind chart_;
  PeriodicAntiderivative table_;
};

// CSV with columns s,x,y,t,res (res = |c| / (1 + |(a, b)|) per sample).
void write_curve_csv(std::ostream& out, const LiftedCurve& curve);

}  // namespace pws
