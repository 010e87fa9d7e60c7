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

#include "pws/lifting.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "pws/errors.hpp"
#include "pws/io.hpp"

namespace pws {
namespace {

bool finite(const HeisPoint& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.t); }
bool finite(const FrameVector& v) { return std::isfinite(v.a) && std::isfinite(v.b) && std::isfinite(v.c); }

double sample_residual(const FrameVector& v) { return std::abs(v.c) / (1.0 + norm(v.horizontal())); }

}  // namespace

LiftedCurve::LiftedCurve(std::vector<CurveSample> samples, std::optional<double> period)
    : samples_(std::move(samples)), period_(period) {
  if (samples_.empty()) throw DataError("LiftedCurve: no samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const CurveSample& c = samples_[i];
    if (!std::isfinite(c.s) || !finite(c.point) || !finite(c.velocity))
      throw DataError("LiftedCurve: non-finite sample");
    if (i > 0 && !(c.s > samples_[i - 1].s)) throw DataError("LiftedCurve: parameter not increasing");
    residual_ = std::max(residual_, sample_residual(c.velocity));
  }
}

LiftedCurve LiftedCurve::from_coordinates(std::span<const double> s, std::span<const HeisPoint> points,
                                          std::span<const CoordVector> velocities, std::optional<double> period) {
  if (s.size() != points.size() || s.size() != velocities.size())
    throw DataError("LiftedCurve: mismatched sample arrays");
  std::vector<CurveSample> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = {s[i], points[i], to_frame(points[i], velocities[i])};
  return LiftedCurve(std::move(out), period);
}

LiftedCurve horizontal_lift(const PlanarCurve& gamma, double t0, std::span<const double> grid, int subdivisions) {
  if (grid.empty()) throw DataError("horizontal_lift: empty grid");
  if (subdivisions < 1) throw DomainError("horizontal_lift: subdivisions must be >= 1");
  auto integrand = [&](double s) {
    const PlanarJet j = gamma(s);
    return dot(j.p, j_rotate(j.dp));
  };
  std::vector<CurveSample> out(grid.size());
  double t = t0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) {
      const double a = grid[i - 1], b = grid[i];
      for (int k = 0; k < subdivisions; ++k) {
        const double lo = a + (b - a) * k / subdivisions;
        const double hi = k + 1 == subdivisions ? b : a + (b - a) * (k + 1) / subdivisions;
        t += gauss_legendre(integrand, lo, hi);
      }
    }
    const PlanarJet j = gamma(grid[i]);
    const HeisPoint p{j.p.v1, j.p.v2, t};
    const CoordVector vel{j.dp.v1, j.dp.v2, dot(j.p, j_rotate(j.dp))};
    out[i] = {grid[i], p, to_frame(p, vel)};
  }
  return LiftedCurve(std::move(out), std::nullopt);
}

LiftedCurve lift_translated_loop(const ConvexBody& body, double v, int panels) {
  return lift_translated_loop(body, body.default_chart(), v, panels);
}

LiftedCurve lift_translated_loop(const ConvexBody& body, ChartKind chart, double v, int panels) {
  const double P = ConvexBody::kPeriod;
  std::vector<double> shifted;
  for (double k : body.chart_kinks(chart)) shifted.push_back(k - v);
  const auto kinks = wrap_kinks(shifted, 0.0, P);
  const auto grid = make_breaks(0.0, P, panels, kinks);
  const PlanarVector base = body.chart_point(chart, v, 1).p;
  PlanarCurve g = [&](double u) {
    const BoundaryJet j = body.chart_point(chart, u + v, 1);
    return PlanarJet{j.p - base, j.dp};
  };
  LiftedCurve lifted = horizontal_lift(g, 0.0, grid);
  return LiftedCurve(lifted.samples(), P);
}

PeriodicAntiderivative::PeriodicAntiderivative(std::function<double(double)> integrand, double period, int panels,
                                               std::span<const double> kinks)
    : f_(std::move(integrand)), period_(period) {
  breaks_ = make_breaks(0.0, period, panels, wrap_kinks(kinks, 0.0, period));
  cumulative_.assign(breaks_.size(), 0.0);
  std::vector<double> pieces(breaks_.size() - 1);
  for (std::size_t k = 0; k + 1 < breaks_.size(); ++k) pieces[k] = gauss_legendre(f_, breaks_[k], breaks_[k + 1]);
  double acc = 0.0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    acc += pieces[k];
    cumulative_[k + 1] = acc;
  }
  total_ = pairwise_sum(pieces);
}

double PeriodicAntiderivative::value(double s) const {
  const double n = std::floor(s / period_);
  double r = s - n * period_;
  if (r >= period_) r = 0.0;
  if (r < 0.0) r = 0.0;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), r);
  std::size_t k = static_cast<std::size_t>(it - breaks_.begin());
  k = k == 0 ? 0 : k - 1;
  if (k + 1 >= breaks_.size()) k = breaks_.size() - 2;
  double partial = 0.0;
  if (r > breaks_[k]) partial = gauss_legendre(f_, breaks_[k], r);
  return cumulative_[k] + partial + n * total_;
}

double PeriodicAntiderivative::periodic_part(double s) const { return value(s) - total_ * s / period_; }

PeriodicAntiderivative make_lift_table(const ConvexBody& body, ChartKind chart, int panels) {
  auto f = [body, chart](double s) {
    const BoundaryJet j = body.chart_point(chart, s, 1);
    return dot(j.p, j_rotate(j.dp));
  };
  return PeriodicAntiderivative(f, ConvexBody::kPeriod, panels, body.chart_kinks(chart));
}

ArcLengthTable::ArcLengthTable(const ConvexBody& body, ChartKind chart, int panels)
    : body_(body), chart_(chart) {
  auto f = [body, chart](double s) { return norm(body.chart_point(chart, s, 1).dp); };
  table_ = PeriodicAntiderivative(f, ConvexBody::kPeriod, panels, body.chart_kinks(chart));
}

double ArcLengthTable::param_at(double sigma) const {
  const double L = total(), P = ConvexBody::kPeriod;
  const double n = std::floor(sigma / L);
  const double r = sigma - n * L;
  auto f = [&](double s) {
    return std::make_pair(table_.value(s) - r, norm(body_.chart_point(chart_, s, 1).dp));
  };
  const double guess = std::clamp(r / L * P, 0.0, P);
  std::uintmax_t iters = 60;
  const double s = boost::math::tools::newton_raphson_iterate(f, guess, 0.0, P, 50, iters);
  return s + n * P;
}

void write_curve_csv(std::ostream& out, const LiftedCurve& curve) {
  out << "s,x,y,t,res\n";
  for (const auto& c : curve.samples())
    write_csv_row(out, {c.s, c.point.x, c.point.y, c.point.t, sample_residual(c.velocity)});
}

}  // namespace pws
