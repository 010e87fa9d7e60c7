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

#include "pws/cmc.hpp"

#include <array>
#include <cmath>

#include "pws/errors.hpp"
#include "pws/io.hpp"

namespace pws {
namespace {

PlanarVector unit_or_throw(const PlanarVector& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cmc: velocity must be nonzero and finite");
  return v / n;
}

void validate(const CMCProblem& P) {
  if (!(P.H >= 0.0) || !std::isfinite(P.H)) throw DomainError("cmc: H must be finite and >= 0");
  unit_or_throw(P.vel);
}

}  // namespace

AccelSystem ode_system(const CMCProblem& P, const PlanarVector& vel) {
  const PlanarVector v = unit_or_throw(vel);
  const PlanarVector u = j_rotate(v);
  const PlanarVector p = P.body.pi_map(u);
  const Mat2 D = P.body.pi_jacobian(u);  // D.mij = d pi_i / d x_j at J(vel)
  AccelSystem s;
  s.support = P.body.support(u);
  const double g = p.v1 + v.v1 * D.m12 + v.v2 * D.m22;
  const double h = p.v2 - v.v1 * D.m11 - v.v2 * D.m21;
  s.M = {s.support + g * v.v2, h * v.v2, -g * v.v1, s.support - h * v.v1};
  s.rhs = {P.H * v.v2, -P.H * v.v1};
  s.det = s.support * dot(v, D * v);
  return s;
}

PlanarVector ode_accel(const CMCProblem& P, const PlanarVector& /*pos*/, const PlanarVector& vel) {
  if (P.H == 0.0) return {0.0, 0.0};
  const AccelSystem s = ode_system(P, vel);
  if (!(std::abs(s.det) >= 1e-12)) throw SingularSystemError("ode_accel: singular system (curvature of dK vanishes)");
  const double det = s.M.det();
  return {(s.M.m22 * s.rhs.v1 - s.M.m12 * s.rhs.v2) / det, (-s.M.m21 * s.rhs.v1 + s.M.m11 * s.rhs.v2) / det};
}

double planar_mean_curvature(const ConvexBody& body, const PlanarVector& vel, const PlanarVector& accel) {
  const PlanarVector v = unit_or_throw(vel);
  return dot(body.pi_jacobian(j_rotate(v)) * j_rotate(accel), v);
}

LiftedCurve integrate(const CMCProblem& P, double step, int n_steps) {
  validate(P);
  if (!(step > 0.0) || n_steps < 1) throw DomainError("integrate: need step > 0 and n_steps >= 1");
  using State = std::array<double, 5>;  // x1, x2, v1, v2, t
  auto rhs = [&](const State& y) {
    const PlanarVector a = ode_accel(P, {y[0], y[1]}, {y[2], y[3]});
    return State{y[2], y[3], a.v1, a.v2, y[2] * y[1] - y[3] * y[0]};
  };
  auto axpy = [](const State& y, double h, const State& k) {
    State o;
    for (int i = 0; i < 5; ++i) o[i] = y[i] + h * k[i];
    return o;
  };
  const PlanarVector v0 = unit_or_throw(P.vel);
  State y{P.pos.v1, P.pos.v2, v0.v1, v0.v2, P.t0};
  std::vector<CurveSample> out;
  out.reserve(n_steps + 1);
  auto record = [&](double s) {
    const HeisPoint p{y[0], y[1], y[4]};
    out.push_back({s, p, to_frame(p, {y[2], y[3], y[2] * y[1] - y[3] * y[0]})});
  };
  record(0.0);
  for (int k = 0; k < n_steps; ++k) {
    const State k1 = rhs(y);
    const State k2 = rhs(axpy(y, 0.5 * step, k1));
    const State k3 = rhs(axpy(y, 0.5 * step, k2));
    const State k4 = rhs(axpy(y, step, k3));
    for (int i = 0; i < 5; ++i) y[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    const double sp = std::hypot(y[2], y[3]);
    y[2] /= sp;
    y[3] /= sp;
    record((k + 1) * step);
  }
  return LiftedCurve(std::move(out), std::nullopt);
}

ClosedFormCMC::ClosedFormCMC(const CMCProblem& P) : problem_(P) {
  validate(P);
  problem_.vel = unit_or_throw(P.vel);
  if (P.H == 0.0) return;
  const ConvexBody& K = P.body;
  const ChartKind chart = K.default_chart();
  beta0_ = K.pi_map(j_rotate(problem_.vel));
  center_ = P.pos - beta0_ / P.H;
  arc_ = std::make_shared<const ArcLengthTable>(K, chart);
  lift_ = std::make_shared<const PeriodicAntiderivative>(make_lift_table(K, chart));
  tau0_ = K.chart_param(chart, beta0_);
  sigma0_ = arc_->length_at(tau0_);
}

std::optional<double> ClosedFormCMC::period() const {
  if (problem_.H == 0.0) return std::nullopt;
  return arc_->total() / problem_.H;
}

CurvePoint ClosedFormCMC::operator()(double s) const {
  const CMCProblem& P = problem_;
  if (P.H == 0.0) {
    const PlanarVector q = P.pos + s * P.vel;
    return {{q.v1, q.v2, P.t0 + s * cross(P.vel, P.pos)}, P.vel};
  }
  const ConvexBody& K = P.body;
  const ChartKind chart = K.default_chart();
  const double tau = arc_->param_at(sigma0_ + P.H * s);
  const BoundaryJet b = K.chart_point(chart, tau, 1);
  const PlanarVector q = center_ + b.p / P.H;
  const double t = P.t0 + dot(center_, j_rotate(b.p - beta0_)) / P.H +
                   (lift_->value(tau) - lift_->value(tau0_)) / (P.H * P.H);
  return {{q.v1, q.v2, t}, b.dp / norm(b.dp)};
}

LiftedCurve ClosedFormCMC::sample(std::span<const double> s) const {
  std::vector<CurveSample> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const CurvePoint c = (*this)(s[i]);
    const PlanarVector& v = c.velocity;
    out[i] = {s[i], c.point, to_frame(c.point, {v.v1, v.v2, v.v1 * c.point.y - v.v2 * c.point.x})};
  }
  return LiftedCurve(std::move(out), period());
}

double compare(const LiftedCurve& a, const LiftedCurve& b) {
  const auto& sa = a.samples();
  const auto& sb = b.samples();
  if (sa.size() != sb.size()) throw DataError("compare: curves have different sample counts");
  double m = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (std::abs(sa[i].s - sb[i].s) > 1e-12 * (1.0 + std::abs(sa[i].s)))
      throw DataError("compare: curves are sampled on different grids");
    m = std::max(m, distance(sa[i].point, sb[i].point));
  }
  return m;
}

void write_cmc_csv(std::ostream& out, const LiftedCurve& curve) {
  out << "s,x,y,t\n";
  for (const auto& c : curve.samples()) write_csv_row(out, {c.s, c.point.x, c.point.y, c.point.t});
}

}  // namespace pws
