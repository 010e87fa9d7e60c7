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
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "pws/body.hpp"
#include "pws/heis.hpp"
#include "pws/kernels.hpp"
#include "pws/lifting.hpp"

namespace pws {

// The sphere S_K at scale r: the union over v of the lifts of the loops
// u -> gamma(u + v) - gamma(v), dilated by r. Chart (u, v) in [0, P] x R.
class WulffSphere {
 public:
  // chart defaults to body.default_chart().
  explicit WulffSphere(ConvexBody body, double r = 1.0, std::optional<ChartKind> chart = std::nullopt,
                       int lift_panels = kDefaultPanels);

  const ConvexBody& body() const { return body_; }
  double scale() const { return r_; }
  ChartKind chart() const { return chart_; }
  double period() const { return ConvexBody::kPeriod; }
  // t of the north pole, 2 r^2 |K|.
  double pole_height() const;

  // Unit-scale boundary chart and its horizontal lift.
  BoundaryJet gamma(double s, int order = 1) const { return body_.chart_point(chart_, s, order); }
  double lift(double s) const { return lift_->value(s); }
  const PeriodicAntiderivative& lift_table() const { return *lift_; }

 private:
  ConvexBody body_;
  double r_;
  ChartKind chart_;
  std::shared_ptr<const PeriodicAntiderivative> lift_;
};

// Left translate of Gamma(u + v) by Gamma(v)^{-1}, dilated by r. 0 <= u <= P.
HeisPoint sphere_point(const WulffSphere& S, double u, double v);

// The same surface written out in the radial chart with an independent
// quadrature of r(s)^2. Agrees with sphere_point when S uses the radial chart.
HeisPoint parametric_point(const ConvexBody& body, double r, double u, double v);

struct SurfaceSample {
  HeisPoint point;
  FrameVector normal;  // unit, outward, frame coefficients
  double nh_norm = 0.0;
  double nt = 0.0;
  double area_weight = 0.0;  // |d_u Phi x d_v Phi| in frame coordinates
  double h = 0.0;            // T-coefficient of the v-tangent, unit-speed tangents
  double g = 0.0;            // cross(T(v), T(u + v))
};

// Throws ChartError within 1e-6 P of the poles, and where the chart
// degenerates because the loop runs along a straight piece of the boundary.
SurfaceSample surface_sample(const WulffSphere& S, double u, double v);

double area(const WulffSphere& S, int panels = kDefaultPanels, Exec exec = Exec::parallel);
double volume(const WulffSphere& S, int panels = kDefaultPanels, Exec exec = Exec::parallel);
// Volume as the integral of t against the projected area element.
double volume_graph_route(const WulffSphere& S, int panels = kDefaultPanels, Exec exec = Exec::parallel);

// Straightforward quadrature in (u, v) built on sphere_point and the chart
// derivatives; slow, kept as a reference for the torus kernels.
double area_reference(const WulffSphere& S, int panels);
double volume_reference(const WulffSphere& S, int panels);

struct GraphValues {
  double upper = 0.0;
  double lower = 0.0;
  std::array<double, 2> upper_uv{};
  std::array<double, 2> lower_uv{};
};

// Both t-values of S over the planar point x, x strictly inside r K_0.
// Throws NumericalError if two distinct preimages are not found.
GraphValues graph_eval(const WulffSphere& S, const PlanarVector& x);

struct PoleRow {
  double u = 0.0;
  double h_over_g = 0.0;
  double h_over_g2_plus_inv_kappa = 0.0;
  double nt = 0.0;
};
std::vector<PoleRow> pole_diagnostics(const WulffSphere& S, double v0, std::span<const double> u_list);

// <d/ds pi(J T), T> along u -> Phi(u, v) parametrized by arc length.
double mean_curvature_at(const WulffSphere& S, double u, double v);

struct Mesh {
  std::vector<HeisPoint> vertices;
  std::vector<FrameVector> normals;
  std::vector<std::array<int, 3>> faces;  // 0-based, outward orientation
  bool capped = false;
};

// Rings at u_i = P (i + 1/2) / (nu + 1), i = 0..nu, nv periodic columns.
Mesh mesh(const WulffSphere& S, int nu, int nv, bool cap_poles = true, Exec exec = Exec::parallel);
void write_obj(std::ostream& out, const Mesh& m);
// Signed volume of a closed triangle mesh.
double mesh_volume(const Mesh& m);

}  // namespace pws
