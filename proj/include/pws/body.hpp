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
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pws/heis.hpp"

namespace pws {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// h(theta) and its first two derivatives in theta.
struct SupportJet {
  double h = 0.0;
  double dh = 0.0;
  double d2h = 0.0;

  // Radius of curvature of the boundary at the point with this outer normal.
  double radius() const { return h + d2h; }
};

struct GaugeJet {
  double value = 0.0;
  PlanarVector grad;
  Mat2 hess;
};

// gamma(s) with first and second derivatives in the chart parameter.
struct BoundaryJet {
  PlanarVector p;
  PlanarVector dp;
  PlanarVector d2p;
};

// radial: gamma(s) = r(s) (sin s, cos s).
// affine: (a1 sin s, a2 cos s), only offered by ellipses.
enum class ChartKind { radial, affine };

struct Disk {};
struct Ellipse {
  double a1 = 1.0;
  double a2 = 1.0;
};
struct Lp {
  double ell = 2.0;
};
struct SmoothedTriangle {
  double ell = 2.0;
};
using BodyFamily = std::variant<Disk, Ellipse, Lp, SmoothedTriangle>;

// Backing model of a body. Implementations provide the gauge with its
// derivatives; the support function is optional and is otherwise recovered
// by maximizing over the radial chart.
class BodyModel {
 public:
  virtual ~BodyModel() = default;

  virtual std::string name() const = 0;
  // order 0: value only; 1: + gradient; 2: + Hessian. v != 0.
  virtual GaugeJet gauge_jet(const PlanarVector& v, int order) const = 0;
  virtual std::optional<SupportJet> support_jet(double theta) const {
    (void)theta;
    return std::nullopt;
  }
  virtual std::optional<BoundaryJet> affine_chart(double s, int order) const {
    (void)s;
    (void)order;
    return std::nullopt;
  }
  virtual std::optional<double> affine_param(const PlanarVector& p) const {
    (void)p;
    return std::nullopt;
  }
  // Radial-chart parameters where the boundary loses smoothness.
  virtual std::vector<double> radial_kinks() const { return {}; }
  virtual bool centrally_symmetric() const { return false; }
};

class ConvexBody {
 public:
  static constexpr double kPeriod = kTwoPi;

  explicit ConvexBody(std::shared_ptr<const BodyModel> model);

  const std::string& name() const { return name_; }
  const BodyModel& model() const { return *model_; }

  double gauge(const PlanarVector& v) const;
  GaugeJet gauge_jet(const PlanarVector& v, int order = 2) const;

  double support(const PlanarVector& u) const;
  SupportJet support_jet(double theta) const;
  // Boundary point of unit direction `dir` scaled to the boundary.
  double radial(const PlanarVector& dir) const;

  PlanarVector pi_map(const PlanarVector& u) const;
  Mat2 pi_jacobian(const PlanarVector& u) const;

  // Radial chart, clockwise, period 2 pi.
  BoundaryJet boundary_point(double s, int order = 2) const;
  BoundaryJet chart_point(ChartKind chart, double s, int order = 2) const;
  double chart_param(ChartKind chart, const PlanarVector& p) const;
  ChartKind default_chart() const { return affine_ ? ChartKind::affine : ChartKind::radial; }
  bool has_chart(ChartKind chart) const { return chart == ChartKind::radial || affine_; }
  std::vector<double> chart_kinks(ChartKind chart) const;

  // Geodesic curvature (ydot xddot - xdot yddot) / |gamma dot|^3 at chart parameter s.
  double curvature(ChartKind chart, double s) const;

  double area() const { return area_; }
  double perimeter() const { return perimeter_; }
  double max_radius() const { return max_radius_; }
  bool centrally_symmetric() const { return model_->centrally_symmetric(); }

  ConvexBody difference_body() const;

 private:
  struct SupportPoint {
    SupportJet jet;
    PlanarVector point;
  };
  SupportPoint support_point(double theta) const;
  SupportPoint support_by_chart(double theta) const;

  std::shared_ptr<const BodyModel> model_;
  std::string name_;
  bool affine_ = false;
  double area_ = 0.0;
  double perimeter_ = 0.0;
  double max_radius_ = 0.0;
};

ConvexBody make_builtin(const BodyFamily& family);

// h(theta) = c0 + sum_k (a_k cos k theta + b_k sin k theta), coefficients
// ordered [c0, a1, b1, a2, b2, ...]. Throws DomainError unless h > 0 and
// h + h'' >= 1e-6 on a 4096-point grid.
ConvexBody make_fourier(std::vector<double> coeffs);

// Body with a user-supplied support function. The support must describe a
// convex body containing 0 in its interior.
ConvexBody make_support_body(std::string name, std::function<SupportJet(double)> support, bool symmetric);

// Reads `fourier_h = [c0, a1, b1, ...]` from a text file.
std::vector<double> read_fourier_config(const std::string& path);

// disk | ellipse:a1,a2 | lp:ell | tri:ell | fourier:path
ConvexBody parse_body(const std::string& spec);

}  // namespace pws
