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
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pws/body.hpp"
#include "pws/kernels.hpp"
#include "pws/sphere.hpp"

namespace pws {

// (3 A - (4 / r) V) / A at scale r.
double minkowski_residual(const ConvexBody& K, double r, int panels = kDefaultPanels);

struct Profile {
  std::vector<double> rho;
  std::vector<double> f;
  double rho0 = 0.0;
  std::size_t argmin = 0;
  double min_second_difference = 0.0;
};

// f(rho) = rho^3 A1 + (V_E - rho^4 V1) / rho from the unit-scale area A1 and
// volume V1.
Profile profile_f(double A1, double V1, double E_volume, std::span<const double> rho);
Profile profile_f(const ConvexBody& K, double E_volume, std::span<const double> rho, int panels = kDefaultPanels);

struct GraphJet {
  double value = 0.0;
  PlanarVector grad;
};
struct GraphPair {
  GraphJet upper;
  GraphJet lower;
};

// Both graphs of the ball B_K at scale r over r K_0, solved along chords of
// K. Values are cached by point, so repeated quadratures over one grid cost a
// single solve per node.
class BallGraphs {
 public:
  explicit BallGraphs(WulffSphere S);

  GraphPair operator()(const PlanarVector& x) const;
  const WulffSphere& sphere() const { return S_; }
  const ConvexBody& difference_body() const { return K0_; }

 private:
  GraphPair solve(const PlanarVector& x) const;

  WulffSphere S_;
  ConvexBody K0_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<double, double>, GraphPair> cache_;
};

// Region between two graphs over r K_0 closed by the vertical wall over
// d(r K_0).
struct CompetitorSet {
  std::string name;
  ConvexBody body;
  ConvexBody base;  // K_0
  double r = 1.0;
  std::function<GraphPair(const PlanarVector&)> graphs;
};

struct PolarQuadrature {
  int sigma_panels = 12;
  int alpha_panels = 32;
};

struct PerimeterParts {
  double upper = 0.0;
  double lower = 0.0;
  double wall = 0.0;
  double volume = 0.0;
  double total() const { return upper + lower + wall; }
};

// Throws DataError on non-finite graph values or h_u < h_l.
PerimeterParts competitor_perimeter(const CompetitorSet& C, const PolarQuadrature& q = {});

// Integral of |nu_0|_* over d(r K_0).
double wall_density(const ConvexBody& K, const ConvexBody& K0, double r, const PolarQuadrature& q = {});

struct CalibrationResult {
  double perim_E = 0.0;
  double perim_ball = 0.0;
  double margin = 0.0;
  double volume = 0.0;
  double rho0 = 0.0;
};
CalibrationResult calibration_check(const CompetitorSet& C, double A1, double V1, const PolarQuadrature& q = {});

// Twelve graph-sandwich competitors built around the ball at scale r. The
// first entry is the ball itself.
std::vector<CompetitorSet> competitor_suite(std::shared_ptr<const BallGraphs> ball, double ball_volume);

// Symmetric max-min distance between vertex sets.
double hausdorff_distance(const Mesh& a, const Mesh& b, Exec exec = Exec::parallel);
double hausdorff_distance_reference(const Mesh& a, const Mesh& b);

struct ConvergenceRow {
  double ell = 0.0;
  double area = 0.0;
  double volume = 0.0;
  double hausdorff = 0.0;  // to the previous row, NaN for the first
};
struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  bool hausdorff_decreasing = true;
  bool area_cauchy = true;
  bool volume_cauchy = true;
  std::vector<std::string> warnings;
};

// family: "lp" or "tri"; ells strictly increasing or strictly decreasing.
ConvergenceTable convergence_study(const std::string& family, std::span<const double> ells, int nu = 64, int nv = 64,
                                   int panels = kDefaultPanels);

}  // namespace pws
