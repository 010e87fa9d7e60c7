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

#include <memory>
#include <ostream>
#include <span>

#include "pws/body.hpp"
#include "pws/heis.hpp"
#include "pws/lifting.hpp"

namespace pws {

// Horizontal curve of constant mean curvature H, parametrized by arc length.
struct CMCProblem {
  ConvexBody body;
  double H = 1.0;
  PlanarVector pos;
  PlanarVector vel{1.0, 0.0};
  double t0 = 0.0;
};

// The linear system M (x1'', x2'')^T = H (x2', -x1')^T.
struct AccelSystem {
  Mat2 M;
  PlanarVector rhs;
  double support = 0.0;  // |J(vel)|_*
  double det = 0.0;      // support * sum_ij x_i' x_j' d pi_i / d x_j
};
AccelSystem ode_system(const CMCProblem& P, const PlanarVector& vel);

// Throws SingularSystemError if |det| < 1e-12.
PlanarVector ode_accel(const CMCProblem& P, const PlanarVector& pos, const PlanarVector& vel);

// <d/ds pi(J gamma'), gamma'> for a unit velocity and acceleration.
double planar_mean_curvature(const ConvexBody& body, const PlanarVector& vel, const PlanarVector& accel);

// Fixed-step classical Runge-Kutta on (x, x', t), velocity renormalized after
// every step. Returns n_steps + 1 samples at s = k step.
LiftedCurve integrate(const CMCProblem& P, double step, int n_steps);

struct CurvePoint {
  HeisPoint point;
  PlanarVector velocity;
};

// Exact solution: a line for H = 0, otherwise the lift of c + (1/H) dK
// traversed at unit speed.
class ClosedFormCMC {
 public:
  explicit ClosedFormCMC(const CMCProblem& P);

  CurvePoint operator()(double s) const;
  // L / H for H > 0, none for lines.
  std::optional<double> period() const;
  PlanarVector center() const { return center_; }

  LiftedCurve sample(std::span<const double> s) const;

 private:
  CMCProblem problem_;
  PlanarVector center_;
  double sigma0_ = 0.0;
  double tau0_ = 0.0;
  PlanarVector beta0_;
  std::shared_ptr<const ArcLengthTable> arc_;
  std::shared_ptr<const PeriodicAntiderivative> lift_;
};

inline ClosedFormCMC closed_form_cmc(const CMCProblem& P) { return ClosedFormCMC(P); }

// Max Euclidean distance in (x, y, t) between samples with equal s.
// Throws DataError if the grids differ.
double compare(const LiftedCurve& a, const LiftedCurve& b);

// CSV with columns s,x,y,t.
void write_cmc_csv(std::ostream& out, const LiftedCurve& curve);

}  // namespace pws
