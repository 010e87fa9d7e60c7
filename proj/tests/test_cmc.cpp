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

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pws/body.hpp"
#include "pws/cmc.hpp"
#include "pws/errors.hpp"
#include "pws/heis.hpp"

using namespace pws;

namespace {

ConvexBody fourier_body() { return make_fourier({1, 0, 0, 0.1, 0, 0, 0.05}); }

PlanarVector unit(double a) { return {std::cos(a), std::sin(a)}; }

std::vector<double> grid_of(const LiftedCurve& c) {
  std::vector<double> s;
  for (const auto& p : c.samples()) s.push_back(p.s);
  return s;
}

// One period of the integrator against the closed form at step period / 1e4.
double classification_error(const CMCProblem& P) {
  const ClosedFormCMC exact(P);
  const double period = *exact.period();
  const LiftedCurve num = integrate(P, period / 1e4, 10000);
  return compare(num, exact.sample(grid_of(num)));
}

}  // namespace

TEST_CASE("disk system reduces to rotation of the velocity") {
  const ConvexBody D = make_builtin(Disk{});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.0, 2 * oracle::kPi);
  for (int i = 0; i < 20; ++i) {
    const PlanarVector v = unit(U(rng));
    for (double H : {0.5, 1.0, 2.0}) {
      const CMCProblem P{D, H, {0.3, -0.2}, v, 0.0};
      const PlanarVector a = ode_accel(P, P.pos, v);
      CHECK(a.v1 == doctest::Approx(H * v.v2).scale(1.0).epsilon(1e-13));
      CHECK(a.v2 == doctest::Approx(-H * v.v1).scale(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("acceleration matches the curvature of the scaled boundary") {
  // A unit-speed curve c + dK / H with outer normal n = J(vel) has curvature
  // H / R(n), R the radius of curvature of dK there; it turns toward -n.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0.0, 2 * oracle::kPi);
  for (const ConvexBody& K : {parse_body("ellipse:1,1.5"), fourier_body(), parse_body("lp:3")}) {
    CAPTURE(K.name());
    for (int i = 0; i < 20; ++i) {
      const PlanarVector v = unit(U(rng));
      const PlanarVector n = j_rotate(v);
      const double R = K.support_jet(std::atan2(n.v2, n.v1)).radius();
      if (R < 1e-3) continue;
      const double H = 1.3;
      const CMCProblem P{K, H, {}, v, 0.0};
      const PlanarVector a = ode_accel(P, P.pos, v);
      const PlanarVector expect = -(H / R) * n;
      CHECK(norm(a - expect) <= 1e-8 * (1 + norm(expect)));
      CHECK(std::abs(dot(a, v)) <= 1e-9 * (1 + norm(a)));
    }
  }
}

TEST_CASE("unit circle solution") {
  const CMCProblem P{make_builtin(Disk{}), 1.0, {0.0, 0.0}, {1.0, 0.0}, 0.0};
  const double step = 1e-3;
  const int n = static_cast<int>(std::floor(2 * oracle::kPi / step));
  const LiftedCurve c = integrate(P, step, n);
  double worst = 0.0;
  for (const auto& p : c.samples()) {
    const double s = p.s;
    worst = std::max(worst, distance(p.point, {std::sin(s), std::cos(s) - 1, s - std::sin(s)}));
  }
  CHECK(worst <= 1e-8);

  const ClosedFormCMC exact(P);
  CHECK(exact.center().v1 == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(exact.center().v2 == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(*exact.period() == doctest::Approx(2 * oracle::kPi).epsilon(1e-12));
  CHECK(compare(c, exact.sample(grid_of(c))) <= 1e-8);
}

TEST_CASE("zero mean curvature gives straight lines") {
  for (const ConvexBody& K : {make_builtin(Disk{}), parse_body("lp:1.5"), parse_body("tri:2")}) {
    CAPTURE(K.name());
    const PlanarVector v = unit(0.7), x0{0.4, -1.1};
    const CMCProblem P{K, 0.0, x0, v, 0.25};
    CHECK(ode_accel(P, x0, v).v1 == 0.0);
    CHECK(ode_accel(P, x0, v).v2 == 0.0);
    const ClosedFormCMC line(P);
    CHECK_FALSE(line.period().has_value());
    const LiftedCurve c = integrate(P, 0.01, 500);
    double worst = 0.0;
    for (const auto& p : c.samples()) {
      const PlanarVector x = x0 + p.s * v;
      // Lift of a line: t' = x' y - y' x is constant along it.
      const double t = 0.25 + p.s * (v.v1 * x0.v2 - v.v2 * x0.v1);
      worst = std::max(worst, distance(p.point, {x.v1, x.v2, t}));
    }
    CHECK(worst <= 1e-12);
    CHECK(compare(c, line.sample(grid_of(c))) <= 1e-12);
  }
}

TEST_CASE("integrator follows the closed form over one period") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(0.0, 2 * oracle::kPi), X(-1.0, 1.0);
  for (const ConvexBody& K : {parse_body("ellipse:1,1.5"), fourier_body()}) {
    CAPTURE(K.name());
    for (double H : {0.5, 2.0}) {
      const CMCProblem P{K, H, {X(rng), X(rng)}, unit(U(rng)), X(rng)};
      CHECK(classification_error(P) <= 1e-6);
    }
  }
}

TEST_CASE("closed curves return with t advanced by twice the enclosed area") {
  const ConvexBody K = parse_body("ellipse:1,1.5");
  const CMCProblem P{K, 2.0, {0.2, 0.1}, unit(1.0), 0.5};
  const ClosedFormCMC exact(P);
  const double L = *exact.period();
  const CurvePoint end = exact(L);
  CHECK(end.point.x == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(end.point.y == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(end.point.t == doctest::Approx(0.5 + 2 * K.area() / 4).epsilon(1e-10));
  CHECK(L == doctest::Approx(K.perimeter() / 2).epsilon(1e-12));
}

TEST_CASE("fourth-order convergence") {
  const CMCProblem P{parse_body("ellipse:1,1.5"), 1.0, {0, 0}, unit(0.3), 0.0};
  const ClosedFormCMC exact(P);
  auto err = [&](double step) {
    const int n = static_cast<int>(std::lround(4.0 / step));
    const LiftedCurve c = integrate(P, step, n);
    return compare(c, exact.sample(grid_of(c)));
  };
  const double ratio = err(0.04) / err(0.02);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

// lp(3) is left out: its boundary has flat points, the closed form is not
// the only solution through them and the integrator drifts off it by ~1e-3.
TEST_CASE("invariants along integrated curves") {
  for (const ConvexBody& K : {parse_body("ellipse:1,1.5"), fourier_body()}) {
    CAPTURE(K.name());
    const double H = 1.5;
    const CMCProblem P{K, H, {0.3, 0.2}, unit(0.4), 0.0};
    const ClosedFormCMC exact(P);
    const LiftedCurve c = integrate(P, 1e-3, 3000);
    double speed = 0.0, mc = 0.0, gauge = 0.0;
    for (const auto& p : c.samples()) {
      const PlanarVector x{p.point.x, p.point.y}, v = p.velocity.horizontal();
      speed = std::max(speed, std::abs(norm(v) - 1));
      CHECK(p.velocity.is_horizontal(1e-12));
      const PlanarVector a = ode_accel(P, x, v);
      mc = std::max(mc, std::abs(planar_mean_curvature(K, v, a) - H));
      gauge = std::max(gauge, std::abs(K.gauge(H * (x - exact.center())) - 1));
    }
    CHECK(speed <= 1e-10);
    CHECK(mc <= 1e-6);
    CHECK(gauge <= 1e-8);
  }
}

TEST_CASE("doubling the mean curvature halves the curve") {
  const ConvexBody K = fourier_body();
  const ClosedFormCMC one(CMCProblem{K, 1.0, {0, 0}, unit(2.0), 0.0});
  const ClosedFormCMC two(CMCProblem{K, 2.0, {0, 0}, unit(2.0), 0.0});
  CHECK(*two.period() == doctest::Approx(*one.period() / 2).epsilon(1e-12));
  for (double s : {0.1, 0.9, 2.2, 3.0}) {
    CHECK(distance(two(s / 2).point, dilate(0.5, one(s).point)) <= 1e-10);
  }
}

TEST_CASE("bodies with zero radius of curvature make the system singular") {
  // lp(1.5) has a corner-like flat curvature at the axis normals: R = 0 there.
  const ConvexBody K = parse_body("lp:1.5");
  const CMCProblem P{K, 1.0, {0, 0}, {1.0, 0.0}, 0.0};
  CHECK_THROWS_AS(ode_accel(P, P.pos, P.vel), SingularSystemError);
  CHECK_THROWS_AS(integrate(P, 1e-3, 10), SingularSystemError);
}

TEST_CASE("compare and CSV") {
  const CMCProblem P{make_builtin(Disk{}), 1.0, {0, 0}, {1, 0}, 0.0};
  const LiftedCurve a = integrate(P, 0.1, 10);
  CHECK(compare(a, a) == 0.0);
  const LiftedCurve b = integrate(P, 0.1, 11);
  CHECK_THROWS_AS(compare(a, b), DataError);
  const LiftedCurve c = integrate(P, 0.11, 10);
  CHECK_THROWS_AS(compare(a, c), DataError);

  std::ostringstream os;
  write_cmc_csv(os, a);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "s,x,y,t");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 11);
}
