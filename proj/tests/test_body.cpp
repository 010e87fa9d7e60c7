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
#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "pws/body.hpp"
#include "pws/errors.hpp"

using namespace pws;

namespace {

const std::string kBodies[] = {"disk", "ellipse:1,1.5", "lp:1.5", "lp:3", "tri:2"};

PlanarVector unit(double a) { return {std::cos(a), std::sin(a)}; }

ConvexBody fourier_body() { return make_fourier({1.0, 0.0, 0.0, 0.1, 0.0, 0.0, 0.05}); }

}  // namespace

TEST_CASE("builtin bodies: closed-form values") {
  const ConvexBody disk = make_builtin(Disk{});
  CHECK(disk.gauge({3, 4}) == doctest::Approx(5.0));
  CHECK(disk.support({0.6, -0.8}) == doctest::Approx(1.0));
  CHECK(disk.area() == doctest::Approx(oracle::kPi).epsilon(1e-13));
  CHECK(disk.perimeter() == doctest::Approx(2 * oracle::kPi).epsilon(1e-13));

  const ConvexBody ell = make_builtin(Ellipse{1, 1.5});
  CHECK(ell.area() == doctest::Approx(1.5 * oracle::kPi).epsilon(1e-13));
  CHECK(ell.gauge({0, 1.5}) == doctest::Approx(1.0));
  for (double th : {0.0, 0.4, 1.3, 2.9, 4.4})
    CHECK(ell.support(unit(th)) ==
          doctest::Approx(std::sqrt(std::cos(th) * std::cos(th) + 2.25 * std::sin(th) * std::sin(th))));

  const ConvexBody lp = make_builtin(Lp{1.5});
  CHECK(lp.gauge({1, 0}) == doctest::Approx(1.0));
  CHECK(lp.gauge({1, 1}) == doctest::Approx(std::pow(2.0, 1.0 / 1.5)));

  const ConvexBody tri = make_builtin(SmoothedTriangle{2});
  CHECK(tri.gauge({0, 1}) == doctest::Approx(1.0));
  for (double a : {0.1, 0.9, 2.0})
    CHECK(tri.gauge(unit(a)) == doctest::Approx(tri.gauge(unit(a + 2 * oracle::kPi / 3))));
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(make_builtin(Ellipse{0, 1}), DomainError);
  CHECK_THROWS_AS(make_builtin(Ellipse{1, -2}), DomainError);
  CHECK_THROWS_AS(make_builtin(Lp{1.0}), DomainError);
  CHECK_THROWS_AS(make_builtin(SmoothedTriangle{0.5}), DomainError);
  CHECK_THROWS_AS(parse_body("square"), DomainError);
  CHECK_THROWS_AS(parse_body("lp:abc"), DomainError);
  CHECK_THROWS_AS(parse_body("ellipse:1"), DomainError);
  CHECK_THROWS_AS(make_builtin(Disk{}).pi_map({0, 0}), DomainError);
  CHECK_THROWS_AS(make_builtin(Disk{}).pi_jacobian({0, 0}), DomainError);
}

TEST_CASE("gauge is a convex 1-homogeneous function vanishing only at 0") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-2, 2);
  for (const std::string& spec : kBodies) {
    CAPTURE(spec);
    const ConvexBody K = parse_body(spec);
    CHECK(K.gauge({0, 0}) == 0.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const PlanarVector a{d(rng), d(rng)}, b{d(rng), d(rng)};
      worst = std::max(worst, K.gauge(a + b) - K.gauge(a) - K.gauge(b));
      if (i < 100) {
        const double lam = 0.1 + std::abs(d(rng));
        CHECK(K.gauge(lam * a) == doctest::Approx(lam * K.gauge(a)).epsilon(1e-13));
        CHECK(K.gauge(a) > 0.0);
      }
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("support function agrees with a brute-force supremum") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0, 2 * oracle::kPi);
  for (const std::string& spec : kBodies) {
    CAPTURE(spec);
    const ConvexBody K = parse_body(spec);
    // 1e4-point boundary sample for 1e3 directions. Near the infinite-curvature
    // axis points of lp:1.5 such a sample resolves the sup only to O(n^-1.5),
    // so that body gets 1e5 points.
    const int n = spec == "lp:1.5" ? 100000 : 10000;
    std::vector<PlanarVector> pts;
    for (int i = 0; i < n; ++i) {
      const PlanarVector e = unit(2 * oracle::kPi * i / n);
      pts.push_back(e / K.gauge(e));
    }
    double worst = 0.0, below = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const PlanarVector u = unit(angle(rng));
      double m = -1e300;
      for (const auto& p : pts) m = std::max(m, dot(u, p));
      worst = std::max(worst, std::abs(K.support(u) - m));
      below = std::max(below, m - K.support(u));
    }
    CHECK(below <= 1e-12);
    CHECK(worst <= 1e-6);
    // Dense check at a few directions.
    for (double a : {0.2, 1.9, 4.0}) CHECK(K.support(unit(a)) == doctest::Approx(oracle::brute_support(K, unit(a))).epsilon(1e-10));
  }
}

TEST_CASE("pi map") {
  const ConvexBody disk = make_builtin(Disk{});
  const PlanarVector p = disk.pi_map({3, -4});
  CHECK(p.v1 == doctest::Approx(0.6));
  CHECK(p.v2 == doctest::Approx(-0.8));

  const ConvexBody lp = make_builtin(Lp{1.5});
  CHECK(lp.pi_map({1, 0}).v1 == doctest::Approx(1.0));
  CHECK(std::abs(lp.pi_map({1, 0}).v2) <= 1e-12);

  const ConvexBody ell = make_builtin(Ellipse{1, 1.5});
  const PlanarVector top = ell.pi_map({0, 1});
  const PlanarVector brute = oracle::brute_argmax(ell, {0, 1});
  CHECK(top.v1 == doctest::Approx(brute.v1).epsilon(1e-5));
  CHECK(top.v2 == doctest::Approx(1.5));
  CHECK(brute.v2 == doctest::Approx(1.5));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> angle(0, 2 * oracle::kPi), mag(0.1, 5);
  for (const std::string& spec : kBodies) {
    CAPTURE(spec);
    const ConvexBody K = parse_body(spec);
    for (int i = 0; i < 1000; ++i) {
      const PlanarVector u = mag(rng) * unit(angle(rng));
      const PlanarVector q = K.pi_map(u);
      REQUIRE(std::abs(K.gauge(q) - 1.0) <= 1e-10);
      REQUIRE(std::abs(dot(u, q) - K.support(u)) <= 1e-10 * norm(u));
      const PlanarVector q2 = K.pi_map(3.0 * u);
      REQUIRE(std::abs(q2.v1 - q.v1) + std::abs(q2.v2 - q.v2) <= 1e-12);
    }
  }
}

TEST_CASE("pi jacobian") {
  const ConvexBody disk = make_builtin(Disk{});
  const Mat2 D = disk.pi_jacobian({1, 0});
  CHECK(std::abs(D.m11) <= 1e-15);
  CHECK(std::abs(D.m12) <= 1e-15);
  CHECK(std::abs(D.m21) <= 1e-15);
  CHECK(D.m22 == doctest::Approx(1.0));

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> angle(0, 2 * oracle::kPi), mag(0.5, 2);
  for (const std::string spec : {"disk", "ellipse:1,1.5", "lp:1.5", "lp:3"}) {
    CAPTURE(spec);
    const ConvexBody K = parse_body(spec);
    for (int i = 0; i < 200; ++i) {
      const PlanarVector u = mag(rng) * unit(angle(rng));
      const Mat2 J = K.pi_jacobian(u);
      const double scale = std::max({std::abs(J.m11), std::abs(J.m12), std::abs(J.m22), 1e-300});
      const PlanarVector ku = J * u;
      CHECK(norm(ku) <= 1e-12 * scale * norm(u));
      CHECK(std::abs(J.m12 - J.m21) <= 1e-12 * scale);
      CHECK(J.m11 >= -1e-12 * scale);
      CHECK(J.m22 >= -1e-12 * scale);
      CHECK(std::abs(J.det()) <= 1e-12 * scale * scale);
      const Mat2 J2 = K.pi_jacobian(2.0 * u);
      CHECK(J2.m22 == doctest::Approx(0.5 * J.m22).epsilon(1e-12).scale(scale));
      // Central differences of pi_map, step 1e-5.
      const double h = 1e-5 * norm(u);
      const PlanarVector c1 = (K.pi_map(u + PlanarVector{h, 0}) - K.pi_map(u - PlanarVector{h, 0})) / (2 * h);
      const PlanarVector c2 = (K.pi_map(u + PlanarVector{0, h}) - K.pi_map(u - PlanarVector{0, h})) / (2 * h);
      const double err = std::max({std::abs(c1.v1 - J.m11), std::abs(c1.v2 - J.m21), std::abs(c2.v1 - J.m12),
                                   std::abs(c2.v2 - J.m22)});
      CHECK(err <= 1e-6 * scale);
    }
  }
}

TEST_CASE("boundary chart") {
  const ConvexBody disk = make_builtin(Disk{});
  for (double s : {0.0, 0.7, 2.5, 5.9}) {
    const BoundaryJet b = disk.boundary_point(s);
    CHECK(b.p.v1 == doctest::Approx(std::sin(s)));
    CHECK(b.p.v2 == doctest::Approx(std::cos(s)));
  }
  const ConvexBody ell = make_builtin(Ellipse{1, 1.5});
  const BoundaryJet top = ell.boundary_point(0.0);
  CHECK(std::abs(top.p.v1) <= 1e-15);
  CHECK(top.p.v2 == doctest::Approx(1.5));

  for (const std::string& spec : kBodies) {
    CAPTURE(spec);
    const ConvexBody K = parse_body(spec);
    for (int i = 0; i < 64; ++i) {
      const double s = 2 * oracle::kPi * i / 64 + 0.013;
      const BoundaryJet b = K.boundary_point(s), c = K.boundary_point(s + 2 * oracle::kPi);
      CHECK(std::abs(K.gauge(b.p) - 1.0) <= 1e-12);
      CHECK(b.p.v1 == doctest::Approx(c.p.v1).epsilon(1e-12));
      CHECK(b.dp.v2 == doctest::Approx(c.dp.v2).epsilon(1e-12));
      // clockwise: y' x'' - x' y'' >= 0
      CHECK(b.dp.v2 * b.d2p.v1 - b.dp.v1 * b.d2p.v2 >= -1e-12);
      // derivative by central differences
      const double h = 1e-6;
      const PlanarVector fd = (K.boundary_point(s + h, 0).p - K.boundary_point(s - h, 0).p) / (2 * h);
      CHECK(std::abs(fd.v1 - b.dp.v1) + std::abs(fd.v2 - b.dp.v2) <= 1e-7);
    }
  }
}

TEST_CASE("area by grid counting and perimeter by polygon length") {
  const ConvexBody lp = make_builtin(Lp{1.5});
  CHECK(lp.area() == doctest::Approx(oracle::grid_area(lp, 1.01, 4000)).epsilon(1e-4));
  for (const std::string& spec : kBodies) {
    CAPTURE(spec);
    const ConvexBody K = parse_body(spec);
    std::vector<PlanarVector> poly;
    double len = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) poly.push_back(K.boundary_point(2 * oracle::kPi * i / n, 0).p);
    for (int i = 0; i < n; ++i) len += norm(poly[(i + 1) % n] - poly[i]);
    // Clockwise chart: the shoelace area is negative.
    CHECK(-oracle::shoelace(poly) == doctest::Approx(K.area()).epsilon(1e-8));
    CHECK(len == doctest::Approx(K.perimeter()).epsilon(1e-8));
  }
}

TEST_CASE("difference body") {
  const ConvexBody disk = make_builtin(Disk{});
  const ConvexBody d0 = disk.difference_body();
  CHECK(d0.centrally_symmetric());
  for (int i = 0; i < 4096; ++i) {
    const PlanarVector u = unit(2 * oracle::kPi * i / 4096);
    REQUIRE(d0.support(u) == 2.0 * disk.support(u));
  }
  const ConvexBody ell = make_builtin(Ellipse{1, 1.5});
  const ConvexBody ell2 = make_builtin(Ellipse{2, 3});
  for (double a : {0.0, 0.5, 1.7, 3.3}) CHECK(ell.difference_body().support(unit(a)) == doctest::Approx(ell2.support(unit(a))));

  for (const char* spec : {"tri:2", "lp:3", "tri:8"}) {
    const ConvexBody K = parse_body(spec);
    const ConvexBody K0 = K.difference_body();
    for (int i = 0; i < 256; ++i) {
      const PlanarVector u = unit(2 * oracle::kPi * i / 256);
      REQUIRE(std::abs(K0.support(u) - K.support(u) - K.support(-u)) <= 1e-12);
      REQUIRE(std::abs(K0.support(u) - K0.support(-u)) <= 1e-12);
    }
    // gauge recovered from the support reproduces the width
    for (int i = 0; i < 64; ++i) {
      const PlanarVector u = unit(2 * oracle::kPi * i / 64 + 0.1);
      CHECK(std::abs(K0.gauge(K0.pi_map(u)) - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("fourier bodies") {
  const ConvexBody F = fourier_body();
  CHECK_FALSE(F.centrally_symmetric());
  for (double a : {0.0, 0.8, 2.2, 5.0})
    CHECK(F.support(unit(a)) == doctest::Approx(1 + 0.1 * std::cos(2 * a) + 0.05 * std::sin(3 * a)));
  CHECK(F.support(unit(1.0)) == doctest::Approx(oracle::brute_support(F, unit(1.0))).epsilon(1e-9));
  CHECK(make_fourier({1.0, 0.0, 0.0, 0.2, 0.0}).centrally_symmetric());
  // h + h'' = 1 - 3 a2 cos 2 theta turns negative for a2 > 1/3.
  CHECK_THROWS_AS(make_fourier({1.0, 0.0, 0.0, 0.4, 0.0}), DomainError);
  CHECK_THROWS_AS(make_fourier({-1.0}), DomainError);

  const auto path = std::filesystem::temp_directory_path() / "pws_fourier_test.txt";
  {
    std::ofstream f(path);
    f << "# smooth body\nfourier_h = [1, 0, 0, 0.1, 0, 0, 0.05]\n";
  }
  const ConvexBody G = parse_body("fourier:" + path.string());
  CHECK(G.support(unit(0.3)) == doctest::Approx(F.support(unit(0.3))));
  {
    std::ofstream f(path);
    f << "h = 1\n";
  }
  CHECK_THROWS(parse_body("fourier:" + path.string()));
  std::filesystem::remove(path);
}
