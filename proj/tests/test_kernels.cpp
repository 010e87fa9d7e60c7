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

// The parallel kernels must return the same bits as their serial runs.

#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "pws/body.hpp"
#include "pws/isoperimetry.hpp"
#include "pws/kernels.hpp"
#include "pws/sphere.hpp"

using namespace pws;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("sum_rows is order independent of the execution mode") {
  const std::size_t n = 10007;
  auto row = [](std::size_t i) { return 1.0 / (1.0 + static_cast<double>(i) * 0.37); };
  const double s = sum_rows(n, row, Exec::serial);
  for (int rep = 0; rep < 5; ++rep) CHECK(same_bits(sum_rows(n, row, Exec::parallel), s));
  std::vector<double> direct(n);
  for (std::size_t i = 0; i < n; ++i) direct[i] = row(i);
  CHECK(same_bits(pairwise_sum(direct), s));
  CHECK(max_threads() >= 1);
}

TEST_CASE("area and volume kernels") {
  for (const std::string& spec : {"ellipse:1,1.5", "lp:1.5", "tri:2"}) {
    CAPTURE(spec);
    const WulffSphere S(parse_body(spec), 1.3);
    CHECK(same_bits(area(S, 256, Exec::parallel), area(S, 256, Exec::serial)));
    CHECK(same_bits(volume(S, 256, Exec::parallel), volume(S, 256, Exec::serial)));
    CHECK(same_bits(volume_graph_route(S, 256, Exec::parallel), volume_graph_route(S, 256, Exec::serial)));
  }
}

TEST_CASE("mesh and Hausdorff kernels") {
  const WulffSphere A(parse_body("lp:3"), 1.0), B(parse_body("lp:4"), 1.0);
  const Mesh ms = mesh(A, 40, 40, true, Exec::serial), mp = mesh(A, 40, 40, true, Exec::parallel);
  REQUIRE(ms.vertices.size() == mp.vertices.size());
  bool same = ms.faces == mp.faces;
  for (std::size_t k = 0; k < ms.vertices.size(); ++k) {
    same = same && same_bits(ms.vertices[k].x, mp.vertices[k].x) && same_bits(ms.vertices[k].y, mp.vertices[k].y) &&
           same_bits(ms.vertices[k].t, mp.vertices[k].t) && same_bits(ms.normals[k].c, mp.normals[k].c);
  }
  CHECK(same);
  const Mesh mb = mesh(B, 40, 40);
  const double d = hausdorff_distance(ms, mb, Exec::parallel);
  CHECK(same_bits(d, hausdorff_distance(ms, mb, Exec::serial)));
  CHECK(same_bits(d, hausdorff_distance_reference(ms, mb)));
}
