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

#include "pws/heis.hpp"

#include "pws/errors.hpp"

namespace pws {

HeisPoint group_mul(const HeisPoint& p, const HeisPoint& q) {
  return {p.x + q.x, p.y + q.y, p.t + q.t + (q.x * p.y - p.x * q.y)};
}

HeisPoint group_inverse(const HeisPoint& p) { return {-p.x, -p.y, -p.t}; }

HeisPoint left_translate(const HeisPoint& p, const HeisPoint& q) {
  return {q.x + p.x, q.y + p.y, q.t + p.t + (q.x * p.y - p.x * q.y)};
}

FrameVector to_frame(const HeisPoint& p, const CoordVector& v) {
  return {v.x, v.y, v.t - v.x * p.y + v.y * p.x};
}

CoordVector from_frame(const HeisPoint& p, const FrameVector& v) {
  return {v.a, v.b, v.c + v.a * p.y - v.b * p.x};
}

HeisPoint dilate(double lam, const HeisPoint& p) {
  if (!(lam > 0.0)) throw DomainError("dilate: factor must be positive");
  return {lam * p.x, lam * p.y, lam * lam * p.t};
}

FrameVector dilate_vector(double lam, const FrameVector& v) {
  if (!(lam > 0.0)) throw DomainError("dilate_vector: factor must be positive");
  return {lam * v.a, lam * v.b, lam * lam * v.c};
}

double distance(const HeisPoint& p, const HeisPoint& q) {
  const double dx = p.x - q.x, dy = p.y - q.y, dt = p.t - q.t;
  return std::sqrt(dx * dx + dy * dy + dt * dt);
}

}  // namespace pws
