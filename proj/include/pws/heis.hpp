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

#include <cmath>

namespace pws {

// Horizontal coefficients (a, b) of aX + bY, or a plain planar vector.
struct PlanarVector {
  double v1 = 0.0;
  double v2 = 0.0;

  PlanarVector& operator+=(const PlanarVector& o) {
    v1 += o.v1;
    v2 += o.v2;
    return *this;
  }
  PlanarVector& operator-=(const PlanarVector& o) {
    v1 -= o.v1;
    v2 -= o.v2;
    return *this;
  }
};

inline PlanarVector operator+(PlanarVector a, const PlanarVector& b) { return a += b; }
inline PlanarVector operator-(PlanarVector a, const PlanarVector& b) { return a -= b; }
inline PlanarVector operator-(const PlanarVector& a) { return {-a.v1, -a.v2}; }
inline PlanarVector operator*(double s, const PlanarVector& a) { return {s * a.v1, s * a.v2}; }
inline PlanarVector operator*(const PlanarVector& a, double s) { return {s * a.v1, s * a.v2}; }
inline PlanarVector operator/(const PlanarVector& a, double s) { return {a.v1 / s, a.v2 / s}; }

inline double dot(const PlanarVector& a, const PlanarVector& b) { return a.v1 * b.v1 + a.v2 * b.v2; }
// z-component of the 3D cross product a x b.
inline double cross(const PlanarVector& a, const PlanarVector& b) { return a.v1 * b.v2 - a.v2 * b.v1; }
inline double norm(const PlanarVector& a) { return std::hypot(a.v1, a.v2); }

// J(X) = Y, J(Y) = -X.
inline PlanarVector j_rotate(const PlanarVector& v) { return {-v.v2, v.v1}; }

// Row-major 2x2 matrix.
struct Mat2 {
  double m11 = 0.0, m12 = 0.0, m21 = 0.0, m22 = 0.0;

  PlanarVector operator*(const PlanarVector& v) const {
    return {m11 * v.v1 + m12 * v.v2, m21 * v.v1 + m22 * v.v2};
  }
  double det() const { return m11 * m22 - m12 * m21; }
};

struct HeisPoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

// Coordinate velocity (x', y', t') at some base point.
struct CoordVector {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

// Coefficients of aX + bY + cT in the left-invariant frame.
struct FrameVector {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  PlanarVector horizontal() const { return {a, b}; }
  double norm() const { return std::sqrt(a * a + b * b + c * c); }
  bool is_horizontal(double tol = 1e-9) const {
    return std::abs(c) <= tol * (1.0 + std::abs(a) + std::abs(b));
  }
};

// (x + x', y + y', t + t' + (x' y - x y')).
HeisPoint group_mul(const HeisPoint& p, const HeisPoint& q);
HeisPoint group_inverse(const HeisPoint& p);

// Left translation by p, written out coordinatewise.
HeisPoint left_translate(const HeisPoint& p, const HeisPoint& q);

FrameVector to_frame(const HeisPoint& p, const CoordVector& velocity);
CoordVector from_frame(const HeisPoint& p, const FrameVector& v);

// (lam x, lam y, lam^2 t). Throws DomainError for lam <= 0.
HeisPoint dilate(double lam, const HeisPoint& p);

// Push-forward of a frame vector under dilate(lam, .).
FrameVector dilate_vector(double lam, const FrameVector& v);

// Euclidean distance in (x, y, t).
double distance(const HeisPoint& p, const HeisPoint& q);

}  // namespace pws
