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

#include "pws/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pws/errors.hpp"
#include "pws/io.hpp"

namespace pws {
namespace {

constexpr double kPoleGuard = 1e-6;
constexpr double kDegenerateNormal = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_chart_u(const WulffSphere& S, double u, const char* what) {
  const double P = S.period();
  if (!(u >= kPoleGuard * P && u <= (1.0 - kPoleGuard) * P))
    throw ChartError(std::string(what) + ": u outside the regular chart (poles excluded)");
}

// Per-node data of the torus quadrature in (v, w = u + v).
struct TorusNodes {
  std::vector<double> w, x, y, xd, yd, td, T, hp, hm;
  double increment = 0.0;  // t(s + P) - t(s)
};

TorusNodes torus_nodes(const WulffSphere& S, int panels, bool need_support, bool need_lift) {
  const ConvexBody& K = S.body();
  const PanelRule rule = make_panel_rule(0.0, S.period(), panels, wrap_kinks(K.chart_kinks(S.chart()), 0.0, S.period()));
  const std::size_t n = rule.size();
  TorusNodes d;
  d.w = rule.weights;
  for (auto* v : {&d.x, &d.y, &d.xd, &d.yd, &d.td, &d.T, &d.hp, &d.hm}) v->resize(n);
  d.increment = S.lift_table().period_increment();
  for (std::size_t k = 0; k < n; ++k) {
    const BoundaryJet j = S.gamma(rule.nodes[k], 1);
    d.x[k] = j.p.v1;
    d.y[k] = j.p.v2;
    d.xd[k] = j.dp.v1;
    d.yd[k] = j.dp.v2;
    d.td[k] = dot(j.p, j_rotate(j.dp));
    if (need_lift) d.T[k] = S.lift_table().periodic_part(rule.nodes[k]);
    if (need_support) {
      const PlanarVector jd = j_rotate(j.dp);
      d.hp[k] = K.support(jd);
      d.hm[k] = K.support(-jd);
    }
  }
  return d;
}

// Row i (v-node) of the unit-scale area integrand sum_j w_j |n_h|_*.
double area_row(const TorusNodes& d, std::size_t i) {
  const std::size_t n = d.w.size();
  const double xi = d.x[i], yi = d.y[i], xdi = d.xd[i], ydi = d.yd[i];
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double c = 2.0 * (xdi * (d.y[j] - yi) - ydi * (d.x[j] - xi));
    s += d.w[j] * (c <= 0.0 ? -c * d.hp[j] : c * d.hm[j]);
  }
  return d.w[i] * s;
}

// Row i of <(X, Y, t~), d_u Phi x d_v Phi> in coordinates, with t~ the
// periodic part of the t-coordinate.
double volume_row(const TorusNodes& d, std::size_t i) {
  const std::size_t n = d.w.size();
  const double xi = d.x[i], yi = d.y[i], xdi = d.xd[i], ydi = d.yd[i], tdi = d.td[i], Ti = d.T[i];
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = d.x[j], yj = d.y[j], xdj = d.xd[j], ydj = d.yd[j], tdj = d.td[j];
    const double X = xj - xi, Y = yj - yi;
    const double tt = d.T[j] - Ti - xj * yi + yj * xi;
    const double ux = xdj, uy = ydj, ut = tdj - xdj * yi + ydj * xi;
    const double vx = xdj - xdi, vy = ydj - ydi;
    const double vt = tdj - tdi - xdj * yi - xj * ydi + ydj * xi + yj * xdi;
    const double nx = uy * vt - ut * vy;
    const double ny = ut * vx - ux * vt;
    const double nz = ux * vy - uy * vx;
    s += d.w[j] * (X * nx + Y * ny + tt * nz);
  }
  return d.w[i] * s;
}

double graph_volume_row(const TorusNodes& d, std::size_t i) {
  const std::size_t n = d.w.size();
  const double xi = d.x[i], yi = d.y[i], xdi = d.xd[i], ydi = d.yd[i], Ti = d.T[i];
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double tt = d.T[j] - Ti - d.x[j] * yi + d.y[j] * xi;
    const double nz = xdi * d.yd[j] - ydi * d.xd[j];
    s += d.w[j] * tt * nz;
  }
  return d.w[i] * s;
}

}  // namespace

WulffSphere::WulffSphere(ConvexBody body, double r, std::optional<ChartKind> chart, int lift_panels)
    : body_(std::move(body)), r_(r), chart_(chart.value_or(body_.default_chart())) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("WulffSphere: scale must be positive");
  if (!body_.has_chart(chart_)) throw DomainError("WulffSphere: chart not available for " + body_.name());
  lift_ = std::make_shared<const PeriodicAntiderivative>(make_lift_table(body_, chart_, lift_panels));
}

double WulffSphere::pole_height() const { return 2.0 * r_ * r_ * body_.area(); }

HeisPoint sphere_point(const WulffSphere& S, double u, double v) {
  const double P = S.period();
  if (!(u >= 0.0 && u <= P)) throw DomainError("sphere_point: u outside [0, P]");
  if (u == 0.0) return {0.0, 0.0, 0.0};
  if (u == P) return {0.0, 0.0, S.pole_height()};
  const PlanarVector a = S.gamma(v, 0).p, b = S.gamma(u + v, 0).p;
  const HeisPoint Gv{a.v1, a.v2, S.lift(v)};
  const HeisPoint Gw{b.v1, b.v2, S.lift(u + v)};
  return dilate(S.scale(), group_mul(group_inverse(Gv), Gw));
}

HeisPoint parametric_point(const ConvexBody& body, double r, double u, double v) {
  const double P = ConvexBody::kPeriod;
  if (!(u >= 0.0 && u <= P)) throw DomainError("parametric_point: u outside [0, P]");
  if (u == 0.0) return {0.0, 0.0, 0.0};
  const double w = u + v;
  auto rad = [&](double s) { return body.radial({std::sin(s), std::cos(s)}); };
  std::vector<double> extra;
  for (double k : body.chart_kinks(ChartKind::radial)) {
    for (double m = std::floor((v - k) / P); k + m * P <= w; m += 1.0) extra.push_back(k + m * P);
  }
  const int panels = std::max(1, static_cast<int>(std::ceil(u / P * kDefaultPanels)));
  const auto br = make_breaks(v, w, panels, extra);
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < br.size(); ++k)
    integral += gauss_legendre([&](double s) { return rad(s) * rad(s); }, br[k], br[k + 1]);
  const double rv = rad(v), rw = rad(w);
  const HeisPoint p{rw * std::sin(w) - rv * std::sin(v), rw * std::cos(w) - rv * std::cos(v),
                    rv * rw * (std::sin(v) * std::cos(w) - std::cos(v) * std::sin(w)) + integral};
  return dilate(r, p);
}

SurfaceSample surface_sample(const WulffSphere& S, double u, double v) {
  check_chart_u(S, u, "surface_sample");
  const double r = S.scale();
  const BoundaryJet jv = S.gamma(v, 1), jw = S.gamma(u + v, 1);
  const PlanarVector delta = jw.p - jv.p;
  const PlanarVector T1 = jv.dp / norm(jv.dp), T2 = jw.dp / norm(jw.dp);
  SurfaceSample out;
  out.point = sphere_point(S, u, v);
  out.h = 2.0 * r * cross(T1, delta);
  out.g = cross(T1, T2);
  const double len = std::hypot(out.h, out.g);
  // Both vanish where the loop runs along a straight piece of the boundary;
  // the chart collapses there and has no normal.
  if (len <= kDegenerateNormal) throw ChartError("surface_sample: degenerate chart point (straight boundary piece)");
  out.normal = {out.h * T2.v2 / len, -out.h * T2.v1 / len, out.g / len};
  out.nh_norm = std::abs(out.h) / len;
  out.nt = out.g / len;
  // Chart tangents at scale r in frame coordinates.
  const double hraw = 2.0 * cross(jv.dp, delta);
  const double a1 = r * jw.dp.v1, b1 = r * jw.dp.v2;
  const double a2 = r * (jw.dp.v1 - jv.dp.v1), b2 = r * (jw.dp.v2 - jv.dp.v2), c2 = r * r * hraw;
  out.area_weight = std::sqrt((b1 * c2) * (b1 * c2) + (a1 * c2) * (a1 * c2) + (a1 * b2 - b1 * a2) * (a1 * b2 - b1 * a2));
  return out;
}

double area(const WulffSphere& S, int panels, Exec exec) {
  const TorusNodes d = torus_nodes(S, panels, true, false);
  const double unit = sum_rows(d.w.size(), [&](std::size_t i) { return area_row(d, i); }, exec);
  const double r = S.scale();
  return r * r * r * unit;
}

double volume(const WulffSphere& S, int panels, Exec exec) {
  const TorusNodes d = torus_nodes(S, panels, false, true);
  const double flux = sum_rows(d.w.size(), [&](std::size_t i) { return volume_row(d, i); }, exec);
  // The secular part (H / P) u of t contributes (1/3) H^2.
  const double unit = (flux + d.increment * d.increment) / 3.0;
  const double r2 = S.scale() * S.scale();
  return r2 * r2 * unit;
}

double volume_graph_route(const WulffSphere& S, int panels, Exec exec) {
  const TorusNodes d = torus_nodes(S, panels, false, true);
  const double s = sum_rows(d.w.size(), [&](std::size_t i) { return graph_volume_row(d, i); }, exec);
  const double r2 = S.scale() * S.scale();
  return r2 * r2 * (s + d.increment * d.increment);
}

double area_reference(const WulffSphere& S, int panels) {
  const PanelRule rule = make_panel_rule(0.0, S.period(), panels);
  const double r = S.scale();
  double total = 0.0;
  for (std::size_t a = 0; a < rule.size(); ++a) {
    const double v = rule.nodes[a];
    const BoundaryJet jv = S.gamma(v, 1);
    for (std::size_t b = 0; b < rule.size(); ++b) {
      const BoundaryJet jw = S.gamma(rule.nodes[b] + v, 1);
      const double c = 2.0 * cross(jv.dp, jw.p - jv.p);
      const PlanarVector nh{c * jw.dp.v2, -c * jw.dp.v1};
      total += rule.weights[a] * rule.weights[b] * S.body().support(nh);
    }
  }
  return r * r * r * total;
}

double volume_reference(const WulffSphere& S, int panels) {
  const PanelRule rule = make_panel_rule(0.0, S.period(), panels);
  const double r = S.scale();
  double total = 0.0;
  for (std::size_t a = 0; a < rule.size(); ++a) {
    const double v = rule.nodes[a];
    const BoundaryJet jv = S.gamma(v, 1);
    const double tdv = dot(jv.p, j_rotate(jv.dp));
    for (std::size_t b = 0; b < rule.size(); ++b) {
      const double u = rule.nodes[b];
      const BoundaryJet jw = S.gamma(u + v, 1);
      const double tdw = dot(jw.p, j_rotate(jw.dp));
      const HeisPoint p = dilate(1.0 / r, sphere_point(S, u, v));
      const double ux = jw.dp.v1, uy = jw.dp.v2, ut = tdw - jw.dp.v1 * jv.p.v2 + jw.dp.v2 * jv.p.v1;
      const double vx = jw.dp.v1 - jv.dp.v1, vy = jw.dp.v2 - jv.dp.v2;
      const double vt = tdw - tdv - jw.dp.v1 * jv.p.v2 - jw.p.v1 * jv.dp.v2 + jw.dp.v2 * jv.p.v1 + jw.p.v2 * jv.dp.v1;
      const double nx = uy * vt - ut * vy, ny = ut * vx - ux * vt, nz = ux * vy - uy * vx;
      total += rule.weights[a] * rule.weights[b] * (p.x * nx + p.y * ny + p.t * nz);
    }
  }
  const double r2 = r * r;
  return r2 * r2 * total / 3.0;
}

GraphValues graph_eval(const WulffSphere& S, const PlanarVector& x) {
  const double r = S.scale(), P = S.period();
  if (x.v1 == 0.0 && x.v2 == 0.0) {
    GraphValues g;
    g.upper = S.pole_height();
    g.lower = 0.0;
    g.upper_uv = {P, 0.0};
    g.lower_uv = {0.0, 0.0};
    return g;
  }
  const PlanarVector target = x / r;
  const double tol = 1e-12 * std::max(1.0, norm(target));
  auto residual = [&](double u, double v) { return S.gamma(u + v, 0).p - S.gamma(v, 0).p - target; };

  constexpr int kSeeds = 48;
  struct Seed {
    double res, u, v;
  };
  std::vector<Seed> seeds;
  seeds.reserve(kSeeds * kSeeds);
  for (int i = 0; i < kSeeds; ++i)
    for (int j = 0; j < kSeeds; ++j) {
      const double u = P * (i + 0.5) / kSeeds, v = P * j / kSeeds;
      seeds.push_back({norm(residual(u, v)), u, v});
    }
  std::stable_sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) { return a.res < b.res; });

  std::vector<std::array<double, 2>> roots;
  auto known = [&](double u, double v) {
    for (const auto& q : roots) {
      const double dv = std::abs(std::remainder(v - q[1], P));
      if (std::abs(u - q[0]) < 1e-7 && dv < 1e-7) return true;
    }
    return false;
  };
  const double umin = kPoleGuard * P * 1e-3, umax = P - umin;
  for (const Seed& seed : seeds) {
    if (roots.size() == 2) break;
    double u = seed.u, v = seed.v;
    PlanarVector F = residual(u, v);
    double fn = norm(F);
    bool ok = fn <= tol;
    for (int it = 0; it < 50 && !ok; ++it) {
      const PlanarVector a = S.gamma(v, 1).dp, b = S.gamma(u + v, 1).dp;
      // d/du = gamma'(w), d/dv = gamma'(w) - gamma'(v).
      const Mat2 J{b.v1, b.v1 - a.v1, b.v2, b.v2 - a.v2};
      const double det = J.det();
      if (det == 0.0 || !std::isfinite(det)) break;
      const double du = (J.m22 * F.v1 - J.m12 * F.v2) / det;
      const double dv = (-J.m21 * F.v1 + J.m11 * F.v2) / det;
      double lam = 1.0;
      bool improved = false;
      for (int k = 0; k < 30; ++k, lam *= 0.5) {
        const double un = std::clamp(u - lam * du, umin, umax), vn = v - lam * dv;
        const PlanarVector Fn = residual(un, vn);
        const double n2 = norm(Fn);
        if (n2 < fn) {
          u = un;
          v = vn;
          F = Fn;
          fn = n2;
          improved = true;
          break;
        }
      }
      if (!improved) break;
      ok = fn <= tol;
    }
    if (!ok) continue;
    v = std::fmod(v, P);
    if (v < 0) v += P;
    if (!known(u, v)) roots.push_back({u, v});
  }
  if (roots.size() < 2) throw NumericalError("graph_eval: could not separate two preimages of the point");
  const double t0 = sphere_point(S, roots[0][0], roots[0][1]).t;
  const double t1 = sphere_point(S, roots[1][0], roots[1][1]).t;
  GraphValues g;
  const bool first_up = t0 >= t1;
  g.upper = first_up ? t0 : t1;
  g.lower = first_up ? t1 : t0;
  g.upper_uv = first_up ? roots[0] : roots[1];
  g.lower_uv = first_up ? roots[1] : roots[0];
  return g;
}

std::vector<PoleRow> pole_diagnostics(const WulffSphere& S, double v0, std::span<const double> u_list) {
  for (std::size_t i = 0; i < u_list.size(); ++i) {
    if (!(u_list[i] > 0.0)) throw DomainError("pole_diagnostics: u values must be positive");
    if (i > 0 && !(u_list[i] < u_list[i - 1])) throw DomainError("pole_diagnostics: u values must decrease");
  }
  const double kappa = S.body().curvature(S.chart(), v0) / S.scale();
  std::vector<PoleRow> rows;
  for (double u : u_list) {
    const SurfaceSample s = surface_sample(S, u, v0);
    rows.push_back({u, s.h / s.g, s.h / (s.g * s.g) + 1.0 / kappa, s.nt});
  }
  return rows;
}

double mean_curvature_at(const WulffSphere& S, double u, double v) {
  check_chart_u(S, u, "mean_curvature_at");
  const double w = u + v;
  // Relative threshold: straight pieces come out at roundoff level, ~1e-16.
  if (!(S.body().curvature(S.chart(), w) * S.body().max_radius() > 1e-9))
    throw ChartError("mean_curvature_at: boundary is not strictly convex at this point");
  const BoundaryJet j = S.gamma(w, 2);
  const double speed = norm(j.dp);
  const PlanarVector T = j.dp / speed;
  const PlanarVector dT = (j.d2p - dot(T, j.d2p) * T) / (S.scale() * speed * speed);
  Mat2 D;
  try {
    D = S.body().pi_jacobian(j_rotate(T));
  } catch (const ChartError&) {
    throw;
  } catch (const DomainError& e) {
    throw ChartError(e.what());
  }
  return dot(D * j_rotate(dT), T);
}

namespace {

// Vertices without a chart normal get the area-weighted mean of the normals
// of their faces. A face with Euclidean normal n spans the plane annihilated
// by the covector n.(dx, dy, dt), whose frame normal is (n.X, n.Y, n.T).
void fill_degenerate_normals(Mesh& m) {
  std::vector<FrameVector> acc(m.vertices.size());
  bool any = false;
  for (const auto& n : m.normals) any = any || std::isnan(n.a);
  if (!any) return;
  for (const auto& f : m.faces) {
    const HeisPoint &a = m.vertices[f[0]], &b = m.vertices[f[1]], &c = m.vertices[f[2]];
    const double ux = b.x - a.x, uy = b.y - a.y, ut = b.t - a.t;
    const double wx = c.x - a.x, wy = c.y - a.y, wt = c.t - a.t;
    const double nx = uy * wt - ut * wy, ny = ut * wx - ux * wt, nt = ux * wy - uy * wx;
    for (int k : f) {
      const HeisPoint& p = m.vertices[k];
      acc[k].a += nx + p.y * nt;
      acc[k].b += ny - p.x * nt;
      acc[k].c += nt;
    }
  }
  for (std::size_t k = 0; k < m.normals.size(); ++k) {
    if (!std::isnan(m.normals[k].a)) continue;
    const double len = acc[k].norm();
    m.normals[k] = len > 0.0 ? FrameVector{acc[k].a / len, acc[k].b / len, acc[k].c / len} : FrameVector{0.0, 0.0, 1.0};
  }
}

}  // namespace

Mesh mesh(const WulffSphere& S, int nu, int nv, bool cap_poles, Exec exec) {
  if (nu < 8 || nv < 8) throw DomainError("mesh: nu and nv must be at least 8");
  const double P = S.period();
  const int rings = nu + 1;
  Mesh m;
  m.capped = cap_poles;
  const std::size_t nring = static_cast<std::size_t>(rings) * nv;
  m.vertices.resize(nring);
  m.normals.resize(nring);
  for_each_index(
      nring,
      [&](std::size_t k) {
        const int i = static_cast<int>(k / nv), j = static_cast<int>(k % nv);
        const double u = P * (i + 0.5) / rings, v = P * j / nv;
        try {
          const SurfaceSample s = surface_sample(S, u, v);
          m.vertices[k] = s.point;
          m.normals[k] = s.normal;
        } catch (const ChartError&) {
          m.vertices[k] = sphere_point(S, u, v);
          m.normals[k] = {kNaN, kNaN, kNaN};
        }
      },
      exec);
  auto id = [nv](int i, int j) { return i * nv + ((j % nv) + nv) % nv; };
  for (int i = 0; i + 1 < rings; ++i)
    for (int j = 0; j < nv; ++j) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  if (cap_poles) {
    const int south = static_cast<int>(m.vertices.size());
    m.vertices.push_back({0.0, 0.0, 0.0});
    m.normals.push_back({0.0, 0.0, -1.0});
    const int north = south + 1;
    m.vertices.push_back({0.0, 0.0, S.pole_height()});
    m.normals.push_back({0.0, 0.0, 1.0});
    for (int j = 0; j < nv; ++j) {
      m.faces.push_back({south, id(0, j), id(0, j + 1)});
      m.faces.push_back({north, id(rings - 1, j + 1), id(rings - 1, j)});
    }
  }
  if (cap_poles && mesh_volume(m) < 0.0)
    for (auto& f : m.faces) std::swap(f[1], f[2]);
  fill_degenerate_normals(m);
  return m;
}

double mesh_volume(const Mesh& m) {
  std::vector<double> terms(m.faces.size());
  for (std::size_t k = 0; k < m.faces.size(); ++k) {
    const HeisPoint& a = m.vertices[m.faces[k][0]];
    const HeisPoint& b = m.vertices[m.faces[k][1]];
    const HeisPoint& c = m.vertices[m.faces[k][2]];
    terms[k] = (a.x * (b.y * c.t - b.t * c.y) - a.y * (b.x * c.t - b.t * c.x) + a.t * (b.x * c.y - b.y * c.x)) / 6.0;
  }
  return pairwise_sum(terms);
}

void write_obj(std::ostream& out, const Mesh& m) {
  for (const auto& v : m.vertices)
    out << "v " << format_double(v.x) << ' ' << format_double(v.y) << ' ' << format_double(v.t) << '\n';
  for (const auto& n : m.normals)
    out << "vn " << format_double(n.a) << ' ' << format_double(n.b) << ' ' << format_double(n.c) << '\n';
  for (const auto& f : m.faces) {
    out << 'f';
    for (int k : f) out << ' ' << (k + 1);
    out << '\n';
  }
}

}  // namespace pws
