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

#include "pws/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include "pws/errors.hpp"
#include "roots.hpp"

namespace pws {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mod_period(double x, double P) {
  double r = std::fmod(x, P);
  return r < 0 ? r + P : r;
}

bool finite(const GraphJet& g) { return std::isfinite(g.value) && std::isfinite(g.grad.v1) && std::isfinite(g.grad.v2); }

}  // namespace

double minkowski_residual(const ConvexBody& K, double r, int panels) {
  const WulffSphere S(K, r);
  const double A = area(S, panels), V = volume(S, panels);
  return (3.0 * A - 4.0 / r * V) / A;
}

Profile profile_f(double A1, double V1, double E_volume, std::span<const double> rho) {
  if (!(E_volume > 0.0)) throw DomainError("profile_f: volume must be positive");
  if (rho.size() < 3) throw DomainError("profile_f: need at least three grid points");
  Profile p;
  p.rho.assign(rho.begin(), rho.end());
  for (double x : p.rho) {
    if (!(x > 0.0)) throw DomainError("profile_f: grid must be positive");
    p.f.push_back(x * x * x * A1 + (E_volume - x * x * x * x * V1) / x);
  }
  p.rho0 = std::pow(E_volume / V1, 0.25);
  p.argmin = static_cast<std::size_t>(std::min_element(p.f.begin(), p.f.end()) - p.f.begin());
  p.min_second_difference = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < p.f.size(); ++i)
    p.min_second_difference = std::min(p.min_second_difference, p.f[i - 1] - 2.0 * p.f[i] + p.f[i + 1]);
  return p;
}

Profile profile_f(const ConvexBody& K, double E_volume, std::span<const double> rho, int panels) {
  const WulffSphere S(K, 1.0);
  return profile_f(area(S, panels), volume(S, panels), E_volume, rho);
}

BallGraphs::BallGraphs(WulffSphere S) : S_(std::move(S)), K0_(S_.body().difference_body()) {}

GraphPair BallGraphs::operator()(const PlanarVector& x) const {
  const auto key = std::make_pair(x.v1, x.v2);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const GraphPair g = solve(x);
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(key, g);
  return g;
}

GraphPair BallGraphs::solve(const PlanarVector& x) const {
  const ConvexBody& K = S_.body();
  const ChartKind chart = S_.chart();
  const double r = S_.scale(), P = S_.period();
  const PlanarVector xu = x / r;
  const double ell = norm(xu);
  GraphPair out;
  if (ell == 0.0) {
    out.upper.value = S_.pole_height();
    out.lower.value = 0.0;
    return out;
  }
  const PlanarVector e = xu / ell;
  const GaugeJet g0 = K0_.gauge_jet(e, 1);
  const double rho0 = 1.0 / g0.value;
  if (ell > rho0 * (1.0 + 1e-12)) throw DomainError("BallGraphs: point outside r K_0");
  // The longest chord in direction e runs from pi(-n) to pi(n), n the
  // normal of K_0 at its boundary point in direction e.
  const PlanarVector n = g0.grad / norm(g0.grad);
  double vmax = K.chart_param(chart, K.pi_map(-n));
  if (ell >= rho0 * (1.0 - 1e-12)) {
    const double w = K.chart_param(chart, K.pi_map(n));
    const double t = sphere_point(S_, std::clamp(mod_period(w - vmax, P), 0.0, P), vmax).t;
    out.upper = {t, {kNaN, kNaN}};
    out.lower = out.upper;
    return out;
  }
  const double ta = mod_period(K.chart_param(chart, K.pi_map(j_rotate(e))) - vmax, P);
  const double tb = mod_period(K.chart_param(chart, K.pi_map(-j_rotate(e))) - vmax, P);
  double fwd = std::min(ta, tb), bwd = std::max(ta, tb) - P;

  const double lam_hi = 2.2 * K.max_radius() + 1e-3;
  auto exit_length = [&](double v) {
    const PlanarVector p = S_.gamma(v, 0).p;
    double lam = lam_hi;
    for (int it = 0; it < 200; ++it) {
      const GaugeJet g = K.gauge_jet(p + lam * e, 1);
      const double d = dot(g.grad, e);
      if (!(d > 0.0)) break;
      const double step = (g.value - 1.0) / d;
      lam -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + lam)) break;
    }
    return lam;
  };
  auto f = [&](double v) { return exit_length(v) - ell; };
  double f_mid = f(vmax);
  if (!(f_mid > 0.0)) {
    // pi(-n) is ill-conditioned where dK is nearly flat; locate the longest
    // chord directly.
    const auto [v, neg] = boost::math::tools::brent_find_minima([&](double w) { return -f(w); }, vmax + bwd,
                                                                vmax + fwd, 52);
    const double shift = v - vmax;
    vmax = v;
    fwd -= shift;
    bwd -= shift;
    f_mid = -neg;
    if (!(f_mid > 0.0)) {
      if (ell < rho0 * (1.0 - 1e-8)) throw NumericalError("BallGraphs: no chord of the requested length");
      const double w = K.chart_param(chart, S_.gamma(vmax, 0).p + ell * e);
      const double t = sphere_point(S_, std::clamp(mod_period(w - vmax, P), 0.0, P), vmax).t;
      out.upper = {t, {kNaN, kNaN}};
      out.lower = out.upper;
      return out;
    }
  }
  const double v1 = detail::bracket_root(f, vmax, vmax + fwd, f_mid, -ell, "ball graph chord");
  const double v2 = detail::bracket_root(f, vmax + bwd, vmax, -ell, f_mid, "ball graph chord");

  auto graph_at = [&](double v) {
    const PlanarVector q = S_.gamma(v, 0).p + ell * e;
    const double u = mod_period(K.chart_param(chart, q) - v, P);
    const SurfaceSample s = surface_sample(S_, u, v);
    const FrameVector& N = s.normal;
    return GraphJet{s.point.t, {x.v2 - N.a / N.c, -x.v1 - N.b / N.c}};
  };
  const GraphJet a = graph_at(v1), b = graph_at(v2);
  out.upper = a.value >= b.value ? a : b;
  out.lower = a.value >= b.value ? b : a;
  return out;
}

double wall_density(const ConvexBody& K, const ConvexBody& K0, double r, const PolarQuadrature& q) {
  const PanelRule ra = make_panel_rule(0.0, kTwoPi, q.alpha_panels);
  std::vector<double> terms(ra.size());
  for (std::size_t j = 0; j < ra.size(); ++j) {
    const double al = ra.nodes[j];
    const PlanarVector e{std::cos(al), std::sin(al)}, ep{-std::sin(al), std::cos(al)};
    const GaugeJet g = K0.gauge_jet(e, 1);
    const double rho = 1.0 / g.value, drho = -dot(g.grad, ep) / (g.value * g.value);
    const PlanarVector db = r * (drho * e + rho * ep);
    terms[j] = ra.weights[j] * K.support(-j_rotate(db));
  }
  return pairwise_sum(terms);
}

PerimeterParts competitor_perimeter(const CompetitorSet& C, const PolarQuadrature& q) {
  const ConvexBody& K = C.body;
  const double r = C.r;
  const PanelRule rs = make_panel_rule(0.0, 1.0, q.sigma_panels);
  const PanelRule ra = make_panel_rule(0.0, kTwoPi, q.alpha_panels);
  const double scale_t = std::max(1.0, r * r * K.area());
  std::vector<double> up(ra.size()), lo(ra.size()), wall(ra.size()), vol(ra.size());
  for (std::size_t j = 0; j < ra.size(); ++j) {
    const double al = ra.nodes[j];
    const PlanarVector e{std::cos(al), std::sin(al)}, ep{-std::sin(al), std::cos(al)};
    const GaugeJet g = C.base.gauge_jet(e, 1);
    const double rho = 1.0 / g.value, drho = -dot(g.grad, ep) / (g.value * g.value);
    double su = 0.0, sl = 0.0, sv = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const double sg = rs.nodes[i];
      const double s = 1.0 - sg * sg;
      const double jac = r * r * rho * rho * s * 2.0 * sg;
      const PlanarVector x = (r * s * rho) * e;
      const GraphPair gp = C.graphs(x);
      if (!finite(gp.upper) || !finite(gp.lower))
        throw DataError("competitor '" + C.name + "': non-finite graph data");
      if (gp.upper.value < gp.lower.value - 1e-9 * scale_t)
        throw DataError("competitor '" + C.name + "': upper graph below lower graph");
      const PlanarVector nu{x.v2 - gp.upper.grad.v1, -gp.upper.grad.v2 - x.v1};
      const PlanarVector nl{gp.lower.grad.v1 - x.v2, gp.lower.grad.v2 + x.v1};
      su += rs.weights[i] * jac * K.support(nu);
      sl += rs.weights[i] * jac * K.support(nl);
      sv += rs.weights[i] * jac * (gp.upper.value - gp.lower.value);
    }
    up[j] = ra.weights[j] * su;
    lo[j] = ra.weights[j] * sl;
    vol[j] = ra.weights[j] * sv;
    const PlanarVector b = (r * rho) * e;
    const PlanarVector db = r * (drho * e + rho * ep);
    const GraphPair gb = C.graphs(b);
    const double height = gb.upper.value - gb.lower.value;
    if (!std::isfinite(height) || height < -1e-9 * scale_t)
      throw DataError("competitor '" + C.name + "': invalid wall height");
    wall[j] = ra.weights[j] * std::max(height, 0.0) * K.support(-j_rotate(db));
  }
  PerimeterParts p;
  p.upper = pairwise_sum(up);
  p.lower = pairwise_sum(lo);
  p.wall = pairwise_sum(wall);
  p.volume = pairwise_sum(vol);
  return p;
}

CalibrationResult calibration_check(const CompetitorSet& C, double A1, double V1, const PolarQuadrature& q) {
  const PerimeterParts p = competitor_perimeter(C, q);
  CalibrationResult c;
  c.perim_E = p.total();
  c.volume = p.volume;
  c.rho0 = std::pow(p.volume / V1, 0.25);
  const double r0 = c.rho0;
  c.perim_ball = r0 * r0 * r0 * A1 + (p.volume - r0 * r0 * r0 * r0 * V1) / r0;
  c.margin = c.perim_E - c.perim_ball;
  return c;
}

std::vector<CompetitorSet> competitor_suite(std::shared_ptr<const BallGraphs> ball, double ball_volume) {
  const WulffSphere& S = ball->sphere();
  const ConvexBody K = S.body();
  const ConvexBody K0 = ball->difference_body();
  const double r = S.scale();
  const double mid = 0.5 * S.pole_height();
  const double base_area = r * r * K0.area();
  const double c = ball_volume / base_area;
  const double eps = 0.1 * S.pole_height();

  // s^2 (1 - s^2) (1 + sin 3 alpha) / 2 with s the K_0 gauge of x / r.
  auto bump = [K0, r](const PlanarVector& x) {
    if (x.v1 == 0.0 && x.v2 == 0.0) return GraphJet{};
    const GaugeJet g = K0.gauge_jet(x, 1);
    const double s = g.value / r;
    const PlanarVector ds = g.grad / r;
    const double al = std::atan2(x.v2, x.v1);
    const double rr = dot(x, x);
    const PlanarVector dal{-x.v2 / rr, x.v1 / rr};
    const double ang = 0.5 * (1.0 + std::sin(3.0 * al));
    const double rad = s * s * (1.0 - s * s);
    const double drad = 2.0 * s - 4.0 * s * s * s;
    return GraphJet{rad * ang, drad * ang * ds + rad * 1.5 * std::cos(3.0 * al) * dal};
  };
  // 1 - s^2 with s the K_0 gauge of x / r.
  auto dome = [K0, r](const PlanarVector& x) {
    if (x.v1 == 0.0 && x.v2 == 0.0) return GraphJet{1.0, {}};
    const GaugeJet g = K0.gauge_jet(x, 1);
    const double s = g.value / r;
    return GraphJet{1.0 - s * s, -2.0 * s / r * g.grad};
  };
  auto add = [](GraphJet a, double scale, const GraphJet& b) {
    a.value += scale * b.value;
    a.grad += scale * b.grad;
    return a;
  };
  auto flat = [](double t) { return GraphJet{t, {}}; };

  std::vector<CompetitorSet> out;
  auto push = [&](std::string name, std::function<GraphPair(const PlanarVector&)> f) {
    out.push_back({std::move(name), K, K0, r, std::move(f)});
  };
  push("ball", [ball](const PlanarVector& x) { return (*ball)(x); });
  push("ball+upper-bump", [=](const PlanarVector& x) {
    GraphPair g = (*ball)(x);
    g.upper = add(g.upper, eps, bump(x));
    return g;
  });
  push("ball+lower-bump", [=](const PlanarVector& x) {
    GraphPair g = (*ball)(x);
    g.lower = add(g.lower, -eps, bump(x));
    return g;
  });
  push("ball+cylinder", [=](const PlanarVector& x) {
    GraphPair g = (*ball)(x);
    g.upper.value += r * r;
    return g;
  });
  push("cylinder", [=](const PlanarVector&) { return GraphPair{flat(mid + 0.5 * c), flat(mid - 0.5 * c)}; });
  push("tall-cylinder", [=](const PlanarVector&) { return GraphPair{flat(mid + c), flat(mid - c)}; });
  push("short-cylinder", [=](const PlanarVector&) { return GraphPair{flat(mid + 0.25 * c), flat(mid - 0.25 * c)}; });
  push("lens", [=](const PlanarVector& x) {
    const GraphJet d = dome(x);
    return GraphPair{add(flat(mid), c, d), add(flat(mid), -c, d)};
  });
  push("sheared-ball", [=](const PlanarVector& x) {
    GraphPair g = (*ball)(x);
    const PlanarVector a{0.3 * r, -0.2 * r};
    for (GraphJet* j : {&g.upper, &g.lower}) {
      j->value += dot(a, x);
      j->grad += a;
    }
    return g;
  });
  for (double lam : {1.3, 0.7}) {
    push(fmt::format("stretched-ball-{}", lam), [=](const PlanarVector& x) {
      GraphPair g = (*ball)(x);
      for (GraphJet* j : {&g.upper, &g.lower}) {
        j->value = mid + lam * (j->value - mid);
        j->grad = lam * j->grad;
      }
      return g;
    });
  }
  push("bent-ball", [=](const PlanarVector& x) {
    GraphPair g = (*ball)(x);
    const GraphJet b = bump(x);
    g.upper = add(g.upper, eps, b);
    g.lower = add(g.lower, eps, b);
    return g;
  });
  return out;
}

double hausdorff_distance(const Mesh& a, const Mesh& b, Exec exec) {
  if (a.vertices.empty() || b.vertices.empty()) throw DomainError("hausdorff_distance: empty vertex set");
  auto directed = [exec](const Mesh& p, const Mesh& q) {
    std::vector<double> best(p.vertices.size());
    for_each_index(
        p.vertices.size(),
        [&](std::size_t i) {
          const HeisPoint& v = p.vertices[i];
          double m = std::numeric_limits<double>::infinity();
          for (const HeisPoint& w : q.vertices) {
            const double dx = v.x - w.x, dy = v.y - w.y, dt = v.t - w.t;
            m = std::min(m, dx * dx + dy * dy + dt * dt);
          }
          best[i] = m;
        },
        exec);
    return std::sqrt(*std::max_element(best.begin(), best.end()));
  };
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff_distance_reference(const Mesh& a, const Mesh& b) {
  if (a.vertices.empty() || b.vertices.empty()) throw DomainError("hausdorff_distance: empty vertex set");
  double h = 0.0;
  for (const auto* pair : {&a, &b}) {
    const Mesh& p = *pair;
    const Mesh& q = pair == &a ? b : a;
    for (const HeisPoint& v : p.vertices) {
      double m = std::numeric_limits<double>::infinity();
      for (const HeisPoint& w : q.vertices) m = std::min(m, distance(v, w));
      h = std::max(h, m);
    }
  }
  return h;
}

ConvergenceTable convergence_study(const std::string& family, std::span<const double> ells, int nu, int nv,
                                   int panels) {
  if (family != "lp" && family != "tri") throw DomainError("convergence_study: family must be lp or tri");
  if (ells.empty()) throw DomainError("convergence_study: empty exponent list");
  // Either toward infinity or down toward 1.
  const bool up = ells.size() < 2 || ells[1] > ells[0];
  ConvergenceTable table;
  Mesh prev;
  for (std::size_t i = 0; i < ells.size(); ++i) {
    const double ell = ells[i];
    if (i > 0 && !(up ? ell > ells[i - 1] : ell < ells[i - 1]))
      throw DomainError("convergence_study: exponents must be strictly monotone");
    const ConvexBody K = family == "lp" ? make_builtin(Lp{ell}) : make_builtin(SmoothedTriangle{ell});
    const WulffSphere S(K, 1.0);
    ConvergenceRow row{ell, area(S, panels), volume(S, panels), std::numeric_limits<double>::quiet_NaN()};
    Mesh m = mesh(S, nu, nv, true);
    if (i > 0) row.hausdorff = hausdorff_distance(prev, m);
    table.rows.push_back(row);
    prev = std::move(m);
  }
  const auto& R = table.rows;
  for (std::size_t i = 2; i < R.size(); ++i) {
    if (!(R[i].hausdorff < R[i - 1].hausdorff)) table.hausdorff_decreasing = false;
    if (!(std::abs(R[i].area - R[i - 1].area) < std::abs(R[i - 1].area - R[i - 2].area))) table.area_cauchy = false;
    if (!(std::abs(R[i].volume - R[i - 1].volume) < std::abs(R[i - 1].volume - R[i - 2].volume)))
      table.volume_cauchy = false;
  }
  if (!table.hausdorff_decreasing) table.warnings.push_back("Hausdorff distances are not decreasing");
  if (!table.area_cauchy) table.warnings.push_back("area differences are not decreasing");
  if (!table.volume_cauchy) table.warnings.push_back("volume differences are not decreasing");
  return table;
}

}  // namespace pws
