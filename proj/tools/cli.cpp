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


#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pws/body.hpp"
#include "pws/cmc.hpp"
#include "pws/errors.hpp"
#include "pws/io.hpp"
#include "pws/isoperimetry.hpp"
#include "pws/lifting.hpp"
#include "pws/selftest.hpp"
#include "pws/sphere.hpp"

namespace pws::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Config {
  std::string body = "disk";
  double r = 1.0;
  int panels = kDefaultPanels;
  int nu = 64;
  int nv = 64;
  double step = 0.0;
  double tol = 1e-6;
  std::string out;
  std::string format;
  std::uint64_t seed = 20260101;
  std::string mesh;
  std::string report;
  double H = 1.0;
  std::vector<double> pos{0.0, 0.0};
  std::vector<double> vel{1.0, 0.0};
  double t0 = 0.0;
  bool verify = false;
  std::string family;
  std::vector<double> ells{8.0, 16.0, 32.0, 64.0};
  bool selftest = false;
  std::vector<double> pole;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON text with every float printed to 17 significant digits; nlohmann's
// own dump uses the shortest round-trip form instead.
void write_json(std::ostream& os, const Json& j, int indent = 0) {
  const std::string pad(indent + 2, ' '), close(indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      os << "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ", ";
        write_json(os, j[i], indent + 2);
      }
      os << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isfinite(x))
        os << format_double(x);
      else
        os << "null";
      return;
    }
    default:
      os << j.dump();
  }
}

// Writes to `path` or, when empty, to `fallback`.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open '" + path + "' for writing");
  body(f);
  if (!f) throw DataError("failed writing '" + path + "'");
}

void emit_json(const std::string& path, std::ostream& fallback, const Json& j) {
  emit(path, fallback, [&](std::ostream& os) {
    write_json(os, j);
    os << "\n";
  });
}

void validate(const Config& c) {
  if (!(c.r > 0.0) || !std::isfinite(c.r)) throw UsageError("--r must be positive");
  if (c.panels < 8 || c.nu < 8 || c.nv < 8) throw UsageError("--panels, --nu and --nv must be at least 8");
  if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
}

int run_selftest(const std::vector<std::string>& modules, const Config& c, std::ostream& out) {
  bool ok = true;
  for (const std::string& m : modules) {
    for (const CheckResult& r : selftest(m, c.seed)) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
      ok = ok && r.passed;
    }
  }
  return ok ? kExitOk : kExitCheckFailed;
}

Json sphere_report(const Config& c, const WulffSphere& S) {
  const double A = area(S, c.panels), V = volume(S, c.panels);
  Json j;
  j["body"] = S.body().name();
  j["r"] = c.r;
  j["area"] = A;
  j["volume"] = V;
  j["minkowski_residual"] = (3.0 * A - 4.0 / c.r * V) / A;
  j["pole_height"] = S.pole_height();
  j["panels"] = c.panels;
  return j;
}

int cmd_body(const Config& c, std::ostream& out) {
  if (c.selftest) return run_selftest({"heis", "body"}, c, out);
  const std::string format = c.format.empty() ? "json" : c.format;
  if (format != "json" && format != "csv") throw UsageError("body supports --format json or csv");
  const ConvexBody K = parse_body(c.body);
  const int n = c.nv;
  if (format == "csv") {
    emit(c.out, out, [&](std::ostream& os) {
      os << "theta,h,dh,d2h,px,py\n";
      for (int i = 0; i < n; ++i) {
        const double th = kTwoPi * i / n;
        const SupportJet s = K.support_jet(th);
        const PlanarVector p = K.pi_map({std::cos(th), std::sin(th)});
        write_csv_row(os, {th, s.h, s.dh, s.d2h, p.v1, p.v2});
      }
    });
    return kExitOk;
  }
  // Duality against a dense boundary sample and pi-map consistency.
  std::vector<PlanarVector> pts(4096);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = K.boundary_point(kTwoPi * i / pts.size(), 0).p;
  double dual = 0.0, pi_res = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = kTwoPi * i / n;
    const PlanarVector u{std::cos(th), std::sin(th)};
    double m = -1e300;
    for (const auto& p : pts) m = std::max(m, dot(u, p));
    const double h = K.support(u);
    dual = std::max(dual, std::abs(h - m));
    const PlanarVector p = K.pi_map(u);
    pi_res = std::max({pi_res, std::abs(K.gauge(p) - 1.0), std::abs(dot(u, p) - h)});
  }
  Json j;
  j["body"] = K.name();
  j["area"] = K.area();
  j["perimeter"] = K.perimeter();
  j["centrally_symmetric"] = K.centrally_symmetric();
  j["duality_residual"] = dual;
  j["pi_residual"] = pi_res;
  j["difference_body_area"] = K.difference_body().area();
  emit_json(c.out, out, j);
  return kExitOk;
}

int cmd_sphere(const Config& c, std::ostream& out) {
  if (c.selftest) return run_selftest({"lifting", "sphere"}, c, out);
  const std::string format = c.format.empty() ? (c.pole.empty() ? "json" : "csv") : c.format;
  const WulffSphere S(parse_body(c.body), c.r, std::nullopt, c.panels);
  if (!c.pole.empty()) {
    if (format != "json" && format != "csv") throw UsageError("pole diagnostics support json or csv");
    const std::vector<double> us{1e-2, 1e-3, 1e-4};
    Json rows = Json::array();
    std::vector<std::vector<PoleRow>> tables;
    for (double v0 : c.pole) tables.push_back(pole_diagnostics(S, v0, us));
    if (format == "csv") {
      emit(c.out, out, [&](std::ostream& os) {
        os << "v0,u,h_over_g,h_over_g2_plus_inv_kappa,nt\n";
        for (std::size_t k = 0; k < tables.size(); ++k)
          for (const PoleRow& p : tables[k]) write_csv_row(os, {c.pole[k], p.u, p.h_over_g, p.h_over_g2_plus_inv_kappa, p.nt});
      });
    } else {
      for (std::size_t k = 0; k < tables.size(); ++k)
        for (const PoleRow& p : tables[k])
          rows.push_back({{"v0", c.pole[k]},
                          {"u", p.u},
                          {"h_over_g", p.h_over_g},
                          {"h_over_g2_plus_inv_kappa", p.h_over_g2_plus_inv_kappa},
                          {"nt", p.nt}});
      emit_json(c.out, out, Json{{"body", S.body().name()}, {"r", c.r}, {"pole_diagnostics", rows}});
    }
    return kExitOk;
  }
  if (format != "json" && format != "obj") throw UsageError("sphere supports --format json or obj");
  const bool need_mesh = !c.mesh.empty() || format == "obj";
  const bool need_report = !c.report.empty() || format == "json";
  if (need_mesh) {
    const Mesh m = mesh(S, c.nu, c.nv, true);
    if (!c.mesh.empty()) emit(c.mesh, out, [&](std::ostream& os) { write_obj(os, m); });
    if (format == "obj") emit(c.out, out, [&](std::ostream& os) { write_obj(os, m); });
  }
  if (need_report) {
    const Json j = sphere_report(c, S);
    if (!c.report.empty()) emit_json(c.report, out, j);
    if (format == "json" && (c.report.empty() || !c.out.empty())) emit_json(c.out, out, j);
  }
  return kExitOk;
}

int cmd_ode(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.selftest) return run_selftest({"ode"}, c, out);
  const std::string format = c.format.empty() ? "json" : c.format;
  if (format != "json" && format != "csv") throw UsageError("ode supports --format json or csv");
  if (c.pos.size() != 2 || c.vel.size() != 2) throw UsageError("--pos and --vel take two comma-separated numbers");
  const ConvexBody K = parse_body(c.body);
  const CMCProblem P{K, c.H, {c.pos[0], c.pos[1]}, {c.vel[0], c.vel[1]}, c.t0};
  const ClosedFormCMC exact(P);
  const std::optional<double> period = exact.period();
  double length;
  int n;
  if (period) {
    const double step = c.step > 0.0 ? c.step : *period / 1e4;
    n = std::max(1, static_cast<int>(std::lround(*period / step)));
    length = *period;
  } else {
    const double step = c.step > 0.0 ? c.step : 1e-3;
    n = 10000;
    length = n * step;
  }
  const LiftedCurve curve = integrate(P, length / n, n);
  std::vector<double> s;
  for (const auto& x : curve.samples()) s.push_back(x.s);
  const double dev = compare(curve, exact.sample(s));
  Json j;
  j["H"] = c.H;
  j["K"] = K.name();
  if (period) {
    const HeisPoint target{c.pos[0], c.pos[1], c.t0 + 2.0 * K.area() / (c.H * c.H)};
    const HeisPoint& e = curve.end();
    j["period_defect"] = std::hypot(e.x - target.x, e.y - target.y, e.t - target.t);
  } else {
    j["period_defect"] = nullptr;
  }
  j["max_deviation"] = dev;
  if (format == "csv")
    emit(c.out, out, [&](std::ostream& os) { write_cmc_csv(os, curve); });
  else
    emit_json(c.out, out, j);
  if (c.verify && !(dev <= c.tol)) {
    err << "verification failed: max deviation " << format_double(dev) << " exceeds tolerance "
        << format_double(c.tol) << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_check(const Config& c, std::ostream& out) { return run_selftest(selftest_modules(), c, out); }

int cmd_isoperim(const Config& c, std::ostream& out) {
  if (c.selftest) return run_selftest({"isoperim"}, c, out);
  const std::string format = c.format.empty() ? "json" : c.format;
  if (format != "json" && format != "csv") throw UsageError("isoperim supports --format json or csv");
  const ConvexBody K = parse_body(c.body);
  const WulffSphere S1(K, 1.0, std::nullopt, c.panels);
  const double A1 = area(S1, c.panels), V1 = volume(S1, c.panels);
  const WulffSphere S(K, c.r, std::nullopt, c.panels);
  const double Vb = volume(S, c.panels);
  auto ball = std::make_shared<const BallGraphs>(S);
  struct Row {
    std::string name;
    CalibrationResult cal;
  };
  std::vector<Row> rows;
  for (const CompetitorSet& C : competitor_suite(ball, Vb)) {
    if (!c.family.empty() && C.name != c.family) continue;
    rows.push_back({C.name, calibration_check(C, A1, V1)});
  }
  if (rows.empty()) throw UsageError("unknown competitor family '" + c.family + "'");
  if (format == "csv") {
    emit(c.out, out, [&](std::ostream& os) {
      os << "family,perim_E,perim_ball,margin,volume,rho0\n";
      for (const Row& r : rows) {
        os << r.name << ",";
        write_csv_row(os, {r.cal.perim_E, r.cal.perim_ball, r.cal.margin, r.cal.volume, r.cal.rho0});
      }
    });
    return kExitOk;
  }
  Json margins, rho0;
  for (const Row& r : rows) {
    margins[r.name] = r.cal.margin;
    rho0[r.name] = r.cal.rho0;
  }
  Json j;
  j["body"] = K.name();
  j["r"] = c.r;
  j["residuals"] = {{"minkowski", (3.0 * A1 - 4.0 * V1) / A1}};
  j["margins"] = margins;
  j["rho0"] = rho0;
  emit_json(c.out, out, j);
  return kExitOk;
}

int cmd_converge(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.selftest) return run_selftest({"converge"}, c, out);
  const std::string format = c.format.empty() ? "csv" : c.format;
  if (format != "json" && format != "csv") throw UsageError("converge supports --format json or csv");
  const std::string family = c.family.empty() ? "lp" : c.family;
  const ConvergenceTable t = convergence_study(family, c.ells, c.nu, c.nv, c.panels);
  for (const std::string& w : t.warnings) err << "warning: " << w << "\n";
  if (format == "csv") {
    emit(c.out, out, [&](std::ostream& os) {
      os << "ell,area,volume,dH\n";
      for (const ConvergenceRow& r : t.rows) write_csv_row(os, {r.ell, r.area, r.volume, r.hausdorff});
    });
    return kExitOk;
  }
  Json rows = Json::array();
  for (const ConvergenceRow& r : t.rows)
    rows.push_back({{"ell", r.ell}, {"area", r.area}, {"volume", r.volume}, {"dH", r.hausdorff}});
  Json j;
  j["family"] = family;
  j["nu"] = c.nu;
  j["nv"] = c.nv;
  j["rows"] = rows;
  j["hausdorff_decreasing"] = t.hausdorff_decreasing;
  j["area_cauchy"] = t.area_cauchy;
  j["volume_cauchy"] = t.volume_cauchy;
  emit_json(c.out, out, j);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Wulff shapes of sub-Finsler norms in the Heisenberg group", "pwshapes"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--body", c.body, "disk | ellipse:a1,a2 | lp:ell | tri:ell | fourier:path");
    s->add_option("--out", c.out, "output file (default stdout)");
    s->add_option("--format", c.format, "json, csv or obj");
    s->add_option("--seed", c.seed, "seed for randomized self-tests");
    s->add_flag("--selftest", c.selftest, "run the invariant suite of this module");
    s->add_option("--panels", c.panels, "quadrature panels per period");
  };
  CLI::App* body = app.add_subcommand("body", "body data and duality check");
  common(body);
  body->add_option("--nv", c.nv, "number of support samples");
  CLI::App* sphere = app.add_subcommand("sphere", "area, volume, mesh and pole diagnostics");
  common(sphere);
  sphere->add_option("--r", c.r, "scale");
  sphere->add_option("--nu", c.nu, "mesh rings");
  sphere->add_option("--nv", c.nv, "mesh columns");
  sphere->add_option("--mesh", c.mesh, "write an OBJ mesh to this file");
  sphere->add_option("--report", c.report, "write the JSON report to this file");
  sphere->add_option("--pole", c.pole, "pole diagnostics at these v0 values")->delimiter(',');
  CLI::App* ode = app.add_subcommand("ode", "integrate a constant mean curvature curve");
  common(ode);
  ode->add_option("--H", c.H, "mean curvature");
  ode->add_option("--step", c.step, "step (default period / 1e4)");
  ode->add_option("--pos", c.pos, "initial position x,y")->delimiter(',');
  ode->add_option("--vel", c.vel, "initial velocity x,y")->delimiter(',');
  ode->add_option("--t0", c.t0, "initial height");
  ode->add_option("--tol", c.tol, "verification tolerance");
  ode->add_flag("--verify", c.verify, "fail unless the closed form is matched within --tol");
  CLI::App* check = app.add_subcommand("check", "full invariant suite");
  check->add_option("--seed", c.seed, "seed for randomized checks");
  CLI::App* iso = app.add_subcommand("isoperim", "calibration margins of the competitor suite");
  common(iso);
  iso->add_option("--r", c.r, "scale");
  iso->add_option("--family", c.family, "only this competitor family");
  CLI::App* conv = app.add_subcommand("converge", "convergence along a body family");
  common(conv);
  conv->add_option("--family", c.family, "lp or tri");
  conv->add_option("--ells", c.ells, "exponents, strictly increasing or decreasing")->delimiter(',');
  conv->add_option("--nu", c.nu, "mesh rings");
  conv->add_option("--nv", c.nv, "mesh columns");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }
  try {
    validate(c);
    if (body->parsed()) return cmd_body(c, out);
    if (sphere->parsed()) return cmd_sphere(c, out);
    if (ode->parsed()) return cmd_ode(c, out, err);
    if (check->parsed()) return cmd_check(c, out);
    if (iso->parsed()) return cmd_isoperim(c, out);
    return cmd_converge(c, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace pws::cli
