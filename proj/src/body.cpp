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

#include "pws/body.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include <fmt/format.h>

#include "pws/errors.hpp"
#include "pws/quadrature.hpp"
#include "roots.hpp"

namespace pws {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

PlanarVector unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

void require_nonzero(const PlanarVector& v, const char* what) {
  if (v.v1 == 0.0 && v.v2 == 0.0) throw DomainError(std::string(what) + ": zero vector");
}

class EllipseModel final : public BodyModel {
 public:
  EllipseModel(double a1, double a2, std::string name) : a1_(a1), a2_(a2), name_(std::move(name)) {}

  std::string name() const override { return name_; }

  GaugeJet gauge_jet(const PlanarVector& v, int order) const override {
    GaugeJet j;
    const double px = v.v1 / a1_, py = v.v2 / a2_;
    j.value = std::hypot(px, py);
    if (order < 1) return j;
    j.grad = {px / a1_ / j.value, py / a2_ / j.value};
    if (order < 2) return j;
    const PlanarVector g = j.grad;
    j.hess = {(1.0 / (a1_ * a1_) - g.v1 * g.v1) / j.value, -g.v1 * g.v2 / j.value, -g.v1 * g.v2 / j.value,
              (1.0 / (a2_ * a2_) - g.v2 * g.v2) / j.value};
    return j;
  }

  std::optional<SupportJet> support_jet(double theta) const override {
    // cos^2 + sin^2 is not exactly 1 in floating point.
    if (a1_ == a2_) return SupportJet{a1_, 0.0, 0.0};
    const double c = std::cos(theta), s = std::sin(theta);
    const double A = a1_ * a1_, B = a2_ * a2_;
    const double S = A * c * c + B * s * s;
    const double dS = (B - A) * 2.0 * s * c;
    const double d2S = 2.0 * (B - A) * (c * c - s * s);
    const double h = std::sqrt(S);
    return SupportJet{h, dS / (2.0 * h), d2S / (2.0 * h) - dS * dS / (4.0 * h * S)};
  }

  std::optional<BoundaryJet> affine_chart(double s, int) const override {
    const double sn = std::sin(s), cs = std::cos(s);
    return BoundaryJet{{a1_ * sn, a2_ * cs}, {a1_ * cs, -a2_ * sn}, {-a1_ * sn, -a2_ * cs}};
  }

  std::optional<double> affine_param(const PlanarVector& p) const override {
    double s = std::atan2(p.v1 / a1_, p.v2 / a2_);
    return s < 0 ? s + kTwoPi : s;
  }

  bool centrally_symmetric() const override { return true; }

 private:
  double a1_, a2_;
  std::string name_;
};

// G(x) = (sum_i max(<x, a_i>, 0)^ell)^(1/ell).
class PowerSumModel final : public BodyModel {
 public:
  PowerSumModel(double ell, std::vector<PlanarVector> dirs, std::string name, bool symmetric, bool lp)
      : ell_(ell), dirs_(std::move(dirs)), name_(std::move(name)), symmetric_(symmetric), lp_(lp) {}

  std::string name() const override { return name_; }

  GaugeJet gauge_jet(const PlanarVector& v, int order) const override {
    GaugeJet j;
    double m = 0.0;
    for (const auto& a : dirs_) m = std::max(m, dot(v, a));
    if (m <= 0.0) return j;
    double sum = 0.0;
    for (const auto& a : dirs_) {
      const double z = dot(v, a);
      if (z > 0.0) sum += std::pow(z / m, ell_);
    }
    const double G = m * std::pow(sum, 1.0 / ell_);
    j.value = G;
    if (order < 1) return j;
    PlanarVector grad;
    for (const auto& a : dirs_) {
      const double z = dot(v, a);
      if (z > 0.0) grad += std::pow(z / G, ell_ - 1.0) * a;
    }
    j.grad = grad;
    if (order < 2) return j;
    Mat2 H;
    for (const auto& a : dirs_) {
      const double z = dot(v, a);
      if (z <= 0.0) continue;
      const double w = std::pow(z / G, ell_ - 2.0);
      H.m11 += w * a.v1 * a.v1;
      H.m12 += w * a.v1 * a.v2;
      H.m22 += w * a.v2 * a.v2;
    }
    const double f = (ell_ - 1.0) / G;
    j.hess.m11 = f * (H.m11 - grad.v1 * grad.v1);
    j.hess.m12 = f * (H.m12 - grad.v1 * grad.v2);
    j.hess.m21 = j.hess.m12;
    j.hess.m22 = f * (H.m22 - grad.v2 * grad.v2);
    return j;
  }

  // Dual of the l^ell norm is the l^q norm, q = ell / (ell - 1).
  std::optional<SupportJet> support_jet(double theta) const override {
    if (!lp_) return std::nullopt;
    const double q = ell_ / (ell_ - 1.0);
    const double c = std::cos(theta), s = std::sin(theta);
    const double ac = std::abs(c), as = std::abs(s);
    const double sc = c < 0 ? -1.0 : 1.0, ss = s < 0 ? -1.0 : 1.0;
    const double F = std::pow(ac, q) + std::pow(as, q);
    const double dF = q * (c * ss * std::pow(as, q - 1.0) - s * sc * std::pow(ac, q - 1.0));
    // c^2 |s|^(q-2) and s^2 |c|^(q-2) are written so that they vanish, not
    // NaN, when the base is 0 and q > 2.
    auto cross_term = [q](double u2, double base) {
      if (u2 == 0.0) return 0.0;
      return u2 * std::pow(base, q - 2.0);
    };
    const double d2F = q * (-std::pow(as, q) + (q - 1.0) * cross_term(c * c, as) - std::pow(ac, q) +
                            (q - 1.0) * cross_term(s * s, ac));
    const double h = std::pow(F, 1.0 / q);
    const double dh = h / (q * F) * dF;
    const double d2h = (1.0 / q) * (1.0 / q - 1.0) * h / (F * F) * dF * dF + h / (q * F) * d2F;
    return SupportJet{h, dh, d2h};
  }

  std::vector<double> radial_kinks() const override {
    std::vector<double> out;
    for (const auto& a : dirs_) {
      // <(sin s, cos s), a> = 0
      double s = std::atan2(-a.v2, a.v1);
      for (double k : {s, s + kPi}) {
        double w = std::fmod(k, kTwoPi);
        if (w < 0) w += kTwoPi;
        if (std::abs(w - kTwoPi) < 1e-15) w = 0.0;
        out.push_back(w);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double x, double y) { return std::abs(x - y) < 1e-13; }),
              out.end());
    return out;
  }

  bool centrally_symmetric() const override { return symmetric_; }

 private:
  double ell_;
  std::vector<PlanarVector> dirs_;
  std::string name_;
  bool symmetric_;
  bool lp_;
};

// Body given by its support function; the gauge is recovered through the
// boundary point p(theta) = h n + h' n'.
class SupportModel final : public BodyModel {
 public:
  SupportModel(std::string name, std::function<SupportJet(double)> h, bool symmetric)
      : name_(std::move(name)), h_(std::move(h)), symmetric_(symmetric) {}

  std::string name() const override { return name_; }

  std::optional<SupportJet> support_jet(double theta) const override { return h_(theta); }

  GaugeJet gauge_jet(const PlanarVector& v, int order) const override {
    const double phi = std::atan2(v.v2, v.v1);
    auto f = [&](double th) {
      const SupportJet s = h_(th);
      const PlanarVector n = unit(th), np = j_rotate(n);
      const PlanarVector p = s.h * n + s.dh * np;
      return detail::wrap_angle(std::atan2(p.v2, p.v1) - phi);
    };
    const double a = phi - 0.5 * kPi, b = phi + 0.5 * kPi;
    const double th = detail::bracket_root(f, a, b, f(a), f(b), "support body gauge");
    const SupportJet s = h_(th);
    const PlanarVector n = unit(th);
    GaugeJet j;
    // Exact on flat edges as well: the boundary point lies on the support line.
    j.value = dot(v, n) / s.h;
    if (order < 1) return j;
    j.grad = n / s.h;
    if (order < 2) return j;
    const PlanarVector p = s.h * n + s.dh * j_rotate(n);
    const PlanarVector w = j_rotate(p);
    const double R = s.radius();
    const double c = std::isinf(R) ? 0.0 : 1.0 / (R * s.h * s.h * s.h * j.value);
    j.hess = {c * w.v1 * w.v1, c * w.v1 * w.v2, c * w.v1 * w.v2, c * w.v2 * w.v2};
    return j;
  }

  bool centrally_symmetric() const override { return symmetric_; }

 private:
  std::string name_;
  std::function<SupportJet(double)> h_;
  bool symmetric_;
};

std::string fmt_param(double x) { return fmt::format("{}", x); }

}  // namespace

ConvexBody::ConvexBody(std::shared_ptr<const BodyModel> model) : model_(std::move(model)) {
  if (!model_) throw DomainError("ConvexBody: null model");
  name_ = model_->name();
  affine_ = model_->affine_chart(0.0, 0).has_value();
  const ChartKind chart = default_chart();
  const auto kinks = wrap_kinks(chart_kinks(chart), 0.0, kPeriod);
  const PanelRule rule = make_panel_rule(0.0, kPeriod, kDefaultPanels, kinks);
  std::vector<double> a(rule.size()), l(rule.size());
  double rmax = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const BoundaryJet b = chart_point(chart, rule.nodes[k], 1);
    a[k] = rule.weights[k] * dot(b.p, j_rotate(b.dp));
    l[k] = rule.weights[k] * norm(b.dp);
    rmax = std::max(rmax, norm(b.p));
  }
  area_ = 0.5 * pairwise_sum(a);
  perimeter_ = pairwise_sum(l);
  max_radius_ = rmax;
  if (!(area_ > 0.0) || !std::isfinite(area_) || !std::isfinite(perimeter_))
    throw DomainError("ConvexBody: invalid body '" + name_ + "'");
}

double ConvexBody::gauge(const PlanarVector& v) const {
  if (v.v1 == 0.0 && v.v2 == 0.0) return 0.0;
  return model_->gauge_jet(v, 0).value;
}

GaugeJet ConvexBody::gauge_jet(const PlanarVector& v, int order) const {
  require_nonzero(v, "gauge_jet");
  return model_->gauge_jet(v, order);
}

double ConvexBody::radial(const PlanarVector& dir) const {
  require_nonzero(dir, "radial");
  return norm(dir) / gauge(dir);
}

ConvexBody::SupportPoint ConvexBody::support_by_chart(double theta) const {
  // The outer normal angle psi(s) of the radial chart decreases with s and
  // stays within pi/2 of the point direction pi/2 - s.
  auto psi = [&](double s) {
    const BoundaryJet b = boundary_point(s, 1);
    return detail::wrap_angle(std::atan2(b.dp.v1, -b.dp.v2) - theta);
  };
  const double a = -theta, b = kPi - theta;
  const double s = detail::bracket_root(psi, a, b, psi(a), psi(b), "support");
  const BoundaryJet j = boundary_point(s, 2);
  const PlanarVector n = unit(theta), np = j_rotate(n);
  SupportPoint out;
  out.point = j.p;
  out.jet.h = dot(j.p, n);
  out.jet.dh = dot(j.p, np);
  const double speed = norm(j.dp);
  const double kappa = cross(j.d2p, j.dp) / (speed * speed * speed);
  out.jet.d2h = (kappa > 0.0 ? 1.0 / kappa : kInf) - out.jet.h;
  return out;
}

ConvexBody::SupportPoint ConvexBody::support_point(double theta) const {
  if (auto s = model_->support_jet(theta)) {
    const PlanarVector n = unit(theta);
    return {*s, s->h * n + s->dh * j_rotate(n)};
  }
  return support_by_chart(theta);
}

double ConvexBody::support(const PlanarVector& u) const {
  if (u.v1 == 0.0 && u.v2 == 0.0) return 0.0;
  return norm(u) * support_point(std::atan2(u.v2, u.v1)).jet.h;
}

SupportJet ConvexBody::support_jet(double theta) const { return support_point(theta).jet; }

PlanarVector ConvexBody::pi_map(const PlanarVector& u) const {
  require_nonzero(u, "pi_map");
  return support_point(std::atan2(u.v2, u.v1)).point;
}

Mat2 ConvexBody::pi_jacobian(const PlanarVector& u) const {
  require_nonzero(u, "pi_jacobian");
  const double theta = std::atan2(u.v2, u.v1);
  const double R = support_jet(theta).radius();
  if (!std::isfinite(R)) throw DomainError("pi_jacobian: boundary is not strictly convex at this normal");
  const PlanarVector w = j_rotate(unit(theta));
  const double c = R / norm(u);
  return {c * w.v1 * w.v1, c * w.v1 * w.v2, c * w.v1 * w.v2, c * w.v2 * w.v2};
}

BoundaryJet ConvexBody::boundary_point(double s, int order) const {
  const PlanarVector e{std::sin(s), std::cos(s)}, de{std::cos(s), -std::sin(s)};
  const GaugeJet g = model_->gauge_jet(e, order >= 2 ? 2 : 1);
  const double G = g.value;
  const double G1 = dot(g.grad, de);
  const double r = 1.0 / G;
  const double r1 = -G1 / (G * G);
  BoundaryJet j;
  j.p = r * e;
  j.dp = r1 * e + r * de;
  if (order >= 2) {
    const double G2 = dot(de, g.hess * de) - G;
    const double r2 = -G2 / (G * G) + 2.0 * G1 * G1 / (G * G * G);
    j.d2p = r2 * e + 2.0 * r1 * de - r * e;
  }
  return j;
}

BoundaryJet ConvexBody::chart_point(ChartKind chart, double s, int order) const {
  if (chart == ChartKind::affine) {
    if (auto j = model_->affine_chart(s, order)) return *j;
    throw DomainError("chart_point: body '" + name_ + "' has no affine chart");
  }
  return boundary_point(s, order);
}

double ConvexBody::chart_param(ChartKind chart, const PlanarVector& p) const {
  if (chart == ChartKind::affine) {
    if (auto s = model_->affine_param(p)) return *s;
    throw DomainError("chart_param: body '" + name_ + "' has no affine chart");
  }
  const double s = std::atan2(p.v1, p.v2);
  return s < 0 ? s + kTwoPi : s;
}

std::vector<double> ConvexBody::chart_kinks(ChartKind chart) const {
  if (chart == ChartKind::affine) return {};
  return model_->radial_kinks();
}

double ConvexBody::curvature(ChartKind chart, double s) const {
  const BoundaryJet j = chart_point(chart, s, 2);
  const double speed = norm(j.dp);
  return cross(j.d2p, j.dp) / (speed * speed * speed);
}

ConvexBody ConvexBody::difference_body() const {
  ConvexBody k = *this;
  auto h0 = [k](double theta) {
    const SupportJet a = k.support_jet(theta), b = k.support_jet(theta + kPi);
    return SupportJet{a.h + b.h, a.dh + b.dh, a.d2h + b.d2h};
  };
  return make_support_body("difference(" + name_ + ")", h0, true);
}

ConvexBody make_builtin(const BodyFamily& family) {
  struct Visitor {
    ConvexBody operator()(const Disk&) const {
      return ConvexBody(std::make_shared<EllipseModel>(1.0, 1.0, "disk"));
    }
    ConvexBody operator()(const Ellipse& e) const {
      if (!(e.a1 > 0.0 && e.a2 > 0.0 && std::isfinite(e.a1) && std::isfinite(e.a2)))
        throw DomainError("ellipse: semiaxes must be positive");
      return ConvexBody(
          std::make_shared<EllipseModel>(e.a1, e.a2, "ellipse:" + fmt_param(e.a1) + "," + fmt_param(e.a2)));
    }
    ConvexBody operator()(const Lp& p) const {
      if (!(p.ell > 1.0 && std::isfinite(p.ell))) throw DomainError("lp: exponent must exceed 1");
      std::vector<PlanarVector> dirs{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      return ConvexBody(std::make_shared<PowerSumModel>(p.ell, dirs, "lp:" + fmt_param(p.ell), true, true));
    }
    ConvexBody operator()(const SmoothedTriangle& t) const {
      if (!(t.ell > 1.0 && std::isfinite(t.ell))) throw DomainError("tri: exponent must exceed 1");
      const double h = std::sqrt(3.0) / 2.0;
      std::vector<PlanarVector> dirs{{0, 1}, {h, -0.5}, {-h, -0.5}};
      return ConvexBody(std::make_shared<PowerSumModel>(t.ell, dirs, "tri:" + fmt_param(t.ell), false, false));
    }
  };
  return std::visit(Visitor{}, family);
}

ConvexBody make_support_body(std::string name, std::function<SupportJet(double)> support, bool symmetric) {
  return ConvexBody(std::make_shared<SupportModel>(std::move(name), std::move(support), symmetric));
}

ConvexBody make_fourier(std::vector<double> coeffs) {
  if (coeffs.empty() || coeffs.size() % 2 == 0)
    throw DomainError("fourier: expected [c0, a1, b1, ..., an, bn]");
  for (double c : coeffs)
    if (!std::isfinite(c)) throw DomainError("fourier: non-finite coefficient");
  auto h = [coeffs](double theta) {
    SupportJet s{coeffs[0], 0.0, 0.0};
    for (std::size_t k = 1; 2 * k < coeffs.size() + 1; ++k) {
      const double a = coeffs[2 * k - 1], b = coeffs[2 * k];
      const double kk = static_cast<double>(k);
      const double c = std::cos(kk * theta), sn = std::sin(kk * theta);
      s.h += a * c + b * sn;
      s.dh += kk * (-a * sn + b * c);
      s.d2h += -kk * kk * (a * c + b * sn);
    }
    return s;
  };
  constexpr int kGrid = 4096;
  for (int i = 0; i < kGrid; ++i) {
    const SupportJet s = h(kTwoPi * i / kGrid);
    if (!(s.h > 0.0)) throw DomainError("fourier: support must be positive (0 must be interior)");
    if (!(s.radius() >= 1e-6)) throw DomainError("fourier: h + h'' < 1e-6, body is not strictly convex");
  }
  bool symmetric = true;
  for (std::size_t k = 1; 2 * k < coeffs.size() + 1; k += 2)
    if (coeffs[2 * k - 1] != 0.0 || coeffs[2 * k] != 0.0) symmetric = false;
  return make_support_body(fmt::format("fourier({} terms)", coeffs.size()), h, symmetric);
}

std::vector<double> read_fourier_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open body config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  static const std::regex key(R"(fourier_h\s*=\s*\[([^\]]*)\])");
  std::smatch m;
  if (!std::regex_search(text, m, key)) throw DataError("config '" + path + "': missing fourier_h = [...]");
  std::vector<double> out;
  std::stringstream items(m[1].str());
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto b = item.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item.substr(b), &used));
      if (item.find_first_not_of(" \t\r\n", b + used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DataError("config '" + path + "': bad number '" + item + "'");
    }
  }
  return out;
}

ConvexBody parse_body(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string tag = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double x = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return x;
    } catch (const std::exception&) {
      throw DomainError("body '" + spec + "': bad number '" + s + "'");
    }
  };
  if (tag == "disk" && colon == std::string::npos) return make_builtin(Disk{});
  if (tag == "ellipse") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw DomainError("body '" + spec + "': expected ellipse:a1,a2");
    return make_builtin(Ellipse{number(arg.substr(0, comma)), number(arg.substr(comma + 1))});
  }
  if (tag == "lp") return make_builtin(Lp{number(arg)});
  if (tag == "tri") return make_builtin(SmoothedTriangle{number(arg)});
  if (tag == "fourier" && !arg.empty()) return make_fourier(read_fourier_config(arg));
  throw DomainError("unknown body '" + spec + "' (expected disk | ellipse:a1,a2 | lp:ell | tri:ell | fourier:path)");
}

}  // namespace pws
