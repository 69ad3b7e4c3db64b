#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "twistperiod/cli.hpp"
#include "twistperiod/errors.hpp"

namespace twistperiod {

namespace {

using P2 = std::array<double, 2>;
using Poly = std::vector<P2>;

constexpr double kCanvas = 600;

// Keeps the part of `poly` where a0 + a1 x + a2 y >= 0.
Poly clip(const Poly& poly, double a0, double a1, double a2) {
  Poly out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const P2& p = poly[i];
    const P2& q = poly[(i + 1) % n];
    const double vp = a0 + a1 * p[0] + a2 * p[1];
    const double vq = a0 + a1 * q[0] + a2 * q[1];
    if (vp >= 0) out.push_back(p);
    if ((vp >= 0) != (vq >= 0)) {
      const double t = vp / (vp - vq);
      out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

struct Frame {
  double xmin, ymin, span;
  P2 px(const P2& p) const {
    return {(p[0] - xmin) / span * kCanvas, kCanvas - (p[1] - ymin) / span * kCanvas};
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string points_attr(const Frame& F, const Poly& poly) {
  std::string s;
  for (const auto& p : poly) {
    const P2 q = F.px(p);
    if (!s.empty()) s += ' ';
    s += fmt(q[0]) + "," + fmt(q[1]);
  }
  return s;
}

Poly chamber_region(const Arrangement& A, const SignVector& sign, const Poly& box) {
  Poly poly = box;
  for (std::size_t j = 0; j < A.size() && !poly.empty(); ++j) {
    const double s = to_int(sign[j]);
    const auto& c = A[j].coeffs;
    poly = clip(poly, s * c[0].get_d(), s * c[1].get_d(), s * c[2].get_d());
  }
  return poly;
}

// Visible part of the line a0 + a1 x + a2 y = 0, as the farthest pair of its
// crossings with the frame's edges.
Poly line_in_frame(double a0, double a1, double a2, double x0, double y0, double span) {
  Poly hits;
  const double tol = 1e-12 * span;
  for (double x : {x0, x0 + span}) {
    if (a2 == 0) continue;
    const double y = -(a0 + a1 * x) / a2;
    if (y >= y0 - tol && y <= y0 + span + tol) hits.push_back({x, y});
  }
  for (double y : {y0, y0 + span}) {
    if (a1 == 0) continue;
    const double x = -(a0 + a2 * y) / a1;
    if (x >= x0 - tol && x <= x0 + span + tol) hits.push_back({x, y});
  }
  if (hits.size() < 2) return {};
  std::pair<P2, P2> best{hits.front(), hits.front()};
  double d = -1;
  for (const auto& p : hits) {
    for (const auto& q : hits) {
      const double e = std::hypot(p[0] - q[0], p[1] - q[1]);
      if (e > d) {
        d = e;
        best = {p, q};
      }
    }
  }
  return {best.first, best.second};
}

}  // namespace

std::string plot_svg(const Arrangement& A, const ChamberCensus& census, const RdBasis& basis,
                     const PhaseSpec& phase) {
  if (A.dim != 2) throw PreconditionError("plot: requires n=2");
  std::vector<P2> pts;
  for (const auto& v : vertices(A)) pts.push_back({v[0].get_d(), v[1].get_d()});
  for (const auto& c : census.chambers) pts.push_back({c.witness[0].get_d(), c.witness[1].get_d()});
  const double level = basis.level.get_d();
  const bool has_level = phase.kind != PhaseKind::none && sgn(basis.level) > 0;
  if (has_level && phase.kind == PhaseKind::quadratic) {
    const double r = std::sqrt(level);
    pts.push_back({-r, -r});
    pts.push_back({r, r});
  }
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  if (has_level && phase.kind == PhaseKind::linear) {
    const double f0 = phase.f[0].get_d(), f1 = phase.f[1].get_d(), f2 = phase.f[2].get_d();
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    const double t = (level - f0 - f1 * cx - f2 * cy) / (f1 * f1 + f2 * f2);
    const P2 q{cx + t * f1, cy + t * f2};
    xmin = std::min(xmin, q[0]);
    xmax = std::max(xmax, q[0]);
    ymin = std::min(ymin, q[1]);
    ymax = std::max(ymax, q[1]);
  }
  double span = std::max(xmax - xmin, ymax - ymin);
  const double pad = 0.25 * span + 1;
  span += 2 * pad;
  const Frame F{0.5 * (xmin + xmax) - span / 2, 0.5 * (ymin + ymax) - span / 2, span};
  const Poly box{{F.xmin, F.ymin}, {F.xmin + span, F.ymin}, {F.xmin + span, F.ymin + span}, {F.xmin, F.ymin + span}};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  svg += "<defs><pattern id=\"hatch\" width=\"8\" height=\"8\" patternUnits=\"userSpaceOnUse\" "
         "patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#c0392b\" "
         "stroke-width=\"2\"/></pattern></defs>\n";
  svg += "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  for (const auto& c : basis.bounded) {
    svg += "<polygon class=\"bounded\" data-sign=\"" + to_string(c.sign) + "\" points=\"" +
           points_attr(F, chamber_region(A, c.sign, box)) + "\" fill=\"#5dade2\" fill-opacity=\"0.6\"/>\n";
  }
  for (const auto& t : basis.truncated) {
    Poly region = chamber_region(A, t.chamber.sign, box);
    if (phase.kind == PhaseKind::linear) {
      region = clip(region, level - phase.f[0].get_d(), -phase.f[1].get_d(), -phase.f[2].get_d());
    } else if (phase.kind == PhaseKind::quadratic) {
      const double r = std::sqrt(level);
      for (int k = 0; k < 128 && !region.empty(); ++k) {
        const double th = 2 * std::numbers::pi * k / 128;
        region = clip(region, r, -std::cos(th), -std::sin(th));
      }
    }
    if (region.empty()) continue;
    svg += "<polygon class=\"truncated\" data-sign=\"" + to_string(t.chamber.sign) + "\" points=\"" +
           points_attr(F, region) + "\" fill=\"url(#hatch)\" stroke=\"none\"/>\n";
  }
  for (std::size_t j = 0; j < A.size(); ++j) {
    const auto& c = A[j].coeffs;
    const Poly seg = line_in_frame(c[0].get_d(), c[1].get_d(), c[2].get_d(), F.xmin, F.ymin, span);
    if (seg.empty()) continue;
    const P2 a = F.px(seg[0]), b = F.px(seg[1]);
    svg += "<line class=\"hyperplane\" data-index=\"" + std::to_string(j + 1) + "\" x1=\"" + fmt(a[0]) + "\" y1=\"" +
           fmt(a[1]) + "\" x2=\"" + fmt(b[0]) + "\" y2=\"" + fmt(b[1]) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  }
  if (has_level && phase.kind == PhaseKind::linear) {
    const double f0 = phase.f[0].get_d(), f1 = phase.f[1].get_d(), f2 = phase.f[2].get_d();
    const Poly seg = line_in_frame(f0 - level, f1, f2, F.xmin, F.ymin, span);
    if (!seg.empty()) {
      const P2 a = F.px(seg[0]), b = F.px(seg[1]);
      svg += "<line class=\"level\" x1=\"" + fmt(a[0]) + "\" y1=\"" + fmt(a[1]) + "\" x2=\"" + fmt(b[0]) + "\" y2=\"" +
             fmt(b[1]) + "\" stroke=\"#c0392b\" stroke-dasharray=\"6 4\"/>\n";
    }
  } else if (has_level && phase.kind == PhaseKind::quadratic) {
    const P2 c = F.px({0, 0});
    svg += "<circle class=\"level\" cx=\"" + fmt(c[0]) + "\" cy=\"" + fmt(c[1]) + "\" r=\"" +
           fmt(std::sqrt(level) / span * kCanvas) + "\" fill=\"none\" stroke=\"#c0392b\" stroke-dasharray=\"6 4\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg(const std::filesystem::path& path, const Arrangement& A, const ChamberCensus& census,
               const RdBasis& basis, const PhaseSpec& phase) {
  const std::string svg = plot_svg(A, census, basis, phase);
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << svg;
}

}  // namespace twistperiod
