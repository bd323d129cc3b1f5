#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "rank2/brokenlines.hpp"
#include "rank2/greedy.hpp"

namespace rank2 {

struct ComparisonReport {
  ClusterParams params;
  DVector d;
  std::int64_t order = 0;
  LaurentPoly greedy;
  LaurentPoly theta;
  bool equal = false;
  bool support_certificate = false;
  double greedy_ms = 0;
  double theta_ms = 0;
  // Filled only when the two sides differ.
  std::vector<LatticeVector> only_greedy;
  std::vector<LatticeVector> only_theta;
};

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline void support_difference(ComparisonReport& r) {
  for (const auto& [m, c] : r.greedy)
    if (r.theta.coeff(m) != c) r.only_greedy.push_back(m);
  for (const auto& [m, c] : r.theta)
    if (r.greedy.coeff(m) != c) r.only_theta.push_back(m);
}

}  // namespace detail

/// Greedy element x[a1,a2] against theta^d at exponent (-a1,-a2). Dd, when
/// given, must be a completed d-diagram of order >= the budget.
inline ComparisonReport compare(const ClusterParams& params, const DVector& d,
                                std::optional<std::int64_t> order = std::nullopt,
                                const ScatteringDiagram* Dd = nullptr) {
  ComparisonReport r;
  r.params = params;
  r.d = d;
  const LatticeVector m = d.pointed_exponent();
  r.order = order ? *order : theta_d_budget(params, m);

  auto t0 = std::chrono::steady_clock::now();
  r.greedy = greedy_element(params, d).poly;
  r.greedy_ms = detail::elapsed_ms(t0);

  t0 = std::chrono::steady_clock::now();
  if (Dd && Dd->order >= r.order) {
    r.theta = theta_d(*Dd, m, r.order);
  } else {
    r.theta = theta_d(complete(initial_diagram_d(params, r.order), r.order), m, r.order);
  }
  r.theta_ms = detail::elapsed_ms(t0);

  r.equal = r.greedy == r.theta;
  r.support_certificate = certify_pointed_support(params, d, r.theta);
  if (!r.equal) detail::support_difference(r);
  return r;
}

struct GridOptions {
  std::int64_t order_cap = 40;
  std::ostream* log = nullptr;
};

struct GridResult {
  std::int64_t radius = 0;  // radius actually run
  std::int64_t order = 0;   // order of the shared d-diagram
  std::vector<ComparisonReport> reports;

  bool all_equal() const {
    for (const auto& r : reports)
      if (!r.equal) return false;
    return true;
  }
};

/// compare over |a1|, |a2| <= radius in (a1, a2) lexicographic order. One
/// d-diagram is completed at the largest budget and shared. If that budget
/// exceeds the cap the radius is reduced and the reduction logged.
inline GridResult compare_grid(const ClusterParams& params, std::int64_t radius, const GridOptions& opt = {}) {
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  auto max_budget = [&](std::int64_t R) {
    std::int64_t K = 1;
    for (std::int64_t a1 = -R; a1 <= R; ++a1)
      for (std::int64_t a2 = -R; a2 <= R; ++a2) K = std::max(K, theta_d_budget(params, {-a1, -a2}));
    return K;
  };
  GridResult g;
  g.radius = radius;
  g.order = max_budget(radius);
  while (g.order > opt.order_cap && g.radius > 0) {
    if (opt.log)
      *opt.log << "compare_grid (" << params.b << "," << params.c << "): budget " << g.order << " exceeds cap "
               << opt.order_cap << ", radius " << g.radius << " -> " << g.radius - 1 << "\n";
    --g.radius;
    g.order = max_budget(g.radius);
  }
  const ScatteringDiagram Dd = complete(initial_diagram_d(params, g.order), g.order);
  for (std::int64_t a1 = -g.radius; a1 <= g.radius; ++a1)
    for (std::int64_t a2 = -g.radius; a2 <= g.radius; ++a2) g.reports.push_back(compare(params, {a1, a2}, std::nullopt, &Dd));
  return g;
}

// ---------------------------------------------------------------------------
// SVG

struct Viewport {
  double xmin = -4, xmax = 4, ymin = -4, ymax = 4;
  int width = 640;
};

namespace detail {

inline std::string fmt3(double v) {
  if (std::fabs(v) < 5e-4) v = 0;  // no "-0.000"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Canvas {
  Viewport vp;
  double scale;
  int height;
  std::string body;

  explicit Canvas(const Viewport& v)
      : vp(v), scale(v.width / (v.xmax - v.xmin)), height(static_cast<int>(std::lround((v.ymax - v.ymin) * scale))) {}

  double X(double x) const { return (x - vp.xmin) * scale; }
  double Y(double y) const { return (vp.ymax - y) * scale; }

  void line(double x0, double y0, double x1, double y1, const std::string& style) {
    body += "<line x1=\"" + fmt3(X(x0)) + "\" y1=\"" + fmt3(Y(y0)) + "\" x2=\"" + fmt3(X(x1)) + "\" y2=\"" +
            fmt3(Y(y1)) + "\" " + style + "/>\n";
  }
  void text(double x, double y, const std::string& s, const std::string& style) {
    body += "<text x=\"" + fmt3(X(x)) + "\" y=\"" + fmt3(Y(y)) + "\" " + style + ">" + xml_escape(s) + "</text>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
    body += "<polyline points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) body += ' ';
      body += fmt3(X(pts[i].first)) + "," + fmt3(Y(pts[i].second));
    }
    body += "\" " + style + "/>\n";
  }
  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
    body += "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) body += ' ';
      body += fmt3(X(pts[i].first)) + "," + fmt3(Y(pts[i].second));
    }
    body += "\" " + style + "/>\n";
  }
};

// Largest t >= 0 with p + t u inside the viewport (p assumed inside).
inline double exit_time(const Viewport& vp, double px, double py, double ux, double uy) {
  double t = 1e300;
  if (ux > 0) t = std::min(t, (vp.xmax - px) / ux);
  if (ux < 0) t = std::min(t, (vp.xmin - px) / ux);
  if (uy > 0) t = std::min(t, (vp.ymax - py) / uy);
  if (uy < 0) t = std::min(t, (vp.ymin - py) / uy);
  return std::max(t, 0.0);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string wall_label(const Wall& w) {
  if (w.coeffs.empty()) return "1";
  const auto& [k, c] = *w.coeffs.begin();
  return "1 + " + to_text(LaurentPoly::monomial(k * w.direction, c)) + (w.coeffs.size() > 1 ? " + ..." : "");
}

}  // namespace detail

/// Deterministic SVG of a diagram: axes, wall supports clipped to the
/// viewport with leading-term labels, the irrational cone (bc >= 4), and
/// optional broken lines with per-segment monomials.
inline std::string render_svg(const ScatteringDiagram& D, const std::vector<BrokenLine>& lines = {},
                              const Viewport& vp = {}) {
  detail::Canvas cv(vp);
  using detail::exit_time;

  if (auto ic = irrational_cone(D.params)) {
    // Boundary support directions (x, y +- sqrt(disc)); a single ray when bc = 4.
    const double s = std::sqrt(static_cast<double>(ic->disc));
    std::vector<std::pair<double, double>> dirs = {{double(ic->x), ic->y - s}};
    if (!ic->degenerate()) dirs.push_back({double(ic->x), ic->y + s});
    if (D.variant == Variant::d)
      for (auto& [x, y] : dirs)
        if (y < 0) x += D.params.b * y;
    std::vector<std::pair<double, double>> wedge = {{0.0, 0.0}};
    for (const auto& [x, y] : dirs) {
      const double t = exit_time(vp, 0, 0, x, y);
      wedge.push_back({t * x, t * y});
    }
    if (wedge.size() == 3) {
      // Viewport corners inside the (convex) wedge, in angular order.
      auto crs = [](std::pair<double, double> a, std::pair<double, double> b) {
        return a.first * b.second - a.second * b.first;
      };
      const auto a = dirs[0], b = dirs[1];
      const double orient = crs(a, b) > 0 ? 1 : -1;
      std::vector<std::pair<double, double>> corners;
      for (double cx : {vp.xmin, vp.xmax})
        for (double cy : {vp.ymin, vp.ymax})
          if (orient * crs(a, {cx, cy}) > 0 && orient * crs({cx, cy}, b) > 0) corners.push_back({cx, cy});
      std::sort(corners.begin(), corners.end(), [&](const auto& u, const auto& v) { return orient * crs(u, v) > 0; });
      std::vector<std::pair<double, double>> poly = {wedge[0], wedge[1]};
      poly.insert(poly.end(), corners.begin(), corners.end());
      poly.push_back(wedge[2]);
      cv.polygon(poly, "fill=\"#f2d0d0\" stroke=\"none\"");
    }
    for (std::size_t i = 1; i < wedge.size(); ++i)
      cv.line(0, 0, wedge[i].first, wedge[i].second, "stroke=\"#c03030\" stroke-width=\"2\" stroke-dasharray=\"6,3\"");
  }

  cv.line(vp.xmin, 0, vp.xmax, 0, "stroke=\"#bbbbbb\" stroke-width=\"0.5\"");
  cv.line(0, vp.ymin, 0, vp.ymax, "stroke=\"#bbbbbb\" stroke-width=\"0.5\"");

  std::vector<std::array<double, 4>> placed;
  for (const Wall& w : D.walls) {
    const double ux = double(w.direction.m1), uy = double(w.direction.m2);
    const double tn = exit_time(vp, 0, 0, -ux, -uy);
    double x0 = 0, y0 = 0;
    if (w.is_line()) {
      const double tp = exit_time(vp, 0, 0, ux, uy);
      x0 = tp * ux;
      y0 = tp * uy;
    }
    const double x1 = -tn * ux, y1 = -tn * uy;
    cv.line(x0, y0, x1, y1, "stroke=\"black\" stroke-width=\"1.5\"");
    // Label near the far end of the ray, stepping inward along the wall
    // until its box (in pixels) clears the labels already placed.
    const std::string label = detail::wall_label(w);
    const bool right = x1 > 1e-9;
    const double wpx = 6.7 * static_cast<double>(label.size()), hpx = 12;
    auto box_at = [&](double f) {
      const double px = cv.X(f * x1), py = cv.Y(f * y1);
      return std::array<double, 4>{right ? px - wpx : px, py - hpx, right ? px : px + wpx, py};
    };
    double f = 0.92;
    for (double g = 0.92; g > 0.15; g -= 0.08) {
      const auto bx = box_at(g);
      bool clash = false;
      for (const auto& o : placed)
        if (bx[0] < o[2] && o[0] < bx[2] && bx[1] < o[3] && o[1] < bx[3]) clash = true;
      if (!clash) {
        f = g;
        break;
      }
    }
    placed.push_back(box_at(f));
    cv.text(f * x1, f * y1, label,
            std::string("font-size=\"11\" font-family=\"monospace\"") + (right ? " text-anchor=\"end\"" : ""));
  }

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const BrokenLine& l = lines[li];
    const std::string colour = palette[li % (sizeof palette / sizeof *palette)];
    std::vector<std::pair<double, double>> pts;
    // The first segment comes in from infinity along +m.
    const RationalPoint first_end = l.segment_end(0);
    const double fx = detail::to_double(first_end.q1), fy = detail::to_double(first_end.q2);
    const auto& m0 = l.segments.front().exponent;
    const double t = exit_time(vp, std::clamp(fx, vp.xmin, vp.xmax), std::clamp(fy, vp.ymin, vp.ymax), double(m0.m1),
                               double(m0.m2));
    pts.push_back({fx + t * m0.m1, fy + t * m0.m2});
    for (std::size_t i = 0; i < l.segments.size(); ++i) {
      const RationalPoint e = l.segment_end(i);
      pts.push_back({detail::to_double(e.q1), detail::to_double(e.q2)});
    }
    cv.polyline(pts, "fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"2\"");
    for (std::size_t i = 0; i < l.segments.size(); ++i) {
      const auto& s = l.segments[i];
      const double mx = (pts[i].first + pts[i + 1].first) / 2, my = (pts[i].second + pts[i + 1].second) / 2;
      cv.text(mx, my, to_text(LaurentPoly::monomial(s.exponent, s.coeff)),
              "font-size=\"10\" font-family=\"monospace\" fill=\"" + colour + "\"");
    }
    const double ex = detail::to_double(l.endpoint.q1), ey = detail::to_double(l.endpoint.q2);
    cv.body += "<circle cx=\"" + detail::fmt3(cv.X(ex)) + "\" cy=\"" + detail::fmt3(cv.Y(ey)) + "\" r=\"3\" fill=\"" +
               colour + "\"/>\n";
  }

  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(vp.width) + "\" height=\"" +
         std::to_string(cv.height) + "\" viewBox=\"0 0 " + std::to_string(vp.width) + " " + std::to_string(cv.height) +
         "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + cv.body + "</svg>\n";
}

}  // namespace rank2
