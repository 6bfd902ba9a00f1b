#include "qws/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qws {

namespace {

constexpr double kEqualMag = 1e-6;
constexpr double kEqualPhase = 1e-6;
constexpr double kRowHeight = 60.0;
constexpr double kColumnWidth = 90.0;
constexpr double kMaxRadius = 26.0;
constexpr double kMargin = 30.0;

// Fixed-precision numbers keep the output byte-stable.
std::string f(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(x) < 5e-4 ? 0.0 : x);
  return buf;
}

void check(const RenderSpec& spec, RenderStyle want) {
  if (spec.style != want) {
    throw std::invalid_argument(std::string("render: expected style ") + style_name(want) + ", got " +
                                style_name(spec.style));
  }
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale)) throw std::invalid_argument("render: scale must be > 0");
}

void open_svg(std::ostringstream& os, double w, double h, const char* kind) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f(w) << "\" height=\"" << f(h)
     << "\" viewBox=\"0 0 " << f(w) << ' ' << f(h) << "\" class=\"qws-" << kind << "\">\n";
  os << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << f(w) << "\" height=\"" << f(h)
     << "\" fill=\"#101018\"/>\n";
}

void arrow(std::ostringstream& os, double cx, double cy, double len, double angle, const char* cls,
           const char* color) {
  const double x2 = cx + len * std::cos(angle);
  const double y2 = cy - len * std::sin(angle);
  os << "<line class=\"" << cls << "\" x1=\"" << f(cx) << "\" y1=\"" << f(cy) << "\" x2=\"" << f(x2)
     << "\" y2=\"" << f(y2) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
  // small head
  const double hx1 = x2 - 5.0 * std::cos(angle - 0.5);
  const double hy1 = y2 + 5.0 * std::sin(angle - 0.5);
  const double hx2 = x2 - 5.0 * std::cos(angle + 0.5);
  const double hy2 = y2 + 5.0 * std::sin(angle + 0.5);
  os << "<polygon class=\"" << cls << "-head\" points=\"" << f(x2) << ',' << f(y2) << ' ' << f(hx1) << ','
     << f(hy1) << ' ' << f(hx2) << ',' << f(hy2) << "\" fill=\"" << color << "\"/>\n";
}

void circle(std::ostringstream& os, double cx, double cy, double r, const char* cls, const char* color) {
  os << "<circle class=\"" << cls << "\" cx=\"" << f(cx) << "\" cy=\"" << f(cy) << "\" r=\"" << f(r)
     << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
}

// One column of rows lo..hi (top row = hi) with its left edge at x0.
void composite_column(std::ostringstream& os, const CompositeState& u, Position lo, Position hi, double x0,
                      double scale) {
  const double cx = x0 + kColumnWidth * scale * 0.6;
  const double rmax = kMaxRadius * scale;
  for (Position m = hi; m >= lo; --m) {
    const double cy = kMargin + static_cast<double>(hi - m + 0.5) * kRowHeight * scale;
    const auto it = u.components().find(m);
    if (it == u.components().end()) continue;
    const double amp = it->second.amp;
    const CoinState& w = it->second.coin;
    const double m0 = std::abs(w.w0());
    const double m1 = std::abs(w.w1());
    os << "<g class=\"row\" data-m=\"" << m << "\">\n";
    if (std::abs(m0 - m1) <= kEqualMag) {
      circle(os, cx, cy, rmax * amp * m0, "circle-equal", "#b040ff");
      const double dphi = std::abs(phase(w.w1() * std::conj(w.w0())));
      if (dphi <= kEqualPhase) {
        arrow(os, cx, cy, rmax * amp * m0, phase(w.w0()), "arrow-equal", "#ffffff");
      } else {
        arrow(os, cx, cy, rmax * amp * m0, phase(w.w0()), "arrow-left", "#ffe000");
        arrow(os, cx, cy, rmax * amp * m1, phase(w.w1()), "arrow-right", "#00e0ff");
      }
    } else {
      if (amp * m0 > 1e-9) {
        circle(os, cx, cy, rmax * amp * m0, "circle-left", "#20c040");
        arrow(os, cx, cy, rmax * amp * m0, phase(w.w0()), "arrow-left", "#ffe000");
      }
      if (amp * m1 > 1e-9) {
        circle(os, cx, cy, rmax * amp * m1, "circle-right", "#e02020");
        arrow(os, cx, cy, rmax * amp * m1, phase(w.w1()), "arrow-right", "#00e0ff");
      }
    }
    os << "</g>\n";
  }
}

void position_axis(std::ostringstream& os, Position lo, Position hi, double scale) {
  for (Position m = hi; m >= lo; --m) {
    const double cy = kMargin + static_cast<double>(hi - m + 0.5) * kRowHeight * scale;
    os << "<text class=\"position-label\" x=\"" << f(6.0) << "\" y=\"" << f(cy + 4.0)
       << "\" fill=\"#c0c0c0\" font-family=\"monospace\" font-size=\"12\">" << m << "</text>\n";
  }
}

std::string polyline(const std::vector<double>& radii, double cx, double cy, double r0) {
  std::ostringstream pts;
  const std::size_t k = radii.size();
  for (std::size_t i = 0; i <= k; ++i) {
    const double phi = kTwoPi * static_cast<double>(i % k) / static_cast<double>(k);
    const double r = r0 * radii[i % k];
    if (i) pts << ' ';
    pts << f(cx + r * std::cos(phi)) << ',' << f(cy - r * std::sin(phi));
  }
  return pts.str();
}

}  // namespace

const char* style_name(RenderStyle s) {
  switch (s) {
    case RenderStyle::circles: return "circles";
    case RenderStyle::ellipses: return "ellipses";
    case RenderStyle::polar: return "polar";
    case RenderStyle::walk_panel: return "walk-panel";
  }
  return "circles";
}

RenderStyle parse_style(const std::string& name) {
  for (auto s : {RenderStyle::circles, RenderStyle::ellipses, RenderStyle::polar, RenderStyle::walk_panel}) {
    if (name == style_name(s)) return s;
  }
  throw std::invalid_argument("unknown render style '" + name + "'");
}

std::string render_composite(const CompositeState& u, const RenderSpec& spec) {
  check(spec, RenderStyle::circles);
  const Position lo = u.begin_pos();
  const Position hi = u.end_pos();
  const double w = 30.0 + kColumnWidth * spec.scale * 1.2;
  const double h = 2.0 * kMargin + static_cast<double>(hi - lo + 1) * kRowHeight * spec.scale;
  std::ostringstream os;
  open_svg(os, w, h, "circles");
  position_axis(os, lo, hi, spec.scale);
  composite_column(os, u, lo, hi, 30.0, spec.scale);
  os << "</svg>\n";
  return os.str();
}

std::string render_walk_panel(const Walk& walk, const CoinState& home, const RenderSpec& spec) {
  check(spec, RenderStyle::walk_panel);
  std::vector<CompositeState> snaps{CompositeState::product(home)};
  for (const auto& t : walk.steps) snaps.push_back(apply_step(t, snaps.back()));
  Position lo = 0;
  Position hi = 0;
  for (const auto& s : snaps) {
    lo = std::min(lo, s.begin_pos());
    hi = std::max(hi, s.end_pos());
  }
  const double colw = kColumnWidth * spec.scale * 1.2;
  const double w = 30.0 + colw * static_cast<double>(snaps.size());
  const double h = 2.0 * kMargin + static_cast<double>(hi - lo + 1) * kRowHeight * spec.scale;
  std::ostringstream os;
  open_svg(os, w, h, "walk-panel");
  position_axis(os, lo, hi, spec.scale);
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    os << "<g class=\"panel\" data-step=\"" << i << "\">\n";
    composite_column(os, snaps[i], lo, hi, 30.0 + colw * static_cast<double>(i), spec.scale);
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_profile(const CompositeState& u, const RenderSpec& spec) {
  check(spec, RenderStyle::polar);
  const std::size_t k = spec.samples ? spec.samples : std::max<std::size_t>(360, default_samples(u));
  const auto prof = sample_profile(u, k);
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> total;
  double peak = 1.0;
  for (const auto& s : prof.samples) {
    left.push_back(std::norm(s.jones[0]));
    right.push_back(std::norm(s.jones[1]));
    total.push_back(left.back() + right.back());
    peak = std::max(peak, total.back());
  }
  const double size = 320.0 * spec.scale;
  const double c = 0.5 * size;
  const double r0 = 0.42 * size / peak;
  std::ostringstream os;
  open_svg(os, size, size, "polar");
  os << "<circle class=\"unit-circle\" cx=\"" << f(c) << "\" cy=\"" << f(c) << "\" r=\"" << f(r0)
     << "\" fill=\"none\" stroke=\"#606060\" stroke-dasharray=\"4 3\"/>\n";
  const struct {
    const std::vector<double>* v;
    const char* cls;
    const char* color;
  } curves[] = {{&left, "curve-left", "#20c040"}, {&right, "curve-right", "#e02020"}, {&total, "curve-total", "#4080ff"}};
  for (const auto& cv : curves) {
    os << "<polyline class=\"" << cv.cls << "\" fill=\"none\" stroke=\"" << cv.color
       << "\" stroke-width=\"1.5\" points=\"" << polyline(*cv.v, c, c, r0) << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_ellipse_ring(const CompositeState& u, const RenderSpec& spec) {
  check(spec, RenderStyle::ellipses);
  const std::size_t k = spec.samples ? spec.samples : 24;
  const auto prof = sample_profile(u, k);
  const double size = 360.0 * spec.scale;
  const double c = 0.5 * size;
  const double ring = 0.36 * size;
  const double glyph = 0.5 * kTwoPi * ring / static_cast<double>(k) * 0.8;
  std::ostringstream os;
  open_svg(os, size, size, "ellipses");
  for (std::size_t i = 0; i < prof.samples.size(); ++i) {
    const auto& s = prof.samples[i];
    const double x = c + ring * std::cos(s.phi);
    const double y = c - ring * std::sin(s.phi);
    const double inten = std::norm(s.jones[0]) + std::norm(s.jones[1]);
    if (inten <= 1e-12) {
      os << "<circle class=\"glyph-dark\" cx=\"" << f(x) << "\" cy=\"" << f(y) << "\" r=\"1.5\" fill=\"#404040\"/>\n";
      continue;
    }
    const double n = std::sqrt(inten);
    const CoinState pol = CoinState::normalized(s.jones[0] / n, s.jones[1] / n);
    const EllipseParams ep = ellipse_params(pol);
    const double major = glyph * std::min(n, 1.5);
    const double deg = -ep.orientation * 180.0 / kPi;
    if (ep.helicity == Helicity::linear) {
      const double dx = major * std::cos(ep.orientation);
      const double dy = major * std::sin(ep.orientation);
      os << "<line class=\"glyph-linear\" x1=\"" << f(x - dx) << "\" y1=\"" << f(y + dy) << "\" x2=\"" << f(x + dx)
         << "\" y2=\"" << f(y - dy) << "\" stroke=\"#b040ff\" stroke-width=\"2\"/>\n";
      continue;
    }
    // axis ratio from the circular components
    const double pl = std::abs(pol.w0());
    const double pr = std::abs(pol.w1());
    const double minor = major * std::abs(pl - pr) / (pl + pr);
    const bool left = ep.helicity == Helicity::left;
    os << "<ellipse class=\"" << (left ? "glyph-left" : "glyph-right") << "\" cx=\"" << f(x) << "\" cy=\"" << f(y)
       << "\" rx=\"" << f(major) << "\" ry=\"" << f(minor) << "\" transform=\"rotate(" << f(deg) << ' ' << f(x)
       << ' ' << f(y) << ")\" fill=\"none\" stroke=\"" << (left ? "#20c040" : "#e02020")
       << "\" stroke-width=\"1.5\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_state(const CompositeState& u, const RenderSpec& spec) {
  switch (spec.style) {
    case RenderStyle::circles: return render_composite(u, spec);
    case RenderStyle::ellipses: return render_ellipse_ring(u, spec);
    case RenderStyle::polar: return render_profile(u, spec);
    case RenderStyle::walk_panel: break;
  }
  throw std::invalid_argument("render_state: walk-panel needs a walk; use render_walk_panel");
}

}  // namespace qws
