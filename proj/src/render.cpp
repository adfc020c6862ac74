#include "circmap/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace circmap {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  // Avoid "-0.000".
  if (std::string_view(buf) == "-0.000") return "0.000";
  return buf;
}

// World rectangle to pixel rectangle, uniform scale, y up.
struct View {
  double wx0, wy0, wx1, wy1;
  double px0, py0, px1, py1;
  double scale, ox, oy;

  View(double x0, double y0, double x1, double y1, double p0, double q0, double p1, double q1)
      : wx0(x0), wy0(y0), wx1(x1), wy1(y1), px0(p0), py0(q0), px1(p1), py1(q1) {
    const double ww = std::max(wx1 - wx0, 1e-300), wh = std::max(wy1 - wy0, 1e-300);
    scale = std::min((px1 - px0) / ww, (py1 - py0) / wh);
    ox = px0 + 0.5 * ((px1 - px0) - scale * ww);
    oy = py0 + 0.5 * ((py1 - py0) - scale * wh);
  }
  double x(double wx) const { return ox + (wx - wx0) * scale; }
  double y(double wy) const { return oy + (wy1 - wy) * scale; }
};

void open_svg(std::ostringstream& os, int w, int h, const std::string& background) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"" << background
     << "\"/>\n";
}

const std::string& fill_for(CellState s, const RenderSpec& spec) {
  switch (s) {
    case CellState::Contracting: return spec.contracting;
    case CellState::Expanding:
    case CellState::BlowUp: return spec.expanding;
    case CellState::Ambiguous: break;
  }
  return spec.ambiguous;
}

// Raster of optional states, drawn as horizontal runs grouped by fill color.
// Row 0 is the top row.
void emit_raster(std::ostringstream& os, const std::vector<std::optional<CellState>>& cells, int cols,
                 int rows, double px0, double py0, double cw, double ch, const RenderSpec& spec) {
  const CellState order[] = {CellState::Expanding, CellState::Contracting, CellState::Ambiguous};
  auto group = [&](CellState s) {
    if (s == CellState::BlowUp) return CellState::Expanding;
    return s;
  };
  for (CellState want : order) {
    os << "<g fill=\"" << fill_for(want, spec) << "\" shape-rendering=\"crispEdges\">\n";
    for (int r = 0; r < rows; ++r) {
      int c = 0;
      while (c < cols) {
        const auto& s = cells[static_cast<std::size_t>(r) * cols + c];
        if (!s || group(*s) != want) {
          ++c;
          continue;
        }
        int e = c + 1;
        while (e < cols) {
          const auto& t = cells[static_cast<std::size_t>(r) * cols + e];
          if (!t || group(*t) != want) break;
          ++e;
        }
        os << "<rect x=\"" << num(px0 + c * cw) << "\" y=\"" << num(py0 + r * ch) << "\" width=\""
           << num((e - c) * cw) << "\" height=\"" << num(ch) << "\"/>\n";
        c = e;
      }
    }
    os << "</g>\n";
  }
}

// Samples a chart grid at the centers of a raster over its bounds.
std::vector<std::optional<CellState>> sample_grid(const FieldGrid& g, int raster) {
  std::vector<std::optional<CellState>> cells(static_cast<std::size_t>(raster) * raster);
  const double dx = (g.bounds.x1 - g.bounds.x0) / raster, dy = (g.bounds.y1 - g.bounds.y0) / raster;
  for (int r = 0; r < raster; ++r)
    for (int c = 0; c < raster; ++c)
      cells[static_cast<std::size_t>(r) * raster + c] =
          g.state_at_point({g.bounds.x0 + (c + 0.5) * dx, g.bounds.y1 - (r + 0.5) * dy});
  return cells;
}

void emit_grid(std::ostringstream& os, const FieldGrid& g, const View& v, const RenderSpec& spec) {
  const int raster = std::max(1, spec.raster);
  const auto cells = sample_grid(g, raster);
  const double cw = (v.x(g.bounds.x1) - v.x(g.bounds.x0)) / raster;
  const double ch = (v.y(g.bounds.y0) - v.y(g.bounds.y1)) / raster;
  emit_raster(os, cells, raster, raster, v.x(g.bounds.x0), v.y(g.bounds.y1), cw, ch, spec);
}

std::string polygon_path(const Polygon& p, const View& v) {
  std::string d;
  for (std::size_t i = 0; i < p.size(); ++i) {
    d += i == 0 ? "M" : " L";
    d += num(v.x(p[i].x)) + ' ' + num(v.y(p[i].y));
  }
  return d + " Z";
}

}  // namespace

std::string render_orbit(const OrbitRecord& orbit, const RenderSpec& spec) {
  double x0 = orbit.m.x, x1 = orbit.m.x, y0 = orbit.m.y, y1 = orbit.m.y;
  for (const auto& q : orbit.iterates)
    for (const Point& a : q.vertices()) {
      x0 = std::min(x0, a.x);
      x1 = std::max(x1, a.x);
      y0 = std::min(y0, a.y);
      y1 = std::max(y1, a.y);
    }
  const double pad = 0.05 * std::max({x1 - x0, y1 - y0, 1e-9});
  const View v(x0 - pad, y0 - pad, x1 + pad, y1 + pad, 0, 0, spec.width, spec.height);
  const std::size_t n = orbit.start.size();

  std::ostringstream os;
  open_svg(os, spec.width, spec.height, spec.background);
  for (std::size_t k = 0; k < orbit.iterates.size(); ++k) {
    const bool hi = k % n == 0;
    os << "<path class=\"iterate\" data-k=\"" << k << "\" d=\"" << polygon_path(orbit.iterates[k], v)
       << "\" fill=\"none\" stroke=\"" << (hi ? spec.highlight : spec.orbit) << "\" stroke-width=\""
       << num(hi ? 2.0 * spec.stroke : spec.stroke) << "\"/>\n";
  }
  os << "<circle class=\"marker\" cx=\"" << num(v.x(orbit.m.x)) << "\" cy=\"" << num(v.y(orbit.m.y))
     << "\" r=\"" << num(3.0 * spec.stroke) << "\" fill=\"#000000\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string render_region_map(const FieldGrid& grid, const std::vector<Polyline>& contours,
                              const std::vector<GuideLine>& dashed, const RenderSpec& spec) {
  const Bounds& b = grid.bounds;
  const View v(b.x0, b.y0, b.x1, b.y1, 0, 0, spec.width, spec.height);
  std::ostringstream os;
  open_svg(os, spec.width, spec.height, spec.background);
  os << "<defs><clipPath id=\"view\"><rect x=\"" << num(v.x(b.x0)) << "\" y=\"" << num(v.y(b.y1))
     << "\" width=\"" << num(v.x(b.x1) - v.x(b.x0)) << "\" height=\"" << num(v.y(b.y0) - v.y(b.y1))
     << "\"/></clipPath></defs>\n";
  emit_grid(os, grid, v, spec);

  const double reach = 2.0 * std::hypot(b.x1 - b.x0, b.y1 - b.y0);
  if (!dashed.empty()) {
    os << "<g clip-path=\"url(#view)\" stroke=\"" << spec.locus << "\" stroke-width=\"" << num(spec.stroke)
       << "\" stroke-dasharray=\"6 4\" fill=\"none\">\n";
    for (const auto& l : dashed) {
      const Point d{std::cos(l.direction), std::sin(l.direction)};
      const Point a = l.through - reach * d, c = l.through + reach * d;
      os << "<path class=\"guide\" d=\"M" << num(v.x(a.x)) << ' ' << num(v.y(a.y)) << " L" << num(v.x(c.x))
         << ' ' << num(v.y(c.y)) << "\"/>\n";
    }
    os << "</g>\n";
  }
  if (!contours.empty()) {
    os << "<g clip-path=\"url(#view)\" stroke=\"" << spec.locus << "\" stroke-width=\"" << num(spec.stroke)
       << "\" fill=\"none\">\n";
    for (const auto& pl : contours) {
      if (pl.size() < 2) continue;
      os << "<path class=\"contour\" d=\"";
      for (std::size_t i = 0; i < pl.size(); ++i)
        os << (i == 0 ? "M" : " L") << num(v.x(pl[i].x)) << ' ' << num(v.y(pl[i].y));
      os << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_hemisphere(const FieldGrid& plane, const FieldGrid& inverted, double cut_radius,
                              const RenderSpec& spec) {
  const int raster = std::max(1, spec.raster);
  std::vector<std::optional<CellState>> cells(static_cast<std::size_t>(raster) * raster);
  for (int r = 0; r < raster; ++r) {
    for (int c = 0; c < raster; ++c) {
      const double u = -1.0 + (c + 0.5) * 2.0 / raster;
      const double w = 1.0 - (r + 0.5) * 2.0 / raster;
      const double rho = std::hypot(u, w);
      if (rho >= 1.0) continue;
      std::optional<CellState> s;
      if (rho == 0.0) {
        s = inverted.state_at_point({0.0, 0.0});
      } else {
        const double radius = 1.0 / std::tan(0.5 * std::numbers::pi * rho);
        const Point m{radius * u / rho, radius * w / rho};
        s = radius <= cut_radius ? plane.state_at_point(m)
                                 : inverted.state_at_point(plane_to_chart(Chart::Inverted, m));
      }
      cells[static_cast<std::size_t>(r) * raster + c] = s;
    }
  }
  const double side = std::min(spec.width, spec.height) - 4.0 * spec.stroke;
  const double px0 = 0.5 * (spec.width - side), py0 = 0.5 * (spec.height - side);
  std::ostringstream os;
  open_svg(os, spec.width, spec.height, spec.background);
  emit_raster(os, cells, raster, raster, px0, py0, side / raster, side / raster, spec);
  os << "<circle class=\"rim\" cx=\"" << num(0.5 * spec.width) << "\" cy=\"" << num(0.5 * spec.height)
     << "\" r=\"" << num(0.5 * side) << "\" fill=\"none\" stroke=\"" << spec.locus << "\" stroke-width=\""
     << num(spec.stroke) << "\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string render_stretch_strip(const std::vector<StripPanel>& panels, const RenderSpec& spec) {
  const int panel = spec.height;
  const int label = 24;
  const int w = std::max<int>(1, static_cast<int>(panels.size())) * panel;
  std::ostringstream os;
  open_svg(os, w, panel + label, spec.background);
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& g = panels[i].plane;
    const double px0 = static_cast<double>(i) * panel;
    const View v(g.bounds.x0, g.bounds.y0, g.bounds.x1, g.bounds.y1, px0 + 2, 2, px0 + panel - 2, panel - 2);
    emit_grid(os, g, v, spec);
    char text[64];
    std::snprintf(text, sizeof text, "t=%.3f  k=%d", panels[i].t, panels[i].total);
    os << "<text x=\"" << num(px0 + 0.5 * panel) << "\" y=\"" << panel + label - 6
       << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"14\">" << text << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace circmap
