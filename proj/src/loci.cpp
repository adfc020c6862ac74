#include "circmap/loci.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

#include "circmap/dynamics.hpp"
#include "circmap/kernel.hpp"

namespace circmap {

namespace {

constexpr std::array<std::pair<CurveFamily, std::string_view>, 4> kFamilies{{
    {CurveFamily::EquilateralSextic, "equilateral-sextic"},
    {CurveFamily::EquilateralAlphaCubic, "equilateral-alpha-cubic"},
    {CurveFamily::SquareOctic, "square-octic"},
    {CurveFamily::SquareAlphaQuartic, "square-alpha-quartic"},
}};

}  // namespace

std::string_view family_name(CurveFamily f) {
  for (const auto& [fam, name] : kFamilies)
    if (fam == f) return name;
  return "unknown";
}

std::optional<CurveFamily> family_from_name(std::string_view name) {
  for (const auto& [fam, n] : kFamilies)
    if (n == name) return fam;
  return std::nullopt;
}

// 3x^6 - y^6 - 12x^5 + 9y^4 + (-27y^2 + 9)x^4 + (24y^2 + 6)x^3
//   + (33y^4 + 18y^2 - 6)x^2 + (36y^4 - 18y^2)x - 6y^2, Horner in x.
double eval_equilateral_sextic(Point m) {
  const double x = m.x;
  const double y2 = m.y * m.y;
  const double y4 = y2 * y2;
  const double c6 = 3.0;
  const double c5 = -12.0;
  const double c4 = -27.0 * y2 + 9.0;
  const double c3 = 24.0 * y2 + 6.0;
  const double c2 = 33.0 * y4 + 18.0 * y2 - 6.0;
  const double c1 = 36.0 * y4 - 18.0 * y2;
  const double c0 = -y4 * y2 + 9.0 * y4 - 6.0 * y2;
  return ((((((c6 * x + c5) * x + c4) * x + c3) * x + c2) * x + c1) * x) + c0;
}

double eval_equilateral_alpha_cubic(Point m) {
  return m.y * (m.y * m.y - 3.0 * m.x * m.x);
}

// 15x^8 - 68x^6y^2 + 90x^4y^4 - 68x^2y^6 + 15y^8 - 64x^6 + 64x^4y^2
//   + 64x^2y^4 - 64y^6 + 98x^4 + 52x^2y^2 + 98y^4 - 64x^2 - 64y^2 + 15,
// Horner in u = x^2 with coefficients in v = y^2.
double eval_square_octic(Point m) {
  const double u = m.x * m.x;
  const double v = m.y * m.y;
  const double c4 = 15.0;
  const double c3 = -68.0 * v - 64.0;
  const double c2 = (90.0 * v + 64.0) * v + 98.0;
  const double c1 = ((-68.0 * v + 64.0) * v + 52.0) * v - 64.0;
  const double c0 = (((15.0 * v - 64.0) * v + 98.0) * v - 64.0) * v + 15.0;
  return (((c4 * u + c3) * u + c2) * u + c1) * u + c0;
}

double eval_square_alpha_quartic(Point m) {
  return m.x * m.y * (m.x * m.x - m.y * m.y);
}

double ImplicitCurve::evaluate(Point m) const {
  switch (family) {
    case CurveFamily::EquilateralSextic: return eval_equilateral_sextic(m);
    case CurveFamily::EquilateralAlphaCubic: return eval_equilateral_alpha_cubic(m);
    case CurveFamily::SquareOctic: return eval_square_octic(m);
    case CurveFamily::SquareAlphaQuartic: return eval_square_alpha_quartic(m);
  }
  return 0.0;
}

Polygon ImplicitCurve::polygon() const {
  switch (family) {
    case CurveFamily::EquilateralSextic:
    case CurveFamily::EquilateralAlphaCubic: return regular_ngon(3);
    default: return regular_ngon(4);
  }
}

std::vector<double> sextic_on_x_axis() { return {0.0, 0.0, -6.0, 6.0, 9.0, -12.0, 3.0}; }

std::vector<double> octic_on_x_axis() { return {15.0, 0.0, -64.0, 0.0, 98.0, 0.0, -64.0, 0.0, 15.0}; }

std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

double poly_eval(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

SpecialPoints equilateral_fixed_points() {
  const double r3 = std::sqrt(3.0);
  SpecialPoints out;
  const std::array<std::pair<double, const char*>, 2> bases{{{1.0 + r3, "K1"}, {1.0 - r3, "K2"}}};
  for (const auto& [x, name] : bases) {
    for (int k = 0; k < 3; ++k) {
      const double t = 2.0 * std::numbers::pi * k / 3.0;
      const Point p{x * std::cos(t), x * std::sin(t)};
      std::string label = name;
      if (k == 1) label += "+";
      if (k == 2) label += "-";
      out.push_back({p, PointRole::FixedPoint, std::move(label)});
    }
  }
  return out;
}

std::vector<double> alpha_zero_lines(int n) {
  if (n < 3) throw GeometryError(ErrorKind::InvalidInput, "alpha-zero lines need n >= 3");
  std::vector<double> dirs;
  for (int k = 0; k < n; ++k) dirs.push_back(k * std::numbers::pi / n);
  return dirs;
}

std::vector<LineResidual> verify_alpha_zero_lines(int n, int samples_per_line, std::uint64_t seed) {
  const Polygon p = regular_ngon(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(-3.0, 3.0);
  std::vector<LineResidual> out;
  for (double dir : alpha_zero_lines(n)) {
    LineResidual lr;
    lr.direction = dir;
    int attempts = 0;
    while (lr.samples < samples_per_line && attempts < 100 * samples_per_line) {
      ++attempts;
      const double r = radius(rng);
      const Point m{r * std::cos(dir), r * std::sin(dir)};
      if (std::abs(std::abs(r) - 1.0) < 0.05) continue;
      bool near = false;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const Line l = sideline(p, i);
        if (std::abs(dot(l.normal, m) - l.offset) < 0.05) near = true;
      }
      if (near) continue;
      try {
        const auto sp = extract_similarity(p, m);
        const double a = std::abs(sp.alpha);
        lr.max_abs_alpha = std::max(lr.max_abs_alpha, std::min(a, std::numbers::pi - a));
        ++lr.samples;
      } catch (const GeometryError&) {
      }
    }
    out.push_back(lr);
  }
  return out;
}

namespace {

struct LogScaleField {
  std::span<const Point> poly;
  double operator()(Point m) const { return sample_log_scale(poly, m).log_s; }
};

// Newton iteration on log s along its central-difference gradient.
std::optional<Point> polish(const LogScaleField& f, Point start, double h) {
  Point x = start;
  for (int it = 0; it < 12; ++it) {
    const double v = f(x);
    if (!std::isfinite(v)) return std::nullopt;
    if (std::abs(v) < 1e-13) break;
    const double gx = (f({x.x + h, x.y}) - f({x.x - h, x.y})) / (2.0 * h);
    const double gy = (f({x.x, x.y + h}) - f({x.x, x.y - h})) / (2.0 * h);
    const double g2 = gx * gx + gy * gy;
    if (!std::isfinite(g2) || g2 == 0.0) return std::nullopt;
    Point step{v * gx / g2, v * gy / g2};
    // Keep the polish local: never move farther than a few grid steps.
    const double len = length(step);
    if (len > 50.0 * h) step = (50.0 * h / len) * step;
    x = x - step;
  }
  const double v = f(x);
  if (!std::isfinite(v) || std::abs(std::expm1(v)) >= 1e-3) return std::nullopt;
  return x;
}

}  // namespace

std::vector<Polyline> trace_s1_locus(const Polygon& p, Window window, int resolution) {
  if (resolution < 2) throw GeometryError(ErrorKind::InvalidInput, "resolution must be >= 2");
  const int res = resolution;
  const int nodes = res + 1;
  const double dx = (window.x1 - window.x0) / res;
  const double dy = (window.y1 - window.y0) / res;
  const LogScaleField f{p.vertices()};
  auto node_point = [&](int i, int j) { return Point{window.x0 + i * dx, window.y0 + j * dy}; };

  std::vector<double> val(static_cast<std::size_t>(nodes) * nodes);
  for (int j = 0; j < nodes; ++j)
    for (int i = 0; i < nodes; ++i) val[static_cast<std::size_t>(j) * nodes + i] = f(node_point(i, j));
  auto at = [&](int i, int j) { return val[static_cast<std::size_t>(j) * nodes + i]; };
  auto neg = [&](int i, int j) { return at(i, j) < 0.0; };

  // Edge ids: horizontal edge (i,j)-(i+1,j) -> j*res + i; vertical edge
  // (i,j)-(i,j+1) -> nodes*res + i*res + j.
  const long hcount = static_cast<long>(nodes) * res;
  auto hedge = [&](int i, int j) { return static_cast<long>(j) * res + i; };
  auto vedge = [&](int i, int j) { return hcount + static_cast<long>(i) * res + j; };

  std::unordered_map<long, std::optional<Point>> crossing;
  const double h = 1e-3 * std::min(dx, dy);
  auto edge_point = [&](long id, Point a, Point b, double va, double vb) -> std::optional<Point> {
    if (auto it = crossing.find(id); it != crossing.end()) return it->second;
    double t = 0.5;
    if (std::isfinite(va) && std::isfinite(vb)) t = va / (va - vb);
    auto pt = polish(f, a + t * (b - a), h);
    crossing.emplace(id, pt);
    return pt;
  };

  using Seg = std::array<long, 2>;
  std::vector<Seg> segments;
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      const bool n00 = neg(i, j), n10 = neg(i + 1, j), n11 = neg(i + 1, j + 1), n01 = neg(i, j + 1);
      std::vector<long> edges;
      // Order around the cell: bottom, right, top, left.
      if (n00 != n10) edges.push_back(hedge(i, j));
      if (n10 != n11) edges.push_back(vedge(i + 1, j));
      if (n01 != n11) edges.push_back(hedge(i, j + 1));
      if (n00 != n01) edges.push_back(vedge(i, j));
      if (edges.size() == 2) {
        segments.push_back({edges[0], edges[1]});
      } else if (edges.size() == 4) {
        const Point c = node_point(i, j) + Point{0.5 * dx, 0.5 * dy};
        const bool center_neg = f(c) < 0.0;
        // Pair edges so the center's sign class stays connected.
        if (center_neg == n00) {
          segments.push_back({edges[0], edges[1]});
          segments.push_back({edges[2], edges[3]});
        } else {
          segments.push_back({edges[0], edges[3]});
          segments.push_back({edges[1], edges[2]});
        }
      }
    }
  }

  auto edge_endpoints = [&](long id, Point& a, Point& b, double& va, double& vb) {
    if (id < hcount) {
      const int j = static_cast<int>(id / res), i = static_cast<int>(id % res);
      a = node_point(i, j);
      b = node_point(i + 1, j);
      va = at(i, j);
      vb = at(i + 1, j);
    } else {
      const long k = id - hcount;
      const int i = static_cast<int>(k / res), j = static_cast<int>(k % res);
      a = node_point(i, j);
      b = node_point(i, j + 1);
      va = at(i, j);
      vb = at(i, j + 1);
    }
  };
  auto point_of = [&](long id) {
    Point a, b;
    double va, vb;
    edge_endpoints(id, a, b, va, vb);
    return edge_point(id, a, b, va, vb);
  };

  // Chain segments through shared edges. Segments whose crossing could not be
  // polished break the chain.
  std::unordered_map<long, std::vector<std::size_t>> by_edge;
  for (std::size_t s = 0; s < segments.size(); ++s)
    for (long e : segments[s]) by_edge[e].push_back(s);
  std::vector<char> used(segments.size(), 0);
  std::vector<Polyline> out;
  for (std::size_t s0 = 0; s0 < segments.size(); ++s0) {
    if (used[s0]) continue;
    used[s0] = 1;
    std::vector<long> chain{segments[s0][0], segments[s0][1]};
    for (int dir = 0; dir < 2; ++dir) {
      while (true) {
        const long tail = chain.back();
        std::optional<std::size_t> next;
        for (std::size_t s : by_edge[tail])
          if (!used[s]) {
            next = s;
            break;
          }
        if (!next) break;
        used[*next] = 1;
        chain.push_back(segments[*next][0] == tail ? segments[*next][1] : segments[*next][0]);
      }
      std::reverse(chain.begin(), chain.end());
    }
    Polyline line;
    for (long e : chain) {
      if (auto pt = point_of(e)) {
        line.push_back(*pt);
      } else {
        if (line.size() >= 2) out.push_back(std::move(line));
        line.clear();
      }
    }
    if (line.size() >= 2) out.push_back(std::move(line));
  }
  return out;
}

}  // namespace circmap
