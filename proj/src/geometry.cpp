#include "circmap/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace circmap {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Collinear: return "Collinear";
    case ErrorKind::DegenerateVertex: return "DegenerateVertex";
    case ErrorKind::ZeroLengthSide: return "ZeroLengthSide";
    case ErrorKind::ParallelPerpendiculars: return "ParallelPerpendiculars";
    case ErrorKind::DegenerateOrbit: return "DegenerateOrbit";
    case ErrorKind::InconsistentSimilarity: return "InconsistentSimilarity";
    case ErrorKind::DegeneratePosition: return "DegeneratePosition";
    case ErrorKind::CalibrationFailed: return "CalibrationFailed";
  }
  return "Unknown";
}

namespace {

constexpr double kCoincidenceTolerance = 1e-12;

double max_pairwise_distance(std::span<const Point> pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, distance(pts[i], pts[j]));
  return d;
}

// Index of the first consecutive pair that coincides relative to the diameter.
std::optional<std::size_t> coincident_side(std::span<const Point> pts) {
  const double diam = max_pairwise_distance(pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& a = pts[i];
    const Point& b = pts[(i + 1) % pts.size()];
    if (distance(a, b) <= kCoincidenceTolerance * diam || diam == 0.0) return i;
  }
  return std::nullopt;
}

}  // namespace

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3)
    throw GeometryError(ErrorKind::InvalidInput, "polygon needs at least 3 vertices");
  for (const auto& v : vertices_)
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw GeometryError(ErrorKind::InvalidInput, "polygon vertex is not finite");
  if (auto i = coincident_side(vertices_))
    throw GeometryError(ErrorKind::ZeroLengthSide,
                        "vertices " + std::to_string(*i) + " and " +
                            std::to_string((*i + 1) % vertices_.size()) + " coincide",
                        *i);
}

const Point& Polygon::at_cyclic(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(vertices_.size());
  return vertices_[static_cast<std::size_t>(((i % n) + n) % n)];
}

double Polygon::diameter() const { return max_pairwise_distance(vertices_); }

bool nearly_collinear(Point a, Point b, Point c, double tolerance) {
  const double scale = std::max({distance(a, b), distance(b, c), distance(a, c)});
  if (scale == 0.0) return true;
  return std::abs(cross(b - a, c - a)) <= tolerance * scale * scale;
}

Point circumcenter(Point a, Point b, Point c, double tolerance) {
  if (nearly_collinear(a, b, c, tolerance))
    throw GeometryError(ErrorKind::Collinear, "circumcenter of collinear points");
  // Work relative to a to keep the squared terms small.
  const Point u = b - a;
  const Point v = c - a;
  const double d = 2.0 * cross(u, v);
  const double uu = norm2(u);
  const double vv = norm2(v);
  return a + Point{(v.y * uu - u.y * vv) / d, (u.x * vv - v.x * uu) / d};
}

Polygon circumcenter_map(const Polygon& p, Point m, const MapConfig& cfg) {
  if (!(cfg.collinearity_tolerance > 0.0))
    throw GeometryError(ErrorKind::InvalidInput, "collinearity tolerance must be positive");
  const std::size_t n = p.size();
  // Evaluated in M-centred coordinates: the squared terms cancel badly when the
  // polygon is small compared with |M|.
  const double xm = 0.0;
  const double ym = 0.0;
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = p[i] - m;
    const Point b = p[(i + 1) % n] - m;
    if (nearly_collinear({0.0, 0.0}, a, b, cfg.collinearity_tolerance))
      throw GeometryError(ErrorKind::DegenerateVertex,
                          "M lies on sideline " + std::to_string(i), i);
    const double xi = a.x, yi = a.y, x1 = b.x, y1 = b.y;
    const double rho = xm * xm + ym * ym - x1 * x1 - y1 * y1;
    const double pn = (y1 - ym) * yi * yi + rho * yi + y1 * y1 * ym +
                      (xi * xi - xm * xm - ym * ym) * y1 + (x1 * x1 - xi * xi) * ym;
    const double pd = 2.0 * (xm - x1) * yi + 2.0 * (xi - xm) * y1 + 2.0 * (x1 - xi) * ym;
    const double qn = (xm - x1) * xi * xi - rho * xi - x1 * x1 * xm +
                      (xm * xm + ym * ym - yi * yi) * x1 + xm * (yi * yi - y1 * y1);
    const double qd = 2.0 * (y1 - ym) * xi + 2.0 * (ym - yi) * x1 + 2.0 * (yi - y1) * xm;
    out.push_back(Point{pn / pd, qn / qd} + m);
  }
  if (auto i = coincident_side(out))
    throw GeometryError(ErrorKind::DegenerateVertex,
                        "image vertices " + std::to_string(*i) + " and " +
                            std::to_string((*i + 1) % n) + " coincide (M concyclic)",
                        *i);
  return Polygon(std::move(out));
}

Polygon reflection_polygon(const Polygon& p, Point m) {
  const std::size_t n = p.size();
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = p[i];
    const Point b = p[(i + 1) % n];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double r = dx * dx + dy * dy;
    const double rp = dx * dx - dy * dy;
    if (!(r > kCoincidenceTolerance * kCoincidenceTolerance * p.diameter() * p.diameter()))
      throw GeometryError(ErrorKind::ZeroLengthSide, "zero-length side " + std::to_string(i), i);
    const double c = a.x * b.y - b.x * a.y;
    const double u = (rp * m.x + 2.0 * dy * dx * m.y + 2.0 * dy * c) / r;
    const double v = (-rp * m.y + 2.0 * dy * dx * m.x - 2.0 * dx * c) / r;
    out.push_back({u, v});
  }
  return Polygon(std::move(out));
}

Polygon inverse_circumcenter_map(const Polygon& p, Point m) {
  const Polygon refl = reflection_polygon(p, m);
  const std::size_t n = refl.size();
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(refl[(i + n - 1) % n]);
  return Polygon(std::move(out));
}

Polygon pedal_polygon(const Polygon& p, Point m) {
  const std::size_t n = p.size();
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = p[i];
    const Point d = p[(i + 1) % n] - a;
    const double r = norm2(d);
    if (!(r > 0.0))
      throw GeometryError(ErrorKind::ZeroLengthSide, "zero-length side " + std::to_string(i), i);
    out.push_back(a + (dot(m - a, d) / r) * d);
  }
  return Polygon(std::move(out));
}

Polygon antipedal_polygon(const Polygon& p, Point m) {
  const std::size_t n = p.size();
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = p[i];
    const Point b = p[(i + 1) % n];
    // Line through a with normal (m - a): (m - a) . x = (m - a) . a; same for b.
    const Point na = m - a;
    const Point nb = m - b;
    const double det = cross(na, nb);
    const double scale = std::max(norm2(na), norm2(nb));
    if (std::abs(det) <= 1e-12 * scale || scale == 0.0)
      throw GeometryError(ErrorKind::ParallelPerpendiculars,
                          "perpendiculars at vertices " + std::to_string(i) + " and " +
                              std::to_string((i + 1) % n) + " are parallel",
                          i);
    const double ca = dot(na, a);
    const double cb = dot(nb, b);
    out.push_back({(ca * nb.y - cb * na.y) / det, (na.x * cb - nb.x * ca) / det});
  }
  return Polygon(std::move(out));
}

Polygon regular_ngon(int n) {
  if (n < 3) throw GeometryError(ErrorKind::InvalidInput, "regular polygon needs n >= 3");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n;
    out.push_back({std::cos(t), std::sin(t)});
  }
  return Polygon(std::move(out));
}

double signed_area(const Polygon& p) {
  double acc = 0.0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) acc += cross(p[i], p[(i + 1) % n]);
  return 0.5 * acc;
}

Polygon homothety(const Polygon& p, Point center, double ratio) {
  std::vector<Point> out;
  out.reserve(p.size());
  for (const auto& v : p.vertices()) out.push_back(center + ratio * (v - center));
  return Polygon(std::move(out));
}

Polygon rotate_about(const Polygon& p, Point center, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<Point> out;
  out.reserve(p.size());
  for (const auto& v : p.vertices()) {
    const Point d = v - center;
    out.push_back(center + Point{c * d.x - s * d.y, s * d.x + c * d.y});
  }
  return Polygon(std::move(out));
}

Polygon affine_stretch(const Polygon& p, double factor_x) {
  std::vector<Point> out;
  out.reserve(p.size());
  for (const auto& v : p.vertices()) out.push_back({factor_x * v.x, v.y});
  return Polygon(std::move(out));
}

Polygon translate(const Polygon& p, Point offset) {
  std::vector<Point> out;
  out.reserve(p.size());
  for (const auto& v : p.vertices()) out.push_back(v + offset);
  return Polygon(std::move(out));
}

int winding_number(const Polygon& p, Point q) {
  int wn = 0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = p[i];
    const Point b = p[(i + 1) % n];
    const double side = cross(b - a, q - a);
    if (a.y <= q.y) {
      if (b.y > q.y && side > 0.0) ++wn;
    } else {
      if (b.y <= q.y && side < 0.0) --wn;
    }
  }
  return wn;
}

Line sideline(const Polygon& p, std::size_t i) {
  const Point a = p[i];
  const Point d = p[(i + 1) % p.size()] - a;
  const double len = length(d);
  const Point normal{-d.y / len, d.x / len};
  return {normal, dot(normal, a)};
}

bool is_simple(const Polygon& p) {
  const std::size_t n = p.size();
  auto orient = [](Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = p[i], b = p[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      const Point c = p[j], d = p[(j + 1) % n];
      if (orient(a, b, c) * orient(a, b, d) <= 0 && orient(c, d, a) * orient(c, d, b) <= 0)
        return false;
    }
  }
  return true;
}

}  // namespace circmap
