#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "circmap/error.hpp"

namespace circmap {

struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr Point() = default;
  constexpr Point(double x_, double y_) : x(x_), y(y_) {}

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double k, Point a) { return {k * a.x, k * a.y}; }
  friend constexpr Point operator*(Point a, double k) { return {k * a.x, k * a.y}; }
  friend constexpr bool operator==(Point, Point) = default;

  std::complex<double> as_complex() const { return {x, y}; }
  static Point from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return dot(a, a); }
inline double length(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return length(a - b); }

// Ordered vertex list, n >= 3, finite coordinates, no repeated consecutive
// vertex. Vertex i is joined to vertex (i + 1) mod n; the closing edge is
// implicit.
class Polygon {
 public:
  explicit Polygon(std::vector<Point> vertices);

  std::size_t size() const noexcept { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }
  // Cyclic access.
  const Point& at_cyclic(std::ptrdiff_t i) const;
  std::span<const Point> vertices() const noexcept { return vertices_; }

  double diameter() const;

 private:
  std::vector<Point> vertices_;
};

struct MapConfig {
  // Relative to max(|M - P_i|, |M - P_{i+1}|)^2.
  double collinearity_tolerance = 1e-12;
};

// True when a, b, c are collinear within `tolerance` relative to the square of
// the largest pairwise distance.
bool nearly_collinear(Point a, Point b, Point c, double tolerance = 1e-12);

Point circumcenter(Point a, Point b, Point c, double tolerance = 1e-12);

// Image vertex i is the circumcenter of (m, P_i, P_{i+1}), evaluated with the
// explicit coordinate expressions. Throws DegenerateVertex(i) when m lies on
// sideline P_i P_{i+1}.
Polygon circumcenter_map(const Polygon& p, Point m, const MapConfig& cfg = {});

// Reflections of m about the sidelines P_i P_{i+1}, in sideline order.
Polygon reflection_polygon(const Polygon& p, Point m);

// Inverse of circumcenter_map: vertex i is the reflection of m about sideline
// P_{i-1} P_i, so that inverse(circumcenter_map(p, m), m) == p label for label.
Polygon inverse_circumcenter_map(const Polygon& p, Point m);

// Feet of the perpendiculars from m onto the sidelines P_i P_{i+1}.
Polygon pedal_polygon(const Polygon& p, Point m);

// Vertex i is where the perpendicular to m - P_i through P_i meets the
// perpendicular to m - P_{i+1} through P_{i+1}.
Polygon antipedal_polygon(const Polygon& p, Point m);

// Unit circumradius, centroid at the origin, first vertex (1, 0), counter-clockwise.
Polygon regular_ngon(int n);

double signed_area(const Polygon& p);
Polygon homothety(const Polygon& p, Point center, double ratio);
Polygon rotate_about(const Polygon& p, Point center, double angle);
Polygon affine_stretch(const Polygon& p, double factor_x);
Polygon translate(const Polygon& p, Point offset);

// Winding number of the closed polygon around q (0 when q is outside).
int winding_number(const Polygon& p, Point q);

// Sideline i as the line {x : normal . x = offset} with unit normal.
struct Line {
  Point normal;
  double offset = 0.0;
};
Line sideline(const Polygon& p, std::size_t i);

bool is_simple(const Polygon& p);

}  // namespace circmap
