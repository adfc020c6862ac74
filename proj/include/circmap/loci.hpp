#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circmap/geometry.hpp"

namespace circmap {

enum class CurveFamily {
  EquilateralSextic,      // s = 1 locus of the unit equilateral
  EquilateralAlphaCubic,  // alpha = 0 locus of the unit equilateral
  SquareOctic,            // s = 1 locus of the unit square (vertices on the axes)
  SquareAlphaQuartic,     // alpha = 0 locus of the square
};

std::string_view family_name(CurveFamily f);
std::optional<CurveFamily> family_from_name(std::string_view name);

double eval_equilateral_sextic(Point m);
double eval_equilateral_alpha_cubic(Point m);
double eval_square_octic(Point m);
double eval_square_alpha_quartic(Point m);

struct ImplicitCurve {
  CurveFamily family;
  double evaluate(Point m) const;
  // Polygon the curve belongs to (regular_ngon(3) or regular_ngon(4)).
  Polygon polygon() const;
};

// Exact coefficients of p(x, 0), constant term first.
std::vector<double> sextic_on_x_axis();
std::vector<double> octic_on_x_axis();

// Coefficients (constant term first) of a product of polynomials; used to check
// factorizations.
std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b);
double poly_eval(const std::vector<double>& c, double x);

enum class PointRole { FixedPoint, Centroid, Vertex };

struct TaggedPoint {
  Point p;
  PointRole role;
  std::string label;
};

using SpecialPoints = std::vector<TaggedPoint>;

// K1 = (1 + sqrt 3, 0), K2 = (1 - sqrt 3, 0) and their rotations by +-2 pi / 3.
SpecialPoints equilateral_fixed_points();

// Directions k pi / n, k = 0..n-1, of the conjectured alpha = 0 lines through
// the centroid of the regular n-gon.
std::vector<double> alpha_zero_lines(int n);

struct LineResidual {
  double direction = 0.0;
  int samples = 0;
  double max_abs_alpha = 0.0;  // |alpha| measured with angle_distance(alpha, 0)
};

// Samples points on each line, away from sidelines and vertices, and reports the
// largest |alpha| of the n-step similarity seen on that line.
std::vector<LineResidual> verify_alpha_zero_lines(int n, int samples_per_line, std::uint64_t seed);

struct Window {
  double x0, y0, x1, y1;
};

using Polyline = std::vector<Point>;

// log s = 0 contours of C_M^n for the given polygon over the window, by marching
// squares on a resolution x resolution grid, polished onto the curve with Newton
// steps along the numerical gradient. Points that cannot be polished to
// |s - 1| < 1e-3 are dropped.
std::vector<Polyline> trace_s1_locus(const Polygon& p, Window window, int resolution);

}  // namespace circmap
