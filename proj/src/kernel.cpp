#include "circmap/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace circmap {

ScaleSample sample_log_scale(std::span<const Point> polygon, Point m,
                             double collinearity_tolerance, double consistency_tolerance) {
  const std::size_t n = polygon.size();
  ScaleSample out;
  if (n < 3 || n > kMaxKernelVertices || !std::isfinite(m.x) || !std::isfinite(m.y)) {
    out.degenerate = true;
    out.log_s = std::numeric_limits<double>::infinity();
    return out;
  }
  std::array<Point, kMaxKernelVertices> q{};
  std::array<Point, kMaxKernelVertices> next{};
  for (std::size_t i = 0; i < n; ++i) q[i] = polygon[i] - m;

  for (std::size_t step = 0; step < n; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = q[i];
      const Point b = q[(i + 1) == n ? 0 : i + 1];
      const double aa = norm2(a);
      const double bb = norm2(b);
      const double c = cross(a, b);
      const double scale2 = std::max({aa, bb, norm2(a - b)});
      if (!(std::abs(c) > collinearity_tolerance * scale2)) {
        out.degenerate = true;
        out.log_s = std::numeric_limits<double>::infinity();
        return out;
      }
      const double d = 2.0 * c;
      next[i] = {(b.y * aa - a.y * bb) / d, (a.x * bb - b.x * aa) / d};
    }
    std::copy_n(next.begin(), n, q.begin());
  }

  double mean_mod = 0.0;
  std::complex<double> dir_sum = 0.0;
  std::array<std::complex<double>, kMaxKernelVertices> z{};
  for (std::size_t i = 0; i < n; ++i) {
    const Point p0 = polygon[i] - m;
    z[i] = std::complex<double>(q[i].x, q[i].y) / std::complex<double>(p0.x, p0.y);
    const double r = std::abs(z[i]);
    mean_mod += r;
    if (r > 0.0) dir_sum += z[i] / r;
  }
  const double s = mean_mod / static_cast<double>(n);
  double alpha = std::arg(dir_sum);
  if (alpha <= -std::numbers::pi) alpha = std::numbers::pi;
  const auto fit = std::polar(s, alpha);
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(z[i] - fit));
  out.residual = s > 0.0 ? res / s : std::numeric_limits<double>::infinity();
  out.alpha = alpha;
  out.log_s = std::log(s);
  if (!std::isfinite(out.log_s) || !(out.residual <= consistency_tolerance)) {
    out.degenerate = true;
    out.log_s = std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace circmap
