#pragma once

#include <span>

#include "circmap/geometry.hpp"

namespace circmap {

// Result of the n-step orbit evaluated in coordinates relative to M. The
// circumcenter map commutes with translation, so this agrees with
// extract_similarity up to rounding; it avoids allocation and is the inner loop
// of field sampling and contour tracing.
struct ScaleSample {
  double log_s = 0.0;
  double alpha = 0.0;
  double residual = 0.0;
  bool degenerate = false;  // orbit hit the blow-up set or the ratios disagree
};

inline constexpr std::size_t kMaxKernelVertices = 64;

ScaleSample sample_log_scale(std::span<const Point> polygon, Point m,
                             double collinearity_tolerance = 1e-12,
                             double consistency_tolerance = 1e-6);

}  // namespace circmap
