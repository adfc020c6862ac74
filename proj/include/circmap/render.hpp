#pragma once

#include <string>
#include <vector>

#include "circmap/census.hpp"
#include "circmap/dynamics.hpp"
#include "circmap/loci.hpp"

namespace circmap {

struct RenderSpec {
  int width = 800;
  int height = 800;
  double stroke = 1.5;
  int raster = 400;  // display cells per side for region fills
  std::string background = "#ffffff";
  std::string contracting = "#4caf50";
  std::string expanding = "#e53935";
  std::string ambiguous = "#bdbdbd";
  std::string locus = "#000000";
  std::string orbit = "#1e3a8a";
  std::string highlight = "#d97706";
};

// One closed path per iterate; iterates 0, n, 2n, ... are drawn in the
// highlight color; M is a circle marker.
std::string render_orbit(const OrbitRecord& orbit, const RenderSpec& spec = {});

// Line through `through` with direction angle `direction`, clipped to the view.
struct GuideLine {
  Point through;
  double direction = 0.0;
};

// Cell fills of a plane-chart grid with black s = 1 contours and dashed guide
// lines (alpha = 0 candidates) on top.
std::string render_region_map(const FieldGrid& grid, const std::vector<Polyline>& contours,
                              const std::vector<GuideLine>& dashed, const RenderSpec& spec = {});

// Both charts composed into the unit disk: plane radius r goes to disk radius
// (2 / pi) atan(1 / r), so infinity is the disk center and M = 0 the rim.
std::string render_hemisphere(const FieldGrid& plane, const FieldGrid& inverted, double cut_radius,
                              const RenderSpec& spec = {});

struct StripPanel {
  double t = 1.0;
  int total = 0;
  FieldGrid plane;
};

// Region maps of a stretch sweep side by side, labeled with t and the count.
std::string render_stretch_strip(const std::vector<StripPanel>& panels, const RenderSpec& spec = {});

}  // namespace circmap
