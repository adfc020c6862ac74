#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circmap/geometry.hpp"

namespace circmap {

enum class Chart : std::uint8_t {
  Plane,     // chart coordinate is M itself
  Inverted,  // chart coordinate w = M / |M|^2; w = 0 is the point at infinity
};

const char* to_string(Chart c);

enum class CellState : std::uint8_t {
  Contracting,  // log s < 0 on every probe of the cell
  Expanding,    // log s >= 0 on every probe
  BlowUp,       // a sideline crosses the cell; s -> infinity there
  Ambiguous,    // mixed signs at the finest level; belongs to no region
};

struct Bounds {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

// Node samples of log s over a chart plus a per-cell classification. Cells are
// probed at their four corners and center; cells with mixed signs or crossed by
// a sideline are subdivided as a quadtree down to refine_depth and stored as a
// dense block of (2^depth)^2 fine cells.
struct FieldGrid {
  Chart chart = Chart::Plane;
  Bounds bounds;
  int resolution = 0;
  int refine_depth = 0;
  std::vector<double> values;           // (resolution + 1)^2 nodes, row-major; +inf = blow-up
  std::vector<CellState> base_state;    // per base cell; valid where block_of < 0
  std::vector<std::int32_t> block_of;   // per base cell: -1 or refined block index
  std::vector<CellState> fine;          // blocks, each block_size()^2 row-major
  std::vector<std::uint8_t> depth;      // deepest quadtree level reached per base cell

  int block_size() const { return 1 << refine_depth; }
  double cell_width() const { return (bounds.x1 - bounds.x0) / resolution; }
  double cell_height() const { return (bounds.y1 - bounds.y0) / resolution; }
  double node_value(int i, int j) const {
    return values[static_cast<std::size_t>(j) * (resolution + 1) + i];
  }
  Point node_point(int i, int j) const {
    return {bounds.x0 + i * cell_width(), bounds.y0 + j * cell_height()};
  }
  // State of fine cell (fx, fy), fx, fy in [0, resolution * block_size()).
  CellState state_at_fine(int fx, int fy) const;
  // Finest state at chart point c; nullopt outside the bounds.
  std::optional<CellState> state_at_point(Point c) const;
  std::size_t refined_cells() const;
};

Point chart_to_plane(Chart chart, Point c);  // inverted: c / |c|^2
Point plane_to_chart(Chart chart, Point m);

struct SampleOptions {
  int threads = 0;  // 0 = hardware concurrency
  double collinearity_tolerance = 1e-12;
  double consistency_tolerance = 1e-6;
};

FieldGrid sample_field(const Polygon& p, Chart chart, Bounds bounds, int resolution,
                       int refine_depth, const SampleOptions& opts = {});

// Same grid at depth refine_depth - 1, derived from the finer quadtree.
FieldGrid coarsen(const FieldGrid& g);

struct CensusOptions {
  int resolution = 512;
  int refine_depth = 4;
  double plane_half_width = 6.0;   // plane chart bounds [-w, w]^2
  double cut_radius = 4.0;         // R: plane chart used for |M| <= R, inverted for |M| >= R/2
  double infinity_radius = 0.02;   // |w| below this is the point at infinity
  // Components covering less chart area than this many base cells are sampling
  // debris and are not counted.
  double min_component_cells = 1.0;
  int threads = 0;
};

enum class RegionKind : std::uint8_t { Interior, Compact, NonCompact, Expanding };

const char* to_string(RegionKind k);

struct ComponentInfo {
  RegionKind kind = RegionKind::Compact;
  double plane_area = 0.0;  // area of the component's plane-chart cells
  Point plane_centroid;     // centroid of those cells
  std::size_t leaves = 0;
  double cell_area = 0.0;  // chart area in units of base cells, both charts
};

struct RegionReport {
  int n = 0;
  int expanding_count = 0;
  int contracting_interior = 0;
  int contracting_compact = 0;
  int contracting_noncompact = 0;
  int total_contracting = 0;
  int resolution = 0;
  int refine_depth = 0;
  bool stable = false;  // counts identical at refine_depth and refine_depth - 1
  // Every blow-up (sideline) cell lies in one expanding component.
  bool blowup_in_single_component = false;
  int discarded_fragments = 0;  // below min_component_cells
  std::vector<ComponentInfo> components;  // at refine_depth
};

struct CensusResult {
  RegionReport report;
  FieldGrid plane;
  FieldGrid inverted;
};

// Connected components of {log s < 0} and {log s >= 0} over both charts, with
// the inverted chart's small disc around w = 0 standing for the point at
// infinity. Returned counts come from refine_depth; `stable` compares them with
// the counts at refine_depth - 1.
CensusResult census_polygon(const Polygon& p, const CensusOptions& opts = {});
RegionReport census(int n, const CensusOptions& opts = {});

// Counting only, for an already sampled pair of grids.
RegionReport count_regions(const Polygon& p, const FieldGrid& plane, const FieldGrid& inverted,
                           const CensusOptions& opts);

// k = r* + n(n+1)/2 for odd n (r* = 0 iff n = 3), 1 + n^2/2 for even n.
int conjectured_counts(int n);

struct Table1Row {
  int n, interior, noncompact, compact, total;
};
// Reported region counts for the regular n-gon, n = 3..11.
std::optional<Table1Row> table1_expected(int n);

struct StretchSample {
  double t = 1.0;
  RegionReport report;
};

struct StretchSweepResult {
  std::vector<StretchSample> samples;
  // Stretch factors between which the total contracting count changes.
  std::vector<std::pair<double, double>> transitions() const;
};

StretchSweepResult stretch_sweep(double t_min, double t_max, int steps,
                                 const CensusOptions& opts = {});

struct RegularityReport {
  int n = 0;
  int regular_total = 0;
  std::vector<int> sample_totals;
  std::vector<bool> sample_stable;
  int max_sampled = 0;
  bool regular_is_max = true;
};

// Census of `trials` random simple star-shaped perturbations of the regular
// n-gon compared against the regular count.
RegularityReport regularity_comparison(int n, int trials, std::uint64_t seed,
                                       const CensusOptions& opts = {});

std::string census_csv_header();
std::string census_csv_row(const RegionReport& r);

}  // namespace circmap
