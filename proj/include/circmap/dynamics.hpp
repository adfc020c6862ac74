#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "circmap/geometry.hpp"

namespace circmap {

struct SimilarityParams {
  double s = 1.0;      // linear scale ratio about the center
  double alpha = 0.0;  // rotation, radians in (-pi, pi]
  Point center;
  double residual = 0.0;  // max_i |z_i - s e^{i alpha}| / s over the vertex ratios z_i
};

struct OrbitFailure {
  std::size_t step = 0;    // the map application that failed (0 = first)
  std::size_t vertex = 0;  // offending vertex index reported by circumcenter_map
};

struct OrbitRecord {
  Polygon start;
  Point m;
  std::vector<Polygon> iterates;  // iterates[0] == start
  std::optional<OrbitFailure> failure;
};

OrbitRecord iterate(const Polygon& p, Point m, std::size_t k, const MapConfig& cfg = {});

// Similarity about m that carries `from` onto `to` label for label.
SimilarityParams similarity_between(const Polygon& from, const Polygon& to, Point m);

inline constexpr double kDefaultConsistencyTolerance = 1e-6;

// Parameters of C_M^n with n = p.size(). Throws DegenerateOrbit when an
// application hits the blow-up set, InconsistentSimilarity when the vertex
// ratios do not agree within `tolerance`.
SimilarityParams extract_similarity(const Polygon& p, Point m, const MapConfig& cfg = {},
                                    double tolerance = kDefaultConsistencyTolerance);

// Parameters for steps 0 -> n and n -> 2n.
std::pair<SimilarityParams, SimilarityParams> repeat_similarity_check(
    const Polygon& p, Point m, const MapConfig& cfg = {},
    double tolerance = kDefaultConsistencyTolerance);

// Smallest distance between two angles, in [0, pi].
double angle_distance(double a, double b);

// Triangle closed forms. Sub-areas are the absolute areas of ABM, BCM, ACM with
// A, B, C the three vertices in order. Throw DegeneratePosition when a sub-area
// vanishes relative to the triangle's scale.
double triangle_ratio_closed_form(const Polygon& t, Point m);
double triangle_cos_alpha_closed_form(const Polygon& t, Point m);

// Same numerator with the sub-areas signed cyclically ([ABM], [BCM], [CAM]),
// multiplied by -2 sign([ABM][BCM][CAM]). Equals cos(alpha) of the 3-step
// similarity on every instance we have sampled.
double triangle_cos_alpha_signed(const Polygon& t, Point m);

struct CalibrationRow {
  Polygon triangle;
  Point m;
  double oracle_s = 0.0;
  double oracle_cos_alpha = 0.0;
  double ratio_formula = 0.0;
  double cos_formula = 0.0;
  double cos_signed = 0.0;
};

struct CalibrationReport {
  std::vector<CalibrationRow> rows;
  // Candidate constants c with ratio_formula / c == oracle_s.
  std::optional<double> ratio_constant;
  double ratio_max_rel_error = 0.0;  // for the chosen (or best) constant
  double ratio_best_constant = 0.0;
  // Candidate constants c with c * cos_formula == cos(alpha).
  std::optional<double> cos_constant;
  double cos_best_constant = 0.0;
  double cos_best_max_error = 0.0;
  double cos_signed_max_error = 0.0;
};

inline constexpr double kCalibrationCandidates[] = {1.0, 2.0, 4.0, 8.0};

// Fits the single convention factor of both triangle closed forms against the
// orbit on `samples` random scalene instances. A constant is accepted when it
// reproduces the oracle within `tolerance` on every instance.
CalibrationReport calibrate_closed_forms(int samples, std::uint64_t seed,
                                         double tolerance = 1e-9);

// Smallest k <= max_period whose iterate coincides with the start as a vertex
// set: min over cyclic relabelings (both orientations) of the max vertex
// distance is below tol * diameter(start).
std::optional<int> detect_period(const Polygon& p, Point m, int max_period, double tol,
                                 const MapConfig& cfg = {});

// Max vertex distance after the best cyclic relabeling (either orientation).
double relabeled_distance(const Polygon& a, const Polygon& b);

// Normalized side lengths (sum 1) and turning angles, canonicalized to the
// lexicographically smallest variant under cyclic shift, reversal and mirroring.
struct ShapeDescriptor {
  std::vector<double> sides;
  std::vector<double> turns;
};

ShapeDescriptor shape_descriptor(const Polygon& p);

// Zero iff the polygons are similar (including mirror images); L-infinity
// distance between descriptors minimized over relabelings.
double descriptor_distance(const Polygon& a, const Polygon& b);

}  // namespace circmap
