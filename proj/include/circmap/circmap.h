/* C interface to the circumcenter-map library.
 *
 * Objects are opaque handles released with their _free function. Every call
 * returns a circmap_status; on failure the message and offending index of the
 * last error on the calling thread are available through circmap_last_error
 * and circmap_last_error_index. Strings returned through char** out-parameters
 * are heap allocated and must be released with circmap_string_free.
 */
#ifndef CIRCMAP_CIRCMAP_H
#define CIRCMAP_CIRCMAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(CIRCMAP_BUILDING_LIBRARY)
#define CIRCMAP_API __attribute__((visibility("default")))
#else
#define CIRCMAP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum circmap_status {
  CIRCMAP_OK = 0,
  CIRCMAP_E_INVALID_INPUT = 1,
  CIRCMAP_E_COLLINEAR = 2,
  CIRCMAP_E_DEGENERATE_VERTEX = 3,
  CIRCMAP_E_ZERO_LENGTH_SIDE = 4,
  CIRCMAP_E_PARALLEL_PERPENDICULARS = 5,
  CIRCMAP_E_DEGENERATE_ORBIT = 6,
  CIRCMAP_E_INCONSISTENT_SIMILARITY = 7,
  CIRCMAP_E_DEGENERATE_POSITION = 8,
  CIRCMAP_E_CALIBRATION_FAILED = 9,
  CIRCMAP_E_IO = 10,
  CIRCMAP_E_INTERNAL = 11
} circmap_status;

typedef struct circmap_polygon circmap_polygon;
typedef struct circmap_orbit circmap_orbit;
typedef struct circmap_census circmap_census;

CIRCMAP_API const char* circmap_version(void);
CIRCMAP_API const char* circmap_status_name(circmap_status status);
/* Message of the last failed call on this thread ("" if none). */
CIRCMAP_API const char* circmap_last_error(void);
/* Vertex or side index carried by the last error, -1 if none. */
CIRCMAP_API long circmap_last_error_index(void);
CIRCMAP_API void circmap_string_free(char* s);

/* Polygons. xy holds n interleaved coordinates x0, y0, x1, y1, ... */
CIRCMAP_API circmap_status circmap_polygon_create(const double* xy, size_t n, circmap_polygon** out);
CIRCMAP_API circmap_status circmap_polygon_regular(int n, circmap_polygon** out);
/* JSON array of [x, y] pairs. */
CIRCMAP_API circmap_status circmap_polygon_from_json(const char* json, circmap_polygon** out);
/* Horizontal affine stretch x -> t x. */
CIRCMAP_API circmap_status circmap_polygon_stretch(const circmap_polygon* p, double t, circmap_polygon** out);
CIRCMAP_API void circmap_polygon_free(circmap_polygon* p);
CIRCMAP_API size_t circmap_polygon_size(const circmap_polygon* p);
CIRCMAP_API circmap_status circmap_polygon_vertex(const circmap_polygon* p, size_t i, double* x, double* y);
CIRCMAP_API circmap_status circmap_polygon_to_json(const circmap_polygon* p, char** out);

/* One application of the map about M, and its inverse. */
CIRCMAP_API circmap_status circmap_map_forward(const circmap_polygon* p, double mx, double my, circmap_polygon** out);
CIRCMAP_API circmap_status circmap_map_inverse(const circmap_polygon* p, double mx, double my, circmap_polygon** out);

typedef struct circmap_similarity {
  double s;
  double alpha;
  double center_x;
  double center_y;
  double residual;
} circmap_similarity;

/* Similarity carrying P to its n-th image, n = number of vertices. */
CIRCMAP_API circmap_status circmap_similarity_extract(const circmap_polygon* p, double mx, double my,
                                                      circmap_similarity* out);
CIRCMAP_API circmap_status circmap_similarity_to_json(const circmap_similarity* s, char** out);
/* Smallest k <= max_period returning to the starting vertex set; *period = 0 if none. */
CIRCMAP_API circmap_status circmap_detect_period(const circmap_polygon* p, double mx, double my, int max_period,
                                                 double tol, int* period);

/* Orbits. A degenerate step stops the orbit and is recorded, not reported as an error. */
CIRCMAP_API circmap_status circmap_orbit_run(const circmap_polygon* p, double mx, double my, size_t steps,
                                             circmap_orbit** out);
CIRCMAP_API void circmap_orbit_free(circmap_orbit* o);
/* Number of stored polygons including the start. */
CIRCMAP_API size_t circmap_orbit_length(const circmap_orbit* o);
CIRCMAP_API circmap_status circmap_orbit_iterate(const circmap_orbit* o, size_t k, circmap_polygon** out);
/* Returns 1 and fills step/vertex when the orbit stopped early, else 0. */
CIRCMAP_API int circmap_orbit_failure(const circmap_orbit* o, size_t* step, size_t* vertex);
CIRCMAP_API circmap_status circmap_orbit_to_json(const circmap_orbit* o, char** out);
CIRCMAP_API circmap_status circmap_orbit_to_svg(const circmap_orbit* o, char** out);

/* Implicit loci: family is one of equilateral-sextic, equilateral-alpha-cubic,
 * square-octic, square-alpha-quartic. */
CIRCMAP_API circmap_status circmap_locus_eval(const char* family, double x, double y, double* out);
/* JSON array of polylines, each an array of [x, y]. */
CIRCMAP_API circmap_status circmap_locus_trace(const circmap_polygon* p, double x0, double y0, double x1, double y1,
                                               int resolution, char** out);

typedef struct circmap_census_options {
  int resolution;
  int refine_depth;
  double plane_half_width;
  double cut_radius;
  double infinity_radius;
  double min_component_cells;
  int threads;
} circmap_census_options;

typedef struct circmap_region_counts {
  int n;
  int interior;
  int noncompact;
  int compact;
  int total;
  int expanding;
  int stable;
  int resolution;
  int refine_depth;
  int blowup_in_single_component;
  int discarded_fragments;
} circmap_region_counts;

CIRCMAP_API void circmap_census_options_default(circmap_census_options* opts);
/* opts may be NULL for the defaults. */
CIRCMAP_API circmap_status circmap_census_run(const circmap_polygon* p, const circmap_census_options* opts,
                                              circmap_census** out);
CIRCMAP_API void circmap_census_free(circmap_census* c);
CIRCMAP_API circmap_status circmap_census_counts(const circmap_census* c, circmap_region_counts* out);
CIRCMAP_API circmap_status circmap_census_report_json(const circmap_census* c, char** out);
/* chart: 0 plane, 1 inverted. */
CIRCMAP_API circmap_status circmap_census_field_json(const circmap_census* c, int chart, char** out);
/* Plane-chart region map with s = 1 contours and alpha = 0 guide lines when the
 * polygon is regular; with_loci = 0 draws fills only. */
CIRCMAP_API circmap_status circmap_census_region_svg(const circmap_census* c, int with_loci, char** out);
CIRCMAP_API circmap_status circmap_census_hemisphere_svg(const circmap_census* c, char** out);
CIRCMAP_API const char* circmap_census_csv_header(void);
CIRCMAP_API circmap_status circmap_census_csv_row(const circmap_census* c, char** out);

CIRCMAP_API circmap_status circmap_conjectured_count(int n, int* out);
/* Reported counts for the regular n-gon, n = 3..11. */
CIRCMAP_API circmap_status circmap_table1_expected(int n, circmap_region_counts* out);

/* Census of the stretched equilateral for steps values of t in [t_min, t_max].
 * json_out receives samples and transitions; svg_out (may be NULL) a strip of region maps. */
CIRCMAP_API circmap_status circmap_stretch_sweep(double t_min, double t_max, int steps,
                                                 const circmap_census_options* opts, char** json_out,
                                                 char** svg_out);
CIRCMAP_API circmap_status circmap_regularity_comparison(int n, int trials, uint64_t seed,
                                                         const circmap_census_options* opts, char** json_out);

/* Runs a named suite: table1, closed-forms, periodicity, inverse, lines.
 * n_min/n_max bound the table1 range. *passed is 1 on success. */
CIRCMAP_API circmap_status circmap_verify(const char* suite, int n_min, int n_max,
                                          const circmap_census_options* opts, int* passed, char** report);

#ifdef __cplusplus
}
#endif

#endif
