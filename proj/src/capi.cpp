#include "circmap/circmap.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "circmap/census.hpp"
#include "circmap/dynamics.hpp"
#include "circmap/loci.hpp"
#include "circmap/render.hpp"
#include "circmap/serialize.hpp"
#include "circmap/verify.hpp"

using namespace circmap;

struct circmap_polygon {
  Polygon p;
};

struct circmap_orbit {
  OrbitRecord o;
};

struct circmap_census {
  Polygon p;
  CensusOptions opts;
  CensusResult r;
};

namespace {

thread_local std::string g_error;
thread_local long g_error_index = -1;

circmap_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return CIRCMAP_E_INVALID_INPUT;
    case ErrorKind::Collinear: return CIRCMAP_E_COLLINEAR;
    case ErrorKind::DegenerateVertex: return CIRCMAP_E_DEGENERATE_VERTEX;
    case ErrorKind::ZeroLengthSide: return CIRCMAP_E_ZERO_LENGTH_SIDE;
    case ErrorKind::ParallelPerpendiculars: return CIRCMAP_E_PARALLEL_PERPENDICULARS;
    case ErrorKind::DegenerateOrbit: return CIRCMAP_E_DEGENERATE_ORBIT;
    case ErrorKind::InconsistentSimilarity: return CIRCMAP_E_INCONSISTENT_SIMILARITY;
    case ErrorKind::DegeneratePosition: return CIRCMAP_E_DEGENERATE_POSITION;
    case ErrorKind::CalibrationFailed: return CIRCMAP_E_CALIBRATION_FAILED;
  }
  return CIRCMAP_E_INTERNAL;
}

circmap_status fail(circmap_status s, const std::string& msg, long index = -1) {
  g_error = msg;
  g_error_index = index;
  return s;
}

template <typename F>
circmap_status guarded(F&& f) {
  g_error.clear();
  g_error_index = -1;
  try {
    return f();
  } catch (const GeometryError& e) {
    return fail(status_of(e.kind()), e.what(), e.index() ? static_cast<long>(*e.index()) : -1);
  } catch (const nlohmann::json::exception& e) {
    return fail(CIRCMAP_E_INVALID_INPUT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CIRCMAP_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CIRCMAP_E_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

#define REQUIRE(cond, msg) \
  if (!(cond)) return fail(CIRCMAP_E_INVALID_INPUT, msg)

CensusOptions to_options(const circmap_census_options* o) {
  CensusOptions c;
  if (!o) return c;
  c.resolution = o->resolution;
  c.refine_depth = o->refine_depth;
  c.plane_half_width = o->plane_half_width;
  c.cut_radius = o->cut_radius;
  c.infinity_radius = o->infinity_radius;
  c.min_component_cells = o->min_component_cells;
  c.threads = o->threads;
  return c;
}

void fill_counts(const RegionReport& r, circmap_region_counts* out) {
  *out = {r.n,
          r.contracting_interior,
          r.contracting_noncompact,
          r.contracting_compact,
          r.total_contracting,
          r.expanding_count,
          r.stable ? 1 : 0,
          r.resolution,
          r.refine_depth,
          r.blowup_in_single_component ? 1 : 0,
          r.discarded_fragments};
}

circmap_polygon* wrap(Polygon p) { return new circmap_polygon{std::move(p)}; }

}  // namespace

extern "C" {

const char* circmap_version(void) { return "1.0.0"; }

const char* circmap_status_name(circmap_status s) {
  switch (s) {
    case CIRCMAP_OK: return "ok";
    case CIRCMAP_E_INVALID_INPUT: return "invalid input";
    case CIRCMAP_E_COLLINEAR: return "collinear";
    case CIRCMAP_E_DEGENERATE_VERTEX: return "degenerate vertex";
    case CIRCMAP_E_ZERO_LENGTH_SIDE: return "zero-length side";
    case CIRCMAP_E_PARALLEL_PERPENDICULARS: return "parallel perpendiculars";
    case CIRCMAP_E_DEGENERATE_ORBIT: return "degenerate orbit";
    case CIRCMAP_E_INCONSISTENT_SIMILARITY: return "inconsistent similarity";
    case CIRCMAP_E_DEGENERATE_POSITION: return "degenerate position";
    case CIRCMAP_E_CALIBRATION_FAILED: return "calibration failed";
    case CIRCMAP_E_IO: return "i/o error";
    case CIRCMAP_E_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* circmap_last_error(void) { return g_error.c_str(); }
long circmap_last_error_index(void) { return g_error_index; }
void circmap_string_free(char* s) { std::free(s); }

circmap_status circmap_polygon_create(const double* xy, size_t n, circmap_polygon** out) {
  return guarded([&] {
    REQUIRE(out && (xy || n == 0), "null argument");
    std::vector<Point> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = wrap(Polygon(std::move(v)));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_polygon_regular(int n, circmap_polygon** out) {
  return guarded([&] {
    REQUIRE(out, "null argument");
    *out = wrap(regular_ngon(n));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_polygon_from_json(const char* json, circmap_polygon** out) {
  return guarded([&] {
    REQUIRE(json && out, "null argument");
    *out = wrap(polygon_from_json_text(json));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_polygon_stretch(const circmap_polygon* p, double t, circmap_polygon** out) {
  return guarded([&] {
    REQUIRE(p && out, "null argument");
    *out = wrap(affine_stretch(p->p, t));
    return CIRCMAP_OK;
  });
}

void circmap_polygon_free(circmap_polygon* p) { delete p; }

size_t circmap_polygon_size(const circmap_polygon* p) { return p ? p->p.size() : 0; }

circmap_status circmap_polygon_vertex(const circmap_polygon* p, size_t i, double* x, double* y) {
  return guarded([&] {
    REQUIRE(p && x && y, "null argument");
    if (i >= p->p.size()) return fail(CIRCMAP_E_INVALID_INPUT, "vertex index out of range", static_cast<long>(i));
    *x = p->p[i].x;
    *y = p->p[i].y;
    return CIRCMAP_OK;
  });
}

circmap_status circmap_polygon_to_json(const circmap_polygon* p, char** out) {
  return guarded([&] {
    REQUIRE(p && out, "null argument");
    *out = dup(dump17(polygon_json(p->p)));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_map_forward(const circmap_polygon* p, double mx, double my, circmap_polygon** out) {
  return guarded([&] {
    REQUIRE(p && out, "null argument");
    *out = wrap(circumcenter_map(p->p, {mx, my}));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_map_inverse(const circmap_polygon* p, double mx, double my, circmap_polygon** out) {
  return guarded([&] {
    REQUIRE(p && out, "null argument");
    *out = wrap(inverse_circumcenter_map(p->p, {mx, my}));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_similarity_extract(const circmap_polygon* p, double mx, double my, circmap_similarity* out) {
  return guarded([&] {
    REQUIRE(p && out, "null argument");
    const auto s = extract_similarity(p->p, {mx, my});
    *out = {s.s, s.alpha, s.center.x, s.center.y, s.residual};
    return CIRCMAP_OK;
  });
}

circmap_status circmap_similarity_to_json(const circmap_similarity* s, char** out) {
  return guarded([&] {
    REQUIRE(s && out, "null argument");
    *out = dup(dump17(similarity_json({s->s, s->alpha, {s->center_x, s->center_y}, s->residual})));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_detect_period(const circmap_polygon* p, double mx, double my, int max_period, double tol,
                                     int* period) {
  return guarded([&] {
    REQUIRE(p && period, "null argument");
    *period = detect_period(p->p, {mx, my}, max_period, tol).value_or(0);
    return CIRCMAP_OK;
  });
}

circmap_status circmap_orbit_run(const circmap_polygon* p, double mx, double my, size_t steps, circmap_orbit** out) {
  return guarded([&] {
    REQUIRE(p && out, "null argument");
    *out = new circmap_orbit{iterate(p->p, {mx, my}, steps)};
    return CIRCMAP_OK;
  });
}

void circmap_orbit_free(circmap_orbit* o) { delete o; }

size_t circmap_orbit_length(const circmap_orbit* o) { return o ? o->o.iterates.size() : 0; }

circmap_status circmap_orbit_iterate(const circmap_orbit* o, size_t k, circmap_polygon** out) {
  return guarded([&] {
    REQUIRE(o && out, "null argument");
    REQUIRE(k < o->o.iterates.size(), "iterate index out of range");
    *out = wrap(o->o.iterates[k]);
    return CIRCMAP_OK;
  });
}

int circmap_orbit_failure(const circmap_orbit* o, size_t* step, size_t* vertex) {
  if (!o || !o->o.failure) return 0;
  if (step) *step = o->o.failure->step;
  if (vertex) *vertex = o->o.failure->vertex;
  return 1;
}

circmap_status circmap_orbit_to_json(const circmap_orbit* o, char** out) {
  return guarded([&] {
    REQUIRE(o && out, "null argument");
    *out = dup(dump17(orbit_json(o->o)));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_orbit_to_svg(const circmap_orbit* o, char** out) {
  return guarded([&] {
    REQUIRE(o && out, "null argument");
    *out = dup(render_orbit(o->o));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_locus_eval(const char* family, double x, double y, double* out) {
  return guarded([&] {
    REQUIRE(family && out, "null argument");
    const auto f = family_from_name(family);
    if (!f) return fail(CIRCMAP_E_INVALID_INPUT, std::string("unknown curve family: ") + family);
    *out = ImplicitCurve{*f}.evaluate({x, y});
    return CIRCMAP_OK;
  });
}

circmap_status circmap_locus_trace(const circmap_polygon* p, double x0, double y0, double x1, double y1,
                                   int resolution, char** out) {
  return guarded([&] {
    REQUIRE(p && out, "null argument");
    *out = dup(dump17(contours_json(trace_s1_locus(p->p, {x0, y0, x1, y1}, resolution))));
    return CIRCMAP_OK;
  });
}

void circmap_census_options_default(circmap_census_options* o) {
  if (!o) return;
  const CensusOptions c;
  *o = {c.resolution,  c.refine_depth,        c.plane_half_width, c.cut_radius,
        c.infinity_radius, c.min_component_cells, c.threads};
}

circmap_status circmap_census_run(const circmap_polygon* p, const circmap_census_options* opts, circmap_census** out) {
  return guarded([&] {
    REQUIRE(p && out, "null argument");
    const CensusOptions o = to_options(opts);
    *out = new circmap_census{p->p, o, census_polygon(p->p, o)};
    return CIRCMAP_OK;
  });
}

void circmap_census_free(circmap_census* c) { delete c; }

circmap_status circmap_census_counts(const circmap_census* c, circmap_region_counts* out) {
  return guarded([&] {
    REQUIRE(c && out, "null argument");
    fill_counts(c->r.report, out);
    return CIRCMAP_OK;
  });
}

circmap_status circmap_census_report_json(const circmap_census* c, char** out) {
  return guarded([&] {
    REQUIRE(c && out, "null argument");
    *out = dup(dump17(report_json(c->r.report), 2));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_census_field_json(const circmap_census* c, int chart, char** out) {
  return guarded([&] {
    REQUIRE(c && out, "null argument");
    REQUIRE(chart == 0 || chart == 1, "chart must be 0 (plane) or 1 (inverted)");
    *out = dup(dump17(field_json(chart == 0 ? c->r.plane : c->r.inverted)));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_census_region_svg(const circmap_census* c, int with_loci, char** out) {
  return guarded([&] {
    REQUIRE(c && out, "null argument");
    std::vector<Polyline> contours;
    std::vector<GuideLine> guides;
    if (with_loci) {
      const Bounds& b = c->r.plane.bounds;
      contours = trace_s1_locus(c->p, {b.x0, b.y0, b.x1, b.y1}, 400);
      const int n = static_cast<int>(c->p.size());
      if (relabeled_distance(c->p, regular_ngon(n)) < 1e-9)
        for (double d : alpha_zero_lines(n)) guides.push_back({{0.0, 0.0}, d});
    }
    *out = dup(render_region_map(c->r.plane, contours, guides));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_census_hemisphere_svg(const circmap_census* c, char** out) {
  return guarded([&] {
    REQUIRE(c && out, "null argument");
    *out = dup(render_hemisphere(c->r.plane, c->r.inverted, c->opts.cut_radius));
    return CIRCMAP_OK;
  });
}

const char* circmap_census_csv_header(void) {
  static const std::string h = census_csv_header();
  return h.c_str();
}

circmap_status circmap_census_csv_row(const circmap_census* c, char** out) {
  return guarded([&] {
    REQUIRE(c && out, "null argument");
    *out = dup(census_csv_row(c->r.report));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_conjectured_count(int n, int* out) {
  return guarded([&] {
    REQUIRE(out, "null argument");
    *out = conjectured_counts(n);
    return CIRCMAP_OK;
  });
}

circmap_status circmap_table1_expected(int n, circmap_region_counts* out) {
  return guarded([&] {
    REQUIRE(out, "null argument");
    const auto e = table1_expected(n);
    if (!e) return fail(CIRCMAP_E_INVALID_INPUT, "no reported counts for this n");
    *out = {n, e->interior, e->noncompact, e->compact, e->total, 1, 1, 0, 0, 1, 0};
    return CIRCMAP_OK;
  });
}

circmap_status circmap_stretch_sweep(double t_min, double t_max, int steps, const circmap_census_options* opts,
                                     char** json_out, char** svg_out) {
  return guarded([&] {
    REQUIRE(json_out, "null argument");
    const CensusOptions o = to_options(opts);
    if (!svg_out) {
      *json_out = dup(dump17(sweep_json(stretch_sweep(t_min, t_max, steps, o)), 2));
      return CIRCMAP_OK;
    }
    // Same samples as stretch_sweep, keeping the plane grids for the strip.
    REQUIRE(t_min >= 1.0 && t_max >= t_min && steps >= 1, "stretch sweep needs 1 <= t_min <= t_max, steps >= 1");
    StretchSweepResult sweep;
    std::vector<StripPanel> panels;
    const Polygon base = regular_ngon(3);
    for (int k = 0; k < steps; ++k) {
      const double t = steps == 1 ? t_min : t_min + (t_max - t_min) * k / (steps - 1);
      auto r = census_polygon(affine_stretch(base, t), o);
      panels.push_back({t, r.report.total_contracting, std::move(r.plane)});
      sweep.samples.push_back({t, std::move(r.report)});
    }
    RenderSpec spec;
    spec.height = 240;
    spec.raster = 200;
    const std::string svg = render_stretch_strip(panels, spec);
    *json_out = dup(dump17(sweep_json(sweep), 2));
    *svg_out = dup(svg);
    return CIRCMAP_OK;
  });
}

circmap_status circmap_regularity_comparison(int n, int trials, uint64_t seed, const circmap_census_options* opts,
                                             char** json_out) {
  return guarded([&] {
    REQUIRE(json_out, "null argument");
    *json_out = dup(dump17(regularity_json(regularity_comparison(n, trials, seed, to_options(opts))), 2));
    return CIRCMAP_OK;
  });
}

circmap_status circmap_verify(const char* suite, int n_min, int n_max, const circmap_census_options* opts,
                              int* passed, char** report) {
  return guarded([&] {
    REQUIRE(suite && passed && report, "null argument");
    VerifyOptions vo;
    vo.n_min = n_min;
    vo.n_max = n_max;
    vo.census = to_options(opts);
    const auto r = run_suite(suite, vo);
    std::string text;
    for (const auto& l : r.lines) text += l + '\n';
    text += std::string("suite ") + r.suite + ": " + (r.passed ? "PASS" : "FAIL") + '\n';
    *passed = r.passed ? 1 : 0;
    *report = dup(text);
    return CIRCMAP_OK;
  });
}

}  // extern "C"
