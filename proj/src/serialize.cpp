#include "circmap/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace circmap {

namespace {

void emit(std::string& out, const Json& j, int indent, int level) {
  auto newline = [&](int lv) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * lv), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        emit(out, e, indent, level + 1);
      }
      newline(level);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(level + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        emit(out, it.value(), indent, level + 1);
      }
      newline(level);
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

char state_char(CellState s) {
  switch (s) {
    case CellState::Contracting: return 'C';
    case CellState::Expanding: return 'E';
    case CellState::BlowUp: return 'B';
    case CellState::Ambiguous: return 'A';
  }
  return '?';
}

Json counts_json(const RegionReport& r) {
  return {{"n", r.n},
          {"interior", r.contracting_interior},
          {"noncompact", r.contracting_noncompact},
          {"compact", r.contracting_compact},
          {"total", r.total_contracting},
          {"expanding", r.expanding_count},
          {"stable", r.stable}};
}

}  // namespace

std::string dump17(const Json& j, int indent) {
  std::string out;
  emit(out, j, indent, 0);
  return out;
}

Json point_json(Point p) { return Json::array({p.x, p.y}); }

Json polygon_json(const Polygon& p) {
  Json a = Json::array();
  for (const Point& v : p.vertices()) a.push_back(point_json(v));
  return a;
}

Polygon polygon_from_json(const Json& j) {
  const Json* arr = &j;
  if (j.is_object() && j.contains("vertices")) arr = &j["vertices"];
  if (!arr->is_array()) throw GeometryError(ErrorKind::InvalidInput, "polygon JSON must be an array of [x, y]");
  std::vector<Point> pts;
  for (const auto& e : *arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw GeometryError(ErrorKind::InvalidInput, "polygon vertex must be [x, y]");
    pts.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  return Polygon(std::move(pts));
}

Polygon polygon_from_json_text(std::string_view text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw GeometryError(ErrorKind::InvalidInput, "malformed polygon JSON");
  return polygon_from_json(j);
}

Json orbit_json(const OrbitRecord& o) {
  Json its = Json::array();
  for (const auto& q : o.iterates) its.push_back(polygon_json(q));
  Json j = {{"m", point_json(o.m)}, {"n", o.start.size()}, {"iterates", its}};
  if (o.failure)
    j["failure"] = {{"step", o.failure->step}, {"vertex", o.failure->vertex}};
  else
    j["failure"] = nullptr;
  return j;
}

Json similarity_json(const SimilarityParams& s) {
  return {{"s", s.s}, {"alpha", s.alpha}, {"center", point_json(s.center)}, {"residual", s.residual}};
}

Json contours_json(const std::vector<Polyline>& contours) {
  Json a = Json::array();
  for (const auto& pl : contours) {
    Json line = Json::array();
    for (const Point& p : pl) line.push_back(point_json(p));
    a.push_back(std::move(line));
  }
  return a;
}

Json report_json(const RegionReport& r) {
  Json j = counts_json(r);
  j["resolution"] = r.resolution;
  j["refine_depth"] = r.refine_depth;
  j["blowup_in_single_component"] = r.blowup_in_single_component;
  j["discarded_fragments"] = r.discarded_fragments;
  Json comps = Json::array();
  for (const auto& c : r.components)
    comps.push_back({{"kind", to_string(c.kind)},
                     {"plane_area", c.plane_area},
                     {"plane_centroid", point_json(c.plane_centroid)},
                     {"cells", c.cell_area},
                     {"leaves", c.leaves}});
  j["components"] = std::move(comps);
  return j;
}

Json field_json(const FieldGrid& g) {
  std::string base(g.base_state.size(), 'A');
  for (std::size_t k = 0; k < g.base_state.size(); ++k) base[k] = state_char(g.base_state[k]);
  std::string fine(g.fine.size(), 'A');
  for (std::size_t k = 0; k < g.fine.size(); ++k) fine[k] = state_char(g.fine[k]);
  Json values = Json::array();
  for (double v : g.values) values.push_back(v);
  return {{"chart", to_string(g.chart)},
          {"bounds", {g.bounds.x0, g.bounds.y0, g.bounds.x1, g.bounds.y1}},
          {"resolution", g.resolution},
          {"refine_depth", g.refine_depth},
          {"values", std::move(values)},
          {"base_state", std::move(base)},
          {"block_of", g.block_of},
          {"fine", std::move(fine)}};
}

Json calibration_json(const CalibrationReport& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows)
    rows.push_back({{"triangle", polygon_json(r.triangle)},
                    {"m", point_json(r.m)},
                    {"oracle_s", r.oracle_s},
                    {"oracle_cos_alpha", r.oracle_cos_alpha},
                    {"ratio_formula", r.ratio_formula},
                    {"cos_formula", r.cos_formula},
                    {"cos_signed", r.cos_signed}});
  Json j = {{"ratio_best_constant", c.ratio_best_constant},
            {"ratio_max_rel_error", c.ratio_max_rel_error},
            {"cos_best_constant", c.cos_best_constant},
            {"cos_best_max_error", c.cos_best_max_error},
            {"cos_signed_max_error", c.cos_signed_max_error},
            {"rows", std::move(rows)}};
  j["ratio_constant"] = c.ratio_constant ? Json(*c.ratio_constant) : Json(nullptr);
  j["cos_constant"] = c.cos_constant ? Json(*c.cos_constant) : Json(nullptr);
  return j;
}

Json sweep_json(const StretchSweepResult& s) {
  Json samples = Json::array();
  for (const auto& x : s.samples) {
    Json row = counts_json(x.report);
    row["t"] = x.t;
    samples.push_back(std::move(row));
  }
  Json tr = Json::array();
  for (const auto& [a, b] : s.transitions()) tr.push_back(Json::array({a, b}));
  return {{"samples", std::move(samples)}, {"transitions", std::move(tr)}};
}

Json regularity_json(const RegularityReport& r) {
  return {{"n", r.n},
          {"regular_total", r.regular_total},
          {"sample_totals", r.sample_totals},
          {"sample_stable", r.sample_stable},
          {"max_sampled", r.max_sampled},
          {"regular_is_max", r.regular_is_max}};
}

}  // namespace circmap
