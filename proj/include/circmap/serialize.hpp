#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "circmap/census.hpp"
#include "circmap/dynamics.hpp"
#include "circmap/loci.hpp"

namespace circmap {

using Json = nlohmann::json;

// Serializes with every floating-point number printed to 17 significant
// digits; non-finite numbers become null. indent < 0 gives a single line.
std::string dump17(const Json& j, int indent = -1);

Json point_json(Point p);
// A polygon is an array of [x, y] pairs.
Json polygon_json(const Polygon& p);
Polygon polygon_from_json(const Json& j);
Polygon polygon_from_json_text(std::string_view text);

Json orbit_json(const OrbitRecord& o);
Json similarity_json(const SimilarityParams& s);
Json contours_json(const std::vector<Polyline>& contours);
Json report_json(const RegionReport& r);
// Chart metadata, node values (null = blow-up), per-cell states as a string of
// C/E/B/A characters, block indices and the refined blocks.
Json field_json(const FieldGrid& g);
Json calibration_json(const CalibrationReport& c);
Json sweep_json(const StretchSweepResult& s);
Json regularity_json(const RegularityReport& r);

}  // namespace circmap
