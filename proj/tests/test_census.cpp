#include "doctest.h"

#include <algorithm>
#include <map>

#include "circmap/census.hpp"
#include "oracles.hpp"

using namespace circmap;

namespace {

CensusOptions quick(int res = 192, int depth = 3) {
  CensusOptions o;
  o.resolution = res;
  o.refine_depth = depth;
  return o;
}

}  // namespace

TEST_CASE("reference counts") {
  CHECK(conjectured_counts(3) == 6);
  CHECK(conjectured_counts(4) == 9);
  CHECK(conjectured_counts(11) == 67);
  for (int n = 3; n <= 11; ++n) {
    const auto e = table1_expected(n);
    REQUIRE(e);
    CHECK(e->total == e->interior + e->noncompact + e->compact);
    CHECK(e->total == conjectured_counts(n));
  }
  CHECK(table1_expected(5)->compact == 5);
  CHECK(table1_expected(6)->compact == 12);
  CHECK(table1_expected(7)->noncompact == 14);
  CHECK_FALSE(table1_expected(12));
  CHECK_THROWS_AS(conjectured_counts(2), GeometryError);
}

TEST_CASE("field samples match the orbit oracle") {
  const FieldGrid g = sample_field(regular_ngon(3), Chart::Plane, {-4, -4, 4, 4}, 64, 0);
  // Node (48, 32) is M = (2, 0): outside the s = 1 curve, expanding.
  CHECK(g.node_point(48, 32) == Point{2, 0});
  const double want = std::log(oracle::n_step(oracle::vertices(regular_ngon(3)), {2, 0}).s);
  CHECK(g.node_value(48, 32) == doctest::Approx(want).epsilon(1e-12));
  CHECK(want > 0);

  const FieldGrid sq = sample_field(regular_ngon(4), Chart::Plane, {-2, -2, 2, 2}, 32, 0);
  CHECK(sq.node_value(16, 16) == doctest::Approx(std::log(0.25)).epsilon(1e-12));
  CHECK(std::isinf(sq.node_value(24, 16)));  // M = (1, 0) is a vertex
}

TEST_CASE("field is symmetric under the dihedral group") {
  const int res = 40;
  const FieldGrid g = sample_field(regular_ngon(4), Chart::Plane, {-3, -3, 3, 3}, res, 0);
  for (int j = 0; j <= res; ++j)
    for (int i = 0; i <= res; ++i) {
      const double v = g.node_value(i, j);
      for (double w : {g.node_value(j, i), g.node_value(res - i, j), g.node_value(i, res - j)}) {
        if (std::isinf(v) || std::isinf(w)) {
          CHECK(std::isinf(v) == std::isinf(w));
          continue;
        }
        CHECK(std::abs(v - w) <= 1e-9 * std::max(1.0, std::abs(v)));
      }
    }
  const FieldGrid t = sample_field(regular_ngon(3), Chart::Plane, {-3, -3, 3, 3}, res, 0);
  for (int j = 0; j <= res; ++j)
    for (int i = 0; i <= res; ++i) {
      const double v = t.node_value(i, j), w = t.node_value(i, res - j);
      if (std::isinf(v) || std::isinf(w)) continue;
      CHECK(std::abs(v - w) <= 1e-9 * std::max(1.0, std::abs(v)));
    }
}

TEST_CASE("sampling argument checks") {
  CHECK_THROWS_AS(sample_field(regular_ngon(3), Chart::Plane, {-1, -1, 1, 1}, 8, 0), GeometryError);
  CHECK_THROWS_AS(sample_field(regular_ngon(3), Chart::Plane, {1, -1, -1, 1}, 32, 0), GeometryError);
  CHECK_THROWS_AS(sample_field(regular_ngon(3), Chart::Plane, {-1, -1, 1, 1}, 32, 9), GeometryError);
  const FieldGrid g = sample_field(regular_ngon(3), Chart::Plane, {-1, -1, 1, 1}, 32, 0);
  CHECK_THROWS_AS(coarsen(g), GeometryError);
}

TEST_CASE("refinement and coarsening") {
  const FieldGrid g = sample_field(regular_ngon(4), Chart::Plane, {-3, -3, 3, 3}, 64, 3);
  CHECK(g.refined_cells() > 0);
  CHECK(g.fine.size() == g.refined_cells() * 64);
  const FieldGrid c = coarsen(g);
  CHECK(c.refine_depth == 2);
  CHECK(c.fine.size() == g.refined_cells() * 16);
  const FieldGrid c0 = coarsen(coarsen(c));
  CHECK(c0.refine_depth == 0);
  CHECK(c0.refined_cells() == 0);
  // Unrefined cells keep their state at every level.
  for (std::size_t k = 0; k < g.base_state.size(); ++k)
    if (g.block_of[k] < 0) CHECK(c0.base_state[k] == g.base_state[k]);
  // Sideline cells are blow-up at the finest level.
  CHECK(g.state_at_point({0.5 + 1e-4, 0.5 - 1e-4}) == CellState::BlowUp);
  CHECK(g.state_at_point({0, 0}) == CellState::Contracting);
  CHECK_FALSE(g.state_at_point({4, 0}));
}

TEST_CASE("chart maps are inverse to each other") {
  const Point m{1.7, -0.4};
  const Point w = plane_to_chart(Chart::Inverted, m);
  CHECK(distance(chart_to_plane(Chart::Inverted, w), m) < 1e-15);
  CHECK(std::isinf(chart_to_plane(Chart::Inverted, {0, 0}).x));
}

TEST_CASE("small censuses of the triangle and square") {
  const auto r3 = census(3, quick());
  CHECK(r3.contracting_interior == 0);
  CHECK(r3.contracting_noncompact == 6);
  CHECK(r3.contracting_compact == 0);
  CHECK(r3.expanding_count == 1);
  CHECK(r3.stable);
  CHECK(r3.blowup_in_single_component);

  const auto res4 = census_polygon(regular_ngon(4), quick());
  const auto& r4 = res4.report;
  CHECK(r4.contracting_interior == 1);
  CHECK(r4.contracting_noncompact == 4);
  CHECK(r4.contracting_compact == 4);
  CHECK(r4.total_contracting == 9);
  CHECK(r4.expanding_count == 1);
  CHECK(r4.stable);
  CHECK(r4.total_contracting == conjectured_counts(4));

  // Areas of symmetric regions agree within 1%.
  std::map<RegionKind, std::vector<double>> areas;
  for (const auto& c : r4.components) areas[c.kind].push_back(c.plane_area);
  for (auto kind : {RegionKind::Compact, RegionKind::NonCompact}) {
    const auto& a = areas[kind];
    REQUIRE(a.size() == 4);
    const auto [lo, hi] = std::minmax_element(a.begin(), a.end());
    CHECK(*hi - *lo <= 0.01 * *hi);
  }
}

TEST_CASE("counts do not depend on the cut radius") {
  auto o = quick();
  const auto a = census(4, o);
  o.cut_radius = 6.0;
  const auto b = census(4, o);
  CHECK(a.total_contracting == b.total_contracting);
  CHECK(a.contracting_compact == b.contracting_compact);
  CHECK(a.contracting_noncompact == b.contracting_noncompact);
  CHECK(a.expanding_count == b.expanding_count);
}

TEST_CASE("results do not depend on the worker count") {
  auto o = quick(96, 2);
  o.threads = 1;
  const auto a = census_polygon(regular_ngon(5), o);
  o.threads = 4;
  const auto b = census_polygon(regular_ngon(5), o);
  CHECK(a.plane.values == b.plane.values);
  CHECK(a.plane.fine == b.plane.fine);
  CHECK(a.inverted.block_of == b.inverted.block_of);
  CHECK(a.report.total_contracting == b.report.total_contracting);
  CHECK(a.report.components.size() == b.report.components.size());
}

TEST_CASE("census argument checks") {
  CHECK_THROWS_AS(census(2), GeometryError);
  auto o = quick();
  o.cut_radius = 20;
  CHECK_THROWS_AS(census(3, o), GeometryError);
  CHECK_THROWS_AS(regularity_comparison(4, 0, 1, quick()), GeometryError);
  CHECK_THROWS_AS(stretch_sweep(0.5, 2, 3, quick()), GeometryError);
}

TEST_CASE("stretch sweep changes topology") {
  const auto s = stretch_sweep(1.0, 3.0, 5, quick(160, 3));
  REQUIRE(s.samples.size() == 5);
  CHECK(s.samples.front().report.total_contracting == 6);
  for (std::size_t i = 1; i < s.samples.size(); ++i) CHECK(s.samples[i].t > s.samples[i - 1].t);
  CHECK_FALSE(s.transitions().empty());
}

TEST_CASE("regularity comparison runs") {
  const auto r = regularity_comparison(3, 2, 4, quick(128, 2));
  CHECK(r.regular_total == 6);
  CHECK(r.sample_totals.size() == 2);
  CHECK(r.max_sampled == *std::max_element(r.sample_totals.begin(), r.sample_totals.end()));
}

TEST_CASE("census CSV") {
  CHECK(census_csv_header() == "n,interior,noncompact,compact,total,expanding,stable,resolution");
  RegionReport r;
  r.n = 4;
  r.contracting_interior = 1;
  r.contracting_noncompact = 4;
  r.contracting_compact = 4;
  r.total_contracting = 9;
  r.expanding_count = 1;
  r.stable = true;
  r.resolution = 512;
  CHECK(census_csv_row(r) == "4,1,4,4,9,1,true,512");
}
