#include "circmap/verify.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "circmap/dynamics.hpp"
#include "circmap/loci.hpp"

namespace circmap {

namespace {

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

VerifyReport table1_suite(const VerifyOptions& o) {
  VerifyReport rep{"table1", true, {}};
  if (o.n_min < 3 || o.n_max > 11 || o.n_min > o.n_max)
    throw GeometryError(ErrorKind::InvalidInput, "table1 range must lie within 3..11");
  for (int n = o.n_min; n <= o.n_max; ++n) {
    const auto r = census(n, o.census);
    const auto e = *table1_expected(n);
    const bool match = r.contracting_interior == e.interior && r.contracting_noncompact == e.noncompact &&
                       r.contracting_compact == e.compact && r.total_contracting == e.total;
    const bool conj = !r.stable || conjectured_counts(n) == r.total_contracting;
    const bool ok = match && r.stable && conj && r.expanding_count == 1;
    rep.passed = rep.passed && ok;
    rep.lines.push_back(fmt("n=%d got (%d,%d,%d,%d) expanding=%d stable=%s expected (%d,%d,%d,%d) conjectured=%d %s",
                            n, r.contracting_interior, r.contracting_noncompact, r.contracting_compact,
                            r.total_contracting, r.expanding_count, r.stable ? "yes" : "no", e.interior,
                            e.noncompact, e.compact, e.total, conjectured_counts(n), ok ? "ok" : "MISMATCH"));
  }
  return rep;
}

VerifyReport closed_forms_suite(const VerifyOptions& o) {
  VerifyReport rep{"closed-forms", false, {}};
  const auto c = calibrate_closed_forms(100, o.seed);
  rep.passed = c.ratio_constant.has_value();
  if (c.ratio_constant)
    rep.lines.push_back(fmt("side-ratio formula: constant %g, max relative error %.3e over %zu instances",
                            *c.ratio_constant, c.ratio_max_rel_error, c.rows.size()));
  else
    rep.lines.push_back(fmt("side-ratio formula: no constant fits; best %g with max relative error %.3e",
                            c.ratio_best_constant, c.ratio_max_rel_error));
  if (c.cos_constant)
    rep.lines.push_back(fmt("cos-alpha formula: constant %g, max error %.3e", *c.cos_constant, c.cos_best_max_error));
  else
    rep.lines.push_back(fmt("cos-alpha formula: no constant in {1,2,4,8} fits; best %g with max error %.3e",
                            c.cos_best_constant, c.cos_best_max_error));
  rep.lines.push_back(fmt("cos-alpha with signed cyclic sub-areas times -2 sign: max error %.3e",
                          c.cos_signed_max_error));
  return rep;
}

VerifyReport periodicity_suite(const VerifyOptions&) {
  VerifyReport rep{"periodicity", true, {}};
  const Polygon t = regular_ngon(3);
  for (const auto& k : equilateral_fixed_points()) {
    const auto sp = extract_similarity(t, k.p);
    const auto period = detect_period(t, k.p, 6, 1e-9);
    const bool ok = std::abs(sp.s - 1.0) < 1e-9 && angle_distance(sp.alpha, 0.0) < 1e-9 && period == 3;
    rep.passed = rep.passed && ok;
    rep.lines.push_back(fmt("%-4s (%.12f, %.12f): s-1=%.2e alpha=%.2e period=%d %s", k.label.c_str(), k.p.x,
                            k.p.y, sp.s - 1.0, sp.alpha, period.value_or(0), ok ? "ok" : "FAIL"));
  }
  const auto cp = detect_period(t, {0.0, 0.0}, 6, 1e-9);
  const bool ok = cp == 2;
  rep.passed = rep.passed && ok;
  rep.lines.push_back(fmt("centroid: set period %d %s", cp.value_or(0), ok ? "ok" : "FAIL"));
  return rep;
}

// Star-shaped random polygon around the origin.
Polygon random_polygon(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> v;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * (k + 0.8 * (u(rng) - 0.5)) / n;
    const double r = 0.5 + u(rng);
    v.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return Polygon(std::move(v));
}

VerifyReport inverse_suite(const VerifyOptions& o) {
  VerifyReport rep{"inverse", true, {}};
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> nd(3, 8);
  double worst_round = 0.0, worst_refl = 0.0;
  int used = 0, skipped = 0;
  while (used < 1000) {
    const Polygon p = random_polygon(rng, nd(rng));
    const Point m{u(rng), u(rng)};
    try {
      const Polygon img = circumcenter_map(p, m);
      const Polygon back = inverse_circumcenter_map(img, m);
      const Polygon refl = reflection_polygon(img, m);
      const double scale = p.diameter();
      for (std::size_t i = 0; i < p.size(); ++i) {
        worst_round = std::max(worst_round, distance(back[i], p[i]) / scale);
        // Reflection of m about image sideline i is P_{i+1}.
        worst_refl = std::max(worst_refl, distance(refl[i], p.at_cyclic(static_cast<std::ptrdiff_t>(i) + 1)) / scale);
      }
      ++used;
    } catch (const GeometryError&) {
      ++skipped;
    }
  }
  rep.passed = worst_round < 1e-10 && worst_refl < 1e-10;
  rep.lines.push_back(fmt("round trip: max relative error %.3e over %d pairs (%d degenerate skipped)", worst_round,
                          used, skipped));
  rep.lines.push_back(fmt("sideline reflections: max relative error %.3e", worst_refl));
  return rep;
}

VerifyReport lines_suite(const VerifyOptions& o) {
  VerifyReport rep{"lines", true, {}};
  for (int n = 3; n <= 6; ++n) {
    double worst = 0.0;
    int samples = 0;
    for (const auto& l : verify_alpha_zero_lines(n, 50, o.seed + n)) {
      worst = std::max(worst, l.max_abs_alpha);
      samples += l.samples;
    }
    const bool asserted = n <= 4;
    const double tol = asserted ? 1e-6 : 1e-4;
    const bool ok = worst < tol;
    if (asserted) rep.passed = rep.passed && ok;
    rep.lines.push_back(fmt("n=%d: %d samples on %d lines, max |alpha| %.3e (%s, tol %.0e) %s", n, samples, n, worst,
                            asserted ? "asserted" : "logged", tol, ok ? "ok" : (asserted ? "FAIL" : "exceeds")));
  }
  return rep;
}

}  // namespace

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names = {"table1", "closed-forms", "periodicity", "inverse", "lines"};
  return names;
}

VerifyReport run_suite(std::string_view name, const VerifyOptions& opts) {
  if (name == "table1") return table1_suite(opts);
  if (name == "closed-forms") return closed_forms_suite(opts);
  if (name == "periodicity") return periodicity_suite(opts);
  if (name == "inverse") return inverse_suite(opts);
  if (name == "lines") return lines_suite(opts);
  throw GeometryError(ErrorKind::InvalidInput, "unknown verification suite: " + std::string(name));
}

}  // namespace circmap
