#include "circmap/dynamics.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

namespace circmap {

namespace {

using cd = std::complex<double>;

double normalize_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

struct TriangleTerms {
  double la, lb, lc, ma, mb, mc;
  double abm, bcm, cam;  // cyclically signed sub-areas
};

TriangleTerms triangle_terms(const Polygon& t, Point m) {
  if (t.size() != 3)
    throw GeometryError(ErrorKind::InvalidInput, "closed form needs a triangle");
  const Point a = t[0], b = t[1], c = t[2];
  TriangleTerms r{};
  r.la = distance(b, c);
  r.lb = distance(a, c);
  r.lc = distance(a, b);
  r.ma = distance(a, m);
  r.mb = distance(b, m);
  r.mc = distance(c, m);
  r.abm = 0.5 * cross(b - a, m - a);
  r.bcm = 0.5 * cross(c - b, m - b);
  r.cam = 0.5 * cross(a - c, m - c);
  const double scale = std::max({r.la, r.lb, r.lc, r.ma, r.mb, r.mc});
  const double tol = 1e-12 * scale * scale;
  for (double area : {r.abm, r.bcm, r.cam})
    if (std::abs(area) <= tol)
      throw GeometryError(ErrorKind::DegeneratePosition, "M lies on a sideline of the triangle");
  return r;
}

double cos_numerator(const TriangleTerms& t, double abm, double bcm, double acm) {
  const double a2 = t.ma * t.ma, b2 = t.mb * t.mb, c2 = t.mc * t.mc;
  return c2 * (a2 + b2) * abm + b2 * (a2 + c2) * acm + a2 * (b2 + c2) * bcm;
}

std::vector<double> raw_sides(std::span<const Point> v) {
  const std::size_t n = v.size();
  std::vector<double> s(n);
  double perim = 0.0;
  for (std::size_t i = 0; i < n; ++i) perim += s[i] = distance(v[i], v[(i + 1) % n]);
  for (auto& x : s) x /= perim;
  return s;
}

// turns[i] is the turning angle at vertex i + 1.
std::vector<double> raw_turns(std::span<const Point> v) {
  const std::size_t n = v.size();
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point d0 = v[(i + 1) % n] - v[i];
    const Point d1 = v[(i + 2) % n] - v[(i + 1) % n];
    t[i] = std::atan2(cross(d0, d1), dot(d0, d1));
  }
  return t;
}

struct DescriptorVariant {
  std::vector<double> sides;
  std::vector<double> turns;
};

std::vector<DescriptorVariant> all_variants(const Polygon& p) {
  std::vector<DescriptorVariant> out;
  const std::size_t n = p.size();
  for (int reverse = 0; reverse < 2; ++reverse) {
    for (int mirror = 0; mirror < 2; ++mirror) {
      std::vector<Point> v(p.vertices().begin(), p.vertices().end());
      if (reverse) std::reverse(v.begin(), v.end());
      if (mirror)
        for (auto& q : v) q.y = -q.y;
      const auto s = raw_sides(v);
      const auto t = raw_turns(v);
      for (std::size_t k = 0; k < n; ++k) {
        DescriptorVariant d;
        d.sides.resize(n);
        d.turns.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
          d.sides[i] = s[(i + k) % n];
          d.turns[i] = t[(i + k) % n];
        }
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

}  // namespace

double angle_distance(double a, double b) { return std::abs(normalize_angle(a - b)); }

OrbitRecord iterate(const Polygon& p, Point m, std::size_t k, const MapConfig& cfg) {
  OrbitRecord rec{p, m, {p}, std::nullopt};
  rec.iterates.reserve(k + 1);
  for (std::size_t step = 0; step < k; ++step) {
    try {
      rec.iterates.push_back(circumcenter_map(rec.iterates.back(), m, cfg));
    } catch (const GeometryError& e) {
      rec.failure = OrbitFailure{step, e.index().value_or(0)};
      break;
    }
  }
  return rec;
}

SimilarityParams similarity_between(const Polygon& from, const Polygon& to, Point m) {
  if (from.size() != to.size())
    throw GeometryError(ErrorKind::InvalidInput, "polygons differ in vertex count");
  const std::size_t n = from.size();
  const cd c = m.as_complex();
  std::vector<cd> z(n);
  double mean_mod = 0.0;
  cd dir_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cd den = from[i].as_complex() - c;
    if (std::abs(den) == 0.0)
      throw GeometryError(ErrorKind::DegeneratePosition, "M coincides with a vertex", i);
    z[i] = (to[i].as_complex() - c) / den;
    const double r = std::abs(z[i]);
    mean_mod += r;
    if (r > 0.0) dir_sum += z[i] / r;
  }
  SimilarityParams out;
  out.center = m;
  out.s = mean_mod / static_cast<double>(n);
  out.alpha = normalize_angle(std::arg(dir_sum));
  const cd fit = std::polar(out.s, out.alpha);
  double res = 0.0;
  for (const auto& zi : z) res = std::max(res, std::abs(zi - fit));
  out.residual = out.s > 0.0 ? res / out.s : std::numeric_limits<double>::infinity();
  return out;
}

namespace {

SimilarityParams checked(SimilarityParams sp, double tolerance) {
  if (!(sp.residual <= tolerance))
    throw GeometryError(ErrorKind::InconsistentSimilarity,
                        "vertex ratios disagree: residual " + std::to_string(sp.residual));
  return sp;
}

[[noreturn]] void throw_orbit_failure(const OrbitFailure& f) {
  throw GeometryError(ErrorKind::DegenerateOrbit,
                      "orbit degenerates at step " + std::to_string(f.step) + " (vertex " +
                          std::to_string(f.vertex) + ")",
                      f.vertex, f.step);
}

}  // namespace

SimilarityParams extract_similarity(const Polygon& p, Point m, const MapConfig& cfg,
                                    double tolerance) {
  const auto orbit = iterate(p, m, p.size(), cfg);
  if (orbit.failure) throw_orbit_failure(*orbit.failure);
  return checked(similarity_between(p, orbit.iterates.back(), m), tolerance);
}

std::pair<SimilarityParams, SimilarityParams> repeat_similarity_check(const Polygon& p, Point m,
                                                                      const MapConfig& cfg,
                                                                      double tolerance) {
  const std::size_t n = p.size();
  const auto orbit = iterate(p, m, 2 * n, cfg);
  if (orbit.failure) throw_orbit_failure(*orbit.failure);
  return {checked(similarity_between(orbit.iterates[0], orbit.iterates[n], m), tolerance),
          checked(similarity_between(orbit.iterates[n], orbit.iterates[2 * n], m), tolerance)};
}

double triangle_ratio_closed_form(const Polygon& t, Point m) {
  const auto r = triangle_terms(t, m);
  return (r.la * r.lb * r.lc * r.ma * r.mb * r.mc) /
         (8.0 * std::abs(r.abm) * std::abs(r.bcm) * std::abs(r.cam));
}

double triangle_cos_alpha_closed_form(const Polygon& t, Point m) {
  const auto r = triangle_terms(t, m);
  return cos_numerator(r, std::abs(r.abm), std::abs(r.bcm), std::abs(r.cam)) /
         (r.la * r.lb * r.lc * r.ma * r.mb * r.mc);
}

double triangle_cos_alpha_signed(const Polygon& t, Point m) {
  const auto r = triangle_terms(t, m);
  const double f = cos_numerator(r, r.abm, r.bcm, r.cam) / (r.la * r.lb * r.lc * r.ma * r.mb * r.mc);
  const double sign = (r.abm * r.bcm * r.cam > 0.0) ? 1.0 : -1.0;
  return -2.0 * sign * f;
}

CalibrationReport calibrate_closed_forms(int samples, std::uint64_t seed, double tolerance) {
  if (samples < 1) throw GeometryError(ErrorKind::InvalidInput, "calibration needs samples >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  CalibrationReport rep;
  while (static_cast<int>(rep.rows.size()) < samples) {
    std::vector<Point> v{{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}};
    const Point m{box(rng), box(rng)};
    // Scalene and well shaped: every angle above 15 degrees, sides differ by 5%.
    const double l0 = distance(v[1], v[2]), l1 = distance(v[0], v[2]), l2 = distance(v[0], v[1]);
    const double lmin = std::min({l0, l1, l2});
    if (lmin < 0.2) continue;
    if (std::abs(l0 - l1) < 0.05 * lmin || std::abs(l1 - l2) < 0.05 * lmin ||
        std::abs(l0 - l2) < 0.05 * lmin)
      continue;
    const double area2 = std::abs(cross(v[1] - v[0], v[2] - v[0]));
    if (area2 / std::max({l0, l1, l2}) / std::max({l0, l1, l2}) < std::sin(15.0 * std::numbers::pi / 180.0) / 2.0)
      continue;
    bool near_side = false;
    for (int i = 0; i < 3; ++i) {
      const Point a = v[i], b = v[(i + 1) % 3];
      if (std::abs(cross(b - a, m - a)) / distance(a, b) < 0.05) near_side = true;
      if (distance(m, a) < 0.05) near_side = true;
    }
    if (near_side) continue;
    const Polygon t(v);
    SimilarityParams sp;
    try {
      sp = extract_similarity(t, m);
    } catch (const GeometryError&) {
      continue;
    }
    CalibrationRow row{t, m, sp.s, std::cos(sp.alpha), triangle_ratio_closed_form(t, m),
                       triangle_cos_alpha_closed_form(t, m), triangle_cos_alpha_signed(t, m)};
    rep.rows.push_back(std::move(row));
  }

  double best_ratio = std::numeric_limits<double>::infinity();
  double best_cos = std::numeric_limits<double>::infinity();
  for (double c : kCalibrationCandidates) {
    double worst_ratio = 0.0;
    double worst_cos = 0.0;
    for (const auto& row : rep.rows) {
      worst_ratio = std::max(worst_ratio, std::abs(row.ratio_formula / c - row.oracle_s) / row.oracle_s);
      worst_cos = std::max(worst_cos, std::abs(c * row.cos_formula - row.oracle_cos_alpha));
    }
    if (worst_ratio < best_ratio) {
      best_ratio = worst_ratio;
      rep.ratio_best_constant = c;
    }
    if (worst_cos < best_cos) {
      best_cos = worst_cos;
      rep.cos_best_constant = c;
    }
  }
  rep.ratio_max_rel_error = best_ratio;
  rep.cos_best_max_error = best_cos;
  if (best_ratio <= tolerance) rep.ratio_constant = rep.ratio_best_constant;
  if (best_cos <= tolerance) rep.cos_constant = rep.cos_best_constant;
  for (const auto& row : rep.rows)
    rep.cos_signed_max_error =
        std::max(rep.cos_signed_max_error, std::abs(row.cos_signed - row.oracle_cos_alpha));
  return rep;
}

double relabeled_distance(const Polygon& a, const Polygon& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  double best = std::numeric_limits<double>::infinity();
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t k = 0; k < n; ++k) {
      double worst = 0.0;
      for (std::size_t i = 0; i < n && worst < best; ++i) {
        const std::size_t j = dir == 0 ? (i + k) % n : (k + n - i) % n;
        worst = std::max(worst, distance(a[i], b[j]));
      }
      best = std::min(best, worst);
    }
  }
  return best;
}

std::optional<int> detect_period(const Polygon& p, Point m, int max_period, double tol,
                                 const MapConfig& cfg) {
  if (max_period < 1) return std::nullopt;
  const auto orbit = iterate(p, m, static_cast<std::size_t>(max_period), cfg);
  const double diam = p.diameter();
  for (std::size_t k = 1; k < orbit.iterates.size(); ++k)
    if (relabeled_distance(p, orbit.iterates[k]) < tol * diam) return static_cast<int>(k);
  return std::nullopt;
}

ShapeDescriptor shape_descriptor(const Polygon& p) {
  auto variants = all_variants(p);
  auto key_less = [](const DescriptorVariant& a, const DescriptorVariant& b) {
    for (std::size_t i = 0; i < a.sides.size(); ++i) {
      if (a.sides[i] != b.sides[i]) return a.sides[i] < b.sides[i];
      if (a.turns[i] != b.turns[i]) return a.turns[i] < b.turns[i];
    }
    return false;
  };
  const auto it = std::min_element(variants.begin(), variants.end(), key_less);
  return {it->sides, it->turns};
}

double descriptor_distance(const Polygon& a, const Polygon& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const auto sa = raw_sides(a.vertices());
  const auto ta = raw_turns(a.vertices());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& v : all_variants(b)) {
    double worst = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
      worst = std::max(worst, std::abs(sa[i] - v.sides[i]));
      worst = std::max(worst, angle_distance(ta[i], v.turns[i]));
    }
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace circmap
