// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Pass --extended to add the n = 9..11 census rows. --expect-fail ID (repeatable)
// makes the exit status 0 only when exactly the listed criteria fail.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <random>
#include <string>

#include "circmap/census.hpp"
#include "circmap/dynamics.hpp"
#include "circmap/loci.hpp"
#include "oracles.hpp"

using namespace circmap;

namespace {

const double s3 = std::sqrt(3.0);
const double pi = std::numbers::pi;
int failed = 0;
std::vector<int> failed_ids;
std::string heading;
std::vector<std::string> pending;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void verdict(int id, bool ok, const std::string& title) {
  heading = std::string("[") + (ok ? "PASS" : "FAIL") + "] " + std::to_string(id) + ". " + title;
  if (!ok) {
    ++failed;
    failed_ids.push_back(id);
  }
}

void detail(const char* line) { pending.push_back(line); }

template <typename A0, typename... A>
void detail(const char* f, A0 a0, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a0, a...);
  pending.push_back(buf);
}

// Verdict line first, then its details.
void emit() {
  std::printf("%s\n", heading.c_str());
  for (const auto& line : pending) std::printf("       %s\n", line.c_str());
  pending.clear();
  std::fflush(stdout);
}

struct Instance {
  std::vector<Point> p;
  Point m;
};

// Random (polygon, M) pairs, n = 3..8, M at least 0.05 from sidelines and vertices.
std::vector<Instance> corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> nd(3, 8);
  std::vector<Instance> out;
  while (out.size() < count) {
    Instance in{oracle::random_polygon(rng, nd(rng)), {u(rng), u(rng)}};
    if (oracle::clearance(in.p, in.m) < 0.05) continue;
    out.push_back(std::move(in));
  }
  return out;
}

void criterion1(const std::vector<Instance>& c) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (const auto& in : c) {
    const Polygon img = circumcenter_map(Polygon(in.p), in.m);
    const auto want = oracle::map_once(in.p, in.m);
    for (std::size_t i = 0; i < want.size(); ++i)
      worst = std::max(worst, distance(img[i], want[i]) / std::max(length(want[i]), 1.0));
  }
  const double t = seconds_since(t0);
  verdict(1, worst < 1e-12 && t < 1.0, "forward map matches three-point circumcenters");
  detail("%zu pairs, n = 3..8: max relative error %.3e (tol 1e-12), %.3f s (limit 1 s)", c.size(), worst, t);
}

void criterion2(const std::vector<Instance>& c) {
  double round = 0, refl = 0;
  for (const auto& in : c) {
    const Polygon p(in.p);
    const Polygon img = circumcenter_map(p, in.m);
    const Polygon back = inverse_circumcenter_map(img, in.m);
    const Polygon r = reflection_polygon(img, in.m);
    const double scale = p.diameter();
    for (std::size_t i = 0; i < p.size(); ++i) {
      round = std::max(round, distance(back[i], p[i]) / scale);
      const Point want = oracle::reflect(in.m, img[i], img.at_cyclic(static_cast<std::ptrdiff_t>(i) + 1));
      refl = std::max(refl, distance(r[i], want) / std::max(length(want), 1.0));
    }
  }
  verdict(2, round < 1e-10 && refl < 1e-12, "inverse map round trip and sideline reflections");
  detail("round trip max relative error %.3e (tol 1e-10)", round);
  detail("inverse-map vertices vs reflection oracle: max relative error %.3e (tol 1e-12)", refl);
}

void criterion3() {
  const auto c = corpus(500, 303);
  double residual = 0, ds = 0, da = 0;
  int skipped = 0;
  for (const auto& in : c) {
    try {
      const auto [a, b] = repeat_similarity_check(Polygon(in.p), in.m);
      residual = std::max({residual, a.residual, b.residual});
      ds = std::max(ds, std::abs(a.s - b.s) / std::max(1.0, a.s));
      da = std::max(da, angle_distance(a.alpha, b.alpha));
    } catch (const GeometryError&) {
      ++skipped;
    }
  }
  verdict(3, residual < 1e-8 && ds < 1e-8 && da < 1e-8 && skipped == 0,
          "n-step map is a similarity about M, identical on consecutive blocks");
  detail("500 instances (%d raised): max residual %.3e, max |s(0->n) - s(n->2n)| %.3e (relative above 1), "
         "max |alpha diff| %.3e",
         skipped, residual, ds, da);
}

void criterion4() {
  const Polygon t = regular_ngon(3);
  bool ok = true;
  double ws = 0, wa = 0;
  for (const auto& k : equilateral_fixed_points()) {
    const auto sp = extract_similarity(t, k.p);
    const auto period = detect_period(t, k.p, 6, 1e-9);
    ws = std::max(ws, std::abs(sp.s - 1));
    wa = std::max(wa, angle_distance(sp.alpha, 0));
    ok = ok && period == 3;
  }
  ok = ok && ws < 1e-9 && wa < 1e-9;
  const auto cp = detect_period(t, {0, 0}, 6, 1e-9);
  ok = ok && cp == 2;

  struct Listed {
    Point m;
    std::vector<Point> r1, r2;
  };
  const Listed listed[] = {
      {{1 + s3, 0},
       {{1, 0}, {1 + s3 / 2, 1.5 + s3}, {1 + s3 / 2, -1.5 - s3}},
       {{-2 - s3, 0}, {1 + s3 / 2, 1.5}, {1 + s3 / 2, -1.5}}},
      {{1 - s3, 0},
       {{1, 0}, {1 - s3 / 2, -1.5 + s3}, {1 - s3 / 2, 1.5 - s3}},
       {{s3 - 2, 0}, {1 - s3 / 2, 1.5}, {1 - s3 / 2, -1.5}}},
  };
  double coord = 0, angle1 = 0, angle2 = 0;
  std::vector<std::string> angle_lines;
  auto fmt = [](const std::vector<double>& a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "(%.6f, %.6f, %.6f)", a[0], a[1], a[2]);
    return std::string(buf);
  };
  for (const auto& l : listed) {
    const OrbitRecord o = iterate(t, l.m, 2);
    const auto r1 = oracle::vertices(o.iterates[1]), r2 = oracle::vertices(o.iterates[2]);
    coord = std::max({coord, oracle::set_distance(l.r1, r1), oracle::set_distance(l.r2, r2)});
    // internal_angles returns them sorted ascending.
    const auto a1 = oracle::internal_angles(r1), a2 = oracle::internal_angles(r2);
    const double w1[] = {30, 75, 75}, w2[] = {15, 15, 150};
    for (int i = 0; i < 3; ++i) {
      angle1 = std::max(angle1, std::abs(a1[i] - w1[i]));
      angle2 = std::max(angle2, std::abs(a2[i] - w2[i]));
    }
    angle_lines.push_back((l.m.x > 0 ? std::string("K1") : std::string("K2")) + ": orbit R1 " + fmt(a1) + ", R2 " +
                          fmt(a2) + "; listed coordinates alone give R1 " + fmt(oracle::internal_angles(l.r1)) +
                          ", R2 " + fmt(oracle::internal_angles(l.r2)));
  }
  ok = ok && coord < 1e-12 && angle1 < 1e-9 && angle2 < 1e-9;
  verdict(4, ok, "equilateral fixed points, periods and canonical orbit triangles");
  detail("six K-points: max |s-1| %.3e, max |alpha| %.3e, all period 3; centroid set period %d", ws, wa, cp.value_or(0));
  detail("listed R1/R2 coordinates at K1, K2 (as vertex sets): max error %.3e (tol 1e-12)", coord);
  detail("claimed angles R1 (30,75,75), R2 (150,15,15) at both points: max error %.3e deg (R1), %.3e deg (R2)", angle1,
         angle2);
  for (const auto& line : angle_lines) detail(line.c_str());
  if (angle1 >= 1e-9)
    detail("at K1 the claimed angle triples are swapped relative to the listed coordinates; not attainable");
}

void criterion5() {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> ang(0, 2 * pi);
  const auto tri = oracle::vertices(regular_ngon(3));
  const auto sq = oracle::vertices(regular_ngon(4));
  int counts[2] = {0, 0};
  double worst[2] = {0, 0};
  for (int fam = 0; fam < 2; ++fam) {
    const auto& poly = fam == 0 ? tri : sq;
    auto f = [&](Point m) { return fam == 0 ? eval_equilateral_sextic(m) : eval_square_octic(m); };
    while (counts[fam] < 100) {
      // Rays from a random origin near the polygon so every branch is crossed.
      const Point origin{0.3 * std::cos(ang(rng)), 0.3 * std::sin(ang(rng))};
      for (Point m : oracle::ray_roots(f, origin, ang(rng), 0.0, 6.0, 0.005)) {
        if (counts[fam] == 100 || oracle::clearance(poly, m) < 1e-3) continue;
        worst[fam] = std::max(worst[fam], std::abs(oracle::n_step(poly, m).s - 1));
        ++counts[fam];
      }
    }
  }
  const auto sext = poly_multiply({0, 0, 3}, poly_multiply({1, -2, 1}, {-2, -2, 1}));
  const bool sext_ok = sext == sextic_on_x_axis();
  const auto oct = poly_multiply(poly_multiply({1, 0, -2, 0, 1}, {-5, 0, 3}), {-3, 0, 5});
  const bool oct_ok = oct == octic_on_x_axis();
  double subst = 0;
  std::mt19937_64 r2(6);
  std::uniform_real_distribution<double> ux(-3, 3);
  for (int k = 0; k < 100; ++k) {
    const double x = ux(r2);
    subst = std::max(subst, std::abs(eval_equilateral_sextic({x, 0}) - poly_eval(sext, x)) / std::max(1.0, std::abs(poly_eval(sext, x))));
    subst = std::max(subst, std::abs(eval_square_octic({x, 0}) - poly_eval(oct, x)) / std::max(1.0, std::abs(poly_eval(oct, x))));
  }
  double roots = 0;
  for (double x2 : {0.6, 1.0, 5.0 / 3.0}) roots = std::max(roots, std::abs(eval_square_octic({std::sqrt(x2), 0})));
  for (double x : {0.0, 1.0, 1 + s3, 1 - s3}) roots = std::max(roots, std::abs(eval_equilateral_sextic({x, 0})));
  const bool ok = worst[0] < 1e-6 && worst[1] < 1e-6 && sext_ok && oct_ok && subst < 1e-12 && roots < 1e-12;
  verdict(5, ok, "s = 1 polynomial loci agree with the orbit");
  detail("%d sextic roots: max |s-1| %.3e; %d octic roots: max |s-1| %.3e (tol 1e-6)", counts[0], worst[0], counts[1],
         worst[1]);
  detail("x-axis factorizations by expansion: sextic %s, octic %s; substitution error %.3e; root values %.3e",
         sext_ok ? "exact" : "MISMATCH", oct_ok ? "exact" : "MISMATCH", subst, roots);
}

void criterion6() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> r(-4, 4);
  std::uniform_int_distribution<int> pick(0, 3);
  bool ok = true;
  for (int n : {3, 4}) {
    const auto poly = oracle::vertices(regular_ngon(n));
    const auto dirs = alpha_zero_lines(n);
    double worst = 0;
    int zero = 0, half_turn = 0, used = 0;
    while (used < 100) {
      // Sample on the polynomial zero set: pick a branch (a line through the centroid).
      const double d = dirs[static_cast<std::size_t>(pick(rng)) % dirs.size()];
      const double t = r(rng);
      const Point m{t * std::cos(d), t * std::sin(d)};
      const double pv = n == 3 ? eval_equilateral_alpha_cubic(m) : eval_square_alpha_quartic(m);
      if (std::abs(pv) > 1e-12 || oracle::clearance(poly, m) < 0.05 || std::abs(std::abs(t) - 1) < 0.05) continue;
      const double a = extract_similarity(regular_ngon(n), m).alpha;
      const double to0 = angle_distance(a, 0), toPi = angle_distance(a, pi);
      (to0 < toPi ? zero : half_turn)++;
      worst = std::max(worst, std::min(to0, toPi));
      ++used;
    }
    ok = ok && worst < 1e-6;
    detail("n=%d polynomial zero set: 100 points, max distance of alpha to {0, pi} %.3e; alpha=0 at %d, alpha=pi at %d",
           n, worst, zero, half_turn);
  }
  verdict(6, ok, "alpha = 0 polynomial zero sets (n = 3, 4); n = 5, 6 lines logged below");
  for (int n : {5, 6}) {
    double worst = 0;
    int samples = 0;
    for (const auto& l : verify_alpha_zero_lines(n, 40, 700 + n)) {
      worst = std::max(worst, l.max_abs_alpha);
      samples += l.samples;
    }
    detail("n=%d lines k*pi/n: %d samples, max distance of alpha to {0, pi} %.3e (%s 1e-4; logged, not asserted)", n,
           samples, worst, worst < 1e-4 ? "within" : "exceeds");
  }
}

void criterion7(bool extended) {
  const CensusOptions opts;  // 512 base cells, depth 4
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::vector<std::string> rows;
  auto run = [&](int n, bool asserted) {
    const auto t1 = std::chrono::steady_clock::now();
    const auto r = census(n, opts);
    const auto e = *table1_expected(n);
    const bool match = r.contracting_interior == e.interior && r.contracting_noncompact == e.noncompact &&
                       r.contracting_compact == e.compact && r.total_contracting == e.total && r.expanding_count == 1;
    const bool conj = !r.stable || conjectured_counts(n) == r.total_contracting;
    if (asserted) ok = ok && match && r.stable && conj;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "n=%2d interior %d noncompact %2d compact %2d total %2d expanding %d stable %s | expected %d %2d %2d %2d | "
                  "conjectured %2d | %s (%.1f s)",
                  n, r.contracting_interior, r.contracting_noncompact, r.contracting_compact, r.total_contracting,
                  r.expanding_count, r.stable ? "yes" : "no", e.interior, e.noncompact, e.compact, e.total,
                  conjectured_counts(n), match ? "match" : "MISMATCH", seconds_since(t1));
    rows.push_back(buf);
  };
  for (int n = 3; n <= 8; ++n) run(n, true);
  const double t = seconds_since(t0);
  ok = ok && t <= 600;
  if (extended)
    for (int n = 9; n <= 11; ++n) run(n, true);
  verdict(7, ok, extended ? "region census matches the reported table, n = 3..11" : "region census matches the reported table, n = 3..8");
  for (const auto& row : rows) detail("%s", row.c_str());
  detail("resolution %d, refine depth %d; n = 3..8 took %.1f s (limit 600 s)%s", opts.resolution, opts.refine_depth, t,
         extended ? "" : "; run with --extended for n = 9..11");
}

void criterion8() {
  const auto c = calibrate_closed_forms(100, 808);
  verdict(8, c.ratio_constant.has_value() && c.ratio_max_rel_error < 1e-9,
          "triangle closed forms after convention calibration");
  if (c.ratio_constant)
    detail("side-ratio formula = %g * s on 100 scalene instances, max relative error %.3e", *c.ratio_constant,
           c.ratio_max_rel_error);
  else
    detail("side-ratio formula: no constant fits (best %g, max relative error %.3e)", c.ratio_best_constant,
           c.ratio_max_rel_error);
  if (c.cos_constant)
    detail("cos-alpha formula: constant %g fits, max error %.3e", *c.cos_constant, c.cos_best_max_error);
  else
    detail("cos-alpha formula: no constant in {1, 2, 4, 8} fits; best %g leaves max error %.3e (evidence below)",
           c.cos_best_constant, c.cos_best_max_error);
  detail("cos-alpha with cyclic signed sub-areas times -2 sign(product): max error %.3e", c.cos_signed_max_error);
  detail("%-4s %-12s %-12s %-12s %-12s", "row", "oracle s", "formula/8", "cos alpha", "cos formula");
  for (std::size_t i = 0; i < c.rows.size() && i < 8; ++i) {
    const auto& r = c.rows[i];
    detail("%-4zu %-12.9f %-12.9f %-12.9f %-12.9f", i, r.oracle_s, r.ratio_formula / 8.0, r.oracle_cos_alpha,
           r.cos_formula);
  }
}

void criterion9() {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(-2, 2);
  bool ok = true;
  for (int n : {4, 5, 6}) {
    const Polygon p = regular_ngon(n);
    const auto pv = oracle::vertices(p);
    double same = 0, diff = 1e300;
    int used = 0;
    while (used < 20) {
      const Point m{u(rng), u(rng)};
      if (oracle::clearance(pv, m) < 0.1) continue;
      const OrbitRecord o = iterate(p, m, static_cast<std::size_t>(2 * n));
      if (o.failure) continue;
      for (int i = 0; i <= 2 * n; ++i)
        for (int j = i + 1; j <= 2 * n; ++j) {
          const double d = descriptor_distance(o.iterates[i], o.iterates[j]);
          if ((j - i) % n == 0)
            same = std::max(same, d);
          else
            diff = std::min(diff, d);
        }
      ++used;
    }
    ok = ok && same < 1e-6 && diff > 0.01;
    detail("n=%d, 20 random M: max distance for i = j mod n %.3e (tol 1e-6), min otherwise %.3e (needs > 0.01)", n,
           same, diff);
  }
  verdict(9, ok, "intermediate iterates are similar only when i = j mod n");
}

void criterion10() {
  const CensusOptions opts;
  const auto s = stretch_sweep(1.0, 3.0, 11, opts);
  const auto tr = s.transitions();
  const bool ok = s.samples.front().report.total_contracting == 6 && !tr.empty();
  verdict(10, ok, "stretched equilateral changes region topology");
  std::string counts;
  for (const auto& x : s.samples) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%.1f:%d%s", counts.empty() ? "" : " ", x.t, x.report.total_contracting,
                  x.report.stable ? "" : "?");
    counts += buf;
  }
  detail("t:count %s", counts.c_str());
  for (const auto& [a, b] : tr) detail("count changes between t = %.1f and t = %.1f", a, b);
}

}  // namespace

int main(int argc, char** argv) {
  bool extended = false;
  std::vector<int> expected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--extended") == 0)
      extended = true;
    else if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc)
      expected.push_back(std::atoi(argv[++i]));
  }
  const auto c = corpus(1000, 101);
  criterion1(c);
  emit();
  criterion2(c);
  emit();
  criterion3();
  emit();
  criterion4();
  emit();
  criterion5();
  emit();
  criterion6();
  emit();
  criterion7(extended);
  emit();
  criterion8();
  emit();
  criterion9();
  emit();
  criterion10();
  emit();
  std::printf("%d of 10 criteria failed\n", failed);
  std::sort(expected.begin(), expected.end());
  if (!expected.empty()) {
    const bool as_expected = expected == failed_ids;
    std::printf("expected failures:");
    for (int id : expected) std::printf(" %d", id);
    std::printf(" (%s)\n", as_expected ? "matched" : "NOT matched");
    return as_expected ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
