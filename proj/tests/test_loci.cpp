#include "doctest.h"

#include <numbers>
#include <random>

#include "circmap/dynamics.hpp"
#include "circmap/loci.hpp"
#include "oracles.hpp"

using namespace circmap;

namespace {
const double s3 = std::sqrt(3.0);
const double pi = std::numbers::pi;
}  // namespace

TEST_CASE("polynomial values") {
  CHECK(eval_equilateral_sextic({0, 0}) == 0.0);
  CHECK(std::abs(eval_equilateral_sextic({1 + s3, 0})) < 1e-11);
  CHECK(eval_equilateral_sextic({2, 0}) == -24.0);
  CHECK(eval_equilateral_alpha_cubic({5, 0}) == 0.0);
  CHECK(std::abs(eval_equilateral_alpha_cubic({1, s3})) < 1e-12);
  CHECK(eval_equilateral_alpha_cubic({0, 1}) == 1.0);
  CHECK(eval_square_octic({0, 0}) == 15.0);
  CHECK(eval_square_octic({1, 0}) == 0.0);
  CHECK(std::abs(eval_square_octic({std::sqrt(5.0 / 3.0), 0})) < 1e-12);
  CHECK(eval_square_alpha_quartic({3, 0}) == 0.0);
  CHECK(eval_square_alpha_quartic({2, 2}) == 0.0);
  CHECK(eval_square_alpha_quartic({1, 2}) == -6.0);
}

TEST_CASE("family names round trip") {
  for (auto f : {CurveFamily::EquilateralSextic, CurveFamily::EquilateralAlphaCubic, CurveFamily::SquareOctic,
                 CurveFamily::SquareAlphaQuartic})
    CHECK(family_from_name(family_name(f)) == f);
  CHECK_FALSE(family_from_name("circle"));
  CHECK(ImplicitCurve{CurveFamily::SquareOctic}.evaluate({0, 0}) == 15.0);
  CHECK(ImplicitCurve{CurveFamily::SquareOctic}.polygon().size() == 4);
}

TEST_CASE("x-axis factorizations") {
  // 3 x^2 (x - 1)^2 (x^2 - 2x - 2)
  auto f = poly_multiply({0, 0, 3}, poly_multiply({1, -2, 1}, {-2, -2, 1}));
  CHECK(f == sextic_on_x_axis());
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 50; ++k) {
    const double x = u(rng);
    CHECK(eval_equilateral_sextic({x, 0}) == doctest::Approx(poly_eval(f, x)).epsilon(1e-12).scale(1));
    CHECK(eval_square_octic({x, 0}) == doctest::Approx(poly_eval(octic_on_x_axis(), x)).epsilon(1e-12).scale(1));
  }
  // 15x^8 - 64x^6 + 98x^4 - 64x^2 + 15 = (x^2 - 1)^2 (3x^2 - 5)(5x^2 - 3)
  CHECK(poly_multiply(poly_multiply({1, 0, -2, 0, 1}, {-5, 0, 3}), {-3, 0, 5}) == octic_on_x_axis());
  for (double x2 : {3.0 / 5.0, 1.0, 5.0 / 3.0}) CHECK(std::abs(poly_eval(octic_on_x_axis(), std::sqrt(x2))) < 1e-12);
  CHECK(std::abs(poly_eval(sextic_on_x_axis(), 1 + s3)) < 1e-12);
  CHECK(std::abs(poly_eval(sextic_on_x_axis(), 1 - s3)) < 1e-12);
}

TEST_CASE("equilateral fixed points") {
  const auto pts = equilateral_fixed_points();
  REQUIRE(pts.size() == 6);
  auto has = [&](Point q) {
    for (const auto& t : pts)
      if (distance(t.p, q) < 1e-12) return true;
    return false;
  };
  CHECK(has({1 + s3, 0}));
  CHECK(has({1 - s3, 0}));
  CHECK(has({(1 + s3) * -0.5, (1 + s3) * s3 / 2}));
  const Polygon t = regular_ngon(3);
  for (const auto& k : pts) {
    INFO(k.label);
    CHECK(k.role == PointRole::FixedPoint);
    CHECK(std::abs(eval_equilateral_sextic(k.p)) < 1e-11);
    CHECK(std::abs(eval_equilateral_alpha_cubic(k.p)) < 1e-12);
    const auto sp = extract_similarity(t, k.p);
    CHECK(std::abs(sp.s - 1) < 1e-9);
    CHECK(angle_distance(sp.alpha, 0) < 1e-9);
    CHECK(detect_period(t, k.p, 6, 1e-9) == 3);
  }
}

TEST_CASE("alpha zero lines") {
  const auto l3 = alpha_zero_lines(3);
  REQUIRE(l3.size() == 3);
  CHECK(l3[1] == doctest::Approx(pi / 3));
  for (double d : l3) CHECK(std::abs(eval_equilateral_alpha_cubic({std::cos(d), std::sin(d)})) < 1e-12);
  for (double d : alpha_zero_lines(4)) CHECK(std::abs(eval_square_alpha_quartic({std::cos(d), std::sin(d)})) < 1e-12);
  for (int n : {3, 4})
    for (const auto& r : verify_alpha_zero_lines(n, 20, 5)) {
      CHECK(r.samples == 20);
      CHECK(r.max_abs_alpha < 1e-6);
    }
}

TEST_CASE("s = 1 roots on random rays satisfy the orbit oracle") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ang(0, 2 * pi);
  const auto tri = oracle::vertices(regular_ngon(3));
  const auto sq = oracle::vertices(regular_ngon(4));
  int checked = 0;
  for (int k = 0; k < 20; ++k) {
    for (auto* fam : {&tri, &sq}) {
      const bool is_tri = fam == &tri;
      auto f = [&](Point m) { return is_tri ? eval_equilateral_sextic(m) : eval_square_octic(m); };
      for (Point m : oracle::ray_roots(f, {0, 0}, ang(rng), 0.05, 5.0, 0.01)) {
        if (oracle::clearance(*fam, m) < 1e-3) continue;
        CHECK(std::abs(oracle::n_step(*fam, m).s - 1) < 1e-6);
        ++checked;
      }
    }
  }
  CHECK(checked > 40);
}

TEST_CASE("traced s = 1 contours") {
  const Polygon t = regular_ngon(3);
  const auto lines = trace_s1_locus(t, {-3, -3, 3, 3}, 120);
  REQUIRE_FALSE(lines.empty());
  std::size_t pts = 0;
  for (const auto& pl : lines)
    for (Point m : pl) {
      ++pts;
      CHECK(std::abs(oracle::n_step(oracle::vertices(t), m).s - 1) < 1e-3);
      // Sextic residual relative to its gradient scale.
      const double h = 1e-6;
      const double gx = (eval_equilateral_sextic({m.x + h, m.y}) - eval_equilateral_sextic({m.x - h, m.y})) / (2 * h);
      const double gy = (eval_equilateral_sextic({m.x, m.y + h}) - eval_equilateral_sextic({m.x, m.y - h})) / (2 * h);
      CHECK(std::abs(eval_equilateral_sextic(m)) < 1e-3 * std::max(1.0, std::hypot(gx, gy)));
    }
  CHECK(pts > 100);

  // Square contour crosses the positive x-axis near sqrt(3/5) and sqrt(5/3).
  const auto sq = trace_s1_locus(regular_ngon(4), {-2.5, -2.5, 2.5, 2.5}, 100);
  bool near_a = false, near_b = false;
  for (const auto& pl : sq)
    for (std::size_t i = 0; i + 1 < pl.size(); ++i) {
      const Point a = pl[i], b = pl[i + 1];
      if ((a.y < 0) == (b.y < 0) || a.x <= 0) continue;
      const double x = a.x - a.y * (b.x - a.x) / (b.y - a.y);
      near_a = near_a || std::abs(x - std::sqrt(0.6)) < 1e-2;
      near_b = near_b || std::abs(x - std::sqrt(5.0 / 3.0)) < 1e-2;
    }
  CHECK(near_a);
  CHECK(near_b);
}

TEST_CASE("pentagon contour is dihedrally symmetric") {
  const Polygon p = regular_ngon(5);
  const auto lines = trace_s1_locus(p, {-3, -3, 3, 3}, 100);
  REQUIRE_FALSE(lines.empty());
  const auto v = oracle::vertices(p);
  for (const auto& pl : lines)
    for (std::size_t i = 0; i < pl.size(); i += 7) {
      const Point m = pl[i];
      const double r = length(m), a = std::atan2(m.y, m.x);
      // Image under rotation by 2 pi / 5 and under reflection in the x-axis is also on s = 1.
      const Point rot{r * std::cos(a + 2 * pi / 5), r * std::sin(a + 2 * pi / 5)};
      const Point ref{m.x, -m.y};
      CHECK(std::abs(oracle::n_step(v, rot).s - 1) < 2e-3);
      CHECK(std::abs(oracle::n_step(v, ref).s - 1) < 2e-3);
    }
}
