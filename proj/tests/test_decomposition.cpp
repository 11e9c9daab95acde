#include <doctest.h>

#include <cmath>
#include <set>

#include "hcf/decomposition.hpp"
#include "hcf/errors.hpp"
#include "hcf/fixtures.hpp"

using namespace hcf;

namespace {

Point pt(std::initializer_list<Rational> xs) { return Point(xs); }

Ball unit_cell_ball(std::int64_t x, std::int64_t y) {
  return to_ball(GridBall{{x, y}, 1}, Rational(1));
}

}  // namespace

TEST_CASE("constants") {
  Constants c = Constants::of(2);
  CHECK(c.I1 == doctest::Approx(40000));
  CHECK(c.A == doctest::Approx(std::sqrt(200.0 * 4 * 40000)));
  CHECK(c.I2 == doctest::Approx(20 * 144 * c.A));
  CHECK(c.decay == doctest::Approx(1 - 1.0 / 288));
  for (double m : {1.5, 2.0, 2.5, 3.0, 4.0}) CHECK(Constants::of(m).a_bound_holds());
  // the stated I2 < (1500m)^m fails for small m: I2(2) ~ 1.63e7 > 9e6
  CHECK_FALSE(Constants::of(2).i2_bound_holds());
  CHECK(Constants::of(1.5).i2_bound_holds());
  CHECK(Constants::of(30).i2_bound_holds());
  CHECK_THROWS_AS(Constants::of(1), InputError);
}

TEST_CASE("density profile of a single ball") {
  Space y = full_box({2, 2}, Rational(1));
  Ball q{pt({1, 1}), Rational(1), {}};
  TildeContent tc(y, {q});
  DensityProfile dp = density_profile(pt({1, 1}), y, tc, 2);
  REQUIRE(dp.breakpoints.size() == 1);
  CHECK(dp.breakpoints[0] == 0);
  CHECK(*dp.content[0].exact == 1);
  CHECK(std::isinf(dp.lambda[0]));
  CriticalRadius c = critical_radius(dp, 3);
  CHECK(c.r == 3);
  CHECK(c.lambda == doctest::Approx(1.0 / 9));
  CHECK(c.lambda >= c.threshold);
}

TEST_CASE("density profile at a Q center sees its own ball") {
  Space y = Space::voxel(2, Rational(1), {{0, 0}});
  Ball q = unit_cell_ball(0, 0);
  TildeContent tc(y, {q});
  DensityProfile dp = density_profile(q.center, y, tc, 2);
  CHECK(dp.content[0].approx == doctest::Approx(0.25));
  // lambda at the ball's own radius is 1
  CHECK(dp.content[0].approx / std::pow(to_double(q.radius), 2) == doctest::Approx(1));
  CriticalRadius c = critical_radius(dp, 1);
  CHECK(c.r >= q.radius);
}

TEST_CASE("two-ball breakpoint table") {
  Space y = Space::voxel(2, Rational(1), {{0, 0}, {3, 0}});
  TildeContent tc(y, {unit_cell_ball(0, 0), unit_cell_ball(3, 0)});
  DensityProfile dp = density_profile(pt({Rational(1) / 2, Rational(1) / 2}), y, tc, 2);
  REQUIRE(dp.breakpoints.size() == 2);
  CHECK(dp.breakpoints[1] == Rational(5) / 2);
  CHECK(dp.counts == std::vector<std::size_t>{1, 2});
  CHECK(*dp.content[0].exact == Rational(1) / 4);
  CHECK(*dp.content[1].exact == Rational(1) / 2);
  CHECK(dp.lambda[1] == doctest::Approx(2.0 / 25));
  // A = 4: segment 1 gives 4 sqrt(1/2) ~ 2.83 >= 5/2
  CriticalRadius c = critical_radius(dp, 4);
  CHECK(c.segment == 1);
  CHECK(to_double(c.r) == doctest::Approx(4 * std::sqrt(0.5)));
  // A = 3: 3 sqrt(1/2) < 5/2, so the sup sits in segment 0 at 3/2
  c = critical_radius(dp, 3);
  CHECK(c.segment == 0);
  CHECK(c.r == Rational(3) / 2);
  CHECK(c.lambda_after < c.threshold);
}

TEST_CASE("critical radius below threshold everywhere") {
  Space y = Space::voxel(2, Rational(1), {{0, 0}});
  TildeContent tc(y, {unit_cell_ball(0, 0)});
  CHECK_THROWS_AS(critical_radius(pt({100, 100}), y, tc, 2, 2), InputError);
}

TEST_CASE("lazy and full critical radius agree") {
  Space y = random_blob(2, 10, 40, 5, frac(1, 8));
  ContentResult hc = exact_content(y, y.all(), 2);
  TildeContent tc(y, hc.witness.balls);
  for (const auto& b : hc.witness.balls) {
    DensityProfile dp = density_profile(b.center, y, tc, 2);
    for (double A : {2.0, 8.0, 100.0}) {
      CriticalRadius a = critical_radius(dp, A);
      CriticalRadius l = critical_radius(b.center, y, tc, 2, A);
      CHECK(a.r == l.r);
      CHECK(a.lambda >= a.threshold);
      CHECK(a.lambda_after < a.threshold);
      CHECK(a.r > b.radius);  // A > 1
    }
  }
}

TEST_CASE("annulus radius") {
  SUBCASE("empty annulus") {
    Space y = Space::voxel(2, Rational(1), {{0, 0}});
    TildeContent tc(y, {unit_cell_ball(0, 0)});
    AnnulusChoice a = annulus_radius(pt({Rational(1) / 2, Rational(1) / 2}), Rational(1), y, tc, 2);
    CHECK(a.empty);
    CHECK(a.r_bar == Rational(3) / 2);
    CHECK(a.slice_cost.approx == 0);
    CHECK(a.coarea_ok);
  }
  SUBCASE("radial line") {
    Space y = full_box({20, 1}, Rational(1));
    // unit-cell Q so every ball spans one cell
    std::vector<Ball> cells;
    for (std::int64_t x = 0; x < 20; ++x) cells.push_back(unit_cell_ball(x, 0));
    TildeContent tcell(y, cells);
    AnnulusChoice a = annulus_radius(pt({0, Rational(1) / 2}), Rational(4), y, tcell, 2);
    CHECK_FALSE(a.empty);
    CHECK(a.r_bar >= 6);
    CHECK(a.r_bar <= 9);
    CHECK(a.slice.size() == 1);
    CHECK(a.slice_cost.approx == doctest::Approx(0.5));
    CHECK(a.coarea_ok);
  }
  SUBCASE("full annulus") {
    Space y = full_box({16, 16}, frac(1, 16));
    std::vector<Ball> cells;
    for (std::int64_t x = 0; x < 16; ++x)
      for (std::int64_t z = 0; z < 16; ++z) cells.push_back(to_ball(GridBall{{x, z}, 1}, frac(1, 16)));
    TildeContent tc(y, cells);
    AnnulusChoice a = annulus_radius(pt({frac(1, 2), frac(1, 2)}), frac(1, 8), y, tc, 2);
    CHECK(a.r_bar >= frac(3, 16));
    CHECK(a.r_bar <= frac(9, 32));
    CHECK(a.slice_cost.approx <= a.coarea_bound);
    CHECK(a.slice_content.approx <= a.slice_cost.approx + 1e-12);
    CHECK(a.coarea_ok);
  }
}

TEST_CASE("vitali selection") {
  SUBCASE("disjoint candidates all survive") {
    std::vector<VitaliCandidate> c{{pt({0, 0}), 1}, {pt({5, 0}), 1}, {pt({0, 5}), 2}};
    auto s = vitali_select(c);
    CHECK(s == std::vector<std::size_t>{2, 0, 1});
  }
  SUBCASE("nested balls keep the largest") {
    std::vector<VitaliCandidate> c{{pt({0, 0}), 1}, {pt({0, 0}), 3}, {pt({1, 0}), 2}};
    CHECK(vitali_select(c) == std::vector<std::size_t>{1});
  }
  SUBCASE("random candidates: disjoint and the tripled balls cover") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<VitaliCandidate> c;
      for (int k = 0; k < 20; ++k)
        c.push_back({pt({Rational(rng.uniform(0, 40)) / 2, Rational(rng.uniform(0, 40)) / 2}),
                     Rational(rng.uniform(1, 8)) / 2});
      std::set<IntPoint> cells;
      for (std::int64_t x = -5; x < 25; ++x)
        for (std::int64_t z = -5; z < 25; ++z)
          for (const auto& b : c)
            if (contains_cell(Ball{b.center, b.radius, {}}, {x, z}, Rational(1))) cells.insert({x, z});
      auto sel = vitali_select(c);
      for (std::size_t a = 0; a < sel.size(); ++a)
        for (std::size_t b = a + 1; b < sel.size(); ++b)
          CHECK(balls_disjoint(c[sel[a]].center, c[sel[a]].radius, c[sel[b]].center, c[sel[b]].radius));
      for (const auto& cell : cells) {
        bool ok = false;
        for (auto j : sel) ok = ok || contains_cell(Ball{c[j].center, 3 * c[j].radius, {}}, cell, Rational(1));
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("decompose a single cell") {
  Space y = Space::voxel(2, frac(1, 8), {{3, 4}});
  Decomposition d = decompose(y, 2);
  CHECK(d.balls.size() == 1);
  CHECK(d.alpha == doctest::Approx(1));
  CHECK(d.all_hold);
  CHECK(d.remainder.empty());
  IndependentCheck ic = verify_decomposition(y, d);
  CHECK(ic.all_hold);
  CHECK(ic.complete);
}

TEST_CASE("decompose a 16x16 square") {
  Space y = unit_cube(2, 16);
  SUBCASE("default constant: one ball holds everything") {
    Decomposition d = decompose(y, 2);
    CHECK(d.balls.size() == 1);
    CHECK(d.alpha == doctest::Approx(1));
    CHECK(d.q_optimal);
    CHECK(d.all_hold);
    CHECK(verify_decomposition(y, d).all_hold);
  }
  SUBCASE("A = 4m") {
    DecomposeOptions opt;
    opt.A = 8;
    Decomposition d = decompose(y, 2, opt);
    CHECK(d.alpha > 1.0 / 12);
    CHECK(d.alpha <= 1 + 1e-9);
    CHECK(d.additivity);
    CHECK(d.all_hold);
    IndependentCheck ic = verify_decomposition(y, d);
    CHECK(ic.consistent);
    CHECK(ic.all_hold);
  }
}

TEST_CASE("decompose two distant squares") {
  Space a = full_box({4, 4}, frac(1, 8));
  std::vector<IntPoint> cells = a.cells();
  Space b = translate(a, {40, 0});
  for (const auto& c : b.cells()) cells.push_back(c);
  Space y = Space::voxel(2, frac(1, 8), cells);
  DecomposeOptions opt;
  opt.A = 8;
  Decomposition d = decompose(y, 2, opt);
  CHECK(d.additivity);
  CHECK(d.all_hold);
  // every selected ball holds cells of one component only
  for (const auto& b : d.balls) {
    std::set<bool> side;
    for (auto i : b.inside) side.insert(y.cell(i)[0] >= 40);
    CHECK(side.size() <= 1);
  }
  CHECK(verify_decomposition(y, d).all_hold);
}

TEST_CASE("decompose random sets for several m") {
  for (double m : {2.0, 2.5, 3.0})
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      CAPTURE(m);
      CAPTURE(seed);
      Space y = random_blob(2, 12, 30, seed, frac(1, 16));
      for (bool default_a : {true, false}) {
        DecomposeOptions opt;
        if (!default_a) opt.A = 4 * m;
        Decomposition d = decompose(y, m, opt);
        CHECK(d.all_hold);
        CHECK(verify_decomposition(y, d).all_hold);
      }
    }
}

TEST_CASE("decomposition violation carries the report") {
  Space y = unit_cube(2, 8);
  DecomposeOptions opt;
  opt.A = 1.01;  // far below what the estimates need
  opt.strict = false;
  Decomposition d = decompose(y, 2, opt);
  if (!d.all_hold) {
    opt.strict = true;
    try {
      decompose(y, 2, opt);
      FAIL("expected a violation");
    } catch (const DecompositionViolation& e) {
      CHECK(e.payload().contains("inequalities"));
    }
  }
  CHECK_THROWS_AS(decompose(y, 1), InputError);
}
