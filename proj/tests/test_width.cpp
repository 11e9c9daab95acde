#include <doctest.h>

#include <cmath>

#include "hcf/errors.hpp"
#include "hcf/fixtures.hpp"
#include "hcf/width.hpp"

using namespace hcf;

namespace {

Rational eighth() { return Rational(1) / 8; }

Ball box(std::vector<int> lo_cells, int side) {
  // cube holding cells lo .. lo + side - 1, delta = 1/8
  Ball b;
  for (int x : lo_cells) b.center.push_back((Rational(x) + Rational(side) / 2) / 8);
  b.radius = Rational(side) / 16;
  return b;
}

}  // namespace

TEST_CASE("nerve") {
  Space s = Space::voxel(2, eighth(), {{0, 0}, {1, 0}, {5, 0}, {6, 0}});
  SUBCASE("two disjoint balls") {
    Covering c;
    c.balls = {box({0, 0}, 2), box({5, 0}, 2)};
    NerveComplex n = nerve(c, s);
    CHECK(n.vertices == 2);
    CHECK(n.multiplicity == 1);
    CHECK(n.dimension == 0);
    CHECK(n.simplices.size() == 2);
    CHECK(n.fiber_bound == Rational(1) / 4);
  }
  SUBCASE("two overlapping balls") {
    Space t = Space::voxel(2, eighth(), {{0, 0}, {1, 0}, {2, 0}});
    Covering c;
    c.balls = {box({0, 0}, 2), box({1, 0}, 2)};
    NerveComplex n = nerve(c, t);
    CHECK(n.multiplicity == 2);
    CHECK(n.dimension == 1);
    REQUIRE(n.simplices.size() == 1);
    CHECK(n.simplices[0] == std::vector<std::size_t>{0, 1});
    CHECK(n.fiber_bound == Rational(3) / 8);
  }
  SUBCASE("balls touching on an occupied face share an edge") {
    Space t = Space::voxel(2, eighth(), {{0, 0}, {1, 0}});
    Covering c;
    c.balls = {box({0, 0}, 1), box({1, 0}, 1)};
    CHECK(nerve(c, t).dimension == 1);
  }
  SUBCASE("balls meeting only away from the space do not") {
    Space t = Space::voxel(2, eighth(), {{0, 0}, {3, 0}});
    Covering c;
    c.balls = {box({0, 0}, 2), box({2, 0}, 2)};
    // the shared face x = 2 delta only touches empty cells
    CHECK(nerve(c, t).dimension == 0);
  }
  SUBCASE("non-covering input") {
    Covering c;
    c.balls = {box({0, 0}, 2)};
    CHECK_THROWS_AS(nerve(c, s), InputError);
  }
  SUBCASE("greedy cover of a random set") {
    Space r = random_blob(2, 16, 60, 3, eighth());
    ContentResult g = greedy_content(r, r.all(), 1);
    NerveComplex n = nerve(g.witness, r);
    CHECK(n.dimension == static_cast<int>(n.multiplicity) - 1);
    CHECK(n.multiplicity >= 1);
    WidthResult w;
    w.m = static_cast<int>(n.multiplicity);
    w.covering = g.witness;
    w.nerve = n;
    w.bound = n.fiber_bound;
    WidthVerification v = verify_width(r, w);
    CHECK(v.covers);
    CHECK(v.multiplicity == n.multiplicity);
    CHECK(v.fiber_bound == n.fiber_bound);
    CHECK(v.all_ok);
  }
}

TEST_CASE("width_bound") {
  SUBCASE("space inside one ball") {
    Space s = full_box({4, 4}, eighth());
    WidthResult r = width_bound(s, 1, 100);
    CHECK(r.bound <= 2 * (Rational(1) / 4));
    CHECK(verify_width(s, r).all_ok);
  }
  SUBCASE("connected strip, m = 1: only the diameter") {
    Space s = strip(2, 64, eighth());
    WidthResult r = width_bound(s, 1, 300);
    CHECK(r.bound == 8);
    CHECK(r.trivial);
    CHECK(verify_width(s, r).all_ok);
  }
  SUBCASE("strip, m = 2: a chain of small squares") {
    Space s = strip(2, 64, eighth());
    WidthResult r = width_bound(s, 2, 300);
    CHECK(r.bound <= Rational(1) / 2);
    CHECK(r.nerve.multiplicity <= 2);
    CHECK(verify_width(s, r).all_ok);
  }
  SUBCASE("thin body with bulbs") {
    Space s = bulb_strip(1, 48, 4, 3, eighth());
    WidthResult r = width_bound(s, 2, 500);
    CHECK(4 * r.bound <= r.diameter);
    CHECK(r.c_measured > 0);
    CHECK(verify_width(s, r).all_ok);
  }
  SUBCASE("dumbbell") {
    Space s = dumbbell(8, 16, eighth());
    WidthResult r = width_bound(s, 2, 300);
    CHECK(r.bound < r.diameter);
    CHECK(verify_width(s, r).all_ok);
  }
  SUBCASE("larger budget never does worse") {
    Space s = random_blob(2, 24, 120, 11, eighth());
    Rational prev = width_bound(s, 2, 0).bound;
    for (std::size_t b : {50, 200, 800}) {
      Rational cur = width_bound(s, 2, b).bound;
      CHECK(cur <= prev);
      prev = cur;
    }
  }
  SUBCASE("deterministic under a seed") {
    Space s = random_blob(2, 24, 120, 11, eighth());
    WidthResult a = width_bound(s, 2, 300, 7), b = width_bound(s, 2, 300, 7);
    CHECK(to_json(a).dump() == to_json(b).dump());
  }
  SUBCASE("errors") {
    Space s = full_box({2, 2}, eighth());
    CHECK_THROWS_AS(width_bound(s, 0), InputError);
    Space net = Space::net({{0.0}, {1.0}}, Metric::l2, 0.1);
    CHECK_THROWS_AS(width_bound(net, 1), InputError);
  }
}

TEST_CASE("local_width_check") {
  SUBCASE("single cell") {
    Space s = Space::voxel(2, eighth(), {{0, 0}});
    LocalWidthReport r = local_width_check(s, 2, Rational(1), 50);
    CHECK(r.max_ratio == doctest::Approx(std::pow(1.0 / 16, 2)));
    CHECK(r.width_below_R);
  }
  SUBCASE("diameter below R") {
    Space s = full_box({3, 3}, eighth());
    LocalWidthReport r = local_width_check(s, 2, Rational(1), 50);
    CHECK(r.max_ratio == doctest::Approx(std::pow(3.0 / 16, 2)));
    CHECK(r.width.bound <= r.width.diameter);
    CHECK(!r.verdict.empty());
  }
  SUBCASE("thin body with bulbs") {
    Space s = bulb_strip(1, 48, 4, 3, eighth());
    LocalWidthReport r = local_width_check(s, 2, Rational(1), 200);
    CHECK(r.width.bound <= 1);
    CHECK(r.max_ratio < 1);
  }
}
