#include <doctest.h>

#include <algorithm>
#include <set>

#include "hcf/errors.hpp"
#include "hcf/fixtures.hpp"
#include "hcf/space.hpp"

using namespace hcf;

namespace {
Point pt(std::initializer_list<const char*> xs) {
  Point p;
  for (auto x : xs) p.push_back(parse_rational(x));
  return p;
}
}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/8") == frac(1, 8));
  CHECK(parse_rational("-3/6") == frac(-1, 2));
  CHECK(parse_rational("0.125") == frac(1, 8));
  CHECK(parse_rational("1e-3") == frac(1, 1000));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK(to_string(frac(6, 4)) == "3/2");
}

TEST_CASE("frac is canonical") {
  Rational a = frac(3360, 4096), b = frac(105, 128);
  CHECK(a == b);
  CHECK(a.get_den() == 128);
  CHECK(frac(6, -4) == frac(-3, 2));
}

TEST_CASE("distance examples") {
  CHECK(distance({0, 0}, {3, 4}, Metric::linf) == 4);
  CHECK(distance({0, 0}, {3, 4}, Metric::l2) == 5);
  CHECK(distance({0, 0}, {3, 4}, Metric::l1) == 7);
  CHECK(distance({1.5, -2}, {1.5, -2}, Metric::l2) == 0);
  CHECK(linf_distance(pt({"0", "0"}), pt({"3", "4"})) == 4);
  CHECK_THROWS_AS(distance({0}, {1, 2}, Metric::linf), InputError);
  Space net = Space::net({{0, 0}, {3, 4}}, Metric::l2, 0.1);
  CHECK(net.net_distance(0, 1) == 5);
  CHECK_THROWS_AS(net.net_distance(0, 7), InputError);
}

TEST_CASE("min enclosing ball") {
  Ball b = min_enclosing_ball_linf({pt({"0", "0"}), pt({"1", "0"})});
  CHECK(b.center == pt({"1/2", "0"}));
  CHECK(b.radius == frac(1, 2));
  b = min_enclosing_ball_linf({pt({"0", "0"}), pt({"2", "1"})});
  CHECK(b.center == pt({"1", "1/2"}));
  CHECK(b.radius == 1);
  b = min_enclosing_ball_linf({pt({"3", "-1"})});
  CHECK(b.radius == 0);
  CHECK_THROWS_AS(min_enclosing_ball_linf({}), InputError);
}

TEST_CASE("ball members") {
  Space s = full_box({2, 2}, Rational(1));
  Ball unit{pt({"1", "1"}), 1, {}};
  CHECK(ball_members(unit, s).size() == 4);
  Ball far{pt({"10", "10"}), 1, {}};
  CHECK(ball_members(far, s).empty());
  Space net = Space::net({{0, 0}, {1, 0}, {5, 5}}, Metric::linf, 0.0);
  Ball zero{{}, 0, std::size_t{1}};
  CHECK(ball_members(zero, net) == Subset{1});
}

TEST_CASE("ball membership agrees with distance") {
  Rng rng(7);
  Space net = Space::net({{0, 0}, {1, 2}, {2.5, -1}, {4, 4}, {0.5, 0.25}}, Metric::l2, 0.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t c = static_cast<std::size_t>(rng.uniform(0, 4));
    double r = rng.unit() * 6;
    Ball b{{}, from_double(r), c};
    for (std::size_t q = 0; q < net.size(); ++q)
      CHECK(contains_element(b, net, q) == (net.net_distance(c, q) <= r + 1e-9 * std::max(1.0, r)));
  }
  // voxel: a cell is in the ball iff its farthest point is within r
  Space v = random_subset(2, 6, 0.5, 3, frac(1, 4));
  for (int trial = 0; trial < 100; ++trial) {
    Point c{frac(rng.uniform(0, 12), 8), frac(rng.uniform(0, 12), 8)};
    Ball b{c, frac(rng.uniform(0, 8), 8), {}};
    auto mem = ball_members(b, v);
    for (std::size_t i = 0; i < v.size(); ++i) {
      bool in = std::find(mem.begin(), mem.end(), i) != mem.end();
      CHECK(in == (cell_max_dist(c, v.cell(i), v.delta()) <= b.radius));
    }
  }
}

TEST_CASE("neighborhood") {
  Space one = Space::voxel(2, frac(1, 8), {{0, 0}});
  CHECK(neighborhood(one, frac(1, 8)).size() == 9);
  Space one3 = Space::voxel(3, frac(1, 8), {{0, 0, 0}});
  CHECK(neighborhood(one3, frac(1, 8)).size() == 27);
  CHECK(neighborhood(one, Rational(0)).cells() == one.cells());
  Space two = Space::voxel(2, frac(1, 8), {{0, 0}, {1, 0}});
  // oracle: cells at Chebyshev distance <= 1 from either cell
  std::set<IntPoint> expect;
  for (const auto& c : two.cells())
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) expect.insert({c[0] + dx, c[1] + dy});
  CHECK(expect.size() == 12);
  CHECK(neighborhood(two, frac(1, 8)).size() == 12);
  CHECK_THROWS_AS(neighborhood(Space::net({{0.0}}, Metric::linf, 0), Rational(1)), InputError);
}

TEST_CASE("neighborhood composition only enlarges") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Space s = random_blob(2, 8, 10, seed, frac(1, 4));
    for (auto [a, b] : {std::pair{frac(1, 8), frac(1, 8)}, {frac(1, 3), frac(1, 5)},
                        {Rational(0), frac(1, 2)}}) {
      Space lhs = neighborhood(neighborhood(s, a), b);
      Space rhs = neighborhood(s, a + b);
      for (const auto& c : rhs.cells()) CHECK(lhs.find(c).has_value());
    }
  }
}

TEST_CASE("explicit matrix validation") {
  CHECK_NOTHROW(Space::net_from_matrix({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, 0.0));
  CHECK_THROWS_AS(Space::net_from_matrix({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}, 0.0), InputError);
  CHECK_THROWS_AS(Space::net_from_matrix({{0, 1}, {2, 0}}, 0.0), InputError);
  CHECK_THROWS_AS(Space::net_from_matrix({{1, 1}, {1, 0}}, 0.0), InputError);
  // random metrics from points, then perturbed
  Rng rng(11);
  int rejected = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<double>> pts(6, std::vector<double>(2));
    for (auto& p : pts)
      for (auto& x : p) x = rng.unit();
    std::vector<std::vector<double>> m(6, std::vector<double>(6));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) m[i][j] = distance(pts[i], pts[j], Metric::l1);
    CHECK_NOTHROW(Space::net_from_matrix(m, 0.0));
    // stretch one edge beyond the sum of a two-step path
    int i = static_cast<int>(rng.uniform(0, 5)), j = (i + 1 + static_cast<int>(rng.uniform(0, 4))) % 6;
    int k = (j + 1) % 6 == i ? (j + 2) % 6 : (j + 1) % 6;
    m[i][j] = m[j][i] = m[i][k] + m[k][j] + 0.5;
    try {
      Space::net_from_matrix(m, 0.0);
    } catch (const InputError&) {
      ++rejected;
    }
  }
  CHECK(rejected == 50);
}

TEST_CASE("family construction") {
  CHECK_THROWS_AS(BallFamily::centers_in({}), InputError);
  CHECK_THROWS_AS(BallFamily::radius_capped(Rational(0)), InputError);
  auto f = BallFamily::radius_capped(Rational(1)).intersect(BallFamily::radius_capped(frac(1, 2)));
  CHECK(*f.radius_cap() == frac(1, 2));
}

TEST_CASE("grid ball conversion") {
  GridBall g{{1, 2}, 3};
  Ball b = to_ball(g, frac(1, 8));
  CHECK(b.radius == frac(3, 16));
  CHECK(b.center == Point{frac(5, 16), frac(7, 16)});
  auto back = as_grid_ball(b, frac(1, 8));
  REQUIRE(back.has_value());
  CHECK(*back == g);
  CHECK_FALSE(as_grid_ball(Ball{{frac(1, 3), Rational(0)}, frac(1, 16), {}}, frac(1, 8)).has_value());
}
