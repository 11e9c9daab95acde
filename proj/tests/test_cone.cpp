#include <doctest.h>

#include "hcf/cone.hpp"
#include "hcf/cover.hpp"
#include "hcf/errors.hpp"
#include "hcf/fixtures.hpp"

using namespace hcf;

namespace {

Rational q(long a, long b = 1) { return Rational(a) / b; }

}  // namespace

TEST_CASE("input ball filling the ambient ball") {
  for (int m = 1; m <= 3; ++m) {
    auto c = cone_covering({{{q(0), q(0)}, q(1), {}}}, {q(0), q(0)}, q(1), m, ConeVariant::standard);
    CHECK(c.output.size() <= static_cast<std::size_t>(m));
    CHECK(*c.cost.exact <= m * pow_int(1 + q(1, m), m));
    CHECK(c.within_bound);
    CHECK(cone_coverage_check(c, 2000).misses == 0);
  }
}

TEST_CASE("m = 2, R = 1, r = 1/2") {
  Point p{q(0), q(0)};
  std::vector<Ball> in{{{q(1, 2), q(0)}, q(1, 2), {}}};
  auto st = cone_covering(in, p, q(1), 2, ConeVariant::standard);
  CHECK(st.output.size() <= 4);
  for (const auto& o : st.output) CHECK(o.ball.radius == q(3, 4));
  CHECK(*st.bound.exact == q(9, 4));
  CHECK(*st.cost.exact <= q(9, 4));
  CHECK(st.output[0].ball.center == in[0].center);
  auto im = cone_covering(in, p, q(1), 2, ConeVariant::improved);
  CHECK(*im.cost.exact < *st.cost.exact);
  CHECK(im.within_bound);
  auto rs = cone_coverage_check(st, 10000);
  CHECK(rs.samples >= 9000);
  CHECK(rs.misses == 0);
  CHECK(cone_coverage_check(im, 10000).misses == 0);
}

TEST_CASE("the literal shrinking radii miss points near the apex") {
  // radii (1 - j/m)(1 + 1/m) r at the standard centers, far from the apex
  Point p{q(0), q(0)};
  std::vector<Ball> in{{{q(8), q(0)}, q(1), {}}};
  auto c = cone_covering(in, p, q(9), 2, ConeVariant::standard);
  for (auto& o : c.output) {
    Rational j(static_cast<long>(o.step));
    o.ball.radius = max_q(Rational(0), (1 - j / 2)) * q(3, 2);
  }
  CHECK(cone_coverage_check(c, 4000).misses > 0);
}

TEST_CASE("apex and input centers are covered") {
  Point p{q(1), q(1)};
  std::vector<Ball> in{{{q(3), q(2)}, q(1, 4), {}}, {{q(0), q(2)}, q(1, 2), {}}};
  for (auto v : {ConeVariant::standard, ConeVariant::improved}) {
    auto c = cone_covering(in, p, q(3), 2.5, v);
    CHECK(c.within_bound);
    CHECK_FALSE(c.cost.exact);
    bool apex = false, first = false;
    for (const auto& o : c.output) {
      if (linf_distance(o.ball.center, p) <= o.ball.radius) apex = true;
      if (o.ball.center == in[0].center) first = true;
    }
    CHECK(apex);
    CHECK(first);
  }
}

TEST_CASE("preconditions") {
  Point p{q(0)};
  CHECK_THROWS_AS(cone_covering({{{q(2)}, q(1), {}}}, p, q(2), 2, ConeVariant::standard), InputError);
  CHECK_THROWS_AS(cone_covering({{{q(0)}, q(0), {}}}, p, q(2), 2, ConeVariant::standard), InputError);
}

TEST_CASE("random cone certificates") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + trial % 2;
    double m = (trial % 3 == 0) ? 2.5 : static_cast<double>(2 + trial % 2);
    Point p;
    for (int d = 0; d < n; ++d) p.push_back(q(rng.uniform(-16, 16), 8));
    Rational R = q(rng.uniform(8, 40), 8);
    std::vector<Ball> in;
    std::size_t k = static_cast<std::size_t>(rng.uniform(1, 6));
    for (std::size_t i = 0; i < k; ++i) {
      Rational r = q(rng.uniform(1, 8), 16);
      Ball b;
      b.radius = r;
      for (int d = 0; d < n; ++d) {
        // keep |c_d - p_d| <= R - r
        Rational span = R - r;
        Rational u = q(rng.uniform(-1000, 1000), 1000);
        b.center.push_back(p[d] + u * span);
      }
      in.push_back(b);
    }
    auto st = cone_covering(in, p, R, m, ConeVariant::standard);
    auto im = cone_covering(in, p, R, m, ConeVariant::improved);
    CHECK(st.within_bound);
    CHECK(im.within_bound);
    CHECK(leq(im.cost, st.cost));
    for (std::size_t i = 0; i < st.output.size(); ++i) CHECK(im.output[i].ball.radius <= st.output[i].ball.radius);
    std::vector<std::size_t> per(in.size(), 0);
    for (const auto& o : st.output) ++per[o.input];
    for (std::size_t i = 0; i < in.size(); ++i)
      CHECK(static_cast<double>(per[i]) <= std::ceil(m * to_double(R) / to_double(in[i].radius)));
    CHECK(cone_coverage_check(st, 10000).misses == 0);
    CHECK(cone_coverage_check(im, 10000).misses == 0);
  }
}

TEST_CASE("cone map") {
  Space s = full_box({8, 8}, q(1, 8));
  Subset y;
  for (std::size_t e = 0; e < s.size(); ++e)
    if (s.cell(e)[0] == 0) y.push_back(e);
  Point p{q(1, 2), q(1, 2)};
  Rational r = q(1, 4);
  auto pts = cone_map_points(s, y, p, r);
  for (std::size_t e = 0; e < s.size(); ++e) {
    Point x = s.cell_center(e);
    std::int64_t col = s.cell(e)[0];
    if (col == 0) CHECK(pts[e] == x);  // inside Y
    if (col >= 3) CHECK(pts[e] == p);  // centers at distance >= r from Y
    if (col == 1) {
      // distance 1/16 from Y: phi = 3/4
      for (int d = 0; d < 2; ++d) CHECK(pts[e][d] == q(3, 4) * x[d] + q(1, 4) * p[d]);
    }
  }
  // a midpoint blend
  Space line = full_box({9, 1}, q(1, 8));
  auto lp = cone_map_points(line, {0}, {q(9, 8), q(1, 16)}, q(1, 4));
  // cell 2 center is at x = 5/16, distance 3/16 - ... from [0, 1/8]: 3/16; phi = 1/4
  CHECK(lp[2][0] == q(1, 4) * q(5, 16) + q(3, 4) * q(9, 8));
  Space img = cone_map_image(s, y, p, r);
  CHECK(img.find({4, 4}).has_value());  // the apex corner's cells
  CHECK(img.find({3, 3}).has_value());
}

TEST_CASE("cone map image lies in the certificate balls") {
  Space s = random_blob(2, 10, 30, 91, q(1, 8));
  Subset y;
  for (std::size_t e = 0; e < s.size(); e += 3) y.push_back(e);
  Rational r = q(1, 8);
  // cover N_r(Y) by grid balls, then cone from the middle of the box
  Space nb = neighborhood(s.subspace(y), r);
  auto cov = greedy_content(nb, nb.all(), 1).witness.balls;
  Point p{q(5, 8), q(5, 8)};
  Rational R = 0;
  for (const auto& b : cov) R = max_q(R, linf_distance(b.center, p) + b.radius);
  auto cert = cone_covering(cov, p, R, 2, ConeVariant::improved);
  auto pts = cone_map_points(s, y, p, r);
  for (const auto& z : pts) {
    bool in = false;
    for (const auto& o : cert.output)
      if (linf_distance(z, o.ball.center) <= o.ball.radius) in = true;
    CHECK(in);
  }
}
