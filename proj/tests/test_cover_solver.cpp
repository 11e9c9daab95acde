#include <doctest.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "hcf/cover.hpp"
#include "hcf/errors.hpp"
#include "hcf/fixtures.hpp"

using namespace hcf;

namespace {

// Independent oracle: every grid cube meeting the bounding box, then a bitmask
// DP over uncovered cells. Returns the optimum in units of (delta/2)^m.
double brute_force_units(const Space& s, double m) {
  std::size_t N = s.size();
  REQUIRE(N <= 18);
  int n = s.dim();
  IntPoint lo = s.cell(0), hi = s.cell(0);
  for (const auto& c : s.cells())
    for (int i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i]);
    }
  std::int64_t K = 1;
  for (int i = 0; i < n; ++i) K = std::max(K, hi[i] - lo[i] + 1);
  std::vector<std::pair<std::uint32_t, double>> cubes;
  for (std::int64_t k = 1; k <= K; ++k) {
    IntPoint a(n);
    for (int i = 0; i < n; ++i) a[i] = lo[i] - k + 1;
    while (true) {
      std::uint32_t mask = 0;
      for (std::size_t e = 0; e < N; ++e) {
        bool in = true;
        for (int i = 0; i < n; ++i)
          if (s.cell(e)[i] < a[i] || s.cell(e)[i] > a[i] + k - 1) in = false;
        if (in) mask |= 1u << e;
      }
      if (mask) cubes.push_back({mask, std::pow(static_cast<double>(k), m)});
      int i = 0;
      while (i < n && a[i] == hi[i]) {
        a[i] = lo[i] - k + 1;
        ++i;
      }
      if (i == n) break;
      ++a[i];
    }
  }
  std::vector<double> memo(std::size_t{1} << N, -1);
  std::function<double(std::uint32_t)> f = [&](std::uint32_t u) -> double {
    if (u == 0) return 0;
    if (memo[u] >= 0) return memo[u];
    int e = __builtin_ctz(u);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [mask, w] : cubes)
      if (mask & (1u << e)) best = std::min(best, w + f(u & ~mask));
    return memo[u] = best;
  };
  return f(static_cast<std::uint32_t>((std::uint64_t{1} << N) - 1));
}

double units(const Space& s, double m) { return std::pow(to_double(s.delta()) / 2, m); }

}  // namespace

TEST_CASE("unit cube content is 2^-m") {
  for (int n = 2; n <= 3; ++n)
    for (int m = 1; m <= n; ++m) {
      Space c = unit_cube(n, 8);
      auto t0 = std::chrono::steady_clock::now();
      auto r = exact_content(c, c.all(), m);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      CHECK(r.optimal);
      REQUIRE(r.upper.exact);
      CHECK(*r.upper.exact == pow_int(frac(1, 2), m));
      CHECK(*r.lower.exact == pow_int(frac(1, 2), m));
      CHECK(*volume_lower_bound(c, c.all(), m).exact == pow_int(frac(1, 2), m));
      CHECK(secs < 10.0);
    }
}

TEST_CASE("single cell") {
  Space s = Space::voxel(3, frac(1, 8), {{2, 2, 2}});
  auto r = exact_content(s, s.all(), 2);
  CHECK(*r.upper.exact == frac(1, 256));
  auto g = greedy_content(s, s.all(), 2);
  CHECK(*g.upper.exact == frac(1, 256));
  auto frac = exact_content(s, s.all(), 2.5);
  CHECK_FALSE(frac.exact_arithmetic);
  CHECK(frac.upper.approx == doctest::Approx(std::pow(1.0 / 16, 2.5)).epsilon(1e-12));
}

TEST_CASE("1 x 2 rectangle at delta 1/4, m = 1") {
  Space s = full_box({4, 8}, frac(1, 4));
  auto r = exact_content(s, s.all(), 1);
  CHECK(r.optimal);
  // Projection on the long side: sum of 2 r_i >= 2, so the content is >= 1; two unit squares attain 1.
  CHECK(*r.upper.exact == 1);
  CHECK(*r.upper.exact >= frac(1, 2));
}

TEST_CASE("exact solver matches brute force") {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int n = trial % 3 == 0 ? 3 : 2;
    std::int64_t ext = n == 3 ? 3 : 5;
    Space s = random_blob(n, ext, static_cast<std::size_t>(rng.uniform(1, 12)), 100 + trial, frac(1, 4));
    double m = 1 + static_cast<double>(trial % 3);
    double oracle = brute_force_units(s, m) * units(s, m);
    auto r = exact_content(s, s.all(), m);
    CHECK(r.optimal);
    CHECK(r.upper.approx == doctest::Approx(oracle).epsilon(1e-12));
    auto g = greedy_content(s, s.all(), m);
    CHECK(g.upper.approx >= oracle - 1e-12);
    CHECK(g.lower.approx <= oracle + 1e-12);
    CHECK(covers(s, s.all(), r.witness.balls));
    CHECK(r.witness.cost.approx == doctest::Approx(r.upper.approx).epsilon(1e-12));
  }
}

TEST_CASE("bracket soundness under a tiny node budget") {
  for (int trial = 0; trial < 20; ++trial) {
    Space s = random_subset(2, 4, 0.6, 300 + trial, frac(1, 4));
    if (s.size() > 16) continue;
    double oracle = brute_force_units(s, 1.5) * units(s, 1.5);
    SolverOptions opt;
    opt.node_budget = 3;
    auto r = exact_content(s, s.all(), 1.5, {}, opt);
    CHECK(r.lower.approx <= oracle + 1e-12);
    CHECK(r.upper.approx >= oracle - 1e-12);
    if (!r.optimal) CHECK(r.lower.approx < r.upper.approx);
  }
}

TEST_CASE("basic properties of exact content") {
  for (int trial = 0; trial < 25; ++trial) {
    Space a = random_blob(2, 6, 8, 500 + trial, frac(1, 8));
    Space b = random_blob(2, 6, 8, 900 + trial, frac(1, 8));
    b = translate(b, {trial % 4, 0});
    std::vector<IntPoint> uc = a.cells();
    uc.insert(uc.end(), b.cells().begin(), b.cells().end());
    Space u = Space::voxel(2, a.delta(), uc);
    for (double m : {1.0, 2.0}) {
      auto ha = exact_content(a, a.all(), m), hb = exact_content(b, b.all(), m), hu = exact_content(u, u.all(), m);
      REQUIRE(ha.optimal);
      REQUIRE(hb.optimal);
      REQUIRE(hu.optimal);
      CHECK(*hu.upper.exact <= *ha.upper.exact + *hb.upper.exact);  // subadditivity
      CHECK(*ha.upper.exact <= *hu.upper.exact);                    // monotonicity
      // the model rescales exactly with delta
      Space big = Space::voxel(2, a.delta() * 3, a.cells());
      auto hbig = exact_content(big, big.all(), m);
      CHECK(*hbig.upper.exact == *ha.upper.exact * pow_int(Rational(3), static_cast<std::int64_t>(m)));
      // replicated cells: the scaled witness is admissible, finer balls may only help
      Space rep = scale_space(a, 2);
      auto hrep = exact_content(rep, rep.all(), m);
      CHECK(hrep.upper.approx <= ha.upper.approx * std::pow(2.0, m) * (1 + 1e-12));
      // HC_m <= rad^m <= diam^m
      std::vector<Point> corners;
      for (const auto& c : a.cells()) {
        corners.push_back({Rational(c[0]) * a.delta(), Rational(c[1]) * a.delta()});
        corners.push_back({Rational(c[0] + 1) * a.delta(), Rational(c[1] + 1) * a.delta()});
      }
      Ball enc = min_enclosing_ball_linf(corners);
      CHECK(*ha.upper.exact <= pow_int(enc.radius, static_cast<std::int64_t>(m)));
      CHECK(pow_int(enc.radius, static_cast<std::int64_t>(m)) <= pow_int(2 * enc.radius, static_cast<std::int64_t>(m)));
    }
    // dimension comparison: HC_1 >= HC_2^{1/2}
    auto h1 = exact_content(a, a.all(), 1), h2 = exact_content(a, a.all(), 2);
    CHECK(*h1.upper.exact * *h1.upper.exact >= *h2.upper.exact);
  }
}

TEST_CASE("family restriction only increases content") {
  Space s = random_blob(2, 6, 12, 77, frac(1, 8));
  auto all = exact_content(s, s.all(), 2);
  std::vector<Point> w;
  for (std::size_t i = 0; i < s.size(); i += 2) w.push_back(s.cell_center(i));
  auto cin = exact_content(s, s.all(), 2, BallFamily::centers_in(w));
  CHECK(*cin.upper.exact >= *all.upper.exact);
  for (const auto& b : cin.witness.balls) CHECK(std::find(w.begin(), w.end(), b.center) != w.end());
  auto fixed = exact_content(s, s.all(), 2, BallFamily::fixed(cin.witness.balls));
  CHECK(*fixed.upper.exact >= *cin.upper.exact);
  auto capped = exact_content(s, s.all(), 2, BallFamily::radius_capped(frac(1, 16)));
  CHECK(*capped.upper.exact == Rational(static_cast<long>(s.size())) / 256);
}

TEST_CASE("uncoverable fixed family") {
  Space s = full_box({2, 2}, Rational(1));
  Ball one{{frac(1, 2), frac(1, 2)}, frac(1, 2), {}};
  CHECK_THROWS_AS(exact_content(s, s.all(), 1, BallFamily::fixed({one})), UncoverableError);
  CHECK_THROWS_AS(exact_content(s, {}, 1), InputError);
}

TEST_CASE("volume lower bound examples") {
  for (int n = 1; n <= 3; ++n) {
    Space c = unit_cube(n, 4);
    CHECK(*volume_lower_bound(c, c.all(), n).exact == pow_int(frac(1, 2), n));
    for (int m = 1; m < n; ++m) CHECK(*volume_lower_bound(c, c.all(), m).exact == pow_int(frac(1, 2), m));
  }
  Space half = full_box({4, 8}, frac(1, 8));
  CHECK(volume_lower_bound(half, half.all(), 1).approx == doctest::Approx(std::sqrt(0.5) / 2));
}

TEST_CASE("projection bound certifies thin sets") {
  Space shell = cube_shell(3, 4);
  auto r = exact_content(shell, shell.all(), 2);
  CHECK(r.optimal);
  CHECK(*r.upper.exact == frac(1, 4));
}

TEST_CASE("net content is a bracket") {
  Space net = Space::net({{0, 0}, {1, 0}, {2, 0}, {3, 0}}, Metric::linf, 0.25);
  auto r = exact_content(net, net.all(), 1);
  CHECK_FALSE(r.optimal);
  CHECK(r.lower.approx <= r.upper.approx);
  // four eps-balls of radius 1/4 beat any ball reaching a neighbour (radius 5/4)
  CHECK(r.upper.approx == doctest::Approx(1.0));
  CHECK(r.lower.approx == doctest::Approx(0.0));
  Space dense = Space::net({{0, 0}, {0.1, 0}, {0.2, 0}, {0.3, 0}}, Metric::linf, 0.05);
  auto d = exact_content(dense, dense.all(), 1);
  CHECK(d.upper.approx == doctest::Approx(0.2));
  double deflated = 0;
  for (const auto& b : d.witness.balls) deflated += std::max(0.0, to_double(b.radius) - 0.05);
  CHECK(d.lower.approx == doctest::Approx(deflated));
  CHECK(d.lower.approx <= d.upper.approx);
}

TEST_CASE("content ball scan") {
  Space s = random_blob(2, 4, 6, 3, frac(1, 8));
  auto whole = exact_content(s, s.all(), 2);
  auto scan = content_ball_scan(s, 2, Rational(10));
  for (const auto& e : scan.entries) CHECK(*e.content.upper.exact == *whole.upper.exact);
  Space one = Space::voxel(2, frac(1, 8), {{0, 0}});
  auto s1 = content_ball_scan(one, 2, frac(1, 8));
  CHECK(*s1.entries[0].content.upper.exact == frac(1, 256));
  Space db = dumbbell(4, 3, frac(1, 8));
  auto sd = content_ball_scan(db, 1, frac(1, 4));
  CHECK(sd.entries.size() == db.size());
  for (const auto& e : sd.entries) {
    Subset mem;
    for (std::size_t j = 0; j < db.size(); ++j) {
      // closed ball of radius 2 cells about the cell center meets cell j
      bool meets = true;
      for (int i = 0; i < 2; ++i) {
        std::int64_t d = std::llabs(db.cell(j)[i] - db.cell(e.center_element)[i]);
        if (2 * d - 1 > 4) meets = false;
      }
      if (meets) mem.push_back(j);
    }
    CHECK(mem == e.members);
    CHECK(*e.content.upper.exact == *exact_content(db, mem, 1).upper.exact);
  }
}

TEST_CASE("merge to disjoint") {
  Ball a{{Rational(0)}, Rational(1), {}}, b{{Rational(1)}, Rational(1), {}};
  auto out = merge_to_disjoint({a, b}, 1);
  REQUIRE(out.size() == 1);
  CHECK(out[0].radius == 2);
  CHECK(covering_cost(out, 1).exact == Rational(2));
  // the merged ball contains both inputs
  for (const auto& in : {a, b}) CHECK(linf_distance(in.center, out[0].center) + in.radius <= out[0].radius);

  Ball c{{Rational(0), Rational(0)}, Rational(1), {}}, d{{Rational(5), Rational(0)}, Rational(1), {}};
  auto same = merge_to_disjoint({c, d}, 1);
  CHECK(same.size() == 2);

  std::vector<Ball> three = {Ball{{Rational(0), Rational(0)}, 1, {}}, Ball{{Rational(1), Rational(0)}, 1, {}},
                             Ball{{Rational(0), Rational(1)}, 1, {}}};
  auto m3 = merge_to_disjoint(three, 1);
  CHECK(m3.size() >= 1);
  CHECK(3 - m3.size() <= 2);
  CHECK(*covering_cost(m3, 1).exact <= 3);
  CHECK(pairwise_disjoint(m3));
  CHECK_THROWS_AS(merge_to_disjoint(three, 1.5), InputError);
}

TEST_CASE("merge to disjoint on random families") {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Ball> balls;
    int k = static_cast<int>(rng.uniform(1, 8));
    for (int i = 0; i < k; ++i)
      balls.push_back(Ball{{frac(rng.uniform(0, 20), 4), frac(rng.uniform(0, 20), 4)},
                           frac(rng.uniform(1, 8), 4), {}});
    double e = 0.5 + 0.5 * (trial % 2);
    auto out = merge_to_disjoint(balls, e);
    CHECK(pairwise_disjoint(out));
    CHECK(covering_cost(out, e).approx <= covering_cost(balls, e).approx * (1 + 1e-12));
    for (const auto& in : balls) {
      bool inside = false;
      for (const auto& o : out)
        if (linf_distance(in.center, o.center) + in.radius <= o.radius) inside = true;
      CHECK(inside);
    }
  }
}
