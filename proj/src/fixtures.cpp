#include "hcf/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hcf/errors.hpp"

namespace hcf {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(g_() % span);
}

double Rng::unit() { return static_cast<double>(g_() >> 11) * (1.0 / 9007199254740992.0); }

std::vector<Rational> halton(std::size_t index, int dim) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (dim > 12) throw InputError("halton dimension too large");
  std::vector<Rational> out;
  for (int d = 0; d < dim; ++d) {
    int b = primes[d];
    Rational f = 1, r = 0;
    std::size_t i = index + 1;
    while (i > 0) {
      f /= b;
      r += f * static_cast<long>(i % b);
      i /= b;
    }
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

namespace {

void box_cells(const IntPoint& lo, const IntPoint& sides, std::set<IntPoint>& out) {
  int n = static_cast<int>(sides.size());
  IntPoint x(n, 0);
  for (auto s : sides)
    if (s <= 0) return;
  while (true) {
    IntPoint c(n);
    for (int i = 0; i < n; ++i) c[i] = lo[i] + x[i];
    out.insert(c);
    int i = 0;
    while (i < n && x[i] == sides[i] - 1) x[i++] = 0;
    if (i == n) break;
    ++x[i];
  }
}

Space from_set(int n, const Rational& delta, const std::set<IntPoint>& cells) {
  return Space::voxel(n, delta, std::vector<IntPoint>(cells.begin(), cells.end()));
}

}  // namespace

Space full_box(const IntPoint& sides, const Rational& delta) {
  std::set<IntPoint> cells;
  box_cells(IntPoint(sides.size(), 0), sides, cells);
  return from_set(static_cast<int>(sides.size()), delta, cells);
}

Space unit_cube(int n, std::int64_t k) { return full_box(IntPoint(n, k), frac(1, k)); }

Space cube_shell(int n, std::int64_t k) {
  Space c = unit_cube(n, k);
  std::vector<IntPoint> out;
  for (const auto& cell : c.cells()) {
    bool boundary = false;
    for (auto v : cell)
      if (v == 0 || v == k - 1) boundary = true;
    if (boundary) out.push_back(cell);
  }
  return Space::voxel(n, frac(1, k), out);
}

Space square_ring(std::int64_t side, const Rational& delta) {
  std::vector<IntPoint> out;
  for (std::int64_t x = 0; x < side; ++x)
    for (std::int64_t y = 0; y < side; ++y)
      if (x == 0 || y == 0 || x == side - 1 || y == side - 1) out.push_back({x, y});
  return Space::voxel(2, delta, out);
}

Space strip(std::int64_t width, std::int64_t length, const Rational& delta) {
  return full_box({length, width}, delta);
}

Space dumbbell(std::int64_t block, std::int64_t bridge, const Rational& delta) {
  std::set<IntPoint> cells;
  box_cells({0, 0}, {block, block}, cells);
  box_cells({block, block / 2}, {bridge, 1}, cells);
  box_cells({block + bridge, 0}, {block, block}, cells);
  return from_set(2, delta, cells);
}

Space bulb_strip(std::int64_t thickness, std::int64_t length, std::int64_t bulb, std::int64_t bulbs,
                 const Rational& delta) {
  std::set<IntPoint> cells;
  std::int64_t y0 = (bulb - thickness) / 2;
  box_cells({0, y0}, {length, thickness}, cells);
  for (std::int64_t b = 0; b < bulbs; ++b) {
    std::int64_t x = (b + 1) * length / (bulbs + 1);
    x -= x % bulb;
    box_cells({x, 0}, {bulb, bulb}, cells);
  }
  return from_set(2, delta, cells);
}

Space l_hexomino(const Rational& delta) {
  return Space::voxel(2, delta, {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {2, 0}});
}

Space random_blob(int n, std::int64_t extent, std::size_t count, std::uint64_t seed, const Rational& delta) {
  Rng rng(seed);
  std::set<IntPoint> cells;
  IntPoint cur(n, extent / 2);
  cells.insert(cur);
  std::size_t limit = static_cast<std::size_t>(std::pow(static_cast<double>(extent), n));
  count = std::min(count, limit);
  std::size_t guard = 0;
  while (cells.size() < count && guard++ < count * 200) {
    // restart the walk from an existing cell now and then
    if (rng.uniform(0, 7) == 0) {
      auto it = cells.begin();
      std::advance(it, rng.uniform(0, static_cast<std::int64_t>(cells.size()) - 1));
      cur = *it;
    }
    int axis = static_cast<int>(rng.uniform(0, n - 1));
    cur[axis] += rng.uniform(0, 1) ? 1 : -1;
    cur[axis] = std::clamp<std::int64_t>(cur[axis], 0, extent - 1);
    cells.insert(cur);
  }
  return from_set(n, delta, cells);
}

Space random_subset(int n, std::int64_t extent, double density, std::uint64_t seed, const Rational& delta) {
  Rng rng(seed);
  std::set<IntPoint> cells;
  IntPoint all(n, extent);
  std::set<IntPoint> box;
  box_cells(IntPoint(n, 0), all, box);
  for (const auto& c : box)
    if (rng.unit() < density) cells.insert(c);
  if (cells.empty()) cells.insert(IntPoint(n, 0));
  return from_set(n, delta, cells);
}

Space scale_space(const Space& s, std::int64_t lambda) {
  if (lambda < 1) throw InputError("scale factor must be >= 1");
  std::set<IntPoint> cells;
  for (const auto& c : s.cells()) {
    IntPoint lo(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) lo[i] = c[i] * lambda;
    box_cells(lo, IntPoint(c.size(), lambda), cells);
  }
  return from_set(s.dim(), s.delta(), cells);
}

Space translate(const Space& s, const IntPoint& by) {
  std::vector<IntPoint> cells;
  for (auto c : s.cells()) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += by[i];
    cells.push_back(c);
  }
  return Space::voxel(s.dim(), s.delta(), cells);
}

}  // namespace hcf
