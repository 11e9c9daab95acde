#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hcf/space.hpp"

namespace hcf {

// Small deterministic generator; integer draws avoid library-specific distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::uint64_t next() { return g_(); }
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);  // inclusive
  double unit();                                         // [0, 1)
  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

// Halton point in [0,1)^dim with denominators powers of small primes.
std::vector<Rational> halton(std::size_t index, int dim);

Space full_box(const IntPoint& sides, const Rational& delta);
Space unit_cube(int n, std::int64_t cells_per_side);
Space cube_shell(int n, std::int64_t cells_per_side);  // boundary cells of the unit cube
Space square_ring(std::int64_t side, const Rational& delta);
Space strip(std::int64_t width, std::int64_t length, const Rational& delta);
Space dumbbell(std::int64_t block, std::int64_t bridge, const Rational& delta);
// Thin long body with small square bulbs: the shape of a space whose
// 2-dimensional content is small but which is not thin everywhere.
Space bulb_strip(std::int64_t thickness, std::int64_t length, std::int64_t bulb, std::int64_t bulbs,
                 const Rational& delta);
Space l_hexomino(const Rational& delta);
Space random_blob(int n, std::int64_t extent, std::size_t cells, std::uint64_t seed, const Rational& delta);
Space random_subset(int n, std::int64_t extent, double density, std::uint64_t seed, const Rational& delta);
Space scale_space(const Space& s, std::int64_t lambda);  // each cell becomes a lambda^n block, delta unchanged
Space translate(const Space& s, const IntPoint& by);

}  // namespace hcf
