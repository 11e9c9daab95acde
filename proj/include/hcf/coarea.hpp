#pragma once

#include <optional>
#include <vector>

#include "hcf/rational.hpp"
#include "hcf/space.hpp"

namespace hcf {

// A Lipschitz function on a voxel space, given per cell as an interval
// [min f, max f] over the closed cell.
struct SliceFunction {
  enum class Kind { dist_to_point, dist_to_set, values };
  Kind kind = Kind::dist_to_point;
  Point point;                  // dist_to_point
  Subset set;                   // dist_to_set: elements of the space
  std::vector<Rational> values; // values: one per element, taken as constant on the cell
  Rational lip = 1;

  static SliceFunction to_point(Point p);
  static SliceFunction to_set(Subset s);
  static SliceFunction explicit_values(std::vector<Rational> v, Rational lip);
};

// Interval of f over every cell; throws InputError if explicit values break the
// declared Lipschitz constant on some pair.
std::vector<std::pair<Rational, Rational>> cell_intervals(const Space& s, const Subset& u, const SliceFunction& f);

struct SliceProfile {
  std::vector<Ball> balls;
  // Per ball: f over the cells of U inside the ball; nullopt when it holds none.
  std::vector<std::optional<std::pair<Rational, Rational>>> intervals;
  Subset u;
  std::vector<std::pair<Rational, Rational>> cell_range;  // parallel to u
  Rational lip = 1;
  Rational r1, r2;
  // Balls whose raw interval exceeded 2 Lip r and was cut back (only possible
  // for dist_to_set, whose per-cell maxima are upper estimates).
  std::size_t clamped = 0;
};

// Range defaults to [min f, max f] over U when r1/r2 are not given.
SliceProfile slice_profile(const Space& s, const Subset& u, const SliceFunction& f, const std::vector<Ball>& cover,
                           std::optional<Rational> r1 = {}, std::optional<Rational> r2 = {});

// Sum over balls of r_i^{m-1} |interval_i ∩ [r1, r2]|.
Value coarea_integral(const SliceProfile& p, double m);

struct Slice {
  Rational R;
  Value cost;            // sum of r_i^{m-1} over balls whose interval contains R
  Value mean;            // coarea_integral / (r2 - r1)
  Value slice_bound;     // 2 Lip cost_m(cover) / (r2 - r1)
  std::vector<std::size_t> balls;  // indices into the profile's cover
  bool below_mean = false;
  bool below_bound = false;
};

Slice best_slice(const SliceProfile& p, double m);
// Cells of U whose interval contains R.
Subset level_set(const SliceProfile& p, const Rational& R);

}  // namespace hcf
