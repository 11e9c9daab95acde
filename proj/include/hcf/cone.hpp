#pragma once

#include <cstddef>
#include <vector>

#include "hcf/rational.hpp"
#include "hcf/space.hpp"

namespace hcf {

enum class ConeVariant { standard, improved };
std::string to_string(ConeVariant v);
ConeVariant parse_cone_variant(const std::string& s);

struct ConeBall {
  Ball ball;
  std::size_t input = 0;  // index of the input ball
  std::size_t step = 0;   // position along the segment, 0 at the input center
};

struct ConeCertificate {
  Point apex;
  Rational R;
  double m = 2;  // exponent of the output covering
  ConeVariant variant = ConeVariant::standard;
  std::vector<Ball> input;
  Value input_cost;  // sum of r_i^{m-1}
  std::vector<ConeBall> output;
  Value cost;   // sum of output radii^m
  Value bound;  // m(1+1/m)^m R C or 2(1+1/m)^m R C
  bool within_bound = false;
};

// Covers the cone from `apex` over the union of the input balls, each of which
// must lie in B(apex, R) and have positive radius.
ConeCertificate cone_covering(const std::vector<Ball>& input, const Point& apex, const Rational& R, double m,
                              ConeVariant variant);

struct CoverageReport {
  std::size_t samples = 0;
  std::size_t misses = 0;
  std::vector<std::vector<double>> miss_points;  // first few misses
};

// Points t x + (1 - t) apex for x in the input balls (corners, centers, then a
// Halton sequence) tested against the output balls.
CoverageReport cone_coverage_check(const ConeCertificate& cert, std::size_t samples);

// Phi(x) = phi(d(x, Y)) x + (1 - phi(d(x, Y))) p with phi(t) = max(0, 1 - t/r), at cell centers.
std::vector<Point> cone_map_points(const Space& s, const Subset& y, const Point& apex, const Rational& r);
// The cells whose closure contains some image point.
Space cone_map_image(const Space& s, const Subset& y, const Point& apex, const Rational& r);

}  // namespace hcf
