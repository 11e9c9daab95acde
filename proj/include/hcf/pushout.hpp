#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hcf/cone.hpp"
#include "hcf/cover.hpp"
#include "hcf/rational.hpp"
#include "hcf/space.hpp"

namespace hcf {

// A face of the cubical complex Q(R): coordinate i ranges over [a_i R, (a_i+1) R]
// when free, and equals a_i R otherwise.
struct Face {
  IntPoint anchor;
  std::vector<char> free;
  int dim() const;
  bool operator<(const Face& o) const;
  bool operator==(const Face& o) const { return anchor == o.anchor && free == o.free; }
};

// The smallest face containing x.
Face face_of(const Point& x, const Rational& R);
bool in_face(const Point& x, const Face& f, const Rational& R);
bool on_face_boundary(const Point& x, const Face& f, const Rational& R);
bool strictly_inside(const Point& x, const Face& f, const Rational& R);
Point face_center(const Face& f, const Rational& R);
// Number of coordinates of x that are not multiples of R.
int skeleton_dim(const Point& x, const Rational& R);

// Boundary point of the face on the ray from p through x.
Point radial_project(const Face& f, const Rational& R, const Point& p, const Point& x);

// A point of V together with the size of the piece of V it stands for.
struct ThickPoint {
  Point c;
  Rational rho;
};

struct ThickCover {
  double cost = 0;  // sum of radius^e
  std::vector<Ball> balls;
};

// Greedy cover of the union of the balls B(c, rho) by balls centered at the points.
ThickCover thick_cover(const std::vector<ThickPoint>& v, double e);

struct PushoutConfig {
  Rational c0_base = 4;        // c0(k) = c0_base^{-k}
  Rational c2_per_dim = 4;     // c2(n) = c2_per_dim * n
  double ratio_ceiling_base = 10;  // const(k) ceiling = base * 2^k
  std::size_t candidates = 64;
};

struct AveragePoint {
  Point p;
  std::vector<ThickPoint> image;  // parallel to the input
  double content_before = 0;
  double content_after = 0;
  double ratio = 1;
  double limit = 0;  // c0(k) R^{m-1}
  bool within_ceiling = true;
  ThickCover image_cover;
  double tube_cost = 0;  // HC_m cover of the straight-line traces
  std::size_t candidates_tried = 0;
};

// Chooses p among the face center, Halton points of the face interior and points
// set back from each piece so that the projected set has the least greedy content.
// Throws PushoutPreconditionError when HC_{m-1}(V) exceeds c0(k) R^{m-1}.
AveragePoint average_point(const Face& f, const Rational& R, const std::vector<ThickPoint>& v, double m,
                           const PushoutConfig& cfg = {});

struct FaceStep {
  Face face;
  Point p;
  std::size_t points = 0;
  std::size_t moved = 0;
  double content_before = 0;
  double content_after = 0;
  double ratio = 1;
  double trace_cost = 0;  // cone or tube cover of the trace, whichever is cheaper
};

struct LevelTrace {
  int k = 0;
  std::vector<FaceStep> faces;
  double content_after = 0;  // greedy HC_{m-1} of V_{k-1}
};

struct DeformationTrace {
  Rational R;
  double m = 2;
  int n = 0;
  int target_dim = 0;  // ceil(m) - 2
  std::vector<ThickPoint> initial;
  std::vector<ThickPoint> final_points;
  std::vector<Rational> displacement;        // per point, |final - initial|
  std::vector<Rational> displacement_bound;  // per point, sum over levels of the face diameter
  std::vector<LevelTrace> levels;
  double input_content = 0;
  double trace_cost = 0;
  Rational delta;
  Rational max_displacement;
  double displacement_const = 0;  // max_displacement / R
  double d_const = 0;             // trace_cost / (R (input_content + delta))
  double d_ceiling = 0;
  std::vector<double> ratios;
  bool cond_a = true;  // boundary points fixed at every level
  bool cond_b = true;  // final points in the target skeleton
  bool cond_c = true;  // displacement within the per-level face bound
  bool cond_d = true;  // d_const <= d_ceiling
  bool ratios_within_ceiling = true;
};

DeformationTrace skeleton_descend(const std::vector<ThickPoint>& v, const Rational& R, double m, int n,
                                  const Rational& delta, const PushoutConfig& cfg = {});

// R = c2(n) hc^{1/(m-1)} + delta.
Rational grid_R_for_content(double hc, double m, int n, const Rational& delta, const PushoutConfig& cfg = {});

struct LoomisWhitneyReport {
  int n = 0;
  std::size_t cells = 0;
  std::vector<std::size_t> projections;  // N_j
  std::size_t cylinder = 0;              // N
  mpz_class lhs, rhs;                    // N^{n-1}, prod N_j
  bool inequality = false;
  // HC_n(Omega) <= |Omega| r^n <= N r^n <= (prod N_j)^{1/(n-1)} r^n <= (max N_j r^{n-1})^{n/(n-1)} <= HC_{n-1}(boundary)^{n/(n-1)}
  Rational r;
  Rational hc_n_upper;
  Rational cylinder_bound;
  double product_bound = 0;
  Rational projection_lower;  // max N_j r^{n-1}, a lower bound for HC_{n-1}(boundary)
  std::size_t boundary_cells = 0;
  ContentResult boundary_content;
  bool chain = false;
};

LoomisWhitneyReport loomis_whitney_check(const Space& omega, bool solve_boundary = true,
                                         const SolverOptions& opt = {});

struct CubeEqualityReport {
  int n = 0;
  Rational side;
  ContentResult cube, shell;
  bool equality = false;  // HC_{n-1}(shell)^n == HC_n(cube)^{n-1}, exactly
};

CubeEqualityReport cube_equality_check(int n, std::int64_t cells_per_side, const Rational& delta,
                                       const SolverOptions& opt = {});

}  // namespace hcf
