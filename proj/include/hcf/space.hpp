#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hcf/rational.hpp"

namespace hcf {

using IntPoint = std::vector<std::int64_t>;
using Point = std::vector<Rational>;
using Subset = std::vector<std::size_t>;  // sorted element indices

enum class SpaceKind { voxel, net };
enum class Metric { linf, l2, l1, matrix };

std::string to_string(Metric m);
Metric parse_metric(const std::string& s);

// Closed ball. Voxel balls live in ambient coordinates; net balls may carry a point id.
struct Ball {
  Point center;
  Rational radius;
  std::optional<std::size_t> center_id;
};

// Axis cube [lo, lo + side] in cell units: the l_inf ball of radius side*delta/2
// centered at (lo + side/2)*delta.
struct GridBall {
  IntPoint lo;
  std::int64_t side = 1;
};

bool grid_less(const GridBall& a, const GridBall& b);  // by side, then lo
bool operator==(const GridBall& a, const GridBall& b);
Ball to_ball(const GridBall& g, const Rational& delta);
std::optional<GridBall> as_grid_ball(const Ball& b, const Rational& delta);

class Space {
 public:
  static Space voxel(int n, Rational delta, std::vector<IntPoint> cells);
  static Space net(std::vector<std::vector<double>> points, Metric metric, double eps_net);
  static Space net_from_matrix(std::vector<std::vector<double>> matrix, double eps_net);

  SpaceKind kind() const { return kind_; }
  bool is_voxel() const { return kind_ == SpaceKind::voxel; }
  int dim() const { return n_; }
  std::size_t size() const { return is_voxel() ? cells_.size() : count_; }
  Subset all() const;

  // Voxel model.
  const Rational& delta() const { return delta_; }
  const IntPoint& cell(std::size_t i) const { return cells_[i]; }
  const std::vector<IntPoint>& cells() const { return cells_; }
  std::optional<std::size_t> find(const IntPoint& c) const;
  Point cell_center(std::size_t i) const;
  Space subspace(const Subset& s) const;

  // Net model.
  Metric metric() const { return metric_; }
  double eps_net() const { return eps_net_; }
  bool has_coordinates() const { return !points_.empty(); }
  const std::vector<double>& point(std::size_t i) const { return points_.at(i); }
  double net_distance(std::size_t i, std::size_t j) const;
  const std::vector<std::vector<double>>& points() const { return points_; }
  const std::vector<double>& matrix() const { return matrix_; }

 private:
  SpaceKind kind_ = SpaceKind::voxel;
  int n_ = 0;
  Rational delta_ = 1;
  std::vector<IntPoint> cells_;
  std::map<IntPoint, std::size_t> index_;
  Metric metric_ = Metric::linf;
  double eps_net_ = 0;
  std::size_t count_ = 0;
  std::vector<std::vector<double>> points_;
  std::vector<double> matrix_;
};

constexpr double kTau = 1e-9;

Rational linf_distance(const Point& p, const Point& q);
double distance(const std::vector<double>& p, const std::vector<double>& q, Metric metric);
// Point-to-cell distances in ambient units (cell c is [c*delta, (c+1)*delta]).
Rational cell_min_dist(const Point& p, const IntPoint& c, const Rational& delta);
Rational cell_max_dist(const Point& p, const IntPoint& c, const Rational& delta);
// Same in cell units with double coordinates (exact for dyadic inputs).
double cell_min_dist_units(const std::vector<double>& p, const IntPoint& c);
double cell_max_dist_units(const std::vector<double>& p, const IntPoint& c);

Ball min_enclosing_ball_linf(const std::vector<Point>& points);
bool contains_cell(const Ball& b, const IntPoint& c, const Rational& delta);

// contains_cell for many cells against one ball: floating point with an exact
// fallback near the boundary.
class CellTester {
 public:
  CellTester(const Ball& b, const Rational& delta);
  bool contains(const IntPoint& c) const;

 private:
  const Ball* ball_;
  const Rational* delta_;
  std::vector<double> center_;
  double radius_, d_;
};
bool contains_element(const Ball& b, const Space& s, std::size_t i);
Subset ball_members(const Ball& b, const Space& s);
Space neighborhood(const Space& s, const Rational& rho);

struct AllGrid {};
struct CentersIn {
  std::vector<Point> points;       // voxel: ambient half-grid points
  std::vector<std::size_t> ids;    // net: point ids
};
struct FixedBalls {
  std::vector<Ball> balls;
};
struct RadiusCapped {
  Rational r_max;
};
using FamilyPart = std::variant<AllGrid, CentersIn, FixedBalls, RadiusCapped>;

// Intersection of its parts; no parts means all grid balls.
struct BallFamily {
  std::vector<FamilyPart> parts;

  static BallFamily all_grid() { return {}; }
  static BallFamily centers_in(std::vector<Point> w);
  static BallFamily centers_in_ids(std::vector<std::size_t> ids);
  static BallFamily fixed(std::vector<Ball> q);
  static BallFamily radius_capped(Rational r_max);
  BallFamily intersect(const BallFamily& other) const;

  const FixedBalls* fixed_part() const;
  std::optional<Rational> radius_cap() const;
  std::string describe() const;
};

struct Covering {
  std::vector<Ball> balls;
  double m = 1;
  Value cost;
};

Value covering_cost(const std::vector<Ball>& balls, double m);
bool covers(const Space& s, const Subset& target, const std::vector<Ball>& balls);

}  // namespace hcf
