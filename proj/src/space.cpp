#include "hcf/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "hcf/errors.hpp"

namespace hcf {

std::string to_string(Metric m) {
  switch (m) {
    case Metric::linf: return "linf";
    case Metric::l2: return "l2";
    case Metric::l1: return "l1";
    case Metric::matrix: return "matrix";
  }
  return "?";
}

Metric parse_metric(const std::string& s) {
  if (s == "linf" || s == "Linf") return Metric::linf;
  if (s == "l2" || s == "L2") return Metric::l2;
  if (s == "l1" || s == "L1") return Metric::l1;
  if (s == "matrix" || s == "explicit") return Metric::matrix;
  throw InputError("unknown metric '" + s + "'");
}

bool grid_less(const GridBall& a, const GridBall& b) {
  if (a.side != b.side) return a.side < b.side;
  return a.lo < b.lo;
}

bool operator==(const GridBall& a, const GridBall& b) { return a.side == b.side && a.lo == b.lo; }

Ball to_ball(const GridBall& g, const Rational& delta) {
  Ball b;
  b.center.reserve(g.lo.size());
  for (auto v : g.lo) b.center.push_back((Rational(v) + frac(g.side, 2)) * delta);
  for (auto& c : b.center) c.canonicalize();
  b.radius = frac(g.side, 2) * delta;
  b.radius.canonicalize();
  return b;
}

std::optional<GridBall> as_grid_ball(const Ball& b, const Rational& delta) {
  Rational k = 2 * b.radius / delta;
  k.canonicalize();
  if (k.get_den() != 1 || k <= 0) return std::nullopt;
  GridBall g;
  g.side = k.get_num().get_si();
  for (const auto& c : b.center) {
    Rational lo = c / delta - frac(g.side, 2);
    lo.canonicalize();
    if (lo.get_den() != 1) return std::nullopt;
    g.lo.push_back(lo.get_num().get_si());
  }
  return g;
}

Space Space::voxel(int n, Rational delta, std::vector<IntPoint> cells) {
  if (n < 1) throw InputError("voxel dimension must be >= 1");
  if (delta <= 0) throw InputError("delta must be positive");
  for (const auto& c : cells)
    if (static_cast<int>(c.size()) != n) throw InputError("cell coordinate count differs from n");
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  Space s;
  s.kind_ = SpaceKind::voxel;
  s.n_ = n;
  delta.canonicalize();
  s.delta_ = delta;
  s.cells_ = std::move(cells);
  for (std::size_t i = 0; i < s.cells_.size(); ++i) s.index_[s.cells_[i]] = i;
  return s;
}

Space Space::net(std::vector<std::vector<double>> points, Metric metric, double eps_net) {
  if (metric == Metric::matrix) throw InputError("use net_from_matrix for explicit metrics");
  if (!(eps_net >= 0)) throw InputError("eps_net must be >= 0");
  if (points.empty()) throw InputError("net has no points");
  std::size_t n = points[0].size();
  for (const auto& p : points) {
    if (p.size() != n) throw InputError("net points have differing dimension");
    for (double v : p)
      if (!std::isfinite(v)) throw InputError("non-finite net coordinate");
  }
  Space s;
  s.kind_ = SpaceKind::net;
  s.n_ = static_cast<int>(n);
  s.metric_ = metric;
  s.eps_net_ = eps_net;
  s.count_ = points.size();
  s.points_ = std::move(points);
  return s;
}

Space Space::net_from_matrix(std::vector<std::vector<double>> m, double eps_net) {
  if (!(eps_net >= 0)) throw InputError("eps_net must be >= 0");
  std::size_t n = m.size();
  if (n == 0) throw InputError("empty distance matrix");
  for (const auto& row : m)
    if (row.size() != n) throw InputError("distance matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i] != 0) throw InputError("distance matrix has non-zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(m[i][j]) || m[i][j] < 0) throw InputError("distance matrix has invalid entry");
      if (std::fabs(m[i][j] - m[j][i]) > kTau * std::max(1.0, m[i][j]))
        throw InputError("distance matrix is not symmetric");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (m[i][k] > m[i][j] + m[j][k] + kTau * std::max(1.0, m[i][k])) {
          std::ostringstream os;
          os << "distance matrix violates the triangle inequality at (" << i << "," << j << "," << k << ")";
          throw InputError(os.str());
        }
  Space s;
  s.kind_ = SpaceKind::net;
  s.metric_ = Metric::matrix;
  s.eps_net_ = eps_net;
  s.count_ = n;
  s.matrix_.reserve(n * n);
  for (const auto& row : m) s.matrix_.insert(s.matrix_.end(), row.begin(), row.end());
  return s;
}

Subset Space::all() const {
  Subset out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::optional<std::size_t> Space::find(const IntPoint& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Point Space::cell_center(std::size_t i) const {
  Point p;
  p.reserve(n_);
  for (auto v : cells_.at(i)) {
    Rational x = (Rational(v) + frac(1, 2)) * delta_;
    x.canonicalize();
    p.push_back(x);
  }
  return p;
}

Space Space::subspace(const Subset& s) const {
  if (!is_voxel()) {
    if (!has_coordinates()) {
      std::vector<std::vector<double>> m(s.size(), std::vector<double>(s.size()));
      for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) m[a][b] = net_distance(s[a], s[b]);
      return net_from_matrix(std::move(m), eps_net_);
    }
    std::vector<std::vector<double>> pts;
    for (auto i : s) pts.push_back(points_.at(i));
    return net(std::move(pts), metric_, eps_net_);
  }
  std::vector<IntPoint> cells;
  cells.reserve(s.size());
  for (auto i : s) cells.push_back(cells_.at(i));
  return voxel(n_, delta_, std::move(cells));
}

double Space::net_distance(std::size_t i, std::size_t j) const {
  if (is_voxel()) throw InputError("net_distance on a voxel space");
  if (i >= count_ || j >= count_) throw InputError("unknown point id");
  if (metric_ == Metric::matrix) return matrix_[i * count_ + j];
  return distance(points_[i], points_[j], metric_);
}

Rational linf_distance(const Point& p, const Point& q) {
  if (p.size() != q.size()) throw InputError("dimension mismatch");
  Rational best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational d = abs_q(p[i] - q[i]);
    if (d > best) best = d;
  }
  return best;
}

double distance(const std::vector<double>& p, const std::vector<double>& q, Metric metric) {
  if (p.size() != q.size()) throw InputError("dimension mismatch");
  double acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double d = std::fabs(p[i] - q[i]);
    switch (metric) {
      case Metric::linf: acc = std::max(acc, d); break;
      case Metric::l1: acc += d; break;
      case Metric::l2: acc += d * d; break;
      case Metric::matrix: throw InputError("explicit metric has no coordinates");
    }
  }
  return metric == Metric::l2 ? std::sqrt(acc) : acc;
}

namespace {

// Small-integer path for the cell distances: every input a/b with |a|, b < 2^20
// keeps all products below 2^101, so 128-bit arithmetic is exact.
using i128 = __int128;
constexpr long kSmall = 1L << 20;

bool small(const Rational& q, long& a, long& b) {
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) return false;
  a = q.get_num().get_si();
  b = q.get_den().get_si();
  return a > -kSmall && a < kSmall && b < kSmall;
}

// Per coordinate: signed gaps (lo - p, p - hi) as fractions over f*b.
template <class F>
std::optional<Rational> small_dist(const Point& p, const IntPoint& c, const Rational& delta, F pick) {
  long e, f;
  if (!small(delta, e, f)) return std::nullopt;
  i128 bn = 0, bd = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    long a, b;
    if (!small(p[i], a, b) || c[i] <= -kSmall || c[i] >= kSmall) return std::nullopt;
    i128 d = static_cast<i128>(f) * b;
    i128 lo = static_cast<i128>(c[i]) * e * b - static_cast<i128>(a) * f;  // lo - p, over d
    i128 hi = lo + static_cast<i128>(e) * b;                               // hi - p
    i128 n = pick(lo, hi);
    if (n * bd > bn * d) {
      bn = n;
      bd = d;
    }
  }
  Rational out(static_cast<long>(bn), static_cast<long>(bd));
  out.canonicalize();
  return out;
}

}  // namespace

Rational cell_min_dist(const Point& p, const IntPoint& c, const Rational& delta) {
  if (p.size() != c.size()) throw InputError("dimension mismatch");
  auto fast = small_dist(p, c, delta, [](i128 lo, i128 hi) -> i128 { return lo > 0 ? lo : (hi < 0 ? -hi : 0); });
  if (fast) return *fast;
  Rational best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational lo = Rational(c[i]) * delta, hi = Rational(c[i] + 1) * delta;
    Rational d = 0;
    if (p[i] < lo) d = lo - p[i];
    else if (p[i] > hi) d = p[i] - hi;
    if (d > best) best = d;
  }
  return best;
}

Rational cell_max_dist(const Point& p, const IntPoint& c, const Rational& delta) {
  if (p.size() != c.size()) throw InputError("dimension mismatch");
  auto fast = small_dist(p, c, delta, [](i128 lo, i128 hi) -> i128 {
    i128 a = lo < 0 ? -lo : lo, b = hi < 0 ? -hi : hi;
    return a > b ? a : b;
  });
  if (fast) return *fast;
  Rational best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational lo = Rational(c[i]) * delta, hi = Rational(c[i] + 1) * delta;
    Rational d = max_q(abs_q(p[i] - lo), abs_q(hi - p[i]));
    if (d > best) best = d;
  }
  return best;
}

double cell_min_dist_units(const std::vector<double>& p, const IntPoint& c) {
  double best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double lo = static_cast<double>(c[i]), hi = lo + 1;
    double d = p[i] < lo ? lo - p[i] : (p[i] > hi ? p[i] - hi : 0.0);
    best = std::max(best, d);
  }
  return best;
}

double cell_max_dist_units(const std::vector<double>& p, const IntPoint& c) {
  double best = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double lo = static_cast<double>(c[i]);
    best = std::max(best, std::max(std::fabs(p[i] - lo), std::fabs(lo + 1 - p[i])));
  }
  return best;
}

Ball min_enclosing_ball_linf(const std::vector<Point>& points) {
  if (points.empty()) throw InputError("min_enclosing_ball_linf of an empty set");
  std::size_t n = points[0].size();
  Point lo = points[0], hi = points[0];
  for (const auto& p : points) {
    if (p.size() != n) throw InputError("dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] < lo[i]) lo[i] = p[i];
      if (p[i] > hi[i]) hi[i] = p[i];
    }
  }
  Ball b;
  b.radius = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational mid = (lo[i] + hi[i]) / 2;
    mid.canonicalize();
    b.center.push_back(mid);
    Rational half = (hi[i] - lo[i]) / 2;
    if (half > b.radius) b.radius = half;
  }
  b.radius.canonicalize();
  return b;
}

CellTester::CellTester(const Ball& b, const Rational& delta)
    : ball_(&b), delta_(&delta), radius_(b.radius.get_d()), d_(delta.get_d()) {
  for (const auto& x : b.center) center_.push_back(x.get_d());
}

bool CellTester::contains(const IntPoint& c) const {
  double worst = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double lo = static_cast<double>(c[i]) * d_;
    worst = std::max({worst, std::fabs(lo - center_[i]), std::fabs(lo + d_ - center_[i])});
  }
  double margin = 1e-9 * (1 + std::fabs(radius_) + worst);
  if (worst < radius_ - margin) return true;
  if (worst > radius_ + margin) return false;
  return cell_max_dist(ball_->center, c, *delta_) <= ball_->radius;
}

bool contains_cell(const Ball& b, const IntPoint& c, const Rational& delta) { return CellTester(b, delta).contains(c); }

bool contains_element(const Ball& b, const Space& s, std::size_t i) {
  if (s.is_voxel()) return contains_cell(b, s.cell(i), s.delta());
  double r = to_double(b.radius);
  double d;
  if (b.center_id) {
    d = s.net_distance(*b.center_id, i);
  } else {
    if (!s.has_coordinates()) throw InputError("net ball without a center id on an explicit metric");
    std::vector<double> c;
    for (const auto& x : b.center) c.push_back(to_double(x));
    d = distance(c, s.point(i), s.metric());
  }
  return d <= r + kTau * std::max(1.0, r);
}

Subset ball_members(const Ball& b, const Space& s) {
  if (s.is_voxel() && static_cast<int>(b.center.size()) != s.dim())
    throw InputError("ball dimension differs from the space");
  Subset out;
  if (s.is_voxel()) {
    CellTester t(b, s.delta());
    for (std::size_t i = 0; i < s.size(); ++i)
      if (t.contains(s.cell(i))) out.push_back(i);
    return out;
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    if (contains_element(b, s, i)) out.push_back(i);
  return out;
}

Space neighborhood(const Space& s, const Rational& rho) {
  if (!s.is_voxel()) throw InputError("neighborhood is only defined for voxel spaces");
  if (rho < 0) throw InputError("neighborhood radius must be >= 0");
  Rational kq = ceil_q(rho / s.delta());
  std::int64_t k = kq.get_num().get_si();
  std::set<IntPoint> out;
  int n = s.dim();
  for (const auto& c : s.cells()) {
    IntPoint off(n, -k);
    while (true) {
      IntPoint q = c;
      for (int i = 0; i < n; ++i) q[i] += off[i];
      out.insert(q);
      int i = 0;
      while (i < n && off[i] == k) off[i++] = -k;
      if (i == n) break;
      ++off[i];
    }
  }
  return Space::voxel(n, s.delta(), std::vector<IntPoint>(out.begin(), out.end()));
}

BallFamily BallFamily::centers_in(std::vector<Point> w) {
  if (w.empty()) throw InputError("CentersIn with an empty point set");
  BallFamily f;
  f.parts.push_back(CentersIn{std::move(w), {}});
  return f;
}

BallFamily BallFamily::centers_in_ids(std::vector<std::size_t> ids) {
  if (ids.empty()) throw InputError("CentersIn with an empty point set");
  BallFamily f;
  f.parts.push_back(CentersIn{{}, std::move(ids)});
  return f;
}

BallFamily BallFamily::fixed(std::vector<Ball> q) {
  for (const auto& b : q)
    if (b.radius < 0) throw InputError("fixed family ball with negative radius");
  BallFamily f;
  f.parts.push_back(FixedBalls{std::move(q)});
  return f;
}

BallFamily BallFamily::radius_capped(Rational r_max) {
  if (r_max <= 0) throw InputError("radius cap must be positive");
  BallFamily f;
  f.parts.push_back(RadiusCapped{std::move(r_max)});
  return f;
}

BallFamily BallFamily::intersect(const BallFamily& other) const {
  BallFamily f = *this;
  f.parts.insert(f.parts.end(), other.parts.begin(), other.parts.end());
  return f;
}

const FixedBalls* BallFamily::fixed_part() const {
  for (const auto& p : parts)
    if (auto* f = std::get_if<FixedBalls>(&p)) return f;
  return nullptr;
}

std::optional<Rational> BallFamily::radius_cap() const {
  std::optional<Rational> cap;
  for (const auto& p : parts)
    if (auto* r = std::get_if<RadiusCapped>(&p))
      if (!cap || r->r_max < *cap) cap = r->r_max;
  return cap;
}

std::string BallFamily::describe() const {
  if (parts.empty()) return "all-grid";
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "&";
    if (std::holds_alternative<AllGrid>(p)) out += "all-grid";
    else if (auto* c = std::get_if<CentersIn>(&p))
      out += "centers-in(" + std::to_string(c->points.size() + c->ids.size()) + ")";
    else if (auto* f = std::get_if<FixedBalls>(&p))
      out += "fixed(" + std::to_string(f->balls.size()) + ")";
    else if (auto* r = std::get_if<RadiusCapped>(&p))
      out += "radius-capped(" + to_string(r->r_max) + ")";
  }
  return out;
}

Value covering_cost(const std::vector<Ball>& balls, double m) {
  Value total = is_integral_exponent(m) ? Value::of(Rational(0)) : Value::of(0.0);
  for (const auto& b : balls) total = total + power(b.radius, m);
  return total;
}

bool covers(const Space& s, const Subset& target, const std::vector<Ball>& balls) {
  if (s.is_voxel()) {
    std::vector<CellTester> t;
    for (const auto& b : balls) {
      if (static_cast<int>(b.center.size()) != s.dim()) throw InputError("ball dimension differs from the space");
      t.emplace_back(b, s.delta());
    }
    for (auto i : target)
      if (std::none_of(t.begin(), t.end(), [&](const CellTester& x) { return x.contains(s.cell(i)); })) return false;
    return true;
  }
  for (auto i : target) {
    bool hit = false;
    for (const auto& b : balls)
      if (contains_element(b, s, i)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

}  // namespace hcf
