#include "hcf/cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "hcf/errors.hpp"

namespace hcf {

namespace {

// Occupancy of the target's bounding box with an n-dimensional prefix-sum table.
class DenseGrid {
 public:
  DenseGrid(const Space& s, const Subset& target) : n_(s.dim()) {
    lo_ = s.cell(target[0]);
    hi_ = lo_;
    for (auto e : target)
      for (int i = 0; i < n_; ++i) {
        lo_[i] = std::min(lo_[i], s.cell(e)[i]);
        hi_[i] = std::max(hi_[i], s.cell(e)[i]);
      }
    len_.resize(n_);
    double vol = 1;
    for (int i = 0; i < n_; ++i) {
      len_[i] = hi_[i] - lo_[i] + 1;
      vol *= static_cast<double>(len_[i] + 1);
    }
    if (vol > 2.0e7) throw InputError("target bounding box too large for grid-ball enumeration");
    stride_.assign(n_, 1);
    pstride_.assign(n_, 1);
    for (int i = 1; i < n_; ++i) {
      stride_[i] = stride_[i - 1] * len_[i - 1];
      pstride_[i] = pstride_[i - 1] * (len_[i - 1] + 1);
    }
    std::size_t cells = static_cast<std::size_t>(stride_[n_ - 1] * len_[n_ - 1]);
    pos_.assign(cells, -1);
    for (std::size_t t = 0; t < target.size(); ++t) pos_[flat(s.cell(target[t]))] = static_cast<std::int32_t>(t);
    std::size_t pcells = static_cast<std::size_t>(pstride_[n_ - 1] * (len_[n_ - 1] + 1));
    prefix_.assign(pcells, 0);
    // prefix_[x] = number of occupied cells with relative coords < x (componentwise).
    IntPoint x(n_, 0);
    for (std::size_t f = 0; f < pcells; ++f) {
      std::int64_t rem = static_cast<std::int64_t>(f);
      bool zero = false;
      for (int i = n_ - 1; i >= 0; --i) {
        x[i] = rem / pstride_[i];
        rem %= pstride_[i];
        if (x[i] == 0) zero = true;
      }
      if (zero) continue;
      std::int64_t v = 0;
      std::size_t base = 0;
      for (int i = 0; i < n_; ++i) base += static_cast<std::size_t>((x[i] - 1) * stride_[i]);
      v = pos_[base] >= 0 ? 1 : 0;
      // inclusion-exclusion over the 2^n - 1 lower neighbours
      for (unsigned mask = 1; mask < (1u << n_); ++mask) {
        std::size_t g = 0;
        int bits = 0;
        for (int i = 0; i < n_; ++i) {
          std::int64_t c = x[i] - ((mask >> i) & 1);
          bits += (mask >> i) & 1;
          g += static_cast<std::size_t>(c * pstride_[i]);
        }
        v += (bits & 1) ? prefix_[g] : -prefix_[g];
      }
      prefix_[f] = static_cast<std::int32_t>(v);
    }
  }

  const IntPoint& lo() const { return lo_; }
  const IntPoint& hi() const { return hi_; }
  std::int64_t extent(int i) const { return len_[i]; }

  // Occupied cells in the inclusive box [a, b] (absolute coords).
  std::int64_t count(const IntPoint& a, const IntPoint& b) const {
    IntPoint ra(n_), rb(n_);
    for (int i = 0; i < n_; ++i) {
      ra[i] = std::max(a[i], lo_[i]) - lo_[i];
      rb[i] = std::min(b[i], hi_[i]) - lo_[i] + 1;
      if (ra[i] >= rb[i]) return 0;
    }
    std::int64_t v = 0;
    for (unsigned mask = 0; mask < (1u << n_); ++mask) {
      std::size_t g = 0;
      int low = 0;
      for (int i = 0; i < n_; ++i) {
        bool take_low = (mask >> i) & 1;
        low += take_low;
        g += static_cast<std::size_t>((take_low ? ra[i] : rb[i]) * pstride_[i]);
      }
      v += (low & 1) ? -prefix_[g] : prefix_[g];
    }
    return v;
  }

  // Target positions inside the inclusive box [a, b].
  void members(const IntPoint& a, const IntPoint& b, Bitset& out) const {
    IntPoint ra(n_), rb(n_);
    for (int i = 0; i < n_; ++i) {
      ra[i] = std::max(a[i], lo_[i]) - lo_[i];
      rb[i] = std::min(b[i], hi_[i]) - lo_[i];
      if (ra[i] > rb[i]) return;
    }
    IntPoint x = ra;
    while (true) {
      std::size_t f = 0;
      for (int i = 0; i < n_; ++i) f += static_cast<std::size_t>(x[i] * stride_[i]);
      if (pos_[f] >= 0) out.set(static_cast<std::size_t>(pos_[f]));
      int i = 0;
      while (i < n_ && x[i] == rb[i]) {
        x[i] = ra[i];
        ++i;
      }
      if (i == n_) break;
      ++x[i];
    }
  }

 private:
  std::size_t flat(const IntPoint& c) const {
    std::size_t f = 0;
    for (int i = 0; i < n_; ++i) f += static_cast<std::size_t>((c[i] - lo_[i]) * stride_[i]);
    return f;
  }

  int n_;
  IntPoint lo_, hi_;
  std::vector<std::int64_t> len_, stride_, pstride_;
  std::vector<std::int32_t> pos_;
  std::vector<std::int32_t> prefix_;
};

struct Raw {
  Ball ball;
  std::optional<GridBall> grid;
  Bitset members;
  double weight;
  bool integral_weight;
};

double side_weight(std::int64_t side, double m) { return std::pow(static_cast<double>(side), m); }

bool admitted(const Ball& b, const BallFamily& fam, const Space& s) {
  for (const auto& part : fam.parts) {
    if (auto* c = std::get_if<CentersIn>(&part)) {
      bool ok = false;
      if (b.center_id)
        ok = std::find(c->ids.begin(), c->ids.end(), *b.center_id) != c->ids.end();
      if (!ok && !b.center.empty())
        ok = std::find(c->points.begin(), c->points.end(), b.center) != c->points.end();
      if (!ok) return false;
    } else if (auto* f = std::get_if<FixedBalls>(&part)) {
      bool ok = false;
      for (const auto& q : f->balls)
        if (q.radius == b.radius && ((!q.center.empty() && q.center == b.center) ||
                                     (q.center_id && b.center_id && *q.center_id == *b.center_id))) {
          ok = true;
          break;
        }
      if (!ok) return false;
    } else if (auto* r = std::get_if<RadiusCapped>(&part)) {
      if (b.radius > r->r_max) return false;
    }
  }
  (void)s;
  return true;
}

void voxel_all_grid(const Space& s, const Subset& target, double m, std::int64_t max_side, std::vector<Raw>& out) {
  DenseGrid g(s, target);
  int n = s.dim();
  std::int64_t K = 1;
  for (int i = 0; i < n; ++i) K = std::max(K, g.extent(i));
  K = std::min(K, max_side);
  const IntPoint& Lo = g.lo();
  const IntPoint& Hi = g.hi();
  IntPoint a(n), b(n);
  for (std::int64_t k = 1; k <= K; ++k) {
    IntPoint lo = Lo;
    while (true) {
      bool keep = true, tight = false;
      for (int i = 0; i < n && keep; ++i) {
        for (int j = 0; j < n; ++j) {
          a[j] = lo[j];
          b[j] = lo[j] + k - 1;
        }
        a[i] = b[i] = lo[i];
        std::int64_t low = g.count(a, b);
        a[i] = b[i] = lo[i] + k - 1;
        std::int64_t high = g.count(a, b);
        a[i] = b[i] = lo[i] - 1;
        std::int64_t below = g.count(a, b);
        if (low == 0 || (high == 0 && below > 0)) keep = false;
        if (high > 0) tight = true;
      }
      if (keep && tight) {
        for (int j = 0; j < n; ++j) {
          a[j] = lo[j];
          b[j] = lo[j] + k - 1;
        }
        Raw r;
        r.grid = GridBall{lo, k};
        r.ball = to_ball(*r.grid, s.delta());
        r.members = Bitset(target.size());
        g.members(a, b, r.members);
        r.weight = side_weight(k, m);
        r.integral_weight = is_integral_exponent(m);
        out.push_back(std::move(r));
      }
      int i = 0;
      while (i < n && lo[i] == Hi[i]) {
        lo[i] = Lo[i];
        ++i;
      }
      if (i == n) break;
      ++lo[i];
    }
  }
}

void voxel_centers(const Space& s, const Subset& target, double m, const std::vector<Point>& centers,
                   std::int64_t max_side, std::vector<Raw>& out) {
  DenseGrid g(s, target);
  int n = s.dim();
  IntPoint a(n), b(n);
  for (const auto& c : centers) {
    if (static_cast<int>(c.size()) != n) throw InputError("center dimension differs from the space");
    IntPoint h(n);
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      Rational q = 2 * c[i] / s.delta();
      q.canonicalize();
      if (q.get_den() != 1) ok = false;
      else h[i] = q.get_num().get_si();
    }
    if (!ok) continue;  // not a half-grid point: no grid ball has this center
    int parity = static_cast<int>(((h[0] % 2) + 2) % 2);
    bool same = true;
    for (int i = 1; i < n; ++i)
      if (((h[i] % 2) + 2) % 2 != parity) same = false;
    if (!same) continue;
    std::int64_t kmax = 1;
    for (int i = 0; i < n; ++i)
      kmax = std::max({kmax, h[i] - 2 * g.lo()[i], 2 * (g.hi()[i] + 1) - h[i]});
    kmax = std::min(kmax + 1, max_side);
    std::int64_t prev = -1;
    for (std::int64_t k = parity == 0 ? 2 : 1; k <= kmax; k += 2) {
      IntPoint lo(n);
      for (int i = 0; i < n; ++i) {
        lo[i] = (h[i] - k) / 2;
        a[i] = lo[i];
        b[i] = lo[i] + k - 1;
      }
      std::int64_t cnt = g.count(a, b);
      if (cnt == 0 || cnt == prev) continue;
      prev = cnt;
      Raw r;
      r.grid = GridBall{lo, k};
      r.ball = to_ball(*r.grid, s.delta());
      r.members = Bitset(target.size());
      g.members(a, b, r.members);
      r.weight = side_weight(k, m);
      r.integral_weight = is_integral_exponent(m);
      out.push_back(std::move(r));
    }
  }
}

void voxel_fixed(const Space& s, const Subset& target, double m, const std::vector<Ball>& balls, std::vector<Raw>& out) {
  for (const auto& q : balls) {
    if (static_cast<int>(q.center.size()) != s.dim()) throw InputError("fixed ball dimension differs from the space");
    if (q.radius <= 0) continue;
    Raw r;
    r.ball = q;
    r.grid = as_grid_ball(q, s.delta());
    r.members = Bitset(target.size());
    CellTester tester(q, s.delta());
    for (std::size_t t = 0; t < target.size(); ++t)
      if (tester.contains(s.cell(target[t]))) r.members.set(t);
    if (r.members.none()) continue;
    Rational k = 2 * q.radius / s.delta();
    k.canonicalize();
    r.weight = std::pow(to_double(k), m);
    r.integral_weight = is_integral_exponent(m) && k.get_den() == 1;
    out.push_back(std::move(r));
  }
}

void net_candidates(const Space& s, const Subset& target, double m, const std::vector<std::size_t>& centers,
                    std::vector<Raw>& out) {
  for (auto c : centers) {
    if (c >= s.size()) throw InputError("unknown point id in family");
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t t = 0; t < target.size(); ++t) d.push_back({s.net_distance(c, target[t]), t});
    std::sort(d.begin(), d.end());
    Bitset mem(target.size());
    std::size_t i = 0;
    while (i < d.size()) {
      double r = d[i].first;
      while (i < d.size() && d[i].first <= r + kTau * std::max(1.0, r)) mem.set(d[i++].second);
      // the ball must also cover the eps_net-ball each net point stands for
      double rad = r + s.eps_net();
      Raw raw;
      raw.ball.radius = from_double(rad);
      raw.ball.center_id = c;
      if (s.has_coordinates())
        for (double x : s.point(c)) raw.ball.center.push_back(from_double(x));
      raw.members = mem;
      raw.weight = std::pow(rad, m);
      raw.integral_weight = false;
      out.push_back(std::move(raw));
    }
  }
}

void net_fixed(const Space& s, const Subset& target, double m, const std::vector<Ball>& balls, std::vector<Raw>& out) {
  for (const auto& q : balls) {
    Raw r;
    r.ball = q;
    r.members = Bitset(target.size());
    for (std::size_t t = 0; t < target.size(); ++t)
      if (contains_element(q, s, target[t])) r.members.set(t);
    if (r.members.none()) continue;
    r.weight = std::pow(to_double(q.radius), m);
    r.integral_weight = false;
    out.push_back(std::move(r));
  }
}

bool raw_less(const Raw& a, const Raw& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  if (a.grid && b.grid) return grid_less(*a.grid, *b.grid);
  if (a.ball.center_id && b.ball.center_id && *a.ball.center_id != *b.ball.center_id)
    return *a.ball.center_id < *b.ball.center_id;
  if (a.ball.radius != b.ball.radius) return a.ball.radius < b.ball.radius;
  return a.ball.center < b.ball.center;
}

}  // namespace

CandidateSet generate_candidates(const Space& s, const Subset& target, double m, const BallFamily& family,
                                 const SolverOptions& opt) {
  if (target.empty()) throw InputError("empty target");
  if (!(m > 0)) throw InputError("m must be positive");
  for (auto e : target)
    if (e >= s.size()) throw InputError("target element out of range");
  std::vector<Raw> raw;
  const FixedBalls* fixed = family.fixed_part();
  const CentersIn* centers = nullptr;
  for (const auto& p : family.parts)
    if (auto* c = std::get_if<CentersIn>(&p)) {
      if (c->points.empty() && c->ids.empty()) throw InputError("CentersIn with an empty point set");
      centers = c;
    }
  auto cap = family.radius_cap();
  if (s.is_voxel()) {
    std::int64_t max_side = std::numeric_limits<std::int64_t>::max();
    if (cap) {
      Rational k = floor_q(2 * *cap / s.delta());
      max_side = k.get_num().get_si();
    }
    if (fixed) voxel_fixed(s, target, m, fixed->balls, raw);
    else if (centers) voxel_centers(s, target, m, centers->points, max_side, raw);
    else voxel_all_grid(s, target, m, max_side, raw);
  } else {
    if (fixed) net_fixed(s, target, m, fixed->balls, raw);
    else {
      std::vector<std::size_t> ids;
      if (centers) ids = centers->ids;
      else
        for (std::size_t i = 0; i < s.size(); ++i) ids.push_back(i);
      net_candidates(s, target, m, ids, raw);
    }
  }
  std::vector<Raw> filtered;
  for (auto& r : raw)
    if (admitted(r.ball, family, s)) filtered.push_back(std::move(r));
  std::stable_sort(filtered.begin(), filtered.end(), raw_less);

  // Identical member sets: keep the first (cheapest, lexicographically least).
  std::vector<Raw> uniq;
  {
    std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
    for (auto& r : filtered) {
      if (seen.count(r.members)) continue;
      seen[r.members] = uniq.size();
      uniq.push_back(std::move(r));
    }
  }
  std::vector<char> drop(uniq.size(), 0);
  if (uniq.size() <= opt.domination_limit) {
    std::vector<std::size_t> sizes(uniq.size());
    for (std::size_t j = 0; j < uniq.size(); ++j) sizes[j] = uniq[j].members.count();
    for (std::size_t j = 0; j < uniq.size(); ++j)
      for (std::size_t k = 0; k < uniq.size() && !drop[j]; ++k) {
        if (k == j || drop[k] || uniq[k].weight > uniq[j].weight || sizes[k] <= sizes[j]) continue;
        if (uniq[j].members.subset_of(uniq[k].members)) drop[j] = 1;
      }
  }
  CandidateSet out;
  out.integral = true;
  bool all_grid = s.is_voxel();
  for (std::size_t j = 0; j < uniq.size(); ++j) {
    if (drop[j]) continue;
    out.balls.push_back(uniq[j].ball);
    if (uniq[j].grid) out.grid.push_back(*uniq[j].grid);
    else all_grid = false;
    out.members.push_back(std::move(uniq[j].members));
    out.weights.push_back(uniq[j].weight);
    out.integral = out.integral && uniq[j].integral_weight;
  }
  if (!all_grid) out.grid.clear();
  return out;
}

double projection_bound_units(const std::vector<IntPoint>& cells, double m) {
  if (cells.empty()) return 0;
  int n = static_cast<int>(cells[0].size());
  double best = 0;
  std::vector<std::int64_t> key;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int k = __builtin_popcount(mask);
    std::vector<std::vector<std::int64_t>> proj;
    proj.reserve(cells.size());
    for (const auto& c : cells) {
      key.clear();
      for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1) key.push_back(c[i]);
      proj.push_back(key);
    }
    std::sort(proj.begin(), proj.end());
    std::size_t nj = static_cast<std::size_t>(std::unique(proj.begin(), proj.end()) - proj.begin());
    double v = std::pow(static_cast<double>(nj), std::min(1.0, m / k));
    best = std::max(best, v);
  }
  return best;
}

namespace {

SetCoverProblem make_problem(const Space& s, const Subset& target, double m, const CandidateSet& c) {
  SetCoverProblem p;
  p.elements = target.size();
  p.sets = c.members;
  p.weights = c.weights;
  p.integral = c.integral;
  if (s.is_voxel() && !c.grid.empty() && c.grid.size() == c.balls.size()) {
    std::vector<IntPoint> cells;
    cells.reserve(target.size());
    for (auto e : target) cells.push_back(s.cell(e));
    p.extra_bound = [cells = std::move(cells), m](const Bitset& u) {
      std::vector<IntPoint> sub;
      u.for_each([&](std::size_t i) { sub.push_back(cells[i]); });
      return projection_bound_units(sub, m);
    };
  }
  return p;
}

Value units_to_value(double units, const Space& s, double m, bool integral) {
  Rational u = s.delta() / 2;
  u.canonicalize();
  if (integral) {
    Rational q(static_cast<long>(std::llround(units)));
    return Value::of(q * pow_int(u, static_cast<std::int64_t>(m)));
  }
  return Value::of(units * std::pow(to_double(u), m));
}

ContentResult assemble(const Space& s, const Subset& target, double m, const BallFamily& family, const CandidateSet& c,
                       const SetCoverSolution& sol) {
  ContentResult r;
  r.m = m;
  r.family = family.describe();
  r.candidates = c.balls.size();
  r.nodes = sol.nodes;
  r.witness.m = m;
  for (auto j : sol.chosen) r.witness.balls.push_back(c.balls[j]);
  r.witness.cost = covering_cost(r.witness.balls, m);
  r.certificate.lp_dual_value = sol.dual_value;
  r.certificate.volume_value = sol.extra_value;
  r.certificate.dual = sol.dual;
  r.certificate.kind = sol.bound_kind;
  if (s.is_voxel()) {
    bool exact = c.integral && sol.cost < 9.0e15;
    r.exact_arithmetic = exact && is_integral_exponent(m);
    r.upper = r.exact_arithmetic ? r.witness.cost : units_to_value(sol.cost, s, m, false);
    r.lower = units_to_value(sol.lower, s, m, r.exact_arithmetic);
    r.optimal = sol.optimal;
    if (r.optimal) r.lower = r.upper;
  } else {
    r.upper = Value::of(sol.cost);
    double low = 0;
    for (const auto& b : r.witness.balls) low += std::pow(std::max(0.0, to_double(b.radius) - s.eps_net()), m);
    r.lower = Value::of(std::min(low, sol.cost));
    r.optimal = false;
    r.certificate.kind = "net-deflation";
  }
  (void)target;
  return r;
}

}  // namespace

ContentResult exact_content(const Space& s, const Subset& target, double m, const BallFamily& family,
                            const SolverOptions& opt) {
  CandidateSet c = generate_candidates(s, target, m, family, opt);
  SetCoverProblem p = make_problem(s, target, m, c);
  check_coverable(p);
  SetCoverSolution sol = solve_exact(p, opt.node_budget);
  return assemble(s, target, m, family, c, sol);
}

ContentResult greedy_content(const Space& s, const Subset& target, double m, const BallFamily& family,
                             const SolverOptions& opt) {
  CandidateSet c = generate_candidates(s, target, m, family, opt);
  SetCoverProblem p = make_problem(s, target, m, c);
  SetCoverSolution sol = solve_greedy(p);
  sol.optimal = false;
  ContentResult r = assemble(s, target, m, family, c, sol);
  r.optimal = false;
  return r;
}

Value volume_lower_bound(const Space& s, const Subset& target, double m) {
  if (!s.is_voxel()) throw InputError("volume_lower_bound needs a voxel space");
  if (!(m > 0)) throw InputError("m must be positive");
  int n = s.dim();
  Rational u = s.delta() / 2;
  u.canonicalize();
  Rational N(static_cast<long>(target.size()));
  if (m > n) {
    if (is_integral_exponent(m)) return Value::of(N * pow_int(u, static_cast<std::int64_t>(m)));
    return Value::of(to_double(N) * std::pow(to_double(u), m));
  }
  // (N delta^n)^{m/n} / 2^m = N^{m/n} (delta/2)^m; exact when N^{m/n} is rational.
  if (is_integral_exponent(m)) {
    std::int64_t mi = static_cast<std::int64_t>(m);
    mpz_class num = N.get_num(), root;
    if (mi == n || mpz_root(root.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n)) != 0) {
      Rational base = (mi == n) ? N : Rational(root);
      Rational val = (mi == n) ? N : pow_int(base, mi);
      return Value::of(val * pow_int(u, mi));
    }
  }
  return Value::of(std::pow(to_double(N), m / n) * std::pow(to_double(u), m));
}

BallScan content_ball_scan(const Space& s, double m, const Rational& R, const SolverOptions& opt) {
  if (R <= 0) throw InputError("scan radius must be positive");
  BallScan scan;
  std::map<Subset, ContentResult> cache;
  double Rm = std::pow(to_double(R), m);
  for (std::size_t i = 0; i < s.size(); ++i) {
    BallScanEntry e;
    e.center_element = i;
    Subset mem;
    if (s.is_voxel()) {
      e.center = s.cell_center(i);
      for (std::size_t j = 0; j < s.size(); ++j)
        if (cell_min_dist(e.center, s.cell(j), s.delta()) <= R) mem.push_back(j);
    } else {
      double r = to_double(R);
      for (std::size_t j = 0; j < s.size(); ++j)
        if (s.net_distance(i, j) <= r + kTau * std::max(1.0, r)) mem.push_back(j);
    }
    auto it = cache.find(mem);
    if (it == cache.end()) it = cache.emplace(mem, exact_content(s, mem, m, {}, opt)).first;
    e.members = mem;
    e.content = it->second;
    scan.max_ratio = std::max(scan.max_ratio, e.content.upper.approx / Rm);
    scan.entries.push_back(std::move(e));
  }
  return scan;
}

bool pairwise_disjoint(const std::vector<Ball>& balls) {
  for (std::size_t a = 0; a < balls.size(); ++a)
    for (std::size_t b = a + 1; b < balls.size(); ++b)
      if (linf_distance(balls[a].center, balls[b].center) <= balls[a].radius + balls[b].radius) return false;
  return true;
}

std::vector<Ball> merge_to_disjoint(std::vector<Ball> balls, double e) {
  if (!(e > 0) || e > 1) throw InputError("merge_to_disjoint needs an exponent in (0, 1]");
  while (true) {
    bool merged = false;
    for (std::size_t a = 0; a < balls.size() && !merged; ++a)
      for (std::size_t b = a + 1; b < balls.size() && !merged; ++b) {
        const Ball& k = balls[a];
        const Ball& l = balls[b];
        if (linf_distance(k.center, l.center) > k.radius + l.radius) continue;
        Rational R = k.radius + l.radius;
        Ball out;
        out.radius = R;
        if (R == 0) {
          out.center = k.center;
        } else {
          // center = p_k + (r_l/R)(p_l - p_k): within r_l of p_k and within r_k of p_l
          Rational t = l.radius / R;
          for (std::size_t i = 0; i < k.center.size(); ++i) {
            Rational c = k.center[i] + t * (l.center[i] - k.center[i]);
            c.canonicalize();
            out.center.push_back(c);
          }
        }
        out.radius.canonicalize();
        balls.erase(balls.begin() + static_cast<std::ptrdiff_t>(b));
        balls[a] = std::move(out);
        merged = true;
      }
    if (!merged) break;
  }
  return balls;
}

}  // namespace hcf
