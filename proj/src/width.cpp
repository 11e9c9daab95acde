#include "hcf/width.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "hcf/errors.hpp"
#include "hcf/fixtures.hpp"
#include "hcf/json_util.hpp"

namespace hcf {

using nlohmann::json;

namespace {

using I64 = std::int64_t;

// Closed box in units of delta/2; cell c is [2c, 2c + 2].
struct IBox {
  std::vector<I64> lo, hi;
  bool operator<(const IBox& o) const { return lo != o.lo ? lo < o.lo : hi < o.hi; }
  bool operator==(const IBox& o) const { return lo == o.lo && hi == o.hi; }
};

struct KeyHash {
  std::size_t operator()(const IntPoint& p) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

class Grid {
 public:
  explicit Grid(const Space& s) : s_(s), n_(s.dim()) {
    for (std::size_t i = 0; i < s.size(); ++i) index_[s.cell(i)] = i;
  }
  const Space& space() const { return s_; }
  int n() const { return n_; }
  std::size_t size() const { return s_.size(); }
  const IntPoint& cell(std::size_t i) const { return s_.cell(i); }

  // Cells whose closed box meets b.
  std::vector<std::size_t> meeting(const IBox& b) const {
    std::vector<I64> lo(n_), hi(n_);
    double vol = 1;
    for (int d = 0; d < n_; ++d) {
      lo[d] = floor_div(b.lo[d] - 2, 2) + ((b.lo[d] - 2) % 2 != 0 ? 1 : 0);
      hi[d] = floor_div(b.hi[d], 2);
      if (hi[d] < lo[d]) return {};
      vol *= static_cast<double>(hi[d] - lo[d] + 1);
    }
    std::vector<std::size_t> out;
    if (vol > 4.0 * static_cast<double>(size())) {
      for (std::size_t i = 0; i < size(); ++i) {
        bool ok = true;
        for (int d = 0; d < n_ && ok; ++d) ok = cell(i)[d] >= lo[d] && cell(i)[d] <= hi[d];
        if (ok) out.push_back(i);
      }
      return out;
    }
    IntPoint c = lo;
    while (true) {
      auto it = index_.find(c);
      if (it != index_.end()) out.push_back(it->second);
      int d = 0;
      while (d < n_ && c[d] == hi[d]) c[d] = lo[d], ++d;
      if (d == n_) break;
      ++c[d];
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool inside(const IBox& b, std::size_t i) const {
    for (int d = 0; d < n_; ++d)
      if (2 * cell(i)[d] < b.lo[d] || 2 * cell(i)[d] + 2 > b.hi[d]) return false;
    return true;
  }

  std::vector<std::size_t> inside_cells(const IBox& b) const {
    std::vector<std::size_t> out;
    for (auto i : meeting(b))
      if (inside(b, i)) out.push_back(i);
    return out;
  }

  // Smallest cube (even side) holding the given cells.
  IBox enclosing(const std::vector<std::size_t>& cells) const {
    std::vector<I64> lo(n_, std::numeric_limits<I64>::max()), hi(n_, std::numeric_limits<I64>::min());
    for (auto i : cells)
      for (int d = 0; d < n_; ++d) {
        lo[d] = std::min(lo[d], 2 * cell(i)[d]);
        hi[d] = std::max(hi[d], 2 * cell(i)[d] + 2);
      }
    I64 side = 0;
    for (int d = 0; d < n_; ++d) side = std::max(side, hi[d] - lo[d]);
    IBox b;
    for (int d = 0; d < n_; ++d) {
      I64 slack = side - (hi[d] - lo[d]);
      b.lo.push_back(lo[d] - slack / 2);
      b.hi.push_back(b.lo.back() + side);
    }
    return b;
  }

  static I64 floor_div(I64 a, I64 b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

 private:
  const Space& s_;
  int n_;
  std::unordered_map<IntPoint, std::size_t, KeyHash> index_;
};

struct Eval {
  bool covers = false;
  std::size_t mult = 0;
  I64 fiber = 0;  // half units
  std::set<std::vector<std::size_t>> simplices;
  std::vector<I64> star;
  std::vector<std::size_t> argmax;
};

Eval evaluate(const Grid& g, const std::vector<IBox>& balls, bool collect) {
  const int n = g.n();
  Eval e;
  std::vector<std::vector<std::size_t>> at(g.size());
  // bbox of ball ∩ space
  std::vector<std::vector<I64>> blo(balls.size()), bhi(balls.size());
  std::vector<char> covered(g.size(), 0);
  for (std::size_t b = 0; b < balls.size(); ++b) {
    blo[b].assign(n, std::numeric_limits<I64>::max());
    bhi[b].assign(n, std::numeric_limits<I64>::min());
    for (auto i : g.meeting(balls[b])) {
      at[i].push_back(b);
      if (g.inside(balls[b], i)) covered[i] = 1;
      for (int d = 0; d < n; ++d) {
        blo[b][d] = std::min(blo[b][d], std::max(balls[b].lo[d], 2 * g.cell(i)[d]));
        bhi[b][d] = std::max(bhi[b][d], std::min(balls[b].hi[d], 2 * g.cell(i)[d] + 2));
      }
    }
  }
  e.covers = std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
  if (collect) e.star.assign(balls.size(), 0);
  auto fiber_of = [&](const std::vector<std::size_t>& s) {
    I64 f = 0;
    for (int d = 0; d < n; ++d) {
      I64 lo = std::numeric_limits<I64>::max(), hi = std::numeric_limits<I64>::min();
      for (auto b : s) lo = std::min(lo, blo[b][d]), hi = std::max(hi, bhi[b][d]);
      f = std::max(f, hi - lo);
    }
    return f;
  };
  auto record = [&](std::vector<std::size_t> s) {
    e.mult = std::max(e.mult, s.size());
    I64 f = fiber_of(s);
    if (f > e.fiber || e.argmax.empty()) {
      e.argmax = s;
      e.fiber = f;
    }
    if (collect) {
      for (auto b : s) e.star[b] = std::max(e.star[b], f);
      e.simplices.insert(std::move(s));
    }
  };
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& L = at[i];
    if (L.empty()) continue;
    if (L.size() == 1) {
      record(L);
      continue;
    }
    // Boxes have Helly number 2, so every maximal clique is the set of balls
    // through the point whose coordinates are the largest lower ends.
    std::vector<std::vector<I64>> cand(n);
    std::vector<std::vector<I64>> clo(L.size(), std::vector<I64>(n)), chi(L.size(), std::vector<I64>(n));
    for (std::size_t t = 0; t < L.size(); ++t)
      for (int d = 0; d < n; ++d) {
        clo[t][d] = std::max(balls[L[t]].lo[d], 2 * g.cell(i)[d]);
        chi[t][d] = std::min(balls[L[t]].hi[d], 2 * g.cell(i)[d] + 2);
        cand[d].push_back(clo[t][d]);
      }
    for (auto& c : cand) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::vector<std::size_t> idx(n, 0);
    std::set<std::vector<std::size_t>> seen;
    while (true) {
      std::vector<std::size_t> s;
      for (std::size_t t = 0; t < L.size(); ++t) {
        bool in = true;
        for (int d = 0; d < n && in; ++d) in = clo[t][d] <= cand[d][idx[d]] && cand[d][idx[d]] <= chi[t][d];
        if (in) s.push_back(L[t]);
      }
      if (!s.empty() && seen.insert(s).second) record(s);
      int d = 0;
      while (d < n && idx[d] + 1 == cand[d].size()) idx[d] = 0, ++d;
      if (d == n) break;
      ++idx[d];
    }
  }
  if (collect) {
    // keep maximal simplices only
    std::set<std::vector<std::size_t>> maximal;
    for (const auto& s : e.simplices) {
      bool sub = false;
      for (const auto& t : e.simplices)
        if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
          sub = true;
          break;
        }
      if (!sub) maximal.insert(s);
    }
    e.simplices = std::move(maximal);
  }
  return e;
}

IBox to_ibox(const Ball& b, const Rational& delta) {
  IBox x;
  for (const auto& c : b.center) {
    Rational lo = (c - b.radius) * 2 / delta, hi = (c + b.radius) * 2 / delta;
    lo.canonicalize();
    hi.canonicalize();
    if (lo.get_den() != 1 || hi.get_den() != 1) throw InputError("width needs balls on the half grid");
    x.lo.push_back(lo.get_num().get_si());
    x.hi.push_back(hi.get_num().get_si());
  }
  return x;
}

Ball to_ball(const IBox& x, const Rational& delta) {
  Ball b;
  for (std::size_t d = 0; d < x.lo.size(); ++d) {
    Rational c = Rational(x.lo[d] + x.hi[d]) * delta / 4;
    c.canonicalize();
    b.center.push_back(c);
  }
  b.radius = Rational(x.hi[0] - x.lo[0]) * delta / 4;
  b.radius.canonicalize();
  return b;
}

Rational half_units(I64 v, const Rational& delta) {
  Rational r = Rational(v) * delta / 2;
  r.canonicalize();
  return r;
}

struct Scored {
  std::vector<IBox> balls;
  Eval eval;
  double score = 0;
};

double score_of(const Eval& e, int m, double diam) {
  double s = static_cast<double>(e.fiber);
  if (!e.covers) return std::numeric_limits<double>::infinity();
  if (e.mult > static_cast<std::size_t>(m)) s += static_cast<double>(e.mult - static_cast<std::size_t>(m)) * 4 * (diam + 2);
  return s;
}

bool valid(const Eval& e, int m) { return e.covers && e.mult <= static_cast<std::size_t>(m); }

std::vector<IBox> tiling(const Grid& g, const std::vector<I64>& size, const std::vector<I64>& off) {
  std::map<IntPoint, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < g.size(); ++i) {
    IntPoint key(g.n());
    for (int d = 0; d < g.n(); ++d) key[d] = size[d] > 0 ? Grid::floor_div(g.cell(i)[d] + off[d], size[d]) : 0;
    groups[key].push_back(i);
  }
  std::vector<IBox> out;
  for (const auto& [k, cells] : groups) out.push_back(g.enclosing(cells));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

NerveComplex nerve(const Covering& cover, const Space& s) {
  if (!s.is_voxel()) throw InputError("nerve needs a voxel space");
  Grid g(s);
  std::vector<IBox> boxes;
  for (const auto& b : cover.balls) {
    if (static_cast<int>(b.center.size()) != s.dim()) throw InputError("ball dimension differs from the space");
    boxes.push_back(to_ibox(b, s.delta()));
  }
  Eval e = evaluate(g, boxes, true);
  if (!e.covers) throw InputError("covering does not cover the space");
  NerveComplex nc;
  nc.vertices = boxes.size();
  nc.simplices.assign(e.simplices.begin(), e.simplices.end());
  nc.multiplicity = e.mult;
  nc.dimension = static_cast<int>(e.mult) - 1;
  nc.fiber_bound = half_units(e.fiber, s.delta());
  for (auto x : e.star) nc.star_bound.push_back(half_units(x, s.delta()));
  nc.simplex_of_max = e.argmax;
  return nc;
}

WidthResult width_bound(const Space& s, int m, std::size_t budget, std::uint64_t seed, const SolverOptions& opt) {
  if (!s.is_voxel()) throw InputError("width_bound supports voxel spaces only");
  if (m < 1) throw InputError("width index m must be a positive integer");
  if (s.size() == 0) throw InputError("empty space");
  Grid g(s);
  const int n = s.dim();
  WidthResult r;
  r.m = m;
  r.budget = budget;
  r.seed = seed;

  IBox whole = g.enclosing(s.all());
  double diam = static_cast<double>(whole.hi[0] - whole.lo[0]);
  Scored best;
  best.score = std::numeric_limits<double>::infinity();
  auto consider = [&](std::vector<IBox> balls, const std::string& source) {
    Eval e = evaluate(g, balls, false);
    ++r.evaluations;
    double sc = score_of(e, m, diam);
    if (valid(e, m) && sc < best.score) {
      best.balls = std::move(balls);
      best.eval = std::move(e);
      best.score = sc;
      r.source = source;
    }
  };
  consider({whole}, "single ball");
  r.history.push_back(half_units(best.eval.fiber, s.delta()));

  I64 extent = 0;
  for (int d = 0; d < n; ++d) extent = std::max(extent, (whole.hi[d] - whole.lo[d]) / 2);
  std::vector<I64> sides;
  for (I64 t = 1; t < extent; t *= 2) {
    sides.push_back(t);
    if (t >= 2 && t + t / 2 < extent) sides.push_back(t + t / 2);
  }
  for (I64 t : sides) {
    std::vector<I64> half_off = {0, t / 2};
    if (t == 1) half_off = {0};
    // full tilings with every offset combination
    std::size_t combos = 1;
    for (int d = 0; d < n; ++d) combos *= half_off.size();
    for (std::size_t c = 0; c < combos; ++c) {
      std::vector<I64> size(n, t), off(n);
      std::size_t x = c;
      for (int d = 0; d < n; ++d) {
        off[d] = half_off[x % half_off.size()];
        x /= half_off.size();
      }
      consider(tiling(g, size, off), "tiling " + std::to_string(t));
    }
    // slabs across one axis
    for (int a = 0; a < n; ++a)
      for (I64 o : half_off) {
        std::vector<I64> size(n, 0), off(n, 0);
        size[a] = t;
        off[a] = o;
        consider(tiling(g, size, off), "slabs " + std::to_string(t) + " axis " + std::to_string(a));
      }
  }
  r.history.push_back(half_units(best.eval.fiber, s.delta()));

  ContentResult hc = exact_content(s, s.all(), m, {}, opt);
  r.hc = hc.upper.approx;
  {
    std::vector<IBox> w;
    for (const auto& b : hc.witness.balls) w.push_back(to_ibox(b, s.delta()));
    std::sort(w.begin(), w.end());
    consider(w, "content witness");
  }
  r.history.push_back(half_units(best.eval.fiber, s.delta()));

  // Annealing from the best covering found; the schedule does not depend on
  // the budget, so a larger budget only extends the same run.
  Rng rng(seed);
  Scored cur = best;
  double T0 = 0.05 * diam + 1;
  for (std::size_t it = 0; it < budget; ++it) {
    double T = T0 * std::pow(0.997, static_cast<double>(it));
    std::vector<IBox> nb = cur.balls;
    if (nb.empty()) break;
    std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<I64>(nb.size()) - 1));
    int move = static_cast<int>(rng.uniform(0, 3));
    if (move == 0 && nb.size() > 1) {  // merge with an overlapping or nearest ball
      std::size_t j = i;
      I64 bestd = std::numeric_limits<I64>::max();
      for (std::size_t k = 0; k < nb.size(); ++k) {
        if (k == i) continue;
        I64 dd = 0;
        for (int d = 0; d < n; ++d)
          dd = std::max(dd, std::max(nb[k].lo[d] - nb[i].hi[d], nb[i].lo[d] - nb[k].hi[d]));
        if (dd < bestd) bestd = dd, j = k;
      }
      std::vector<std::size_t> cells = g.inside_cells(nb[i]);
      std::vector<std::size_t> cj = g.inside_cells(nb[j]);
      cells.insert(cells.end(), cj.begin(), cj.end());
      IBox merged = g.enclosing(cells);
      nb.erase(nb.begin() + static_cast<long>(std::max(i, j)));
      nb.erase(nb.begin() + static_cast<long>(std::min(i, j)));
      nb.push_back(merged);
    } else if (move == 1) {  // split along the longest axis
      std::vector<std::size_t> cells = g.inside_cells(nb[i]);
      if (cells.size() < 2) continue;
      int axis = 0;
      I64 span = -1;
      for (int d = 0; d < n; ++d) {
        I64 lo = std::numeric_limits<I64>::max(), hi = std::numeric_limits<I64>::min();
        for (auto c : cells) lo = std::min(lo, g.cell(c)[d]), hi = std::max(hi, g.cell(c)[d]);
        if (hi - lo > span) span = hi - lo, axis = d;
      }
      if (span <= 0) continue;
      std::vector<I64> coord;
      for (auto c : cells) coord.push_back(g.cell(c)[axis]);
      std::sort(coord.begin(), coord.end());
      I64 cut = coord[coord.size() / 2];
      if (cut == coord.front()) cut += 1;
      std::vector<std::size_t> a, b;
      for (auto c : cells) (g.cell(c)[axis] < cut ? a : b).push_back(c);
      if (a.empty() || b.empty()) continue;
      nb.erase(nb.begin() + static_cast<long>(i));
      nb.push_back(g.enclosing(a));
      nb.push_back(g.enclosing(b));
    } else if (move == 2) {  // shrink to the cells only this ball covers
      std::vector<std::size_t> own;
      for (auto c : g.inside_cells(nb[i])) {
        bool other = false;
        for (std::size_t k = 0; k < nb.size() && !other; ++k) other = k != i && g.inside(nb[k], c);
        if (!other) own.push_back(c);
      }
      if (own.empty()) nb.erase(nb.begin() + static_cast<long>(i));
      else nb[i] = g.enclosing(own);
    } else {  // grow by one cell and drop balls it makes redundant
      for (int d = 0; d < n; ++d) nb[i].lo[d] -= 2, nb[i].hi[d] += 2;
      IBox grown = nb[i];
      std::vector<IBox> kept{grown};
      for (std::size_t k = 0; k < nb.size(); ++k) {
        if (k == i) continue;
        auto cells = g.inside_cells(nb[k]);
        bool redundant = std::all_of(cells.begin(), cells.end(), [&](std::size_t c) { return g.inside(grown, c); });
        if (!redundant) kept.push_back(nb[k]);
      }
      nb = std::move(kept);
    }
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    Eval e = evaluate(g, nb, false);
    ++r.evaluations;
    double sc = score_of(e, m, diam);
    double delta_s = sc - cur.score;
    if (delta_s <= 0 || rng.unit() < std::exp(-delta_s / T)) {
      cur.balls = nb;
      cur.eval = e;
      cur.score = sc;
    }
    if (valid(e, m) && sc < best.score) {
      best.balls = std::move(nb);
      best.eval = std::move(e);
      best.score = sc;
      r.source = "anneal";
    }
  }
  r.history.push_back(half_units(best.eval.fiber, s.delta()));

  r.covering.m = m;
  for (const auto& b : best.balls) r.covering.balls.push_back(to_ball(b, s.delta()));
  r.covering.cost = covering_cost(r.covering.balls, m);
  r.nerve = nerve(r.covering, s);
  r.bound = r.nerve.fiber_bound;
  r.diameter = half_units(static_cast<I64>(diam), s.delta());
  r.trivial = r.source == "single ball";
  r.c_measured = r.hc > 0 ? to_double(r.bound) / std::pow(r.hc, 1.0 / m) : 0;
  return r;
}

WidthVerification verify_width(const Space& s, const WidthResult& r) {
  WidthVerification v;
  const auto& balls = r.covering.balls;
  const Rational& delta = s.delta();
  const int n = s.dim();
  v.covers = covers(s, s.all(), balls);
  // ball ∩ space bounding boxes and per-cell incidence, all rational
  std::vector<Point> blo(balls.size()), bhi(balls.size());
  std::vector<char> seen(balls.size(), 0);
  std::vector<std::vector<std::size_t>> at(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t b = 0; b < balls.size(); ++b) {
      if (cell_min_dist(balls[b].center, s.cell(i), delta) > balls[b].radius) continue;
      at[i].push_back(b);
      for (int d = 0; d < n; ++d) {
        Rational lo = max_q(balls[b].center[d] - balls[b].radius, s.cell(i)[d] * delta);
        Rational hi = min_q(balls[b].center[d] + balls[b].radius, (s.cell(i)[d] + 1) * delta);
        if (!seen[b]) {
          blo[b].push_back(lo);
          bhi[b].push_back(hi);
        } else {
          blo[b][d] = min_q(blo[b][d], lo);
          bhi[b][d] = max_q(bhi[b][d], hi);
        }
      }
      seen[b] = 1;
    }
  std::size_t mult = 0;
  Rational fiber = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& L = at[i];
    std::size_t k = L.size();
    // adjacency: clipped boxes intersect inside the cell
    std::vector<std::vector<char>> adj(k, std::vector<char>(k, 0));
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        bool ok = true;
        for (int d = 0; d < n && ok; ++d) {
          const Ball& A = balls[L[a]];
          const Ball& B = balls[L[b]];
          Rational lo = max_q(max_q(A.center[d] - A.radius, B.center[d] - B.radius), s.cell(i)[d] * delta);
          Rational hi = min_q(min_q(A.center[d] + A.radius, B.center[d] + B.radius), (s.cell(i)[d] + 1) * delta);
          ok = lo <= hi;
        }
        adj[a][b] = adj[b][a] = ok;
      }
    // Bron-Kerbosch over the cell's balls
    std::function<void(std::vector<std::size_t>, std::vector<std::size_t>, std::vector<std::size_t>)> bk =
        [&](std::vector<std::size_t> R, std::vector<std::size_t> P, std::vector<std::size_t> X) {
          if (P.empty() && X.empty()) {
            mult = std::max(mult, R.size());
            for (int d = 0; d < n; ++d) {
              Rational lo = blo[L[R[0]]][d], hi = bhi[L[R[0]]][d];
              for (auto t : R) lo = min_q(lo, blo[L[t]][d]), hi = max_q(hi, bhi[L[t]][d]);
              fiber = max_q(fiber, hi - lo);
            }
            return;
          }
          std::vector<std::size_t> Pc = P;
          for (auto u : Pc) {
            std::vector<std::size_t> P2, X2;
            for (auto w : P)
              if (adj[u][w]) P2.push_back(w);
            for (auto w : X)
              if (adj[u][w]) X2.push_back(w);
            auto R2 = R;
            R2.push_back(u);
            bk(R2, P2, X2);
            P.erase(std::find(P.begin(), P.end(), u));
            X.push_back(u);
          }
        };
    std::vector<std::size_t> P(k);
    for (std::size_t t = 0; t < k; ++t) P[t] = t;
    if (k > 0) bk({}, P, {});
  }
  v.multiplicity = mult;
  fiber.canonicalize();
  v.fiber_bound = fiber;
  v.multiplicity_ok = mult == r.nerve.multiplicity && mult <= static_cast<std::size_t>(r.m);
  v.dimension_ok = r.nerve.dimension == static_cast<int>(mult) - 1;
  v.fiber_ok = fiber == r.nerve.fiber_bound && fiber == r.bound;
  v.all_ok = v.covers && v.multiplicity_ok && v.dimension_ok && v.fiber_ok;
  return v;
}

LocalWidthReport local_width_check(const Space& s, int m, const Rational& R, std::size_t budget, std::uint64_t seed,
                                   const SolverOptions& opt) {
  if (R <= 0) throw InputError("R must be positive");
  LocalWidthReport rep;
  rep.m = m;
  rep.R = R;
  BallScan scan = content_ball_scan(s, m, R, opt);
  rep.max_ratio = scan.max_ratio;
  rep.centers = scan.entries.size();
  rep.width = width_bound(s, m, budget, seed, opt);
  rep.width_below_R = rep.width.bound <= R;
  rep.verdict = "max HC_" + std::to_string(m) + "(ball)/R^" + std::to_string(m) + " = " + std::to_string(rep.max_ratio) +
                "; UW_" + std::to_string(m - 1) + " bound = " + to_string(rep.width.bound) +
                (rep.width_below_R ? " <= R" : " > R");
  return rep;
}

json to_json(const NerveComplex& nc) {
  json j;
  j["vertices"] = nc.vertices;
  j["simplices"] = nc.simplices;
  j["multiplicity"] = nc.multiplicity;
  j["dimension"] = nc.dimension;
  j["fiber_bound"] = jq(nc.fiber_bound);
  json star = json::array();
  for (const auto& x : nc.star_bound) star.push_back(jq(x));
  j["star_bound"] = star;
  j["simplex_of_max"] = nc.simplex_of_max;
  return j;
}

json to_json(const WidthResult& r) {
  json j;
  j["m"] = r.m;
  j["width_index"] = r.m - 1;
  j["bound"] = jq(r.bound);
  j["bound_approx"] = jdouble(to_double(r.bound));
  j["covering"] = jballs(r.covering.balls);
  j["nerve"] = to_json(r.nerve);
  j["hc"] = jdouble(r.hc);
  j["c_measured"] = jdouble(r.c_measured);
  j["diameter"] = jq(r.diameter);
  j["trivial"] = r.trivial;
  j["source"] = r.source;
  j["evaluations"] = r.evaluations;
  j["budget"] = r.budget;
  j["seed"] = r.seed;
  json h = json::array();
  for (const auto& x : r.history) h.push_back(jq(x));
  j["history"] = h;
  return j;
}

json to_json(const WidthVerification& v) {
  return {{"covers", v.covers},
          {"multiplicity", v.multiplicity},
          {"multiplicity_ok", v.multiplicity_ok},
          {"dimension_ok", v.dimension_ok},
          {"fiber_bound", jq(v.fiber_bound)},
          {"fiber_ok", v.fiber_ok},
          {"all_ok", v.all_ok}};
}

json to_json(const LocalWidthReport& r) {
  return {{"m", r.m},
          {"R", jq(r.R)},
          {"max_ratio", jdouble(r.max_ratio)},
          {"centers", r.centers},
          {"width", to_json(r.width)},
          {"width_below_R", r.width_below_R},
          {"verdict", r.verdict}};
}

}  // namespace hcf
