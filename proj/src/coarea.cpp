#include "hcf/coarea.hpp"

#include <algorithm>

#include "hcf/errors.hpp"

namespace hcf {

SliceFunction SliceFunction::to_point(Point p) {
  SliceFunction f;
  f.kind = Kind::dist_to_point;
  f.point = std::move(p);
  return f;
}

SliceFunction SliceFunction::to_set(Subset s) {
  if (s.empty()) throw InputError("distance to an empty set");
  SliceFunction f;
  f.kind = Kind::dist_to_set;
  f.set = std::move(s);
  return f;
}

SliceFunction SliceFunction::explicit_values(std::vector<Rational> v, Rational lip) {
  if (lip < 0) throw InputError("negative Lipschitz constant");
  SliceFunction f;
  f.kind = Kind::values;
  f.values = std::move(v);
  f.lip = std::move(lip);
  return f;
}

namespace {

// l_inf gap between two closed cells, and the largest distance from a point of a to cell b.
Rational cell_gap(const IntPoint& a, const IntPoint& b, const Rational& delta) {
  std::int64_t g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]) - 1);
  return Rational(std::max<std::int64_t>(g, 0)) * delta;
}

Rational cell_reach(const IntPoint& a, const IntPoint& b, const Rational& delta) {
  std::int64_t g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]));
  return Rational(g) * delta;
}

bool same(const Value& a, const Value& b) {
  if (a.exact && b.exact) return *a.exact == *b.exact;
  return a.approx == b.approx;
}

bool less(const Value& a, const Value& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact;
  return a.approx < b.approx;
}

}  // namespace

std::vector<std::pair<Rational, Rational>> cell_intervals(const Space& s, const Subset& u, const SliceFunction& f) {
  if (!s.is_voxel()) throw InputError("slice profiles need a voxel space");
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(u.size());
  switch (f.kind) {
    case SliceFunction::Kind::dist_to_point:
      if (static_cast<int>(f.point.size()) != s.dim()) throw InputError("point dimension mismatch");
      for (auto e : u) out.push_back({cell_min_dist(f.point, s.cell(e), s.delta()), cell_max_dist(f.point, s.cell(e), s.delta())});
      break;
    case SliceFunction::Kind::dist_to_set:
      for (auto e : u) {
        Rational lo = -1, hi = -1;
        for (auto t : f.set) {
          if (t >= s.size()) throw InputError("distance set refers to an unknown element");
          Rational g = cell_gap(s.cell(e), s.cell(t), s.delta());
          Rational r = cell_reach(s.cell(e), s.cell(t), s.delta());
          if (lo < 0 || g < lo) lo = g;
          if (hi < 0 || r < hi) hi = r;
        }
        // the cell has diameter delta, so f varies by at most delta on it
        hi = min_q(hi, lo + s.delta());
        out.push_back({lo, hi});
      }
      break;
    case SliceFunction::Kind::values: {
      if (f.values.size() != s.size()) throw InputError("one value per element required");
      for (std::size_t a = 0; a < u.size(); ++a)
        for (std::size_t b = a + 1; b < u.size(); ++b) {
          Rational d = linf_distance(s.cell_center(u[a]), s.cell_center(u[b]));
          Rational diff = abs_q(f.values[u[a]] - f.values[u[b]]);
          if (to_double(diff) > to_double(f.lip * d) + kTau)
            throw InputError("values violate the declared Lipschitz constant");
        }
      for (auto e : u) out.push_back({f.values[e], f.values[e]});
      break;
    }
  }
  return out;
}

SliceProfile slice_profile(const Space& s, const Subset& u, const SliceFunction& f, const std::vector<Ball>& cover,
                           std::optional<Rational> r1, std::optional<Rational> r2) {
  if (u.empty()) throw InputError("empty slice domain");
  if (!covers(s, u, cover)) throw InputError("cover does not cover the slice domain");
  SliceProfile p;
  p.balls = cover;
  p.u = u;
  p.lip = f.lip;
  p.cell_range = cell_intervals(s, u, f);
  Rational fmin = p.cell_range[0].first, fmax = p.cell_range[0].second;
  for (const auto& [lo, hi] : p.cell_range) {
    fmin = min_q(fmin, lo);
    fmax = max_q(fmax, hi);
  }
  p.r1 = r1 ? *r1 : fmin;
  p.r2 = r2 ? *r2 : fmax;
  p.intervals.resize(cover.size());
  for (std::size_t i = 0; i < cover.size(); ++i) {
    std::optional<std::pair<Rational, Rational>> iv;
    CellTester tester(cover[i], s.delta());
    for (std::size_t t = 0; t < u.size(); ++t) {
      if (!tester.contains(s.cell(u[t]))) continue;
      if (!iv) {
        iv = p.cell_range[t];
      } else {
        iv->first = min_q(iv->first, p.cell_range[t].first);
        iv->second = max_q(iv->second, p.cell_range[t].second);
      }
    }
    // f is Lip-Lipschitz and the ball has diameter 2r: never report more than that
    if (iv && iv->second > iv->first + 2 * f.lip * cover[i].radius) {
      iv->second = iv->first + 2 * f.lip * cover[i].radius;
      ++p.clamped;
    }
    p.intervals[i] = iv;
  }
  return p;
}

Value coarea_integral(const SliceProfile& p, double m) {
  Value total = Value::of(Rational(0));
  for (std::size_t i = 0; i < p.balls.size(); ++i) {
    if (!p.intervals[i]) continue;
    Rational lo = max_q(p.intervals[i]->first, p.r1), hi = min_q(p.intervals[i]->second, p.r2);
    if (hi <= lo) continue;
    total = total + power(p.balls[i].radius, m - 1) * Value::of(hi - lo);
  }
  return total;
}

Slice best_slice(const SliceProfile& p, double m) {
  if (p.r2 <= p.r1) throw InputError("degenerate slice range");
  std::vector<Rational> cuts{p.r1, p.r2};
  for (const auto& iv : p.intervals)
    if (iv) {
      for (const Rational& x : {iv->first, iv->second})
        if (x > p.r1 && x < p.r2) cuts.push_back(x);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Rational> probes;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    probes.push_back(cuts[k]);
    if (k + 1 < cuts.size()) probes.push_back((cuts[k] + cuts[k + 1]) / 2);
  }
  std::sort(probes.begin(), probes.end());

  // Sweep in floating point to shortlist the probes, then price the shortlist exactly.
  std::vector<Value> w(p.balls.size());
  std::vector<std::size_t> starts, ends;
  for (std::size_t i = 0; i < p.balls.size(); ++i) {
    if (!p.intervals[i]) continue;
    w[i] = power(p.balls[i].radius, m - 1);
    starts.push_back(i);
    ends.push_back(i);
  }
  std::sort(starts.begin(), starts.end(),
            [&](std::size_t a, std::size_t b) { return p.intervals[a]->first < p.intervals[b]->first; });
  std::sort(ends.begin(), ends.end(),
            [&](std::size_t a, std::size_t b) { return p.intervals[a]->second < p.intervals[b]->second; });
  std::vector<double> approx(probes.size());
  double run = 0, top = 0;
  std::size_t si = 0, ei = 0;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const Rational& R = probes[k];
    while (si < starts.size() && p.intervals[starts[si]]->first <= R) run += w[starts[si++]].approx;
    while (ei < ends.size() && p.intervals[ends[ei]]->second < R) run -= w[ends[ei++]].approx;
    approx[k] = run;
    top = std::max(top, run);
  }
  double low = *std::min_element(approx.begin(), approx.end());
  double slack = 1e-9 * std::max(top, 1e-300);

  Slice best;
  bool have = false;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    if (approx[k] > low + slack) continue;
    const Rational& R = probes[k];
    Value c = Value::of(Rational(0));
    std::vector<std::size_t> hit;
    for (std::size_t i = 0; i < p.balls.size(); ++i)
      if (p.intervals[i] && p.intervals[i]->first <= R && R <= p.intervals[i]->second) {
        c = c + w[i];
        hit.push_back(i);
      }
    if (!have || less(c, best.cost) || (same(c, best.cost) && R < best.R)) {
      best.R = R;
      best.cost = c;
      best.balls = hit;
      have = true;
    }
  }
  Rational len = p.r2 - p.r1;
  Value inv = Value::of(1 / len);
  best.mean = coarea_integral(p, m) * inv;
  best.slice_bound = Value::of(2 * p.lip / len) * covering_cost(p.balls, m);
  best.below_mean = leq(best.cost, best.mean);
  best.below_bound = leq(best.cost, best.slice_bound);
  return best;
}

Subset level_set(const SliceProfile& p, const Rational& R) {
  Subset out;
  for (std::size_t t = 0; t < p.u.size(); ++t)
    if (p.cell_range[t].first <= R && R <= p.cell_range[t].second) out.push_back(p.u[t]);
  return out;
}

}  // namespace hcf
