#include "hcf/pushout.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "hcf/errors.hpp"
#include "hcf/fixtures.hpp"

namespace hcf {

int Face::dim() const { return static_cast<int>(std::count(free.begin(), free.end(), 1)); }

bool Face::operator<(const Face& o) const {
  if (free != o.free) return free < o.free;
  return anchor < o.anchor;
}

Face face_of(const Point& x, const Rational& R) {
  Face f;
  f.anchor.resize(x.size());
  f.free.assign(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational u = x[i] / R;
    Rational fl = floor_q(u);
    f.anchor[i] = fl.get_num().get_si();
    f.free[i] = (u != fl) ? 1 : 0;
  }
  return f;
}

bool in_face(const Point& x, const Face& f, const Rational& R) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational lo = Rational(f.anchor[i]) * R;
    if (f.free[i]) {
      if (x[i] < lo || x[i] > lo + R) return false;
    } else if (x[i] != lo) {
      return false;
    }
  }
  return true;
}

bool on_face_boundary(const Point& x, const Face& f, const Rational& R) {
  if (!in_face(x, f, R)) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (f.free[i]) {
      Rational lo = Rational(f.anchor[i]) * R;
      if (x[i] == lo || x[i] == lo + R) return true;
    }
  return false;
}

bool strictly_inside(const Point& x, const Face& f, const Rational& R) {
  return in_face(x, f, R) && !on_face_boundary(x, f, R);
}

Point face_center(const Face& f, const Rational& R) {
  Point c(f.anchor.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Rational(f.anchor[i]) * R + (f.free[i] ? R / 2 : Rational(0));
  return c;
}

int skeleton_dim(const Point& x, const Rational& R) { return face_of(x, R).dim(); }

namespace {

// Gauge of v = x - p relative to the face: the boundary is at gauge 1.
Rational gauge(const Face& f, const Rational& R, const Point& p, const Point& x) {
  Rational g = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!f.free[i]) continue;
    Rational lo = Rational(f.anchor[i]) * R;
    Rational v = x[i] - p[i];
    Rational t = v > 0 ? v / (lo + R - p[i]) : (v < 0 ? -v / (p[i] - lo) : Rational(0));
    g = max_q(g, t);
  }
  return g;
}

std::vector<double> to_doubles(const Point& p) {
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = to_double(p[i]);
  return out;
}

// Radius of a ball around P(c) that contains the radial image of B(c, rho).
// When the cone from p over the box meets a single facet, P is a central
// projection there and the image is the hull of the projected vertices;
// otherwise the local Lipschitz bound is used.
Rational image_radius(const Face& f, const Rational& R, const Point& p, const Point& c, const Rational& rho,
                      const Point& pc, const Rational& lipschitz) {
  std::vector<std::size_t> fr;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (f.free[i]) fr.push_back(i);
  const std::size_t k = fr.size();
  // facet code 2*t + (side is upper)
  std::vector<char> common(2 * k, 1);
  std::vector<Point> images;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Point y = c;
    for (std::size_t t = 0; t < k; ++t) y[fr[t]] += (mask >> t & 1) ? rho : Rational(-rho);
    Rational g = 0;
    std::vector<Rational> ratio(2 * k, Rational(-1));
    for (std::size_t t = 0; t < k; ++t) {
      std::size_t i = fr[t];
      Rational lo = Rational(f.anchor[i]) * R;
      Rational v = y[i] - p[i];
      if (v > 0) ratio[2 * t + 1] = v / (lo + R - p[i]);
      if (v < 0) ratio[2 * t] = -v / (p[i] - lo);
      g = max_q(g, max_q(ratio[2 * t], ratio[2 * t + 1]));
    }
    if (g <= 0) return max_q(rho, lipschitz * rho);
    for (std::size_t a = 0; a < 2 * k; ++a)
      if (ratio[a] != g) common[a] = 0;
    Point img = y;
    for (auto i : fr) img[i] = p[i] + (y[i] - p[i]) / g;
    images.push_back(std::move(img));
  }
  if (std::find(common.begin(), common.end(), 1) == common.end()) return max_q(rho, lipschitz * rho);
  Rational r = rho;
  for (const auto& img : images)
    for (auto i : fr) r = max_q(r, abs_q(img[i] - pc[i]));
  return min_q(r, max_q(rho, lipschitz * rho));
}

// Cover of the straight-line trace of B(c, rho) onto its image B(pc, r): every
// point of the trace is within max(rho, r) of the segment [c, pc].
double tube_cost(const Point& c, const Rational& rho, const Point& pc, const Rational& r, double m) {
  double len = to_double(linf_distance(c, pc));
  double h = to_double(max_q(rho, r));
  if (len == 0) return 0;
  double best = std::pow(h + len / 2, m);
  for (double steps : {std::ceil(len / (2 * h)), std::ceil(len / h)}) {
    if (steps < 1) continue;
    best = std::min(best, steps * std::pow(h + len / (2 * steps), m));
  }
  return best;
}

}  // namespace

Point radial_project(const Face& f, const Rational& R, const Point& p, const Point& x) {
  if (!strictly_inside(p, f, R)) throw InputError("projection center must be interior to the face");
  if (!in_face(x, f, R)) throw InputError("point outside the face");
  if (x == p) throw InputError("radial projection undefined at its center");
  Rational g = gauge(f, R, p, x);
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = p[i] + (x[i] - p[i]) / g;
  return out;
}

ThickCover thick_cover(const std::vector<ThickPoint>& v, double e) {
  ThickCover out;
  std::size_t N = v.size();
  if (N == 0) return out;
  std::vector<std::vector<double>> c(N);
  std::vector<double> rho(N);
  for (std::size_t i = 0; i < N; ++i) {
    c[i] = to_doubles(v[i].c);
    rho[i] = to_double(v[i].rho);
  }
  const std::size_t K = std::min<std::size_t>(N, 16);
  struct Cand {
    std::size_t center;
    double radius;
    std::vector<std::size_t> members;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < N; ++i) {
    std::vector<std::pair<double, std::size_t>> reach;
    for (std::size_t j = 0; j < N; ++j) reach.push_back({std::max(rho[i], distance(c[i], c[j], Metric::linf) + rho[j]), j});
    std::sort(reach.begin(), reach.end());
    std::vector<double> radii;
    for (std::size_t t = 0; t < K; ++t) radii.push_back(reach[t].first);
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    for (double r : radii) {
      Cand cd{i, r, {}};
      for (const auto& [d, j] : reach) {
        if (d > r * (1 + 1e-12)) break;
        cd.members.push_back(j);
      }
      cands.push_back(std::move(cd));
    }
  }
  // lazy greedy: ratios only grow as elements get covered
  std::vector<char> covered(N, 0);
  std::size_t left = N;
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
  for (std::size_t t = 0; t < cands.size(); ++t)
    pq.push({std::pow(cands[t].radius, e) / static_cast<double>(cands[t].members.size()), t});
  std::vector<std::size_t> chosen;
  while (left > 0 && !pq.empty()) {
    auto [ratio, t] = pq.top();
    pq.pop();
    std::size_t fresh = 0;
    for (auto j : cands[t].members) fresh += !covered[j];
    if (fresh == 0) continue;
    double now = std::pow(cands[t].radius, e) / static_cast<double>(fresh);
    if (now > ratio * (1 + 1e-12)) {
      pq.push({now, t});
      continue;
    }
    chosen.push_back(t);
    for (auto j : cands[t].members)
      if (!covered[j]) covered[j] = 1, --left;
  }
  for (auto t : chosen) {
    const Cand& cd = cands[t];
    // exact radius over the members actually reached
    Rational r = v[cd.center].rho;
    for (auto j : cd.members) r = max_q(r, linf_distance(v[cd.center].c, v[j].c) + v[j].rho);
    out.balls.push_back({v[cd.center].c, r, {}});
    out.cost += std::pow(to_double(r), e);
  }
  return out;
}

AveragePoint average_point(const Face& f, const Rational& R, const std::vector<ThickPoint>& v, double m,
                           const PushoutConfig& cfg) {
  int k = f.dim();
  if (k < 1) throw InputError("cannot push out of a vertex");
  AveragePoint res;
  res.limit = to_double(pow_int(1 / cfg.c0_base, k)) * std::pow(to_double(R), m - 1);
  res.content_before = thick_cover(v, m - 1).cost;
  if (res.content_before > res.limit * (1 + 1e-12))
    throw PushoutPreconditionError("face content exceeds c0(k) R^(m-1)", res.content_before, res.limit);
  std::vector<Point> cands{face_center(f, R)};
  for (std::size_t i = 0; i < cfg.candidates; ++i) {
    auto h = halton(i, k);
    Point p = face_center(f, R);
    int t = 0;
    for (std::size_t d = 0; d < p.size(); ++d)
      if (f.free[d]) p[d] = Rational(f.anchor[d]) * R + h[static_cast<std::size_t>(t++)] * R;
    cands.push_back(p);
  }
  // behind a point, away from its nearest facet: the ray then leaves almost
  // perpendicular to that facet and the image barely grows
  for (std::size_t j = 0; j < std::min<std::size_t>(v.size(), 8); ++j) {
    const Point& c = v[j].c;
    if (!strictly_inside(c, f, R)) continue;
    std::size_t best = 0;
    Rational gap = -1;
    bool upper = false;
    for (std::size_t d = 0; d < c.size(); ++d) {
      if (!f.free[d]) continue;
      Rational lo = Rational(f.anchor[d]) * R;
      for (bool up : {false, true}) {
        Rational g = up ? Rational(lo + R - c[d]) : Rational(c[d] - lo);
        if (gap < 0 || g < gap) gap = g, best = d, upper = up;
      }
    }
    Rational lo = Rational(f.anchor[best]) * R;
    Rational room = upper ? Rational(c[best] - lo) : Rational(lo + R - c[best]);
    for (const Rational& t : {frac(1, 2), frac(3, 4)}) {
      Point p = c;
      p[best] += upper ? Rational(-t * room) : Rational(t * room);
      if (strictly_inside(p, f, R)) cands.push_back(p);
    }
  }
  bool have = false;
  for (const auto& p : cands) {
    ++res.candidates_tried;
    Rational dmin = -1, dmax = 0;
    for (std::size_t d = 0; d < p.size(); ++d) {
      if (!f.free[d]) continue;
      Rational lo = Rational(f.anchor[d]) * R;
      Rational a = p[d] - lo, b = lo + R - p[d];
      Rational mn = min_q(a, b), mx = max_q(a, b);
      if (dmin < 0 || mn < dmin) dmin = mn;
      dmax = max_q(dmax, mx);
    }
    std::vector<ThickPoint> image;
    double tube = 0;
    bool ok = true;
    for (const auto& tp : v) {
      if (on_face_boundary(tp.c, f, R)) {
        image.push_back(tp);
        continue;
      }
      Rational dist = linf_distance(tp.c, p);
      if (dist <= tp.rho) {
        ok = false;
        break;
      }
      // local Lipschitz bound of the projection on B(c, rho)
      Rational L = dmax * (1 + dmax / dmin) / (dist - tp.rho);
      Point pc = radial_project(f, R, p, tp.c);
      Rational r = image_radius(f, R, p, tp.c, tp.rho, pc, L);
      tube += tube_cost(tp.c, tp.rho, pc, r, m);
      image.push_back({std::move(pc), r});
    }
    if (!ok) continue;
    ThickCover tc = thick_cover(image, m - 1);
    if (!have || tc.cost < res.content_after) {
      have = true;
      res.p = p;
      res.image = std::move(image);
      res.content_after = tc.cost;
      res.image_cover = std::move(tc);
      res.tube_cost = tube;
    }
  }
  if (!have) throw PushoutPreconditionError("no admissible projection center off V", res.content_before, res.limit);
  res.ratio = res.content_before > 0 ? res.content_after / res.content_before : 1.0;
  res.within_ceiling = res.ratio <= cfg.ratio_ceiling_base * std::pow(2.0, k);
  return res;
}

DeformationTrace skeleton_descend(const std::vector<ThickPoint>& v, const Rational& R, double m, int n,
                                  const Rational& delta, const PushoutConfig& cfg) {
  if (R <= 0) throw InputError("grid size must be positive");
  if (!(m > 1) || m > n) throw InputError("skeleton descent needs 1 < m <= n");
  for (const auto& tp : v) {
    if (static_cast<int>(tp.c.size()) != n) throw InputError("point dimension mismatch");
    if (tp.rho <= 0) throw InputError("thick points need a positive radius");
  }
  DeformationTrace tr;
  tr.R = R;
  tr.m = m;
  tr.n = n;
  tr.delta = delta;
  int cm = static_cast<int>(std::ceil(m - 1e-12));
  tr.target_dim = cm - 2;
  tr.initial = v;
  tr.input_content = thick_cover(v, m - 1).cost;
  std::vector<ThickPoint> cur = v;
  tr.displacement_bound.assign(v.size(), Rational(0));
  for (int k = n; k >= cm - 1; --k) {
    LevelTrace lt;
    lt.k = k;
    std::map<Face, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      Face f = face_of(cur[i].c, R);
      if (f.dim() == k) groups[f].push_back(i);
    }
    std::vector<ThickPoint> next = cur;
    for (const auto& [f, idx] : groups) {
      std::vector<ThickPoint> part;
      for (auto i : idx) part.push_back(cur[i]);
      AveragePoint ap = average_point(f, R, part, m, cfg);
      FaceStep fs;
      fs.face = f;
      fs.p = ap.p;
      fs.points = idx.size();
      fs.content_before = ap.content_before;
      fs.content_after = ap.content_after;
      fs.ratio = ap.ratio;
      for (std::size_t t = 0; t < idx.size(); ++t) {
        next[idx[t]] = ap.image[t];
        if (ap.image[t].c != cur[idx[t]].c) {
          ++fs.moved;
          tr.displacement_bound[idx[t]] += R;
          if (!in_face(ap.image[t].c, f, R) || skeleton_dim(ap.image[t].c, R) >= k) tr.cond_c = false;
        }
      }
      if (!ap.image_cover.balls.empty()) {
        Rational Ra = 0;
        for (const auto& b : ap.image_cover.balls) Ra = max_q(Ra, linf_distance(b.center, ap.p) + b.radius);
        fs.trace_cost = cone_covering(ap.image_cover.balls, ap.p, Ra, m, ConeVariant::improved).cost.approx;
        fs.trace_cost = std::min(fs.trace_cost, ap.tube_cost);
      }
      tr.trace_cost += fs.trace_cost;
      tr.ratios.push_back(ap.ratio);
      if (!ap.within_ceiling) tr.ratios_within_ceiling = false;
      lt.faces.push_back(std::move(fs));
    }
    // points outside the k-face interiors must not move
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (face_of(cur[i].c, R).dim() < k && (next[i].c != cur[i].c || next[i].rho != cur[i].rho)) tr.cond_a = false;
    cur = std::move(next);
    lt.content_after = thick_cover(cur, m - 1).cost;
    tr.levels.push_back(std::move(lt));
  }
  tr.final_points = cur;
  tr.max_displacement = 0;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    if (skeleton_dim(cur[i].c, R) > tr.target_dim) tr.cond_b = false;
    Rational d = linf_distance(cur[i].c, v[i].c);
    tr.displacement.push_back(d);
    if (d > tr.displacement_bound[i]) tr.cond_c = false;
    tr.max_displacement = max_q(tr.max_displacement, d);
  }
  if (tr.max_displacement > Rational(n - cm + 2) * R) tr.cond_c = false;
  tr.displacement_const = to_double(tr.max_displacement / R);
  double denom = to_double(R) * (tr.input_content + to_double(delta));
  tr.d_const = denom > 0 ? tr.trace_cost / denom : 0;
  tr.d_ceiling = cfg.ratio_ceiling_base * std::pow(2.0, n);
  tr.cond_d = tr.d_const <= tr.d_ceiling;
  return tr;
}

Rational grid_R_for_content(double hc, double m, int n, const Rational& delta, const PushoutConfig& cfg) {
  if (hc < 0) throw InputError("negative content");
  if (!(m > 1)) throw InputError("grid size needs m > 1");
  Rational c2 = cfg.c2_per_dim * n;
  if (hc == 0) return delta;
  return c2 * from_double(std::pow(hc, 1 / (m - 1))) + delta;
}

LoomisWhitneyReport loomis_whitney_check(const Space& omega, bool solve_boundary, const SolverOptions& opt) {
  if (!omega.is_voxel()) throw InputError("Loomis-Whitney check needs a voxel space");
  if (omega.size() == 0) throw InputError("empty voxel set");
  LoomisWhitneyReport rep;
  int n = omega.dim();
  rep.n = n;
  rep.cells = omega.size();
  std::vector<std::set<IntPoint>> proj(n);
  for (const auto& c : omega.cells())
    for (int j = 0; j < n; ++j) {
      IntPoint q = c;
      q.erase(q.begin() + j);
      proj[j].insert(q);
    }
  for (int j = 0; j < n; ++j) rep.projections.push_back(proj[j].size());
  // the cylinder intersection: lift U_0 along coordinate 0 and test the other projections
  std::int64_t lo = omega.cell(0)[0], hi = lo;
  for (const auto& c : omega.cells()) lo = std::min(lo, c[0]), hi = std::max(hi, c[0]);
  for (const auto& base : proj[0])
    for (std::int64_t x = lo; x <= hi; ++x) {
      IntPoint c = base;
      c.insert(c.begin(), x);
      bool in = true;
      for (int j = 1; j < n && in; ++j) {
        IntPoint q = c;
        q.erase(q.begin() + j);
        in = proj[j].count(q) > 0;
      }
      rep.cylinder += in;
    }
  rep.lhs = 1;
  rep.rhs = 1;
  for (int j = 0; j < n - 1; ++j) rep.lhs *= static_cast<unsigned long>(rep.cylinder);
  std::size_t maxN = 0;
  for (auto N : rep.projections) {
    rep.rhs *= static_cast<unsigned long>(N);
    maxN = std::max(maxN, N);
  }
  rep.inequality = rep.lhs <= rep.rhs;

  rep.r = omega.delta() / 2;
  Rational rn = pow_int(rep.r, n);
  rep.hc_n_upper = Rational(static_cast<long>(rep.cells)) * rn;
  rep.cylinder_bound = Rational(static_cast<long>(rep.cylinder)) * rn;
  rep.product_bound = (n > 1 ? std::pow(rep.rhs.get_d(), 1.0 / (n - 1)) : 0.0) * to_double(rn);
  rep.projection_lower = Rational(static_cast<long>(maxN)) * pow_int(rep.r, n - 1);

  Subset boundary;
  for (std::size_t e = 0; e < omega.size(); ++e) {
    bool b = false;
    for (int i = 0; i < n && !b; ++i)
      for (int s : {-1, 1}) {
        IntPoint q = omega.cell(e);
        q[i] += s;
        if (!omega.find(q)) b = true;
      }
    if (b) boundary.push_back(e);
  }
  rep.boundary_cells = boundary.size();
  bool chain = rep.inequality && rep.hc_n_upper <= rep.cylinder_bound;
  if (n > 1) {
    double iso = std::pow(to_double(rep.projection_lower), static_cast<double>(n) / (n - 1));
    chain = chain && to_double(rep.cylinder_bound) <= rep.product_bound * (1 + 1e-12) &&
            rep.product_bound <= iso * (1 + 1e-12);
    if (solve_boundary && n >= 2) {
      rep.boundary_content = exact_content(omega, boundary, n - 1, {}, opt);
      // the grid-model isoperimetric chain ends at the boundary content
      chain = chain && rep.boundary_content.upper.approx >= to_double(rep.projection_lower) * (1 - 1e-12);
    }
  }
  rep.chain = chain;
  return rep;
}

CubeEqualityReport cube_equality_check(int n, std::int64_t k, const Rational& delta, const SolverOptions& opt) {
  if (n < 2) throw InputError("cube equality needs n >= 2");
  if (k < 1) throw InputError("cube needs at least one cell per side");
  CubeEqualityReport rep;
  rep.n = n;
  rep.side = delta * k;
  Space cube = full_box(IntPoint(n, k), delta);
  Subset shell;
  for (std::size_t e = 0; e < cube.size(); ++e) {
    bool b = false;
    for (auto x : cube.cell(e))
      if (x == 0 || x == k - 1) b = true;
    if (b) shell.push_back(e);
  }
  rep.cube = exact_content(cube, cube.all(), n, {}, opt);
  rep.shell = exact_content(cube, shell, n - 1, {}, opt);
  rep.equality = rep.cube.optimal && rep.shell.optimal && rep.cube.upper.exact && rep.shell.upper.exact &&
                 pow_int(*rep.shell.upper.exact, n) == pow_int(*rep.cube.upper.exact, n - 1) &&
                 *rep.cube.upper.exact == pow_int(rep.side / 2, n);
  return rep;
}

}  // namespace hcf
