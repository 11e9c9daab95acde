#include "hcf/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "hcf/coarea.hpp"
#include "hcf/errors.hpp"
#include "hcf/json_util.hpp"

namespace hcf {

using nlohmann::json;

Constants Constants::of(double m) {
  if (!(m > 1)) throw InputError("constants need m > 1");
  Constants c;
  c.m = m;
  c.I1 = std::pow(100 * m, m);
  c.A = std::pow(100 * m * std::pow(4.0, 1 / (m - 1)) * c.I1, (m - 1) / m);
  c.I2 = 10 * m * std::pow(12.0, m) * c.A;
  c.decay = 1 - 1 / (2 * std::pow(12.0, m));
  return c;
}

bool Constants::a_bound_holds() const { return A > 0 && A < std::pow(100 * m, m); }

bool Constants::i2_bound_holds() const { return I2 > 0 && I2 < std::pow(1500 * m, m); }

TildeContent::TildeContent(const Space& y, std::vector<Ball> q, SolverOptions opt)
    : y_(y), q_(std::move(q)), opt_(opt) {
  if (!y_.is_voxel()) throw InputError("fixed-family content needs a voxel space");
  owners_.resize(y_.size());
  for (std::size_t k = 0; k < q_.size(); ++k) {
    if (static_cast<int>(q_[k].center.size()) != y_.dim()) throw InputError("Q ball dimension differs from the space");
    members_.push_back(q_[k].radius > 0 ? ball_members(q_[k], y_) : Subset{});
    for (auto i : members_.back()) owners_[i].push_back(k);
    Rational side = 2 * q_[k].radius / y_.delta();
    side.canonicalize();
    sides_.push_back(side);
  }
  for (const auto& o : owners_)
    if (o.empty()) throw InputError("Q does not cover Y'");
}

const ContentResult& TildeContent::result(const Subset& w, double e) {
  auto key = std::make_pair(e, w);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  if (w.empty()) throw InputError("empty target");
  std::vector<long> pos(y_.size(), -1);
  for (std::size_t t = 0; t < w.size(); ++t) pos[w.at(t)] = static_cast<long>(t);
  std::vector<std::size_t> rel;
  for (auto i : w) rel.insert(rel.end(), owners_.at(i).begin(), owners_[i].end());
  std::sort(rel.begin(), rel.end());
  rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  SetCoverProblem p;
  p.elements = w.size();
  p.integral = is_integral_exponent(e);
  for (auto k : rel) {
    Bitset b(w.size());
    for (auto i : members_[k])
      if (pos[i] >= 0) b.set(static_cast<std::size_t>(pos[i]));
    p.sets.push_back(std::move(b));
    p.weights.push_back(std::pow(to_double(sides_[k]), e));
    p.integral = p.integral && sides_[k].get_den() == 1;
  }
  SetCoverSolution sol = solve_exact(p, opt_.node_budget);
  ContentResult r;
  r.m = e;
  r.family = "fixed";
  r.candidates = rel.size();
  r.nodes = sol.nodes;
  r.witness.m = e;
  for (auto j : sol.chosen) r.witness.balls.push_back(q_[rel[j]]);
  r.witness.cost = covering_cost(r.witness.balls, e);
  r.certificate.kind = sol.bound_kind;
  r.certificate.lp_dual_value = sol.dual_value;
  r.exact_arithmetic = r.witness.cost.is_exact();
  r.upper = r.witness.cost;
  r.optimal = sol.optimal;
  r.lower = r.optimal ? r.upper : Value::of(sol.lower * std::pow(to_double(y_.delta()) / 2, e));
  if (!r.optimal) all_optimal_ = false;
  return cache_.emplace(key, std::move(r)).first->second;
}

std::vector<Ball> TildeContent::cover(const Subset& w, double e) {
  if (w.empty()) return {};
  return result(w, e).witness.balls;
}

namespace {

// When p sits on the half grid (coordinates multiples of delta/2), cell
// distances are integers in units of delta/2.
std::optional<std::vector<std::int64_t>> half_units(const Point& p, const Space& y) {
  std::vector<std::int64_t> a;
  for (const auto& x : p) {
    Rational u = 2 * x / y.delta();
    u.canonicalize();
    if (u.get_den() != 1 || !u.get_num().fits_slong_p()) return std::nullopt;
    a.push_back(u.get_num().get_si());
  }
  return a;
}

std::int64_t half_min(const std::vector<std::int64_t>& a, const IntPoint& c) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t lo = 2 * c[i], hi = lo + 2;
    best = std::max(best, a[i] < lo ? lo - a[i] : (a[i] > hi ? a[i] - hi : 0));
  }
  return best;
}

std::int64_t half_max(const std::vector<std::int64_t>& a, const IntPoint& c) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t lo = 2 * c[i];
    best = std::max({best, std::abs(a[i] - lo), std::abs(lo + 2 - a[i])});
  }
  return best;
}

// Exact per-cell min distances (as Rationals) from p.
std::vector<Rational> min_dists(const Point& p, const Space& y) {
  std::vector<Rational> d(y.size());
  if (auto a = half_units(p, y)) {
    Rational h = y.delta() / 2;
    std::map<std::int64_t, Rational> memo;
    for (std::size_t i = 0; i < y.size(); ++i) {
      std::int64_t k = half_min(*a, y.cell(i));
      auto it = memo.find(k);
      if (it == memo.end()) it = memo.emplace(k, Rational(k) * h).first;
      d[i] = it->second;
    }
    return d;
  }
  for (std::size_t i = 0; i < y.size(); ++i) d[i] = cell_min_dist(p, y.cell(i), y.delta());
  return d;
}

}  // namespace

Subset cells_meeting(const Space& y, const Point& p, const Rational& r) {
  Subset out;
  if (auto a = half_units(p, y)) {
    Rational lim = floor_q(2 * r / y.delta());
    if (lim < 0) return out;
    std::int64_t k = lim.get_num().fits_slong_p() ? lim.get_num().get_si() : std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < y.size(); ++i)
      if (half_min(*a, y.cell(i)) <= k) out.push_back(i);
    return out;
  }
  for (std::size_t i = 0; i < y.size(); ++i)
    if (cell_min_dist(p, y.cell(i), y.delta()) <= r) out.push_back(i);
  return out;
}

namespace {

struct Radial {
  std::vector<std::size_t> order;  // cells by distance, then index
  std::vector<Rational> breakpoints;
  std::vector<std::size_t> counts;
};

Radial radial(const Point& p, const Space& y) {
  if (!y.is_voxel()) throw InputError("density profiles need a voxel space");
  if (static_cast<int>(p.size()) != y.dim()) throw InputError("point dimension differs from the space");
  std::vector<Rational> d = min_dists(p, y);
  Radial r;
  r.order.resize(y.size());
  std::iota(r.order.begin(), r.order.end(), 0);
  std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  for (std::size_t k = 0; k < r.order.size(); ++k) {
    const Rational& v = d[r.order[k]];
    if (r.breakpoints.empty() || r.breakpoints.back() != v) {
      r.breakpoints.push_back(v);
      r.counts.push_back(k + 1);
    } else {
      r.counts.back() = k + 1;
    }
  }
  return r;
}

Subset prefix(const Radial& r, std::size_t count) {
  Subset s(r.order.begin(), r.order.begin() + static_cast<std::ptrdiff_t>(count));
  std::sort(s.begin(), s.end());
  return s;
}

double lambda_at(double eta, const Rational& r, double m) {
  if (r == 0) return eta > 0 ? std::numeric_limits<double>::infinity() : 0;
  return eta / std::pow(to_double(r), m);
}

// eta is nondecreasing in the segment index, so A eta_k^{1/m} bounds every
// earlier segment's candidate and the scan can jump straight past segments that
// start beyond it.
CriticalRadius critical_scan(const std::vector<Rational>& bp, double m, double A,
                             const std::function<double(std::size_t)>& eta) {
  if (!(A > 0)) throw InputError("A must be positive");
  if (bp.empty()) throw InputError("empty profile");
  double thr = std::pow(A, -m);
  double after = 0;
  std::size_t k = bp.size() - 1;
  while (true) {
    double e = eta(k);
    double t = e > 0 ? A * std::pow(e, 1 / m) : 0;
    if (e > 0 && t >= to_double(bp[k])) {
      CriticalRadius c;
      // step down one ulp if rounding broke lambda(r) >= threshold
      if (e / std::pow(t, m) < thr) t = std::nextafter(t, 0.0);
      c.r = max_q(bp[k], from_double(t));
      c.segment = k;
      c.eta = e;
      c.lambda = lambda_at(e, c.r, m);
      c.lambda_after = after;
      c.threshold = thr;
      return c;
    }
    after = std::max(after, lambda_at(e, bp[k], m));
    std::size_t j = k;
    while (j > 0 && to_double(bp[j - 1]) > t) --j;
    if (j == 0) break;
    k = j - 1;
  }
  throw InputError("density profile is below the threshold everywhere");
}

}  // namespace

DensityProfile density_profile(const Point& p, const Space& y, TildeContent& tc, double m) {
  Radial r = radial(p, y);
  DensityProfile dp;
  dp.p = p;
  dp.m = m;
  dp.breakpoints = r.breakpoints;
  dp.counts = r.counts;
  for (std::size_t k = 0; k < r.breakpoints.size(); ++k) {
    Value v = tc.content(prefix(r, r.counts[k]), m);
    dp.content.push_back(v);
    dp.lambda.push_back(lambda_at(v.approx, r.breakpoints[k], m));
  }
  return dp;
}

CriticalRadius critical_radius(const DensityProfile& dp, double A) {
  return critical_scan(dp.breakpoints, dp.m, A, [&](std::size_t k) { return dp.content[k].approx; });
}

CriticalRadius critical_radius(const Point& p, const Space& y, TildeContent& tc, double m, double A) {
  Radial r = radial(p, y);
  return critical_scan(r.breakpoints, m, A,
                       [&](std::size_t k) { return tc.content(prefix(r, r.counts[k]), m).approx; });
}

AnnulusChoice annulus_radius(const Point& p, const Rational& r, const Space& y, TildeContent& tc, double m) {
  if (r <= 0) throw InputError("annulus needs a positive radius");
  AnnulusChoice a;
  Rational f = 1 + 1 / from_double(m);
  a.r1 = f * r;
  a.r2 = f * f * r;
  a.r1.canonicalize();
  a.r2.canonicalize();
  Subset outer = cells_meeting(y, p, a.r2);
  a.outer_content = tc.content(outer, m);
  a.coarea_bound = 2 * m * m / ((m + 1) * to_double(r)) * a.outer_content.approx;
  Subset u;
  auto half = half_units(p, y);
  Rational need = ceil_q(2 * a.r1 / y.delta());
  for (auto i : outer) {
    bool far = half ? Rational(half_max(*half, y.cell(i))) >= need : cell_max_dist(p, y.cell(i), y.delta()) >= a.r1;
    if (far) u.push_back(i);
  }
  a.slice_cost = Value::of(Rational(0));
  a.slice_content = Value::of(Rational(0));
  if (u.empty()) {
    a.r_bar = a.r1;
    a.empty = true;
    return a;
  }
  std::vector<Ball> sub = tc.cover(outer, m);
  SliceProfile prof = slice_profile(y, u, SliceFunction::to_point(p), sub, a.r1, a.r2);
  Slice sl = best_slice(prof, m);
  a.r_bar = sl.R;
  a.slice = level_set(prof, sl.R);
  a.slice_cost = sl.cost;
  a.slice_content = tc.content(a.slice, m - 1);
  a.coarea_ok = a.slice_cost.approx <= a.coarea_bound * (1 + 1e-9) + 1e-300 &&
                a.slice_content.approx <= a.slice_cost.approx * (1 + 1e-9);
  return a;
}

bool balls_disjoint(const Point& a, const Rational& ra, const Point& b, const Rational& rb) {
  return linf_distance(a, b) > ra + rb;
}

std::vector<std::size_t> vitali_select(const std::vector<VitaliCandidate>& c) {
  std::vector<std::size_t> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c[a].radius > c[b].radius; });
  std::vector<std::size_t> chosen;
  for (auto i : order) {
    bool ok = true;
    for (auto j : chosen)
      if (!balls_disjoint(c[i].center, c[i].radius, c[j].center, c[j].radius)) {
        ok = false;
        break;
      }
    if (ok) chosen.push_back(i);
  }
  return chosen;
}

namespace {

std::vector<Ball> prune_redundant(const Space& y, std::vector<Ball> q) {
  std::vector<std::size_t> order(q.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (q[a].radius != q[b].radius) return q[a].radius > q[b].radius;
    return q[a].center < q[b].center;
  });
  std::vector<Subset> mem(q.size());
  std::vector<std::size_t> count(y.size(), 0);
  for (std::size_t k = 0; k < q.size(); ++k) {
    mem[k] = ball_members(q[k], y);
    for (auto i : mem[k]) ++count[i];
  }
  std::vector<char> keep(q.size(), 1);
  for (auto k : order) {
    bool redundant = std::all_of(mem[k].begin(), mem[k].end(), [&](std::size_t i) { return count[i] >= 2; });
    if (!redundant) continue;
    keep[k] = 0;
    for (auto i : mem[k]) --count[i];
  }
  std::vector<Ball> out;
  for (std::size_t k = 0; k < q.size(); ++k)
    if (keep[k]) out.push_back(q[k]);
  return out;
}

struct Rhs {
  double max_radius, remainder, weighted_boundary, boundary, weighted_interior;
};

Rhs rhs_values(double m, double A, double alpha, double hc, double eps) {
  double f = 1 + 1 / m;
  double four = std::pow(4.0, 1 / (m - 1));
  Rhs r;
  r.max_radius = f * f * A * std::pow(hc, 1 / m) + eps;
  r.remainder = (1 - std::pow(alpha, m)) * hc + eps;
  r.weighted_boundary = 200 * four * m * std::pow(alpha, m + 1) / std::pow(A, 1 / (m - 1)) * std::pow(hc, (m + 1) / m) + eps;
  r.boundary = 50 * m * four * std::pow(alpha, m) / std::pow(A, m / (m - 1)) * hc + eps;
  r.weighted_interior = 20 * std::pow(alpha, m + 1) * A * std::pow(hc, (m + 1) / m) + eps;
  return r;
}

InequalityCheck check(const std::string& name, double lhs, double rhs) {
  return {name, lhs, rhs, lhs <= rhs * (1 + 1e-9) + 1e-300};
}

std::vector<InequalityCheck> five_checks(double m, double A, double alpha, double hc, double eps, double max_r,
                                         double rem, double sum_wb, double sum_b, double sum_wi) {
  Rhs r = rhs_values(m, A, alpha, hc, eps);
  return {check("max radius", max_r, r.max_radius), check("remainder content", rem, r.remainder),
          check("weighted boundary", sum_wb, r.weighted_boundary), check("boundary", sum_b, r.boundary),
          check("weighted interior", sum_wi, r.weighted_interior)};
}

}  // namespace

Decomposition decompose(const Space& y, double m, const DecomposeOptions& opt) {
  if (!(m > 1)) throw InputError("decompose needs m > 1");
  if (!y.is_voxel()) throw InputError("decompose needs a voxel space");
  if (y.size() == 0) throw InputError("decompose needs a non-empty set");
  Decomposition d;
  d.m = m;
  d.constants = Constants::of(m);
  d.A = opt.A.value_or(d.constants.A);
  if (!(d.A > 1)) throw InputError("A must exceed 1");

  Subset all = y.all();
  ContentResult hc = exact_content(y, all, m, {}, opt.solver);
  d.q = prune_redundant(y, hc.witness.balls);
  d.q_cost = covering_cost(d.q, m);
  d.hc_lower = hc.lower.approx;
  d.q_optimal = hc.optimal;
  double HC = d.q_cost.approx;
  d.eps = opt.eps.value_or(1e-3 * HC);
  d.q_near_optimal = HC <= d.hc_lower + d.eps;

  TildeContent tc(y, d.q, opt.solver);
  std::vector<CriticalRadius> crit;
  std::vector<AnnulusChoice> ann;
  for (const auto& b : d.q) {
    crit.push_back(critical_radius(b.center, y, tc, m, d.A));
    ann.push_back(annulus_radius(b.center, crit.back().r, y, tc, m));
    d.candidates.push_back({b.center, ann.back().r_bar});
  }
  std::vector<std::size_t> sel = vitali_select(d.candidates);

  double max_r = 0, sum_wb = 0, sum_b = 0, sum_wi = 0;
  std::vector<char> inside_any(y.size(), 0);
  d.coarea_ok = true;
  for (auto k : sel) {
    DecompBall b;
    b.q_index = k;
    b.center = d.q[k].center;
    b.crit = crit[k];
    b.annulus = ann[k];
    b.theta = to_double(b.annulus.r_bar / b.crit.r);
    b.eta_one = tc.content(cells_meeting(y, b.center, b.crit.r), m);
    b.eta_theta = tc.content(cells_meeting(y, b.center, b.annulus.r_bar), m);
    Ball B{b.center, b.annulus.r_bar, {}};
    for (std::size_t i = 0; i < y.size(); ++i)
      if (contains_cell(B, y.cell(i), y.delta())) {
        b.inside.push_back(i);
        inside_any[i] = 1;
      }
    double r = to_double(b.annulus.r_bar);
    double s = b.annulus.slice_content.approx;
    double sp = s > 0 ? std::pow(s, m / (m - 1)) : 0;
    max_r = std::max(max_r, r);
    sum_wb += r * sp;
    sum_b += sp;
    sum_wi += r * b.eta_theta.approx;
    d.eta_sum += b.eta_one.approx;
    d.coarea_ok = d.coarea_ok && b.annulus.coarea_ok;
    d.balls.push_back(std::move(b));
  }

  d.disjoint = true;
  for (std::size_t a = 0; a < d.balls.size(); ++a)
    for (std::size_t b = a + 1; b < d.balls.size(); ++b)
      if (!balls_disjoint(d.balls[a].center, d.balls[a].annulus.r_bar, d.balls[b].center, d.balls[b].annulus.r_bar))
        d.disjoint = false;
  d.triple_cover = true;
  for (std::size_t i = 0; i < y.size() && d.triple_cover; ++i) {
    bool ok = false;
    for (const auto& b : d.balls)
      if (contains_cell(Ball{b.center, 3 * b.annulus.r_bar, {}}, y.cell(i), y.delta())) {
        ok = true;
        break;
      }
    d.triple_cover = ok;
  }
  d.additivity = d.eta_sum <= HC * (1 + 1e-9);
  d.alpha = std::pow(d.eta_sum / HC, 1 / m);
  d.alpha_in_range = d.alpha > 1.0 / 12 && d.alpha <= 1 + 1e-9;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!inside_any[i]) d.remainder.push_back(i);
  d.remainder_content = tc.content(d.remainder, m);
  d.checks = five_checks(m, d.A, d.alpha, HC, d.eps, max_r, d.remainder_content.approx, sum_wb, sum_b, sum_wi);
  d.tilde_exact = tc.all_optimal();

  d.all_hold = d.disjoint && d.triple_cover && d.additivity && d.alpha_in_range && d.coarea_ok;
  for (const auto& c : d.checks) d.all_hold = d.all_hold && c.holds;
  if (opt.strict && !d.all_hold) throw DecompositionViolation("decomposition-violation", to_json(d));
  return d;
}

json to_json(const Decomposition& d) {
  json j;
  j["m"] = d.m;
  j["A"] = jdouble(d.A);
  j["eps"] = jdouble(d.eps);
  j["constants"] = {{"I1", jdouble(d.constants.I1)},
                    {"A", jdouble(d.constants.A)},
                    {"I2", jdouble(d.constants.I2)},
                    {"decay", jdouble(d.constants.decay)}};
  j["q"] = jballs(d.q);
  j["q_cost"] = jv(d.q_cost);
  j["hc_lower"] = jdouble(d.hc_lower);
  j["q_optimal"] = d.q_optimal;
  j["q_near_optimal"] = d.q_near_optimal;
  j["tilde_exact"] = d.tilde_exact;
  json balls = json::array();
  for (const auto& b : d.balls) {
    json x;
    x["q_index"] = b.q_index;
    x["center"] = jpoint(b.center);
    x["r"] = jq(b.crit.r);
    x["lambda_at_r"] = jdouble(b.crit.lambda);
    x["lambda_after"] = jdouble(b.crit.lambda_after);
    x["r_bar"] = jq(b.annulus.r_bar);
    x["theta"] = jdouble(b.theta);
    x["eta_one"] = jv(b.eta_one);
    x["eta_theta"] = jv(b.eta_theta);
    x["slice_cells"] = b.annulus.slice.size();
    x["slice_cost"] = jv(b.annulus.slice_cost);
    x["slice_content"] = jv(b.annulus.slice_content);
    x["coarea_bound"] = jdouble(b.annulus.coarea_bound);
    x["coarea_ok"] = b.annulus.coarea_ok;
    x["inside_cells"] = b.inside.size();
    balls.push_back(x);
  }
  j["balls"] = balls;
  j["alpha"] = jdouble(d.alpha);
  j["eta_sum"] = jdouble(d.eta_sum);
  j["remainder_cells"] = d.remainder.size();
  j["remainder_content"] = jv(d.remainder_content);
  json checks = json::array();
  for (const auto& c : d.checks)
    checks.push_back({{"name", c.name}, {"lhs", jdouble(c.lhs)}, {"rhs", jdouble(c.rhs)}, {"holds", c.holds}});
  j["inequalities"] = checks;
  j["disjoint"] = d.disjoint;
  j["triple_cover"] = d.triple_cover;
  j["additivity"] = d.additivity;
  j["alpha_in_range"] = d.alpha_in_range;
  j["coarea_ok"] = d.coarea_ok;
  j["all_hold"] = d.all_hold;
  return j;
}

namespace {

// Exhaustive search over the fixed family; branches on the uncovered cell with
// the fewest containing balls. Returns nullopt when the budget runs out.
std::optional<double> search_cover(const Space& y, const Subset& w, const std::vector<Ball>& q, double e,
                                   std::size_t budget) {
  if (w.empty()) return 0.0;
  std::vector<std::vector<std::size_t>> by_cell(w.size());
  std::vector<double> weight;
  std::vector<std::vector<std::size_t>> members;
  for (const auto& b : q) {
    std::vector<std::size_t> mem;
    for (std::size_t t = 0; t < w.size(); ++t)
      if (contains_cell(b, y.cell(w[t]), y.delta())) mem.push_back(t);
    if (mem.empty()) continue;
    for (auto t : mem) by_cell[t].push_back(weight.size());
    weight.push_back(std::pow(to_double(b.radius), e));
    members.push_back(std::move(mem));
  }
  for (const auto& c : by_cell)
    if (c.empty()) return std::nullopt;
  for (auto& c : by_cell)
    std::stable_sort(c.begin(), c.end(), [&](std::size_t a, std::size_t b) { return weight[a] < weight[b]; });
  std::vector<int> covered(w.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::size_t nodes = 0;
  bool out = false;
  std::function<void(double)> go = [&](double cost) {
    if (out) return;
    if (++nodes > budget) {
      out = true;
      return;
    }
    std::size_t pick = w.size(), fewest = std::numeric_limits<std::size_t>::max();
    double bound = cost;
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (covered[t]) continue;
      bound = std::max(bound, cost + weight[by_cell[t].front()]);
      if (by_cell[t].size() < fewest) {
        fewest = by_cell[t].size();
        pick = t;
      }
    }
    if (pick == w.size()) {
      best = std::min(best, cost);
      return;
    }
    if (bound >= best * (1 - 1e-12)) return;
    for (auto k : by_cell[pick]) {
      for (auto t : members[k]) ++covered[t];
      go(cost + weight[k]);
      for (auto t : members[k]) --covered[t];
    }
  };
  go(0);
  if (out) return std::nullopt;
  return best;
}

bool close(double a, double b) { return std::fabs(a - b) <= 1e-9 * std::max({1e-300, std::fabs(a), std::fabs(b)}); }

}  // namespace

IndependentCheck verify_decomposition(const Space& y, const Decomposition& d, std::size_t node_budget) {
  IndependentCheck ic;
  double m = d.m;
  auto content = [&](const Subset& w, double e, const std::string& what) -> std::optional<double> {
    auto v = search_cover(y, w, d.q, e, node_budget);
    if (!v) {
      ic.complete = false;
      ic.notes.push_back("budget exhausted: " + what);
    }
    return v;
  };
  auto agree = [&](std::optional<double> mine, double theirs, const std::string& what) {
    if (mine && !close(*mine, theirs)) {
      ic.consistent = false;
      ic.notes.push_back("mismatch: " + what);
    }
  };

  auto hc = content(y.all(), m, "Y'");
  agree(hc, d.q_cost.approx, "H~C(Y')");
  double HC = hc.value_or(d.q_cost.approx);

  double max_r = 0, sum_wb = 0, sum_b = 0, sum_wi = 0, eta_sum = 0;
  std::vector<char> inside(y.size(), 0);
  bool disjoint = true, theta_ok = true, lambda_ok = true;
  for (std::size_t a = 0; a < d.balls.size(); ++a) {
    const auto& b = d.balls[a];
    const Rational& r = b.crit.r;
    const Rational& rb = b.annulus.r_bar;
    Rational fq = 1 + 1 / from_double(m);
    if (rb < fq * r || rb > fq * fq * r) theta_ok = false;
    auto e1 = content(cells_meeting(y, b.center, r), m, "eta(1)");
    auto et = content(cells_meeting(y, b.center, rb), m, "eta(theta)");
    agree(e1, b.eta_one.approx, "eta(1)");
    agree(et, b.eta_theta.approx, "eta(theta)");
    double eta1 = e1.value_or(b.eta_one.approx);
    if (eta1 / std::pow(to_double(r), m) < std::pow(d.A, -m) * (1 - 1e-9)) lambda_ok = false;
    Subset slice;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const auto& c = y.cell(i);
      if (cell_min_dist(b.center, c, y.delta()) <= rb && cell_max_dist(b.center, c, y.delta()) >= rb)
        slice.push_back(i);
      if (cell_max_dist(b.center, c, y.delta()) <= rb) inside[i] = 1;
    }
    if (slice != b.annulus.slice) {
      ic.consistent = false;
      ic.notes.push_back("slice cells differ");
    }
    auto sc = content(slice, m - 1, "slice");
    agree(sc, b.annulus.slice_content.approx, "slice content");
    double s = sc.value_or(b.annulus.slice_content.approx);
    double sp = s > 0 ? std::pow(s, m / (m - 1)) : 0;
    double rd = to_double(rb);
    max_r = std::max(max_r, rd);
    sum_wb += rd * sp;
    sum_b += sp;
    sum_wi += rd * et.value_or(b.eta_theta.approx);
    eta_sum += eta1;
    for (std::size_t c = a + 1; c < d.balls.size(); ++c)
      if (linf_distance(b.center, d.balls[c].center) <= rb + d.balls[c].annulus.r_bar) disjoint = false;
  }
  bool triple = true;
  for (std::size_t i = 0; i < y.size(); ++i) {
    bool ok = false;
    for (const auto& b : d.balls)
      if (cell_max_dist(b.center, y.cell(i), y.delta()) <= 3 * b.annulus.r_bar) ok = true;
    if (!ok) triple = false;
  }
  Subset rem;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!inside[i]) rem.push_back(i);
  if (rem != d.remainder) {
    ic.consistent = false;
    ic.notes.push_back("remainder differs");
  }
  auto rc = content(rem, m, "remainder");
  agree(rc, d.remainder_content.approx, "remainder content");
  double alpha = std::pow(eta_sum / HC, 1 / m);
  agree(alpha, d.alpha, "alpha");

  ic.checks = five_checks(m, d.A, alpha, HC, d.eps, max_r, rc.value_or(d.remainder_content.approx), sum_wb, sum_b, sum_wi);
  ic.checks.push_back({"disjoint", 0, 0, disjoint});
  ic.checks.push_back({"triple cover", 0, 0, triple});
  ic.checks.push_back(check("additivity", eta_sum, HC));
  ic.checks.push_back({"alpha range", alpha, 1, alpha > 1.0 / 12 && alpha <= 1 + 1e-9});
  ic.checks.push_back({"theta range", 0, 0, theta_ok});
  ic.checks.push_back({"lambda at r", 0, 0, lambda_ok});
  ic.all_hold = ic.consistent;
  for (const auto& c : ic.checks) ic.all_hold = ic.all_hold && c.holds;
  return ic;
}

json to_json(const IndependentCheck& c) {
  json j;
  json checks = json::array();
  for (const auto& x : c.checks)
    checks.push_back({{"name", x.name}, {"lhs", jdouble(x.lhs)}, {"rhs", jdouble(x.rhs)}, {"holds", x.holds}});
  j["inequalities"] = checks;
  j["consistent"] = c.consistent;
  j["complete"] = c.complete;
  j["all_hold"] = c.all_hold;
  j["notes"] = c.notes;
  return j;
}

}  // namespace hcf
