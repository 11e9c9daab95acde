#include "hcf/filling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "hcf/errors.hpp"
#include "hcf/json_util.hpp"
#include "hcf/report.hpp"

namespace hcf {

using nlohmann::json;

namespace {

ContentResult zero_content(double m) {
  ContentResult r;
  r.m = m;
  r.family = "all-grid";
  r.lower = r.upper = Value::of(Rational(0));
  r.optimal = true;
  r.exact_arithmetic = true;
  r.witness.m = m;
  r.witness.cost = r.upper;
  r.certificate.kind = "search";
  return r;
}

// Cells whose closure contains p, lexicographic.
std::vector<IntPoint> cells_at(const Point& p, const Rational& delta) {
  std::vector<IntPoint> out{IntPoint{}};
  for (const auto& x : p) {
    Rational u = x / delta;
    Rational f = floor_q(u);
    std::int64_t fi = f.get_num().get_si();
    std::vector<std::int64_t> opts;
    if (u == f) opts = {fi - 1, fi};
    else opts = {fi};
    std::vector<IntPoint> next;
    for (const auto& c : out)
      for (auto o : opts) {
        IntPoint d = c;
        d.push_back(o);
        next.push_back(std::move(d));
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// l_inf distance from p to the union of the cells of y, in ambient units.
double distance_to(const Space& y, const Point& p) {
  std::vector<double> u(p.size());
  double d = to_double(y.delta());
  for (std::size_t i = 0; i < p.size(); ++i) u[i] = to_double(p[i]) / d;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : y.cells()) best = std::min(best, cell_min_dist_units(u, c));
  return best * d;
}

// max over output balls of |center - apex| + radius.
Rational cone_reach(const ConeCertificate& c) {
  Rational best = 0;
  for (const auto& o : c.output) best = max_q(best, linf_distance(o.ball.center, c.apex) + o.ball.radius);
  return best;
}

Rational enclosing_R(const std::vector<Ball>& balls, const Point& apex) {
  Rational R = 0;
  for (const auto& b : balls) R = max_q(R, linf_distance(b.center, apex) + b.radius);
  return R;
}

}  // namespace

ImprovementStep improvement_step(const Space& y, double m, double eps, const FillOptions& opt, int k, int depth) {
  if (!(m > 1)) throw InputError("improvement step needs m > 1");
  if (depth > opt.max_depth) throw InputError("recursion depth exhausted");
  if (!y.is_voxel()) throw InputError("improvement step needs a voxel space");
  ImprovementStep st;
  st.k = k;
  st.m = m;
  st.eps = eps;
  DecomposeOptions dopt;
  dopt.A = opt.A;
  dopt.eps = eps;
  dopt.solver = opt.solver;
  st.decomposition = decompose(y, m, dopt);
  const Decomposition& d = st.decomposition;
  st.content_in = d.q_cost.approx;
  const Constants c = Constants::of(m);
  TildeContent tc(y, d.q, opt.solver);

  std::set<IntPoint> core;
  for (auto i : d.remainder) core.insert(y.cell(i));
  std::vector<char> kept(y.size(), 0);
  std::vector<long> owner(y.size(), -1);
  for (std::size_t j = 0; j < d.balls.size(); ++j) {
    const DecompBall& b = d.balls[j];
    BallFilling bf;
    bf.ball = j;
    bf.hub = b.center;
    bf.slice = b.annulus.slice;
    bf.slice_content = Value::of(Rational(0));
    if (!bf.slice.empty()) {
      Space s = y.subspace(bf.slice);
      if (m <= 2) {
        ContentResult sc = exact_content(s, s.all(), m - 1, {}, opt.solver);
        bf.slice_content = sc.upper;
        bf.footprint = merge_to_disjoint(sc.witness.balls, m - 1);
        bf.footprint_cost = covering_cost(bf.footprint, m).approx;
        bf.footprint_bound = c.I1 * std::pow(sc.upper.approx, m / (m - 1)) * (1 + 1e-9);
        bf.footprint_ok = bf.footprint_cost <= bf.footprint_bound;
      } else {
        FillOptions so = opt;
        so.A.reset();
        so.eps.reset();
        so.eps0.reset();
        auto sub = std::make_shared<FillingCertificate>(fill(s, m - 1, so, depth + 1));
        bf.recursive = true;
        bf.slice_content = Value::of(sub->hc);
        bf.footprint = sub->footprint();
        bf.footprint_cost = sub->trace_total;
        bf.footprint_bound = sub->trace_bound;
        bf.footprint_ok = sub->trace_ok;
        bf.sub = std::move(sub);
      }
    }
    bf.interior = tc.cover(cells_meeting(y, b.center, b.annulus.r_bar), m);
    bf.interior_cost = covering_cost(bf.interior, m);
    std::vector<CellTester> testers;
    for (const auto& f : bf.footprint) testers.emplace_back(f, y.delta());
    for (auto i : b.inside) {
      owner[i] = static_cast<long>(j);
      bool in = std::any_of(testers.begin(), testers.end(), [&](const CellTester& t) { return t.contains(y.cell(i)); });
      if (in) {
        kept[i] = 1;
        core.insert(y.cell(i));
        ++bf.kept;
      } else {
        ++bf.moved;
      }
    }
    st.balls.push_back(std::move(bf));
  }

  // Hub cells: prefer one already carrying content, then one of Y.
  std::vector<IntPoint> hubs;
  std::set<IntPoint> all = core;
  for (auto& bf : st.balls) {
    std::vector<IntPoint> at = cells_at(bf.hub, y.delta());
    const IntPoint* pick = nullptr;
    for (const auto& x : at)
      if (core.count(x)) {
        pick = &x;
        break;
      }
    if (!pick)
      for (const auto& x : at)
        if (y.find(x)) {
          pick = &x;
          break;
        }
    if (!pick) pick = &at.front();
    bf.hub_extra = core.count(*pick) == 0;
    hubs.push_back(*pick);
    all.insert(*pick);
  }
  st.next = Space::voxel(y.dim(), y.delta(), std::vector<IntPoint>(all.begin(), all.end()));
  for (std::size_t i = 0; i < st.next.size(); ++i)
    if (core.count(st.next.cell(i))) st.core.push_back(i);
  std::set<IntPoint> extra;
  for (std::size_t j = 0; j < st.balls.size(); ++j) {
    st.balls[j].hub_cell = *st.next.find(hubs[j]);
    if (st.balls[j].hub_extra) extra.insert(hubs[j]);
  }
  st.hub_content = static_cast<double>(extra.size()) * std::pow(to_double(y.delta()) / 2, m);

  st.theta.resize(y.size());
  st.displacement.assign(y.size(), Rational(0));
  st.max_displacement = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (owner[i] < 0 || kept[i]) {
      st.theta[i] = *st.next.find(y.cell(i));
      continue;
    }
    const BallFilling& bf = st.balls[static_cast<std::size_t>(owner[i])];
    st.theta[i] = bf.hub_cell;
    st.displacement[i] = cell_max_dist(bf.hub, y.cell(i), y.delta());
    st.max_displacement = max_q(st.max_displacement, st.displacement[i]);
  }

  st.content_out = st.core.empty() ? zero_content(m) : exact_content(st.next, st.core, m, {}, opt.solver);
  st.certificate_bound = d.remainder_content.approx;
  for (const auto& bf : st.balls) st.certificate_bound += bf.footprint_cost;
  st.ratio = st.content_in > 0 ? st.content_out.upper.approx / st.content_in : 0;
  st.decay_bound = c.decay * st.content_in + eps;
  st.decay_ok = st.content_out.upper.approx <= st.decay_bound * (1 + 1e-12);
  st.displacement_bound = 3 * d.A * std::pow(st.content_in, 1 / m) + eps;
  st.displacement_ok = to_double(st.max_displacement) <= st.displacement_bound * (1 + 1e-12);
  std::vector<IntPoint> before = y.cells();
  std::sort(before.begin(), before.end());
  st.fixed_point = before == st.next.cells();
  return st;
}

SequenceReport improvement_sequence(const Space& y, double m, const FillOptions& opt, int depth) {
  if (!(m > 1)) throw InputError("improvement sequence needs m > 1");
  if (!y.is_voxel()) throw InputError("improvement sequence needs a voxel space");
  if (y.size() == 0) throw InputError("improvement sequence needs a non-empty set");
  if (opt.K < 1) throw InputError("K must be positive");
  const Constants c = Constants::of(m);
  SequenceReport rep;
  rep.m = m;
  rep.A = opt.A.value_or(c.A);
  rep.K = opt.K;
  ContentResult hc = exact_content(y, y.all(), m, {}, opt.solver);
  rep.hc = hc.upper.approx;
  rep.hc_lower = hc.lower.approx;
  rep.eps = opt.eps.value_or(1e-3 * rep.hc);
  rep.eps0 = opt.eps0.value_or(1e-4 * rep.hc);
  rep.contents.push_back(rep.hc);

  // pos[i]: index of cell i's current image in `cur`, or npos once it sits at a
  // hub point that carries no content.
  const std::size_t npos = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pos(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) pos[i] = i;
  rep.cumulative.assign(y.size(), Rational(0));
  Space cur = y;
  rep.stop_reason = "K reached";
  for (int k = 1; k <= opt.K; ++k) {
    double eps_k = rep.eps / (3 * m * std::pow(10.0, m) * rep.A * std::pow(2.0, k));
    ImprovementStep st = improvement_step(cur, m, eps_k, opt, k, depth);
    std::vector<std::size_t> to_sub(st.next.size(), npos);
    for (std::size_t t = 0; t < st.core.size(); ++t) to_sub[st.core[t]] = t;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (pos[i] == npos) continue;
      rep.cumulative[i] += st.displacement[pos[i]];
      pos[i] = to_sub[st.theta[pos[i]]];
    }
    rep.contents.push_back(st.content_out.upper.approx);
    bool fixed = st.fixed_point;
    bool empty = st.core.empty();
    double out = st.content_out.upper.approx;
    Space next = empty ? Space{} : st.next.subspace(st.core);
    rep.steps.push_back(std::move(st));
    if (empty) {
      rep.stop_reason = "empty";
      break;
    }
    if (out < rep.eps0) {
      rep.stop_reason = "below eps0";
      break;
    }
    if (fixed) {
      rep.stop_reason = "fixed point";
      break;
    }
    cur = std::move(next);
  }

  rep.decay_ok = true;
  for (const auto& s : rep.steps) rep.decay_ok = rep.decay_ok && s.decay_ok && s.displacement_ok;
  rep.envelope_ok = true;
  for (std::size_t k = 0; k < rep.contents.size(); ++k) {
    double env = std::pow(c.decay, static_cast<double>(k)) * rep.hc + rep.eps;
    rep.decay_envelope.push_back(env);
    rep.envelope_ok = rep.envelope_ok && rep.contents[k] <= env * (1 + 1e-12);
  }
  rep.max_cumulative = 0;
  for (const auto& x : rep.cumulative) rep.max_cumulative = max_q(rep.max_cumulative, x);
  double I2 = 10 * m * std::pow(12.0, m) * rep.A;
  rep.cumulative_bound = I2 * std::pow(rep.hc, 1 / m) + rep.eps;
  rep.cumulative_bound_linear = I2 * rep.hc + rep.eps;
  double mc = to_double(rep.max_cumulative);
  rep.cumulative_ok = mc <= rep.cumulative_bound * (1 + 1e-12);
  rep.cumulative_linear_ok = mc <= rep.cumulative_bound_linear * (1 + 1e-12);
  return rep;
}

std::vector<Ball> FillingCertificate::footprint() const {
  std::vector<Ball> out;
  for (const auto& c : cones)
    for (const auto& o : c.cert.output) out.push_back(o.ball);
  if (terminal_cone)
    for (const auto& o : terminal_cone->output) out.push_back(o.ball);
  return out;
}

FillingCertificate fill(const Space& y, double m, const FillOptions& opt, int depth) {
  if (!(m > 1)) throw InputError("fill needs m > 1");
  if (!y.is_voxel()) throw InputError("fill needs a voxel space");
  FillingCertificate cert;
  cert.m = m;
  cert.n = y.dim();
  cert.delta = y.delta();
  cert.cells = y.size();
  cert.constants = Constants::of(m);
  cert.constants_next = Constants::of(m + 1);
  cert.sequence = improvement_sequence(y, m, opt, depth);
  const SequenceReport& seq = cert.sequence;
  cert.hc = seq.hc;
  cert.hc_lower = seq.hc_lower;
  cert.eps = seq.eps;

  for (std::size_t t = 0; t < seq.steps.size(); ++t) {
    const ImprovementStep& st = seq.steps[t];
    double step_cost = 0;
    for (const auto& bf : st.balls) {
      const DecompBall& b = st.decomposition.balls[bf.ball];
      std::vector<Ball> input = bf.interior;
      input.insert(input.end(), bf.footprint.begin(), bf.footprint.end());
      if (input.empty()) continue;
      ConeStep cs;
      cs.step = t;
      cs.ball = bf.ball;
      cs.cert = cone_covering(input, bf.hub, enclosing_R(input, bf.hub), m + 1, opt.variant);
      cs.coning_estimate = std::exp(1.0) * m * to_double(b.annulus.r_bar) * (bf.footprint_cost + bf.interior_cost.approx);
      cs.within_estimate = cs.cert.cost.approx <= cs.coning_estimate * (1 + 1e-12);
      cs.radius = distance_to(y, bf.hub) + to_double(cone_reach(cs.cert));
      step_cost += cs.cert.cost.approx;
      cert.filling_radius = std::max(cert.filling_radius, cs.radius);
      cert.cones.push_back(std::move(cs));
    }
    cert.step_cone_cost.push_back(step_cost);
    cert.cone_total += step_cost;
    const Decomposition& d = st.decomposition;
    double c1 = 0.25 * cert.constants.I1 * std::pow(d.alpha, m + 1) * std::pow(d.q_cost.approx, (m + 1) / m) + st.eps;
    cert.condition_one.push_back(c1);
    cert.condition_one_ok.push_back(step_cost <= c1 * (1 + 1e-12));
  }

  // What the last step leaves behind.
  const ImprovementStep& last = seq.steps.back();
  cert.residual = last.core;
  cert.residual_content = last.content_out.upper.approx;
  cert.terminal = "none";
  if (!cert.residual.empty()) {
    const Space& ls = last.next;
    if (m + 1 <= y.dim()) {
      cert.terminal = "pushout";
      std::vector<ThickPoint> v;
      for (auto i : cert.residual) v.push_back({ls.cell_center(i), ls.delta() / 2});
      Rational R = grid_R_for_content(cert.residual_content, m + 1, y.dim(), y.delta(), opt.pushout);
      for (int attempt = 0;; ++attempt) {
        try {
          cert.pushout = skeleton_descend(v, R, m + 1, y.dim(), y.delta(), opt.pushout);
          break;
        } catch (const PushoutPreconditionError&) {
          if (attempt >= 40) throw;
          R *= 2;
        }
      }
      const DeformationTrace& tr = *cert.pushout;
      cert.terminal_cost = tr.trace_cost;
      Rational rho = 0;
      for (const auto& p : tr.final_points) rho = max_q(rho, p.rho);
      for (std::size_t i = 0; i < v.size(); ++i)
        cert.terminal_radius =
            std::max(cert.terminal_radius, distance_to(y, v[i].c) + to_double(tr.displacement_bound[i] + rho));
    } else {
      cert.terminal = "cone";
      const std::vector<Ball>& in = last.content_out.witness.balls;
      std::vector<Point> centers;
      for (const auto& b : in) centers.push_back(b.center);
      Point apex = min_enclosing_ball_linf(centers).center;
      cert.terminal_cone = cone_covering(in, apex, enclosing_R(in, apex), m + 1, opt.variant);
      cert.terminal_cost = cert.terminal_cone->cost.approx;
      cert.terminal_radius = distance_to(y, apex) + to_double(cone_reach(*cert.terminal_cone));
    }
    cert.filling_radius = std::max(cert.filling_radius, cert.terminal_radius);
  }
  cert.trace_total = cert.cone_total + cert.terminal_cost;

  double cone_sum = 0, step_sum = 0;
  for (const auto& cs : cert.cones) cone_sum += cs.cert.cost.approx;
  for (double x : cert.step_cone_cost) step_sum += x;
  cert.totals_consistent = std::fabs(cone_sum - cert.cone_total) <= 1e-9 * std::max(1.0, cone_sum) &&
                           std::fabs(step_sum - cert.cone_total) <= 1e-9 * std::max(1.0, step_sum) &&
                           cert.trace_total == cert.cone_total + cert.terminal_cost;

  cert.trace_bound = cert.constants_next.I1 * std::pow(cert.hc_lower, (m + 1) / m) + cert.eps;
  cert.radius_bound = cert.constants.I2 * std::pow(cert.hc, 1 / m) + to_double(y.delta());
  double hs = std::pow(cert.hc_lower, (m + 1) / m);
  cert.trace_ratio = hs > 0 ? cert.trace_total / hs : 0;
  double hr = std::pow(cert.hc, 1 / m);
  cert.radius_ratio = hr > 0 ? cert.filling_radius / hr : 0;
  cert.trace_ok = cert.trace_total <= cert.trace_bound * (1 + 1e-12);
  cert.radius_ok = cert.filling_radius <= cert.radius_bound * (1 + 1e-12);
  return cert;
}

json to_json(const ImprovementStep& s) {
  json j;
  j["k"] = s.k;
  j["m"] = jdouble(s.m);
  j["eps"] = jdouble(s.eps);
  j["decomposition"] = to_json(s.decomposition);
  json balls = json::array();
  for (const auto& b : s.balls) {
    json x;
    x["ball"] = b.ball;
    x["hub"] = jpoint(b.hub);
    x["slice_cells"] = b.slice.size();
    x["slice_content"] = jv(b.slice_content);
    x["interior"] = jballs(b.interior);
    x["interior_cost"] = jv(b.interior_cost);
    x["footprint"] = jballs(b.footprint);
    x["footprint_cost"] = jdouble(b.footprint_cost);
    x["footprint_bound"] = jdouble(b.footprint_bound);
    x["footprint_ok"] = b.footprint_ok;
    x["recursive"] = b.recursive;
    if (b.sub) x["sub"] = to_json(*b.sub);
    x["kept"] = b.kept;
    x["moved"] = b.moved;
    x["hub_cell"] = b.hub_cell;
    x["hub_extra"] = b.hub_extra;
    balls.push_back(x);
  }
  j["balls"] = balls;
  j["next_cells"] = s.next.size();
  j["core_cells"] = s.core.size();
  j["theta"] = s.theta;
  j["max_displacement"] = jq(s.max_displacement);
  j["content_in"] = jdouble(s.content_in);
  j["content_out"] = jv(s.content_out.upper);
  j["content_out_lower"] = jv(s.content_out.lower);
  j["content_out_optimal"] = s.content_out.optimal;
  j["hub_content"] = jdouble(s.hub_content);
  j["certificate_bound"] = jdouble(s.certificate_bound);
  j["ratio"] = jdouble(s.ratio);
  j["decay_bound"] = jdouble(s.decay_bound);
  j["displacement_bound"] = jdouble(s.displacement_bound);
  j["decay_ok"] = s.decay_ok;
  j["displacement_ok"] = s.displacement_ok;
  j["fixed_point"] = s.fixed_point;
  return j;
}

json to_json(const SequenceReport& s) {
  json j;
  j["m"] = jdouble(s.m);
  j["A"] = jdouble(s.A);
  j["hc"] = jdouble(s.hc);
  j["hc_lower"] = jdouble(s.hc_lower);
  j["eps"] = jdouble(s.eps);
  j["eps0"] = jdouble(s.eps0);
  j["K"] = s.K;
  json steps = json::array();
  for (const auto& st : s.steps) steps.push_back(to_json(st));
  j["steps"] = steps;
  json contents = json::array(), env = json::array(), cum = json::array();
  for (double x : s.contents) contents.push_back(jdouble(x));
  for (double x : s.decay_envelope) env.push_back(jdouble(x));
  for (const auto& x : s.cumulative) cum.push_back(jq(x));
  j["contents"] = contents;
  j["decay_envelope"] = env;
  j["cumulative"] = cum;
  j["max_cumulative"] = jq(s.max_cumulative);
  j["cumulative_bound"] = jdouble(s.cumulative_bound);
  j["cumulative_bound_linear"] = jdouble(s.cumulative_bound_linear);
  j["decay_ok"] = s.decay_ok;
  j["envelope_ok"] = s.envelope_ok;
  j["cumulative_ok"] = s.cumulative_ok;
  j["cumulative_linear_ok"] = s.cumulative_linear_ok;
  j["stop_reason"] = s.stop_reason;
  return j;
}

json to_json(const FillingCertificate& c) {
  json j;
  j["m"] = jdouble(c.m);
  j["n"] = c.n;
  j["delta"] = jq(c.delta);
  j["cells"] = c.cells;
  j["I1_m"] = jdouble(c.constants.I1);
  j["I1_m_plus_1"] = jdouble(c.constants_next.I1);
  j["I2_m"] = jdouble(c.constants.I2);
  j["hc"] = jdouble(c.hc);
  j["hc_lower"] = jdouble(c.hc_lower);
  j["eps"] = jdouble(c.eps);
  j["sequence"] = to_json(c.sequence);
  json cones = json::array();
  for (const auto& cs : c.cones) {
    json x = to_json(cs.cert, false);
    x["step"] = cs.step;
    x["ball"] = cs.ball;
    x["coning_estimate"] = jdouble(cs.coning_estimate);
    x["within_estimate"] = cs.within_estimate;
    x["radius"] = jdouble(cs.radius);
    cones.push_back(x);
  }
  j["cones"] = cones;
  json sc = json::array(), c1 = json::array(), c1ok = json::array();
  for (double x : c.step_cone_cost) sc.push_back(jdouble(x));
  for (double x : c.condition_one) c1.push_back(jdouble(x));
  for (bool x : c.condition_one_ok) c1ok.push_back(x);
  j["step_cone_cost"] = sc;
  j["condition_one"] = c1;
  j["condition_one_ok"] = c1ok;
  j["terminal"] = c.terminal;
  j["residual_cells"] = c.residual.size();
  j["residual_content"] = jdouble(c.residual_content);
  if (c.pushout) j["pushout"] = to_json(*c.pushout);
  if (c.terminal_cone) j["terminal_cone"] = to_json(*c.terminal_cone, false);
  j["terminal_cost"] = jdouble(c.terminal_cost);
  j["terminal_radius"] = jdouble(c.terminal_radius);
  j["cone_total"] = jdouble(c.cone_total);
  j["trace_total"] = jdouble(c.trace_total);
  j["filling_radius"] = jdouble(c.filling_radius);
  j["trace_bound"] = jdouble(c.trace_bound);
  j["radius_bound"] = jdouble(c.radius_bound);
  j["trace_ratio"] = jdouble(c.trace_ratio);
  j["radius_ratio"] = jdouble(c.radius_ratio);
  j["trace_ok"] = c.trace_ok;
  j["radius_ok"] = c.radius_ok;
  j["totals_consistent"] = c.totals_consistent;
  return j;
}

}  // namespace hcf
