#include "hcf/report.hpp"

#include "hcf/json_util.hpp"

namespace hcf {

using nlohmann::json;

json envelope(const std::string& kind, json body) {
  json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  j["report"] = std::move(body);
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const ContentResult& r) {
  json j;
  j["m"] = jdouble(r.m);
  j["family"] = r.family;
  j["lower"] = jv(r.lower);
  j["upper"] = jv(r.upper);
  j["optimal"] = r.optimal;
  j["exact_arithmetic"] = r.exact_arithmetic;
  j["witness"] = jballs(r.witness.balls);
  j["certificate"] = {{"kind", r.certificate.kind},
                      {"lp_dual_value", jdouble(r.certificate.lp_dual_value)},
                      {"volume_value", jdouble(r.certificate.volume_value)}};
  j["candidates"] = r.candidates;
  j["nodes"] = r.nodes;
  return j;
}

json to_json(const Covering& c) {
  return {{"m", jdouble(c.m)}, {"cost", jv(c.cost)}, {"balls", jballs(c.balls)}};
}

json to_json(const SliceProfile& p, double m) {
  json j;
  j["r1"] = jq(p.r1);
  j["r2"] = jq(p.r2);
  j["lip"] = jq(p.lip);
  j["cells"] = p.u.size();
  j["clamped"] = p.clamped;
  json balls = json::array();
  for (std::size_t i = 0; i < p.balls.size(); ++i) {
    json b = jball(p.balls[i]);
    if (p.intervals[i]) {
      b["interval"] = {jq(p.intervals[i]->first), jq(p.intervals[i]->second)};
      Rational len = p.intervals[i]->second - p.intervals[i]->first;
      b["length"] = jq(len);
      b["length_bound"] = jq(2 * p.lip * p.balls[i].radius);
      b["length_ok"] = len <= 2 * p.lip * p.balls[i].radius;
    } else {
      b["interval"] = nullptr;
    }
    balls.push_back(b);
  }
  j["balls"] = balls;
  j["integral"] = jv(coarea_integral(p, m));
  return j;
}

json to_json(const Slice& s) {
  return {{"R", jq(s.R)},
          {"cost", jv(s.cost)},
          {"mean", jv(s.mean)},
          {"slice_bound", jv(s.slice_bound)},
          {"balls", s.balls},
          {"below_mean", s.below_mean},
          {"below_bound", s.below_bound}};
}

json to_json(const ConeCertificate& c, bool with_output) {
  json j;
  j["apex"] = jpoint(c.apex);
  j["R"] = jq(c.R);
  j["m"] = jdouble(c.m);
  j["variant"] = to_string(c.variant);
  j["input_count"] = c.input.size();
  j["input_cost"] = jv(c.input_cost);
  j["output_count"] = c.output.size();
  j["cost"] = jv(c.cost);
  j["bound"] = jv(c.bound);
  j["within_bound"] = c.within_bound;
  if (with_output) {
    j["input"] = jballs(c.input);
    json out = json::array();
    for (const auto& o : c.output) {
      json b = jball(o.ball);
      b["input"] = o.input;
      b["step"] = o.step;
      out.push_back(b);
    }
    j["output"] = out;
  }
  return j;
}

json to_json(const CoverageReport& r) {
  json j;
  j["samples"] = r.samples;
  j["misses"] = r.misses;
  json pts = json::array();
  for (const auto& p : r.miss_points) {
    json x = json::array();
    for (double v : p) x.push_back(jdouble(v));
    pts.push_back(x);
  }
  j["miss_points"] = pts;
  return j;
}

json to_json(const ThickPoint& p) { return {{"c", jpoint(p.c)}, {"rho", jq(p.rho)}}; }

namespace {

json jface(const Face& f) {
  json fr = json::array();
  for (char x : f.free) fr.push_back(x != 0);
  json a = json::array();
  for (auto x : f.anchor) a.push_back(x);
  return {{"anchor", a}, {"free", fr}, {"dim", f.dim()}};
}

json jthick(const std::vector<ThickPoint>& v) {
  json j = json::array();
  for (const auto& p : v) j.push_back(to_json(p));
  return j;
}

}  // namespace

json to_json(const AveragePoint& a) {
  json j;
  j["p"] = jpoint(a.p);
  j["content_before"] = jdouble(a.content_before);
  j["content_after"] = jdouble(a.content_after);
  j["ratio"] = jdouble(a.ratio);
  j["limit"] = jdouble(a.limit);
  j["within_ceiling"] = a.within_ceiling;
  j["candidates_tried"] = a.candidates_tried;
  j["image"] = jthick(a.image);
  return j;
}

json to_json(const DeformationTrace& t) {
  json j;
  j["R"] = jq(t.R);
  j["m"] = jdouble(t.m);
  j["n"] = t.n;
  j["delta"] = jq(t.delta);
  j["target_dim"] = t.target_dim;
  j["points"] = t.initial.size();
  j["initial"] = jthick(t.initial);
  j["final"] = jthick(t.final_points);
  json disp = json::array(), bound = json::array();
  for (const auto& x : t.displacement) disp.push_back(jq(x));
  for (const auto& x : t.displacement_bound) bound.push_back(jq(x));
  j["displacement"] = disp;
  j["displacement_bound"] = bound;
  json levels = json::array();
  for (const auto& l : t.levels) {
    json faces = json::array();
    for (const auto& f : l.faces)
      faces.push_back({{"face", jface(f.face)},
                       {"p", jpoint(f.p)},
                       {"points", f.points},
                       {"moved", f.moved},
                       {"content_before", jdouble(f.content_before)},
                       {"content_after", jdouble(f.content_after)},
                       {"ratio", jdouble(f.ratio)},
                       {"trace_cost", jdouble(f.trace_cost)}});
    levels.push_back({{"k", l.k}, {"content_after", jdouble(l.content_after)}, {"faces", faces}});
  }
  j["levels"] = levels;
  j["input_content"] = jdouble(t.input_content);
  j["trace_cost"] = jdouble(t.trace_cost);
  j["max_displacement"] = jq(t.max_displacement);
  j["displacement_const"] = jdouble(t.displacement_const);
  j["d_const"] = jdouble(t.d_const);
  j["d_ceiling"] = jdouble(t.d_ceiling);
  json ratios = json::array();
  for (double r : t.ratios) ratios.push_back(jdouble(r));
  j["ratios"] = ratios;
  j["cond_a"] = t.cond_a;
  j["cond_b"] = t.cond_b;
  j["cond_c"] = t.cond_c;
  j["cond_d"] = t.cond_d;
  j["ratios_within_ceiling"] = t.ratios_within_ceiling;
  return j;
}

json to_json(const LoomisWhitneyReport& r) {
  json j;
  j["n"] = r.n;
  j["cells"] = r.cells;
  j["projections"] = r.projections;
  j["cylinder"] = r.cylinder;
  j["lhs"] = r.lhs.get_str();
  j["rhs"] = r.rhs.get_str();
  j["inequality"] = r.inequality;
  j["r"] = jq(r.r);
  j["hc_n_upper"] = jq(r.hc_n_upper);
  j["cylinder_bound"] = jq(r.cylinder_bound);
  j["product_bound"] = jdouble(r.product_bound);
  j["projection_lower"] = jq(r.projection_lower);
  j["boundary_cells"] = r.boundary_cells;
  if (r.boundary_cells > 0) j["boundary_content"] = to_json(r.boundary_content);
  j["chain"] = r.chain;
  return j;
}

json to_json(const CubeEqualityReport& r) {
  return {{"n", r.n},
          {"side", jq(r.side)},
          {"cube", to_json(r.cube)},
          {"shell", to_json(r.shell)},
          {"equality", r.equality}};
}

}  // namespace hcf
