#include "hcf/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <thread>

#include "hcf/cover.hpp"
#include "hcf/decomposition.hpp"
#include "hcf/errors.hpp"
#include "hcf/filling.hpp"
#include "hcf/fixtures.hpp"
#include "hcf/io.hpp"
#include "hcf/json_util.hpp"
#include "hcf/report.hpp"
#include "hcf/width.hpp"

namespace hcf {

using nlohmann::json;
namespace fs = std::filesystem;

bool Fixture::has_tag(const std::string& t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }

Fixture fixture_from_json(const json& j, const std::string& file) {
  if (!j.is_object()) throw InputError("fixture must be a JSON object");
  Fixture f;
  f.file = file;
  f.name = j.value("name", file);
  if (j.contains("tags")) f.tags = j.at("tags").get<std::vector<std::string>>();
  f.m = j.value("m", 2.0);
  if (!(f.m > 0)) throw InputError("fixture m must be positive");
  if (j.value("variant", std::string("voxel")) == "points") {
    if (!j.contains("n") || !j.contains("points")) throw InputError("point fixture needs n and points");
    f.n = j.at("n").get<int>();
    f.delta = j.contains("delta") ? rational_from_json(j.at("delta")) : frac(1, 64);
    if (j.contains("R")) f.R = rational_from_json(j.at("R"));
    f.points = thick_points_from_json(j.at("points"));
    for (const auto& p : f.points)
      if (static_cast<int>(p.c.size()) != f.n) throw InputError("point dimension differs from n");
    return f;
  }
  f.space = space_from_json(j);
  f.n = f.space->dim();
  if (f.space->is_voxel()) f.delta = f.space->delta();
  return f;
}

Fixture load_fixture(const std::string& path) {
  json j = read_json_file(path);
  try {
    return fixture_from_json(j, fs::path(path).filename().string());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<std::string> list_fixtures(const std::string& dir) {
  if (!fs::is_directory(dir)) throw InputError(dir + ": no such fixture directory");
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

json distribution(std::vector<double> xs) {
  json j;
  j["count"] = xs.size();
  if (xs.empty()) return j;
  std::sort(xs.begin(), xs.end());
  double sum = 0;
  for (double x : xs) sum += x;
  std::size_t k = xs.size();
  j["min"] = jdouble(xs.front());
  j["max"] = jdouble(xs.back());
  j["mean"] = jdouble(sum / k);
  j["median"] = jdouble(k % 2 ? xs[k / 2] : (xs[k / 2 - 1] + xs[k / 2]) / 2);
  return j;
}

namespace {

Value pow_value(const Value& v, double e) {
  if (v.exact && e == std::floor(e) && e >= 0) return Value::of(pow_int(*v.exact, static_cast<std::int64_t>(e)));
  return Value::of(std::pow(v.approx, e));
}

json check_entry(const std::string& name, const Value& lhs, const Value& rhs, bool holds) {
  return {{"name", name}, {"lhs", jv(lhs)}, {"rhs", jv(rhs)}, {"holds", holds}};
}

}  // namespace

json property_checks(const Space& s, double m, const SolverOptions& opt, bool& ok) {
  if (!s.is_voxel()) throw InputError("property checks need a voxel space");
  json checks = json::array();
  ok = true;
  auto add = [&](const std::string& name, const Value& lhs, const Value& rhs) {
    bool h = leq(lhs, rhs);
    ok = ok && h;
    checks.push_back(check_entry(name, lhs, rhs, h));
  };
  auto hc = [&](const Space& t, double e) { return exact_content(t, t.all(), e, {}, opt); };

  ContentResult whole = hc(s, m);
  // subadditivity and monotonicity on the split into even and odd cells
  if (s.size() >= 2) {
    std::vector<IntPoint> a, b;
    for (std::size_t i = 0; i < s.size(); ++i) (i % 2 ? b : a).push_back(s.cell(i));
    Space sa = Space::voxel(s.dim(), s.delta(), a), sb = Space::voxel(s.dim(), s.delta(), b);
    ContentResult ha = hc(sa, m), hb = hc(sb, m);
    add("subadditivity", whole.lower, ha.upper + hb.upper);
    add("monotonicity", ha.lower, whole.upper);
  }
  // rescaling with the family: delta scaled by lambda
  for (std::int64_t lambda : {2, 3}) {
    Space big = Space::voxel(s.dim(), s.delta() * lambda, s.cells());
    ContentResult hl = hc(big, m);
    Value f = pow_value(Value::of(Rational(lambda)), m);
    add("rescale " + std::to_string(lambda) + " upper", hl.lower, f * whole.upper);
    add("rescale " + std::to_string(lambda) + " lower", f * whole.lower, hl.upper);
  }
  // cell replication: the scaled witness is admissible. Kept small since the
  // finer grid multiplies the candidate count.
  if (s.size() << s.dim() <= 256) {
    Space rep = scale_space(s, 2);
    SolverOptions small = opt;
    small.node_budget = std::min<std::size_t>(opt.node_budget, 20000);
    ContentResult hr = exact_content(rep, rep.all(), m, {}, small);
    add("replication 2", hr.lower, pow_value(Value::of(Rational(2)), m) * whole.upper);
  }
  // HC_m <= rad^m <= diam^m
  std::vector<Point> corners;
  for (const auto& c : s.cells()) {
    Point lo, hi;
    for (auto x : c) {
      lo.push_back(Rational(x) * s.delta());
      hi.push_back(Rational(x + 1) * s.delta());
    }
    corners.push_back(lo);
    corners.push_back(hi);
  }
  Ball enc = min_enclosing_ball_linf(corners);
  Value radm = power(enc.radius, m), diamm = power(Rational(2 * enc.radius), m);
  add("content below rad^m", whole.lower, radm);
  add("rad^m below diam^m", radm, diamm);
  // dimension comparison against k = 1
  if (m > 1) {
    ContentResult h1 = hc(s, 1);
    add("dimension comparison", whole.lower, pow_value(h1.upper, m));
  }
  json j;
  j["m"] = m;
  j["cells"] = s.size();
  j["content"] = to_json(whole);
  j["checks"] = checks;
  j["all_hold"] = ok;
  return j;
}

DeformationTrace descend(const std::vector<ThickPoint>& v, double m, int n, const Rational& delta,
                         std::optional<Rational> R, const PushoutConfig& cfg, int* doublings) {
  Rational r;
  if (R) {
    r = *R;
  } else {
    double hc = thick_cover(v, m - 1).cost;
    r = grid_R_for_content(hc, m, n, delta, cfg);
  }
  for (int attempt = 0;; ++attempt) {
    try {
      DeformationTrace t = skeleton_descend(v, r, m, n, delta, cfg);
      if (doublings) *doublings = attempt;
      return t;
    } catch (const PushoutPreconditionError&) {
      if (attempt >= 40) throw;
      r *= 2;
    }
  }
}

SuiteRow run_suite(const std::string& suite, const Fixture& f, const RunConfig& cfg) {
  SuiteRow row;
  row.file = f.file;
  if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    throw InputError("unknown suite '" + suite + "'");
  const bool voxel = f.space && f.space->is_voxel();
  try {
    if (suite == "pushout") {
      if (!f.is_points()) return row;
      row.applicable = true;
      int doublings = 0;
      DeformationTrace t = descend(f.points, f.m, f.n, f.delta, f.R, cfg.pushout, &doublings);
      row.pass = t.cond_a && t.cond_b && t.cond_c && t.cond_d;
      row.report = to_json(t);
      row.report["R_doublings"] = doublings;
      row.measured = {{"ratios", t.ratios}, {"d_const", jdouble(t.d_const)}, {"d_ceiling", jdouble(t.d_ceiling)},
                      {"displacement_const", jdouble(t.displacement_const)}};
      return row;
    }
    if (!f.space) return row;
    const Space& s = *f.space;
    if (suite == "content") {
      row.applicable = true;
      ContentResult r = exact_content(s, s.all(), f.m, {}, cfg.solver);
      row.report = to_json(r);
      row.pass = leq(r.lower, r.upper);
      if (voxel) {
        Value vol = volume_lower_bound(s, s.all(), f.m);
        row.report["volume_lower_bound"] = jv(vol);
        row.pass = row.pass && leq(vol, r.upper);
      }
      row.measured = {{"lower", jdouble(r.lower.approx)}, {"upper", jdouble(r.upper.approx)}, {"optimal", r.optimal}};
      return row;
    }
    if (!voxel) return row;
    if (suite == "invariants") {
      row.applicable = true;
      bool ok = false;
      row.report = property_checks(s, f.m, cfg.solver, ok);
      std::size_t bad = 0;
      for (const auto& c : row.report["checks"]) bad += !c["holds"].get<bool>();
      row.pass = ok;
      row.measured = {{"checks", row.report["checks"].size()}, {"violations", bad}};
    } else if (suite == "decompose") {
      if (f.m <= 1) return row;
      row.applicable = true;
      Decomposition d = decompose(s, f.m, cfg.decompose_options());
      IndependentCheck ic = verify_decomposition(s, d, cfg.solver.node_budget);
      row.pass = d.all_hold && ic.all_hold && ic.complete;
      row.report = {{"decomposition", to_json(d)}, {"independent", to_json(ic)}};
      row.measured = {{"alpha", jdouble(d.alpha)}, {"balls", d.balls.size()}, {"A", jdouble(d.A)}};
    } else if (suite == "fill") {
      if (f.m <= 1) return row;
      row.applicable = true;
      FillingCertificate c = fill(s, f.m, cfg.fill_options());
      row.pass = c.trace_ok && c.radius_ok && c.totals_consistent && c.sequence.decay_ok && c.sequence.cumulative_ok;
      row.report = to_json(c);
      row.measured = {{"trace_ratio", jdouble(c.trace_ratio)},
                      {"radius_ratio", jdouble(c.radius_ratio)},
                      {"steps", c.sequence.steps.size()},
                      {"terminal", c.terminal}};
    } else if (suite == "lw") {
      if (s.dim() < 2) return row;
      row.applicable = true;
      LoomisWhitneyReport r = loomis_whitney_check(s, true, cfg.solver);
      row.pass = r.inequality && r.chain;
      row.report = to_json(r);
      row.measured = {{"lhs", r.lhs.get_str()}, {"rhs", r.rhs.get_str()}};
    } else if (suite == "width") {
      row.applicable = true;
      int wm = std::max(1, static_cast<int>(std::lround(f.m)));
      WidthResult w = width_bound(s, wm, cfg.width_budget, cfg.seed, cfg.solver);
      WidthVerification v = verify_width(s, w);
      row.pass = v.all_ok;
      row.report = {{"width", to_json(w)}, {"verification", to_json(v)}};
      double ratio = w.bound > 0 ? to_double(w.diameter / w.bound) : 0;
      row.measured = {{"bound", jq(w.bound)},
                      {"diameter", jq(w.diameter)},
                      {"diameter_over_bound", jdouble(ratio)},
                      {"c_measured", jdouble(w.c_measured)}};
    }
  } catch (const VerificationError& e) {
    row.applicable = true;
    row.pass = false;
    row.report = {{"error", e.what()}, {"payload", e.payload()}};
  } catch (const InputError& e) {
    row.applicable = true;
    row.pass = false;
    row.report = {{"error", e.what()}};
  } catch (const std::runtime_error& e) {
    row.applicable = true;
    row.pass = false;
    row.report = {{"error", e.what()}};
  }
  return row;
}

CorpusReport corpus_run(const std::string& dir, const std::string& suite, const RunConfig& cfg) {
  if (std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    throw InputError("unknown suite '" + suite + "'");
  std::vector<Fixture> fixtures;
  for (const auto& p : list_fixtures(dir)) fixtures.push_back(load_fixture(p));
  CorpusReport rep;
  rep.suite = suite;
  rep.rows.resize(fixtures.size());
  std::size_t workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(1, fixtures.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < fixtures.size();) rep.rows[i] = run_suite(suite, fixtures[i], cfg);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<double> alpha, trace, radius, cm, dob, ratios, dconst, upper;
  for (const auto& r : rep.rows) {
    if (!r.applicable) {
      ++rep.skipped;
      continue;
    }
    (r.pass ? rep.passed : rep.failed)++;
    const json& m = r.measured;
    auto num = [&](const char* k, std::vector<double>& out) {
      if (m.is_object() && m.contains(k) && m.at(k).is_number()) out.push_back(m.at(k).get<double>());
    };
    num("alpha", alpha);
    num("trace_ratio", trace);
    num("radius_ratio", radius);
    num("c_measured", cm);
    num("diameter_over_bound", dob);
    num("d_const", dconst);
    num("upper", upper);
    if (m.is_object() && m.contains("ratios"))
      for (const auto& x : m.at("ratios")) ratios.push_back(x.get<double>());
  }
  json agg = json::object();
  if (suite == "decompose") agg["alpha"] = distribution(alpha);
  if (suite == "fill") {
    agg["trace_ratio"] = distribution(trace);
    agg["radius_ratio"] = distribution(radius);
  }
  if (suite == "width") {
    agg["c_measured"] = distribution(cm);
    agg["diameter_over_bound"] = distribution(dob);
  }
  if (suite == "pushout") {
    agg["average_point_ratio"] = distribution(ratios);
    agg["d_const"] = distribution(dconst);
  }
  if (suite == "content") agg["content"] = distribution(upper);
  rep.aggregate = agg;
  return rep;
}

json to_json(const CorpusReport& r) {
  json rows = json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"file", x.file}, {"applicable", x.applicable}, {"pass", x.pass}, {"measured", x.measured},
                    {"report", x.report}});
  return {{"suite", r.suite},   {"fixtures", r.rows.size()}, {"passed", r.passed}, {"failed", r.failed},
          {"skipped", r.skipped}, {"aggregate", r.aggregate}, {"rows", rows}};
}

std::string format_table(const CorpusReport& r) {
  std::size_t w = 7;
  for (const auto& x : r.rows) w = std::max(w, x.file.size());
  std::ostringstream os;
  auto pad = [&](const std::string& s) { return s + std::string(w - std::min(w, s.size()) + 2, ' '); };
  os << "suite " << r.suite << "\n" << pad("fixture") << "status  measured\n";
  for (const auto& x : r.rows) {
    std::string st = !x.applicable ? "skip" : x.pass ? "pass" : "FAIL";
    os << pad(x.file) << st << std::string(8 - st.size(), ' ') << (x.applicable ? x.measured.dump() : "") << "\n";
  }
  os << "passed " << r.passed << ", failed " << r.failed << ", skipped " << r.skipped << "\n";
  for (auto it = r.aggregate.begin(); it != r.aggregate.end(); ++it) os << it.key() << " " << it.value().dump() << "\n";
  return os.str();
}

}  // namespace hcf
