// Acceptance run: one line per criterion, reports under the output directory.
//   acceptance [--out DIR] [--fixtures DIR] [criterion ...]
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "hcf/coarea.hpp"
#include "hcf/cone.hpp"
#include "hcf/corpus.hpp"
#include "hcf/cover.hpp"
#include "hcf/decomposition.hpp"
#include "hcf/errors.hpp"
#include "hcf/filling.hpp"
#include "hcf/fixtures.hpp"
#include "hcf/io.hpp"
#include "hcf/json_util.hpp"
#include "hcf/pushout.hpp"
#include "hcf/report.hpp"
#include "hcf/width.hpp"

#ifndef HCF_FIXTURE_DIR
#define HCF_FIXTURE_DIR "fixtures"
#endif

using namespace hcf;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  json report;  // no timings, so reruns compare byte for byte
  double seconds = 0;
};

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fixture_dir = HCF_FIXTURE_DIR;

std::vector<Fixture> corpus() {
  std::vector<Fixture> out;
  for (const auto& p : list_fixtures(fixture_dir)) out.push_back(load_fixture(p));
  return out;
}

std::string num(double x, int prec = 4) {
  std::ostringstream os;
  os << std::setprecision(prec) << x;
  return os.str();
}

std::string dist_text(const json& d) {
  if (d.value("count", 0) == 0) return "none";
  return "min " + num(d["min"].get<double>()) + " median " + num(d["median"].get<double>()) + " max " +
         num(d["max"].get<double>());
}

Point random_point(Rng& rng, int n, std::int64_t den, std::int64_t lo, std::int64_t hi) {
  Point p;
  for (int d = 0; d < n; ++d) p.push_back(frac(rng.uniform(lo, hi), den));
  return p;
}

// 1. Unit cube content.
Outcome cube_content() {
  Outcome o;
  json rows = json::array();
  double worst = 0;
  for (int n : {2, 3}) {
    Space s = unit_cube(n, 8);
    for (int m = 1; m <= n; ++m) {
      auto t = Clock::now();
      ContentResult r = exact_content(s, s.all(), m);
      double sec = since(t);
      worst = std::max(worst, sec);
      Rational expect = Rational(1) / pow_int(Rational(2), m);
      Value vol = volume_lower_bound(s, s.all(), m);
      bool ok = r.optimal && r.upper.exact && *r.upper.exact == expect && vol.exact && *vol.exact == expect &&
                sec < 10;
      o.pass = o.pass && ok;
      rows.push_back({{"n", n}, {"m", m}, {"value", jv(r.upper)}, {"volume_lower_bound", jv(vol)}, {"expected", jq(expect)},
                      {"pass", ok}});
    }
  }
  o.report = {{"instances", rows}};
  o.summary = "5 instances exact, slowest " + num(worst, 3) + " s";
  return o;
}

// 2. Basic content properties on random voxel sets.
Outcome basic_properties() {
  Outcome o;
  Rng rng(2);
  auto t = Clock::now();
  std::size_t checks = 0, bad = 0;
  json failures = json::array();
  for (int i = 0; i < 200; ++i) {
    int n = i % 4 == 3 ? 3 : 2;
    Space s = i % 5 == 4 ? random_subset(n, n == 2 ? 6 : 3, 0.4, 1000 + i, frac(1, 8))
                         : random_blob(n, 6, 4 + static_cast<std::size_t>(rng.uniform(0, 10)), 2000 + i, frac(1, 8));
    if (s.size() == 0) s = Space::voxel(n, frac(1, 8), {IntPoint(n, 0)});
    const double ms[] = {1, 1.5, 2, 3};
    double m = ms[rng.uniform(0, n == 3 ? 3 : 2)];
    bool ok = false;
    json r = property_checks(s, m, {}, ok);
    for (const auto& c : r["checks"]) {
      ++checks;
      if (!c["holds"].get<bool>()) ++bad;
    }
    if (!ok) failures.push_back({{"fixture", i}, {"space", space_to_json(s)}, {"report", r}});
  }
  double sec = since(t);
  o.pass = bad == 0 && sec < 300;
  o.report = {{"fixtures", 200}, {"checks", checks}, {"violations", bad}, {"failures", failures}};
  o.summary = std::to_string(checks) + " checks on 200 fixtures, " + std::to_string(bad) + " violations, " +
              num(sec, 3) + " s";
  return o;
}

// 3. Coarea inequalities.
Outcome coarea_checks() {
  Outcome o;
  Rng rng(3);
  std::size_t bad = 0, balls = 0;
  json failures = json::array();
  for (int i = 0; i < 200; ++i) {
    int n = i % 3 == 2 ? 3 : 2;
    Space s = random_blob(n, 8, 8 + static_cast<std::size_t>(rng.uniform(0, 30)), 3000 + i, frac(1, 8));
    double m = i % 2 ? 2.0 : 1.5;
    std::vector<Ball> cover = i % 4 < 2 ? exact_content(s, s.all(), m).witness.balls
                                        : greedy_content(s, s.all(), m, BallFamily::radius_capped(frac(1, 8))).witness.balls;
    SliceFunction f = i % 3 == 0 ? SliceFunction::to_set({0, s.size() - 1})
                                 : SliceFunction::to_point(random_point(rng, n, 64, -16, 80));
    SliceProfile p = slice_profile(s, s.all(), f, cover);
    Value integral = coarea_integral(p, m);
    Value bound = Value::of(Rational(2) * p.lip) * covering_cost(cover, m);
    bool ok = leq(integral, bound);
    for (std::size_t b = 0; b < p.balls.size(); ++b) {
      ++balls;
      if (p.intervals[b] && p.intervals[b]->second - p.intervals[b]->first > 2 * p.lip * p.balls[b].radius) ok = false;
    }
    if (!ok) {
      ++bad;
      failures.push_back({{"triple", i}, {"space", space_to_json(s)}, {"profile", to_json(p, m)}});
    }
  }
  o.pass = bad == 0;
  o.report = {{"triples", 200}, {"balls", balls}, {"violations", bad}, {"failures", failures}};
  o.summary = "200 triples, " + std::to_string(balls) + " ball intervals, " + std::to_string(bad) + " violations";
  return o;
}

// 4. Cone bounds and coverage.
Outcome cone_checks() {
  Outcome o;
  Rng rng(4);
  std::size_t bad = 0, misses = 0;
  std::map<std::string, std::vector<double>> ratio;
  json failures = json::array();
  for (int i = 0; i < 100; ++i) {
    int n = 2 + i % 2;
    double m = 2 + 0.5 * (i % 3);
    Point apex = random_point(rng, n, 64, 0, 64);
    Rational R(rng.uniform(8, 64), 32);
    std::vector<Ball> in;
    int k = 1 + static_cast<int>(rng.uniform(0, 5));
    for (int b = 0; b < k; ++b) {
      Rational r = R * frac(rng.uniform(1, 16), 64);
      Point c = apex;
      for (int d = 0; d < n; ++d) c[d] += (R - r) * frac(rng.uniform(-32, 32), 32);
      in.push_back({c, r, {}});
    }
    for (ConeVariant v : {ConeVariant::standard, ConeVariant::improved}) {
      ConeCertificate cert = cone_covering(in, apex, R, m, v);
      CoverageReport cr = cone_coverage_check(cert, 10000);
      misses += cr.misses;
      ratio[to_string(v)].push_back(cert.cost.approx / cert.bound.approx);
      if (!cert.within_bound || cr.misses > 0) {
        ++bad;
        failures.push_back({{"input", i}, {"certificate", to_json(cert)}, {"coverage", to_json(cr)}});
      }
    }
  }
  o.pass = bad == 0;
  o.report = {{"inputs", 100},
              {"violations", bad},
              {"misses", misses},
              {"cost_over_bound", {{"standard", distribution(ratio["standard"])}, {"improved", distribution(ratio["improved"])}}},
              {"failures", failures}};
  o.summary = "100 inputs x 2 variants, 10^4 samples each, " + std::to_string(misses) + " misses, " +
              std::to_string(bad) + " violations";
  return o;
}

// Long thin sets: the only shapes whose density drops enough for alpha < 1.
// Lifted into R^3 when m > 2.
Space thin_fixture(int i, double m) {
  const Rational e = frac(1, 8);
  Space s = [&] {
    switch (i % 4) {
      case 0: return strip(1 + i % 2, 32 + 16 * i, e);
      case 1: return square_ring(16 + 4 * i, e);
      case 2: return dumbbell(4, 16 + 8 * i, e);
      default: return bulb_strip(1, 48 + 8 * i, 4, 3, e);
    }
  }();
  if (m <= 2) return s;
  std::vector<IntPoint> cells;
  for (auto c : s.cells()) {
    c.push_back(0);
    cells.push_back(c);
  }
  return Space::voxel(3, e, cells);
}

// 5. Decomposition.
Outcome decomposition_checks() {
  Outcome o;
  std::size_t bad = 0;
  std::map<std::string, std::vector<double>> alpha;
  json failures = json::array(), rows = json::array();
  const double ms[] = {2, 2.5, 3};
  for (int i = 0; i < 50; ++i) {
    double m = ms[i % 3];
    Space s = i % 5 == 4 ? thin_fixture(i / 5, m)
                         : random_blob(i % 2 ? 3 : 2, 8, 10 + static_cast<std::size_t>(i % 7) * 6, 5000 + i, frac(1, 8));
    for (bool default_A : {true, false}) {
      DecomposeOptions opt;
      opt.strict = false;
      if (!default_A) opt.A = 4 * m;
      Decomposition d = decompose(s, m, opt);
      IndependentCheck ic = verify_decomposition(s, d);
      bool ok = d.alpha > 1.0 / 12 && d.alpha <= 1 && d.all_hold && ic.all_hold && ic.complete;
      alpha[default_A ? "A(m)" : "4m"].push_back(d.alpha);
      rows.push_back({{"set", i}, {"m", m}, {"A", jdouble(d.A)}, {"alpha", jdouble(d.alpha)}, {"balls", d.balls.size()},
                      {"pass", ok}});
      if (!ok) {
        ++bad;
        failures.push_back({{"set", i}, {"space", space_to_json(s)}, {"decomposition", to_json(d)},
                            {"independent", to_json(ic)}});
      }
    }
  }
  json dist = {{"A(m)", distribution(alpha["A(m)"])}, {"4m", distribution(alpha["4m"])}};
  o.pass = bad == 0;
  o.report = {{"sets", 50}, {"violations", bad}, {"alpha", dist}, {"runs", rows}, {"failures", failures}};
  o.summary = "100 decompositions, " + std::to_string(bad) + " violations; alpha with A(m): " +
              dist_text(dist["A(m)"]) + "; with A = 4m: " + dist_text(dist["4m"]);
  return o;
}

Space sequence_fixture(int i) {
  const Rational e = frac(1, 8);
  switch (i % 5) {
    case 0: return square_ring(12 + 4 * (i / 5), e);
    case 1: return full_box({4 + i / 5, 4 + i / 5}, e);
    case 2: return random_blob(2, 12, 40 + 5 * static_cast<std::size_t>(i), 6000 + i, e);
    case 3: return dumbbell(4, 6, e);
    default: return strip(2, 24 + 4 * (i / 5), e);
  }
}

// 6. Improvement decay and cumulative displacement.
Outcome improvement_checks() {
  Outcome o;
  const double m = 2;
  Constants k = Constants::of(m);
  std::size_t bad = 0, steps = 0;
  json rows = json::array(), failures = json::array();
  std::vector<double> ratios;
  for (int i = 0; i < 20; ++i) {
    Space y = sequence_fixture(i);
    for (bool default_A : {true, false}) {
      FillOptions opt;
      opt.K = 5;
      if (!default_A) opt.A = 3.0;
      SequenceReport s = improvement_sequence(y, m, opt);
      bool ok = s.decay_ok && s.envelope_ok && s.cumulative_ok;
      for (const auto& st : s.steps) {
        ++steps;
        ratios.push_back(st.ratio);
        ok = ok && st.ratio <= k.decay + st.eps / st.content_in + 1e-12;
      }
      double bound = k.I2 * std::pow(s.hc, 1.0 / m) + s.eps;
      ok = ok && to_double(s.max_cumulative) <= bound;
      rows.push_back({{"fixture", i}, {"A", jdouble(s.A)}, {"steps", s.steps.size()}, {"stop", s.stop_reason},
                      {"max_cumulative", jq(s.max_cumulative)}, {"bound", jdouble(bound)}, {"pass", ok}});
      if (!ok) {
        ++bad;
        failures.push_back({{"fixture", i}, {"space", space_to_json(y)}, {"sequence", to_json(s)}});
      }
    }
  }
  o.pass = bad == 0;
  json d = distribution(ratios);
  o.report = {{"fixtures", 20}, {"steps", steps}, {"violations", bad}, {"decay", jdouble(k.decay)},
              {"step_ratio", d}, {"runs", rows}, {"failures", failures}};
  o.summary = "40 sequences (A(m) and A = 3), " + std::to_string(steps) + " steps, " + std::to_string(bad) +
              " violations; step ratio " + dist_text(d);
  return o;
}

// 7. Filling certificates on the corpus.
Outcome pipeline_checks() {
  Outcome o;
  std::size_t bad = 0, runs = 0;
  std::vector<double> trace, radius;
  json rows = json::array(), failures = json::array();
  double worst = 0;
  for (const auto& f : corpus()) {
    if (!f.space || !f.space->is_voxel() || f.space->size() > 5000 || f.n > 4) continue;
    ++runs;
    auto t = Clock::now();
    FillingCertificate c = fill(*f.space, 2);
    double sec = since(t);
    worst = std::max(worst, sec);
    bool ok = c.trace_ok && c.radius_ok && c.totals_consistent && sec < 600;
    trace.push_back(c.trace_ratio);
    radius.push_back(c.radius_ratio);
    rows.push_back({{"fixture", f.file}, {"cells", f.space->size()}, {"n", f.n}, {"trace_ratio", jdouble(c.trace_ratio)},
                    {"trace_bound_constant", jdouble(c.constants_next.I1)}, {"radius_ratio", jdouble(c.radius_ratio)},
                    {"radius_bound_constant", jdouble(c.constants.I2)}, {"steps", c.sequence.steps.size()},
                    {"terminal", c.terminal}, {"pass", ok}});
    if (!ok) {
      ++bad;
      failures.push_back({{"fixture", f.file}, {"certificate", to_json(c)}});
    }
  }
  json dt = distribution(trace), dr = distribution(radius);
  o.pass = bad == 0 && runs > 0;
  o.report = {{"fixtures", runs}, {"violations", bad}, {"trace_ratio", dt}, {"radius_ratio", dr}, {"runs", rows},
              {"failures", failures}};
  o.summary = std::to_string(runs) + " fixtures, " + std::to_string(bad) + " violations; trace/HC^{3/2} " +
              dist_text(dt) + "; radius/HC^{1/2} " + dist_text(dr) + "; slowest " + num(worst, 3) + " s";
  return o;
}

// 8. Loomis-Whitney and the cube equality.
Outcome loomis_whitney_checks() {
  Outcome o;
  std::size_t bad = 0, runs = 0;
  json rows = json::array();
  std::vector<Space> spaces;
  for (const auto& f : corpus())
    if (f.space && f.space->is_voxel() && f.n >= 2) spaces.push_back(*f.space);
  for (int i = 0; i < 30; ++i) {
    int n = 2 + i % 3;
    spaces.push_back(random_subset(n, n == 4 ? 4 : 7, 0.2 + 0.02 * (i % 10), 7000 + i, frac(1, 8)));
  }
  for (const auto& s : spaces) {
    if (s.size() == 0) continue;
    ++runs;
    LoomisWhitneyReport r = loomis_whitney_check(s, false);
    bool ok = r.lhs <= r.rhs && r.inequality;
    if (!ok) ++bad;
    rows.push_back({{"n", r.n}, {"cells", r.cells}, {"lhs", r.lhs.get_str()}, {"rhs", r.rhs.get_str()}, {"pass", ok}});
  }
  json cubes = json::array();
  for (int n : {2, 3}) {
    CubeEqualityReport c = cube_equality_check(n, 8, frac(1, 8));
    if (!c.equality) ++bad;
    cubes.push_back(to_json(c));
  }
  o.pass = bad == 0;
  o.report = {{"sets", runs}, {"violations", bad}, {"rows", rows}, {"cube_equality", cubes}};
  o.summary = std::to_string(runs) + " sets, " + std::to_string(bad) + " violations; cube equality exact for n = 2, 3";
  return o;
}

// 9. Pushout conditions.
Outcome pushout_checks() {
  Outcome o;
  std::size_t bad = 0;
  std::vector<double> ratios, dconst, disp;
  json rows = json::array(), failures = json::array();
  PushoutConfig cfg;
  for (int i = 0; i < 30; ++i) {
    Rng rng(9000 + i);
    int n = 2 + i % 3;
    double m = n == 2 ? 2 : (i % 2 ? 2.5 : 2);
    if (n == 4 && i % 4 == 0) m = 3;
    std::vector<ThickPoint> v;
    int count = 10 + static_cast<int>(rng.uniform(0, 30));
    bool curve = i % 2 == 0;
    std::vector<std::int64_t> base(n), step(n);
    for (int d = 0; d < n; ++d) {
      base[d] = rng.uniform(20, 120);
      step[d] = rng.uniform(-3, 3);
    }
    for (int p = 0; p < count; ++p) {
      Point c;
      for (int d = 0; d < n; ++d) {
        std::int64_t x = curve ? base[d] + step[d] * p + rng.uniform(-1, 1) : rng.uniform(8, 248);
        c.push_back(frac(std::clamp<std::int64_t>(x, 1, 255), 256));
      }
      v.push_back({c, frac(1, 4096)});
    }
    int doublings = 0;
    DeformationTrace t = descend(v, m, n, frac(1, 4096), std::nullopt, cfg, &doublings);
    bool ok = t.cond_a && t.cond_b && t.cond_c && t.cond_d;
    ratios.insert(ratios.end(), t.ratios.begin(), t.ratios.end());
    dconst.push_back(t.d_const);
    disp.push_back(t.displacement_const);
    rows.push_back({{"fixture", i}, {"n", n}, {"m", m}, {"points", count}, {"R", jq(t.R)}, {"R_doublings", doublings},
                    {"d_const", jdouble(t.d_const)}, {"d_ceiling", jdouble(t.d_ceiling)},
                    {"displacement_const", jdouble(t.displacement_const)}, {"pass", ok}});
    if (!ok) {
      ++bad;
      failures.push_back({{"fixture", i}, {"trace", to_json(t)}});
    }
  }
  json dr = distribution(ratios), dd = distribution(dconst);
  o.pass = bad == 0;
  o.report = {{"fixtures", 30}, {"violations", bad}, {"average_point_ratio", dr}, {"d_const", dd},
              {"displacement_const", distribution(disp)}, {"runs", rows}, {"failures", failures}};
  o.summary = "30 fixtures, " + std::to_string(bad) + " violations; average_point ratio " + dist_text(dr) +
              "; (d) constant " + dist_text(dd);
  return o;
}

// 10. Width certificates.
Outcome width_checks() {
  Outcome o;
  std::size_t bad = 0, runs = 0;
  json rows = json::array();
  bool fig = false;
  std::string fig_text = "no bulb-strip fixture";
  for (const auto& f : corpus()) {
    if (!f.space || !f.space->is_voxel()) continue;
    ++runs;
    WidthResult w = width_bound(*f.space, 2, 2000, 0);
    WidthVerification v = verify_width(*f.space, w);
    bool ok = v.all_ok;
    if (f.has_tag("bulb-strip")) {
      bool small = 4 * w.bound <= w.diameter;
      ok = ok && small;
      fig = small;
      fig_text = "bulb-strip UW_1 bound " + to_string(w.bound) + " vs diameter " + to_string(w.diameter) +
                 ", c_measured " + num(w.c_measured);
    }
    if (!ok) ++bad;
    rows.push_back({{"fixture", f.file}, {"bound", jq(w.bound)}, {"diameter", jq(w.diameter)},
                    {"c_measured", jdouble(w.c_measured)}, {"multiplicity", w.nerve.multiplicity},
                    {"source", w.source}, {"verified", v.all_ok}, {"pass", ok}});
  }
  o.pass = bad == 0 && fig;
  o.report = {{"fixtures", runs}, {"violations", bad}, {"rows", rows}};
  o.summary = std::to_string(runs) + " certificates re-verified, " + std::to_string(bad) + " failures; " + fig_text;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string out = "acceptance";
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--out" && i + 1 < argc) out = argv[++i];
    else if (a == "--fixtures" && i + 1 < argc) fixture_dir = argv[++i];
    else only.push_back(std::stoi(a));
  }
  std::filesystem::create_directories(out);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cube content", cube_content},        {"basic properties", basic_properties},
      {"coarea", coarea_checks},             {"cone", cone_checks},
      {"decomposition", decomposition_checks}, {"improvement decay", improvement_checks},
      {"pipeline", pipeline_checks},         {"loomis-whitney", loomis_whitney_checks},
      {"pushout", pushout_checks},           {"width", width_checks},
  };
  bool all = true, deterministic = true;
  std::vector<std::string> differing;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    int id = static_cast<int>(k) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome first, second;
    try {
      auto t = Clock::now();
      first = criteria[k].second();
      first.seconds = since(t);
      second = criteria[k].second();
    } catch (const std::exception& e) {
      first.pass = false;
      first.summary = std::string("error: ") + e.what();
      deterministic = false;
    }
    std::string a = dump(envelope("acceptance-" + std::to_string(id), first.report));
    std::string b = dump(envelope("acceptance-" + std::to_string(id), second.report));
    if (a != b) {
      deterministic = false;
      differing.push_back(std::to_string(id));
    }
    write_text_file(out + "/criterion_" + std::to_string(id) + ".json", a);
    all = all && first.pass;
    std::cout << "criterion " << id << " (" << criteria[k].first << "): " << (first.pass ? "PASS" : "FAIL") << "  "
              << first.summary << "  [" << num(first.seconds, 3) << " s]" << std::endl;
  }
  std::string det = "reports byte-identical on rerun";
  if (!differing.empty()) {
    det = "reports differ for criteria";
    for (const auto& d : differing) det += " " + d;
  }
  std::cout << "criterion 11 (determinism): " << (deterministic ? "PASS" : "FAIL") << "  " << det << std::endl;
  all = all && deterministic;
  return all ? 0 : 1;
}
