// hcf: content, slicing, cones, decomposition, filling, pushout and width on
// finite metric models. Exit status 0 ok, 1 input error, 2 verification failure.
#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "hcf/coarea.hpp"
#include "hcf/config.hpp"
#include "hcf/cone.hpp"
#include "hcf/corpus.hpp"
#include "hcf/cover.hpp"
#include "hcf/decomposition.hpp"
#include "hcf/errors.hpp"
#include "hcf/filling.hpp"
#include "hcf/io.hpp"
#include "hcf/json_util.hpp"
#include "hcf/pushout.hpp"
#include "hcf/report.hpp"
#include "hcf/width.hpp"

using namespace hcf;
using nlohmann::json;

namespace {

struct Common {
  std::string config, report, plot;
  std::optional<std::uint64_t> seed;
};

struct Outcome {
  json body;
  bool verified = true;
  std::string failure;  // first failed check
  std::string csv;      // plot rows, header included
};

RunConfig resolve(const Common& c) {
  RunConfig cfg = load_config(c.config);
  if (!c.report.empty()) cfg.report = c.report;
  if (!c.plot.empty()) cfg.plot = c.plot;
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

void add_common(CLI::App* app, Common& c, bool plot) {
  app->add_option("--config", c.config, "run config (JSON); defaults to $HCF_CONFIG");
  app->add_option("--report", c.report, "write the JSON report here instead of stdout");
  if (plot) app->add_option("--emit-plot", c.plot, "write plot series as CSV");
  app->add_option("--seed", c.seed, "random seed");
}

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.verified) o.failure = what;
  o.verified = o.verified && ok;
}

int emit(const std::string& kind, const RunConfig& cfg, Outcome o) {
  o.body["config"] = config_to_json(cfg);
  o.body["verified"] = o.verified;
  if (!o.verified) o.body["failure"] = o.failure;
  std::string text = dump(envelope(kind, o.body));
  if (cfg.report.empty()) std::cout << text;
  else write_text_file(cfg.report, text);
  if (!cfg.plot.empty() && !o.csv.empty()) write_text_file(cfg.plot, o.csv);
  if (!o.verified) {
    std::cerr << "verification failed: " << o.failure;
    if (!cfg.report.empty()) std::cerr << " (full report in " << cfg.report << ")";
    std::cerr << "\n";
    return 2;
  }
  return 0;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

SliceFunction parse_function(const std::string& text, const Space& s) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("--f expects dist:x,y,... or set:i,j,...");
  std::string kind = text.substr(0, colon), arg = text.substr(colon + 1);
  if (kind == "dist") {
    Point p = parse_point(arg);
    if (static_cast<int>(p.size()) != s.dim()) throw InputError("--f point has the wrong dimension");
    return SliceFunction::to_point(p);
  }
  if (kind == "set") {
    Subset idx;
    std::stringstream in(arg);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      std::size_t i = std::stoul(tok);
      if (i >= s.size()) throw InputError("--f set index out of range");
      idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return SliceFunction::to_set(idx);
  }
  throw InputError("unknown function kind '" + kind + "'");
}

std::pair<Rational, Rational> parse_range(const std::string& r) {
  auto colon = r.find(':');
  if (colon == std::string::npos) throw InputError("--range expects a:b");
  Rational a = parse_rational(r.substr(0, colon)), b = parse_rational(r.substr(colon + 1));
  if (!(a < b)) throw InputError("--range needs a < b");
  return {a, b};
}

BallFamily parse_family(const std::string& f) {
  if (f == "all-grid") return BallFamily::all_grid();
  const std::string cap = "radius-cap:";
  if (f.rfind(cap, 0) == 0) return BallFamily::radius_capped(parse_rational(f.substr(cap.size())));
  throw InputError("unknown family '" + f + "' (all-grid or radius-cap:R)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hausdorff content, cone fillings and width bounds on finite metric models"};
  app.require_subcommand(1);
  std::function<int()> run;

  // content
  Common c_content;
  std::string content_space, content_family = "all-grid";
  double content_m = 0;
  bool content_greedy = false;
  auto* content = app.add_subcommand("content", "Hausdorff content HC_m with a lower-bound certificate");
  add_common(content, c_content, false);
  content->add_option("--space", content_space, "space file")->required();
  content->add_option("--m", content_m, "exponent")->required();
  content->add_option("--family", content_family, "all-grid or radius-cap:R");
  content->add_flag("--exact", "solve exactly (default)");
  content->add_flag("--greedy", content_greedy, "greedy cover only");
  content->callback([&] {
    run = [&] {
      RunConfig cfg = resolve(c_content);
      Space s = load_space(content_space);
      BallFamily fam = parse_family(content_family);
      ContentResult r = content_greedy ? greedy_content(s, s.all(), content_m, fam, cfg.solver)
                                       : exact_content(s, s.all(), content_m, fam, cfg.solver);
      Outcome o;
      o.body = to_json(r);
      require(o, leq(r.lower, r.upper, cfg.tolerance), "lower bound above upper bound");
      require(o, covers(s, s.all(), r.witness.balls), "witness does not cover");
      if (s.is_voxel()) {
        Value vol = volume_lower_bound(s, s.all(), content_m);
        o.body["volume_lower_bound"] = jv(vol);
        require(o, leq(vol, r.upper, cfg.tolerance), "volume bound above the content");
      }
      return emit("content", cfg, o);
    };
  });

  // coarea
  Common c_coarea;
  std::string coarea_space, coarea_f, coarea_cover, coarea_range;
  double coarea_m = 0;
  auto* coarea = app.add_subcommand("coarea", "coarea integral and best slice of a covering");
  add_common(coarea, c_coarea, true);
  coarea->add_option("--space", coarea_space, "space file")->required();
  coarea->add_option("--f", coarea_f, "dist:x,y,... or set:i,j,...")->required();
  coarea->add_option("--cover", coarea_cover, "covering file (default: exact content witness)");
  coarea->add_option("--m", coarea_m, "exponent")->required();
  coarea->add_option("--range", coarea_range, "r1:r2 (default: range of f)");
  coarea->callback([&] {
    run = [&] {
      RunConfig cfg = resolve(c_coarea);
      Space s = load_space(coarea_space);
      SliceFunction f = parse_function(coarea_f, s);
      std::vector<Ball> cover = coarea_cover.empty()
                                    ? exact_content(s, s.all(), coarea_m, {}, cfg.solver).witness.balls
                                    : load_covering(coarea_cover).balls;
      std::optional<Rational> r1, r2;
      if (!coarea_range.empty()) std::tie(r1, r2) = parse_range(coarea_range);
      SliceProfile p = slice_profile(s, s.all(), f, cover, r1, r2);
      Value integral = coarea_integral(p, coarea_m);
      Slice best = best_slice(p, coarea_m);
      Outcome o;
      o.body["profile"] = to_json(p, coarea_m);
      o.body["integral"] = jv(integral);
      o.body["best_slice"] = to_json(best);
      bool intervals = true;
      for (std::size_t i = 0; i < p.balls.size(); ++i)
        if (p.intervals[i]) intervals = intervals && p.intervals[i]->second - p.intervals[i]->first <= 2 * p.lip * p.balls[i].radius;
      Value bound = Value::of(Rational(2) * p.lip) * covering_cost(cover, coarea_m);
      o.body["integral_bound"] = jv(bound);
      require(o, intervals, "a ball's interval exceeds 2 Lip r");
      require(o, leq(integral, bound, cfg.tolerance), "coarea integral above 2 Lip cost");
      require(o, best.below_mean, "best slice above the mean");
      o.csv = "R,cost\n";
      std::vector<Rational> cuts;
      for (const auto& iv : p.intervals)
        if (iv) cuts.push_back(iv->first), cuts.push_back(iv->second);
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (const auto& R : cuts) {
        double cost = 0;
        for (std::size_t i = 0; i < p.balls.size(); ++i)
          if (p.intervals[i] && p.intervals[i]->first <= R && R <= p.intervals[i]->second)
            cost += power(p.balls[i].radius, coarea_m - 1).approx;
        o.csv += to_string(R) + "," + fmt(cost) + "\n";
      }
      return emit("coarea", cfg, o);
    };
  });

  // cone
  Common c_cone;
  std::string cone_cover, cone_apex, cone_R, cone_variant = "standard";
  double cone_m = 0;
  std::optional<std::size_t> cone_samples;
  auto* cone = app.add_subcommand("cone", "cone covering certificate with a coverage check");
  add_common(cone, c_cone, false);
  cone->add_option("--cover", cone_cover, "covering of the base")->required();
  cone->add_option("--apex", cone_apex, "apex x,y,...")->required();
  cone->add_option("--R", cone_R, "radius of a ball about the apex holding the base")->required();
  cone->add_option("--m", cone_m, "output exponent")->required();
  cone->add_option("--variant", cone_variant, "standard or improved");
  cone->add_option("--samples", cone_samples, "coverage samples (default from config)");
  cone->callback([&] {
    run = [&] {
      RunConfig cfg = resolve(c_cone);
      Covering cov = load_covering(cone_cover);
      ConeCertificate cert = cone_covering(cov.balls, parse_point(cone_apex), parse_rational(cone_R), cone_m,
                                           parse_cone_variant(cone_variant));
      CoverageReport cr = cone_coverage_check(cert, cone_samples.value_or(cfg.coverage_samples));
      Outcome o;
      o.body["certificate"] = to_json(cert);
      o.body["coverage"] = to_json(cr);
      require(o, cert.within_bound, "cone cost above the bound");
      require(o, cr.misses == 0, "sampled cone points outside the covering");
      return emit("cone", cfg, o);
    };
  });

  // decompose
  Common c_dec;
  std::string dec_space;
  double dec_m = 0;
  std::optional<double> dec_eps, dec_A;
  auto* dec = app.add_subcommand("decompose", "disjoint-ball decomposition with its inequalities");
  add_common(dec, c_dec, false);
  dec->add_option("--space", dec_space, "space file")->required();
  dec->add_option("--m", dec_m, "exponent (> 1)")->required();
  dec->add_option("--eps", dec_eps, "absolute slack (default 1e-3 of the content)");
  dec->add_option("--A", dec_A, "density constant (default A(m))");
  dec->callback([&] {
    run = [&] {
      RunConfig cfg = resolve(c_dec);
      if (dec_eps) cfg.pipeline.eps = dec_eps;
      if (dec_A) cfg.pipeline.A = dec_A;
      validate(cfg);
      Space s = load_space(dec_space);
      Decomposition d = decompose(s, dec_m, cfg.decompose_options());
      IndependentCheck ic = verify_decomposition(s, d, cfg.solver.node_budget);
      Outcome o;
      o.body["decomposition"] = to_json(d);
      o.body["independent"] = to_json(ic);
      for (const auto& c : d.checks) require(o, c.holds, c.name);
      require(o, d.all_hold, "decomposition checks");
      require(o, ic.all_hold, "independent recomputation");
      require(o, ic.complete, "independent recomputation ran out of budget");
      return emit("decompose", cfg, o);
    };
  });

  // fill
  Common c_fill;
  std::string fill_space;
  double fill_m = 0;
  std::optional<double> fill_A, fill_eps;
  std::optional<int> fill_K;
  auto* fil = app.add_subcommand("fill", "filling certificate from the iterated improvement");
  add_common(fil, c_fill, true);
  fil->add_option("--space", fill_space, "space file")->required();
  fil->add_option("--m", fill_m, "exponent (> 1)")->required();
  fil->add_option("--A", fill_A, "density constant (default A(m))");
  fil->add_option("--eps", fill_eps, "absolute slack");
  fil->add_option("--K", fill_K, "maximum number of steps");
  fil->callback([&] {
    run = [&] {
      RunConfig cfg = resolve(c_fill);
      if (fill_A) cfg.pipeline.A = fill_A;
      if (fill_eps) cfg.pipeline.eps = fill_eps;
      if (fill_K) cfg.pipeline.K = *fill_K;
      validate(cfg);
      Space s = load_space(fill_space);
      FillingCertificate c = fill(s, fill_m, cfg.fill_options());
      Outcome o;
      o.body = to_json(c);
      require(o, c.trace_ok, "trace above I1 HC^{(m+1)/m} + eps");
      require(o, c.radius_ok, "filling radius above I2 HC^{1/m} + delta");
      require(o, c.totals_consistent, "certificate totals differ from the step sums");
      require(o, c.sequence.decay_ok, "content decay");
      require(o, c.sequence.cumulative_ok, "cumulative displacement");
      o.csv = "k,content,displacement,cumulative\n";
      Rational cum = 0;
      o.csv += "0," + fmt(c.sequence.contents.at(0)) + ",0,0\n";
      for (const auto& st : c.sequence.steps) {
        cum += st.max_displacement;
        o.csv += std::to_string(st.k) + "," + fmt(st.content_out.upper.approx) + "," + to_string(st.max_displacement) +
                 "," + to_string(cum) + "\n";
      }
      return emit("fill", cfg, o);
    };
  });

  // pushout
  Common c_push;
  std::string push_points, push_R, push_delta;
  double push_m = 0;
  int push_n = 0;
  auto* push = app.add_subcommand("pushout", "push a point set into a low skeleton of a cube grid");
  add_common(push, c_push, true);
  push->add_option("--points", push_points, "thick points file")->required();
  push->add_option("--grid-R", push_R, "grid side (default from the content, doubled until admissible)");
  push->add_option("--m", push_m, "exponent")->required();
  push->add_option("--n", push_n, "ambient dimension")->required();
  push->add_option("--delta", push_delta, "thickness slack (default 1/64)");
  push->callback([&] {
    run = [&] {
      RunConfig cfg = resolve(c_push);
      std::vector<ThickPoint> v = load_thick_points(push_points);
      for (const auto& p : v)
        if (static_cast<int>(p.c.size()) != push_n) throw InputError("point dimension differs from --n");
      Rational delta = push_delta.empty() ? frac(1, 64) : parse_rational(push_delta);
      std::optional<Rational> R;
      if (!push_R.empty()) R = parse_rational(push_R);
      int doublings = 0;
      DeformationTrace t = R ? skeleton_descend(v, *R, push_m, push_n, delta, cfg.pushout)
                             : descend(v, push_m, push_n, delta, R, cfg.pushout, &doublings);
      Outcome o;
      o.body = to_json(t);
      o.body["R_doublings"] = doublings;
      require(o, t.cond_a, "condition (a): boundary points moved");
      require(o, t.cond_b, "condition (b): final points off the target skeleton");
      require(o, t.cond_c, "condition (c): displacement above the face bound");
      require(o, t.cond_d, "condition (d): trace constant above the ceiling");
      o.csv = "level,face,points,moved,content_before,content_after,ratio,trace_cost\n";
      for (const auto& l : t.levels)
        for (std::size_t i = 0; i < l.faces.size(); ++i) {
          const FaceStep& f = l.faces[i];
          o.csv += std::to_string(l.k) + "," + std::to_string(i) + "," + std::to_string(f.points) + "," +
                   std::to_string(f.moved) + "," + fmt(f.content_before) + "," + fmt(f.content_after) + "," +
                   fmt(f.ratio) + "," + fmt(f.trace_cost) + "\n";
        }
      return emit("pushout", cfg, o);
    };
  });

  // lw-check
  Common c_lw;
  std::string lw_space;
  bool lw_no_boundary = false;
  auto* lw = app.add_subcommand("lw-check", "projection inequality and isoperimetric chain");
  add_common(lw, c_lw, false);
  lw->add_option("--space", lw_space, "voxel space file")->required();
  lw->add_flag("--no-boundary-content", lw_no_boundary, "skip solving the boundary content");
  lw->callback([&] {
    run = [&] {
      RunConfig cfg = resolve(c_lw);
      Space s = load_space(lw_space);
      LoomisWhitneyReport r = loomis_whitney_check(s, !lw_no_boundary, cfg.solver);
      Outcome o;
      o.body = to_json(r);
      require(o, r.inequality, "N^{n-1} > prod N_j");
      require(o, r.chain, "isoperimetric chain");
      return emit("lw-check", cfg, o);
    };
  });

  // cube-eq
  Common c_cube;
  int cube_n = 2;
  std::int64_t cube_cells = 8;
  auto* cube = app.add_subcommand("cube-eq", "equality case of the isoperimetric chain on the unit cube");
  add_common(cube, c_cube, false);
  cube->add_option("--n", cube_n, "dimension")->required();
  cube->add_option("--cells", cube_cells, "cells per side (delta = 1/cells)");
  cube->callback([&] {
    run = [&] {
      RunConfig cfg = resolve(c_cube);
      if (cube_cells < 1) throw InputError("--cells must be positive");
      CubeEqualityReport r = cube_equality_check(cube_n, cube_cells, frac(1, cube_cells), cfg.solver);
      Outcome o;
      o.body = to_json(r);
      require(o, r.equality, "HC_{n-1}(boundary)^n != HC_n(cube)^{n-1}");
      return emit("cube-eq", cfg, o);
    };
  });

  // width
  Common c_width;
  std::string width_space;
  int width_m = 0;
  std::optional<std::size_t> width_budget;
  auto* wid = app.add_subcommand("width", "Urysohn width bound from a covering and its nerve");
  add_common(wid, c_width, false);
  wid->add_option("--space", width_space, "voxel space file")->required();
  wid->add_option("--m", width_m, "bound UW_{m-1}")->required();
  wid->add_option("--budget", width_budget, "search evaluations (default from config)");
  wid->callback([&] {
    run = [&] {
      RunConfig cfg = resolve(c_width);
      if (width_budget) cfg.width_budget = *width_budget;
      Space s = load_space(width_space);
      WidthResult r = width_bound(s, width_m, cfg.width_budget, cfg.seed, cfg.solver);
      WidthVerification v = verify_width(s, r);
      Outcome o;
      o.body["width"] = to_json(r);
      o.body["verification"] = to_json(v);
      require(o, v.all_ok, "covering, nerve or fiber recomputation disagrees");
      return emit("width", cfg, o);
    };
  });

  // local-width
  Common c_lwid;
  std::string lwid_space, lwid_R;
  int lwid_m = 0;
  std::optional<std::size_t> lwid_budget;
  auto* lwid = app.add_subcommand("local-width", "ball content ratios at scale R with a width bound");
  add_common(lwid, c_lwid, false);
  lwid->add_option("--space", lwid_space, "voxel space file")->required();
  lwid->add_option("--m", lwid_m, "exponent")->required();
  lwid->add_option("--R", lwid_R, "ball radius")->required();
  lwid->add_option("--budget", lwid_budget, "width search evaluations");
  lwid->callback([&] {
    run = [&] {
      RunConfig cfg = resolve(c_lwid);
      if (lwid_budget) cfg.width_budget = *lwid_budget;
      Space s = load_space(lwid_space);
      LocalWidthReport r = local_width_check(s, lwid_m, parse_rational(lwid_R), cfg.width_budget, cfg.seed, cfg.solver);
      WidthVerification v = verify_width(s, r.width);
      Outcome o;
      o.body = to_json(r);
      o.body["verification"] = to_json(v);
      require(o, v.all_ok, "covering, nerve or fiber recomputation disagrees");
      return emit("local-width", cfg, o);
    };
  });

  // corpus
  Common c_corp;
  std::string corp_dir = "fixtures", corp_suite = "invariants";
  auto* corp = app.add_subcommand("corpus", "run a suite over every fixture of a directory");
  add_common(corp, c_corp, false);
  corp->add_option("--dir", corp_dir, "fixture directory");
  corp->add_option("--suite", corp_suite, "invariants, content, decompose, fill, lw, width or pushout");
  corp->callback([&] {
    run = [&] {
      RunConfig cfg = resolve(c_corp);
      CorpusReport r = corpus_run(corp_dir, corp_suite, cfg);
      json body = to_json(r);
      body["config"] = config_to_json(cfg);
      if (!cfg.report.empty()) write_text_file(cfg.report, dump(envelope("corpus", body)));
      std::cout << format_table(r);
      for (const auto& row : r.rows)
        if (row.applicable && !row.pass) std::cerr << "verification failed: " << row.file << "\n";
      return r.all_pass() ? 0 : 2;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  try {
    return run();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const UncoverableError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const PushoutPreconditionError& e) {
    std::cerr << "input error: " << e.what() << " (content " << e.content << ", limit " << e.limit << ")\n";
    return 1;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n" << dump(e.payload());
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
}
