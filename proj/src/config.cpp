#include "hcf/config.hpp"

#include <cstdlib>
#include <set>

#include "hcf/errors.hpp"
#include "hcf/io.hpp"
#include "hcf/json_util.hpp"

namespace hcf {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw InputError(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!it.key().empty() && it.key()[0] != '_' && !known.count(it.key()))
      throw InputError("unknown config key '" + where + "." + it.key() + "'");
}

std::optional<double> opt_double(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

json jopt(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

void positive(double x, const char* what) {
  if (!(x > 0)) throw InputError(std::string("config: ") + what + " must be positive");
}

}  // namespace

FillOptions RunConfig::fill_options() const {
  FillOptions o;
  o.A = pipeline.A;
  o.eps = pipeline.eps;
  o.eps0 = pipeline.eps0;
  o.K = pipeline.K;
  o.variant = pipeline.variant;
  o.max_depth = pipeline.max_depth;
  o.solver = solver;
  o.pushout = pushout;
  return o;
}

DecomposeOptions RunConfig::decompose_options() const {
  DecomposeOptions o;
  o.A = pipeline.A;
  o.eps = pipeline.eps;
  o.solver = solver;
  o.strict = false;
  return o;
}

void validate(const RunConfig& c) {
  positive(c.tolerance, "tolerance");
  positive(static_cast<double>(c.solver.node_budget), "solver.node_budget");
  positive(static_cast<double>(c.solver.domination_limit), "solver.domination_limit");
  if (c.pushout.c0_base <= 0) throw InputError("config: pushout.c0_base must be positive");
  if (c.pushout.c2_per_dim <= 0) throw InputError("config: pushout.c2_per_dim must be positive");
  positive(c.pushout.ratio_ceiling_base, "pushout.ratio_ceiling_base");
  positive(static_cast<double>(c.pushout.candidates), "pushout.candidates");
  if (c.pipeline.A) positive(*c.pipeline.A, "pipeline.A");
  if (c.pipeline.eps) positive(*c.pipeline.eps, "pipeline.eps");
  if (c.pipeline.eps0) positive(*c.pipeline.eps0, "pipeline.eps0");
  positive(c.pipeline.K, "pipeline.K");
  positive(c.pipeline.max_depth, "pipeline.max_depth");
  positive(static_cast<double>(c.width_budget), "width_budget");
  positive(static_cast<double>(c.coverage_samples), "coverage_samples");
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  try {
    check_keys(j, {"tolerance", "solver", "pushout", "pipeline", "width_budget", "coverage_samples", "seed",
                   "threads", "output"},
               "config");
    c.tolerance = j.value("tolerance", c.tolerance);
    if (j.contains("solver")) {
      const json& s = j.at("solver");
      check_keys(s, {"node_budget", "domination_limit"}, "solver");
      c.solver.node_budget = s.value("node_budget", c.solver.node_budget);
      c.solver.domination_limit = s.value("domination_limit", c.solver.domination_limit);
    }
    if (j.contains("pushout")) {
      const json& p = j.at("pushout");
      check_keys(p, {"c0_base", "c2_per_dim", "ratio_ceiling_base", "candidates"}, "pushout");
      if (p.contains("c0_base")) c.pushout.c0_base = rational_from_json(p.at("c0_base"));
      if (p.contains("c2_per_dim")) c.pushout.c2_per_dim = rational_from_json(p.at("c2_per_dim"));
      c.pushout.ratio_ceiling_base = p.value("ratio_ceiling_base", c.pushout.ratio_ceiling_base);
      c.pushout.candidates = p.value("candidates", c.pushout.candidates);
    }
    if (j.contains("pipeline")) {
      const json& p = j.at("pipeline");
      check_keys(p, {"A", "eps", "eps0", "K", "variant", "max_depth"}, "pipeline");
      c.pipeline.A = opt_double(p, "A");
      c.pipeline.eps = opt_double(p, "eps");
      c.pipeline.eps0 = opt_double(p, "eps0");
      c.pipeline.K = p.value("K", c.pipeline.K);
      if (p.contains("variant")) c.pipeline.variant = parse_cone_variant(p.at("variant").get<std::string>());
      c.pipeline.max_depth = p.value("max_depth", c.pipeline.max_depth);
    }
    c.width_budget = j.value("width_budget", c.width_budget);
    c.coverage_samples = j.value("coverage_samples", c.coverage_samples);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    if (j.contains("output")) {
      const json& o = j.at("output");
      check_keys(o, {"report", "plot"}, "output");
      c.report = o.value("report", std::string());
      c.plot = o.value("plot", std::string());
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  validate(c);
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["tolerance"] = c.tolerance;
  j["solver"] = {{"node_budget", c.solver.node_budget}, {"domination_limit", c.solver.domination_limit}};
  j["pushout"] = {{"c0_base", jq(c.pushout.c0_base)},
                  {"c2_per_dim", jq(c.pushout.c2_per_dim)},
                  {"ratio_ceiling_base", c.pushout.ratio_ceiling_base},
                  {"candidates", c.pushout.candidates}};
  j["pipeline"] = {{"A", jopt(c.pipeline.A)},
                   {"eps", jopt(c.pipeline.eps)},
                   {"eps0", jopt(c.pipeline.eps0)},
                   {"K", c.pipeline.K},
                   {"variant", to_string(c.pipeline.variant)},
                   {"max_depth", c.pipeline.max_depth}};
  j["width_budget"] = c.width_budget;
  j["coverage_samples"] = c.coverage_samples;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["output"] = {{"report", c.report}, {"plot", c.plot}};
  return j;
}

RunConfig load_config(const std::string& path) {
  std::string p = path;
  if (p.empty())
    if (const char* env = std::getenv(kConfigEnv)) p = env;
  if (p.empty()) return RunConfig{};
  json j = read_json_file(p);
  try {
    return config_from_json(j);
  } catch (const InputError& e) {
    throw InputError(p + ": " + e.what());
  }
}

}  // namespace hcf
