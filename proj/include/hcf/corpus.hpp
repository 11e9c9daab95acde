#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcf/config.hpp"
#include "hcf/pushout.hpp"
#include "hcf/space.hpp"

namespace hcf {

// A corpus file is either a space (see io.hpp) or a point set for the pushout:
//   {"variant": "points", "n": 3, "m": 2, "delta": "1/64", "R": "1/2", "points": [...]}
// Both may carry "name", "tags" and "m" (default 2). "R" is optional.
struct Fixture {
  std::string file;  // base name
  std::string name;
  std::vector<std::string> tags;
  double m = 2;
  std::optional<Space> space;
  std::vector<ThickPoint> points;
  int n = 0;
  Rational delta = 1;
  std::optional<Rational> R;

  bool is_points() const { return !space.has_value(); }
  bool has_tag(const std::string& t) const;
};

Fixture fixture_from_json(const nlohmann::json& j, const std::string& file);
Fixture load_fixture(const std::string& path);
// *.json files of a directory in filename order; InputError when it is missing.
std::vector<std::string> list_fixtures(const std::string& dir);

inline const std::vector<std::string> kSuites = {"invariants", "content", "decompose", "fill",
                                                 "lw",         "width",   "pushout"};

struct SuiteRow {
  std::string file;
  bool applicable = false;
  bool pass = true;
  nlohmann::json measured;  // small summary for the table
  nlohmann::json report;    // full report; counterexample payload on failure
};

// One suite on one fixture. Not applicable rows pass.
SuiteRow run_suite(const std::string& suite, const Fixture& f, const RunConfig& cfg);

// Basic content properties on one voxel space at exponent m, checked with
// sound bracket comparisons (exact when the solver proves optimality).
nlohmann::json property_checks(const Space& s, double m, const SolverOptions& opt, bool& ok);

// Pushout with R grown by doubling until the face precondition holds.
// R defaults to grid_R_for_content of the points' greedy content.
DeformationTrace descend(const std::vector<ThickPoint>& v, double m, int n, const Rational& delta,
                         std::optional<Rational> R, const PushoutConfig& cfg, int* doublings = nullptr);

struct CorpusReport {
  std::string suite;
  std::vector<SuiteRow> rows;
  std::size_t passed = 0, failed = 0, skipped = 0;
  nlohmann::json aggregate;  // distributions of measured constants
  bool all_pass() const { return failed == 0; }
};

// Runs the suite over every fixture with cfg.threads workers. Rows are in
// filename order whatever the scheduling. A file that fails to load throws
// InputError naming it.
CorpusReport corpus_run(const std::string& dir, const std::string& suite, const RunConfig& cfg);
nlohmann::json to_json(const CorpusReport& r);
std::string format_table(const CorpusReport& r);

// min / max / mean / median of a sample, for the distribution summaries.
nlohmann::json distribution(std::vector<double> xs);

}  // namespace hcf
