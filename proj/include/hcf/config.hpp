#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "hcf/cone.hpp"
#include "hcf/cover.hpp"
#include "hcf/decomposition.hpp"
#include "hcf/filling.hpp"
#include "hcf/pushout.hpp"

namespace hcf {

inline constexpr const char* kConfigEnv = "HCF_CONFIG";

struct PipelineConfig {
  std::optional<double> A;     // unset: A(m)
  std::optional<double> eps;   // absolute; unset: 1e-3 HC_m(Y)
  std::optional<double> eps0;  // absolute; unset: 1e-4 HC_m(Y)
  int K = 50;
  ConeVariant variant = ConeVariant::improved;
  int max_depth = 8;
};

struct RunConfig {
  double tolerance = 1e-9;
  SolverOptions solver;
  PushoutConfig pushout;
  PipelineConfig pipeline;
  std::size_t width_budget = 2000;
  std::size_t coverage_samples = 10000;
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // corpus workers; 0 = hardware concurrency
  std::string report;       // output paths; empty = stdout / none
  std::string plot;

  FillOptions fill_options() const;
  DecomposeOptions decompose_options() const;
};

// Keys starting with '_' are comments. Unknown keys and non-positive knobs
// throw InputError.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);
void validate(const RunConfig& c);

// Reads the given path, else the file named by HCF_CONFIG, else defaults.
RunConfig load_config(const std::string& path = "");

}  // namespace hcf
