#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hcf/rational.hpp"
#include "hcf/set_cover.hpp"
#include "hcf/space.hpp"

namespace hcf {

struct SolverOptions {
  std::size_t node_budget = 1000000;
  // Pairwise subset-domination pruning runs below this candidate count.
  std::size_t domination_limit = 3000;
};

struct LowerBoundCertificate {
  std::string kind;  // "search", "lp-dual", "volume", "net-deflation"
  double lp_dual_value = 0;
  double volume_value = 0;
  std::vector<double> dual;  // per target element, in solver weight units
};

struct ContentResult {
  double m = 1;
  std::string family;
  Value lower;
  Value upper;
  bool optimal = false;
  bool exact_arithmetic = false;
  Covering witness;
  LowerBoundCertificate certificate;
  std::size_t candidates = 0;
  std::size_t nodes = 0;
};

// Candidate balls for covering `target`, restricted to the family; member sets
// are over positions in `target`.
struct CandidateSet {
  std::vector<Ball> balls;
  std::vector<GridBall> grid;  // voxel only, parallel to balls
  std::vector<Bitset> members;
  std::vector<double> weights;  // side^m (voxel, units of (delta/2)^m) or r^m (net)
  bool integral = false;
};

CandidateSet generate_candidates(const Space& s, const Subset& target, double m, const BallFamily& family,
                                 const SolverOptions& opt = {});

ContentResult exact_content(const Space& s, const Subset& target, double m, const BallFamily& family = {},
                            const SolverOptions& opt = {});
ContentResult greedy_content(const Space& s, const Subset& target, double m, const BallFamily& family = {},
                             const SolverOptions& opt = {});

// (N delta^n)^{m/n} / 2^m for m <= n; N (delta/2)^m for m > n.
Value volume_lower_bound(const Space& s, const Subset& target, double m);
// max over coordinate subsets J of N_J^{min(1, m/|J|)}, in units of (delta/2)^m.
double projection_bound_units(const std::vector<IntPoint>& cells, double m);

struct BallScanEntry {
  std::size_t center_element;
  Point center;
  Subset members;
  ContentResult content;
};

struct BallScan {
  std::vector<BallScanEntry> entries;
  double max_ratio = 0;
};

// B(center, R) ∩ s for every element center (cells meeting the closed ball).
BallScan content_ball_scan(const Space& s, double m, const Rational& R, const SolverOptions& opt = {});

// Merges intersecting l_inf balls until pairwise disjoint. Requires 0 < e <= 1.
std::vector<Ball> merge_to_disjoint(std::vector<Ball> balls, double e);
bool pairwise_disjoint(const std::vector<Ball>& balls);

}  // namespace hcf
