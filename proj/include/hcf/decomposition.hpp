#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hcf/cover.hpp"
#include "hcf/rational.hpp"
#include "hcf/space.hpp"

namespace hcf {

struct Constants {
  double m = 2;
  double I1 = 0;     // (100 m)^m
  double A = 0;      // [100 m 4^{1/(m-1)} I1]^{(m-1)/m}
  double I2 = 0;     // 10 m 12^m A
  double decay = 0;  // 1 - 1/(2 12^m)

  // Requires m > 1.
  static Constants of(double m);
  bool a_bound_holds() const;   // A < (100m)^m
  bool i2_bound_holds() const;  // I2 < (1500m)^m
};

// Content of subsets of Y' with balls drawn from a fixed family Q, cached by
// (exponent, subset).
class TildeContent {
 public:
  TildeContent(const Space& y, std::vector<Ball> q, SolverOptions opt = {});
  const std::vector<Ball>& q() const { return q_; }
  // Empty subsets have content 0.
  const ContentResult& result(const Subset& w, double e);
  Value content(const Subset& w, double e) { return w.empty() ? Value::of(Rational(0)) : result(w, e).upper; }
  std::vector<Ball> cover(const Subset& w, double e);
  bool all_optimal() const { return all_optimal_; }

 private:
  const Space& y_;
  std::vector<Ball> q_;
  SolverOptions opt_;
  std::vector<Subset> members_;                 // per Q ball, cells inside it
  std::vector<std::vector<std::size_t>> owners_;  // per cell, Q balls holding it
  std::vector<Rational> sides_;                 // 2 r / delta
  std::map<std::pair<double, Subset>, ContentResult> cache_;
  bool all_optimal_ = true;
};

// Cells of y meeting the closed ball B(p, r).
Subset cells_meeting(const Space& y, const Point& p, const Rational& r);

struct DensityProfile {
  Point p;
  double m = 2;
  std::vector<Rational> breakpoints;  // distinct cell distances from p, increasing
  std::vector<std::size_t> counts;    // cells meeting B(p, r) on segment i
  std::vector<Value> content;         // H~C on segment i = [b_i, b_{i+1})
  std::vector<double> lambda;         // content_i / b_i^m (infinite when b_i = 0)
};

DensityProfile density_profile(const Point& p, const Space& y, TildeContent& tc, double m);

struct CriticalRadius {
  Rational r;
  std::size_t segment = 0;
  double eta = 0;           // H~C(B(p, r) ∩ Y') on that segment
  double lambda = 0;        // at r, >= A^{-m}
  double lambda_after = 0;  // max of lambda at later breakpoints, < A^{-m}
  double threshold = 0;
};

// sup{r : lambda_p(r) >= A^{-m}}. Throws InputError when lambda is below the
// threshold everywhere.
CriticalRadius critical_radius(const DensityProfile& dp, double A);
// Same, computing only the segments it needs.
CriticalRadius critical_radius(const Point& p, const Space& y, TildeContent& tc, double m, double A);

struct AnnulusChoice {
  Rational r_bar;
  Rational r1, r2;  // (1+1/m) r and (1+1/m)^2 r
  Subset slice;     // cells whose distance range contains r_bar
  Value slice_cost;     // sum of rho^{m-1} over the subcover balls the slice hits
  Value slice_content;  // H~C_{m-1} of the slice
  Value outer_content;  // H~C_m(B(p, r2) ∩ Y')
  double coarea_bound = 0;  // 2 m^2 / ((m+1) r) * outer_content
  bool coarea_ok = true;
  bool empty = false;
};

AnnulusChoice annulus_radius(const Point& p, const Rational& r, const Space& y, TildeContent& tc, double m);

struct VitaliCandidate {
  Point center;
  Rational radius;
};

// Indices of the chosen candidates, greedy by decreasing radius (ties by index).
std::vector<std::size_t> vitali_select(const std::vector<VitaliCandidate>& c);
bool balls_disjoint(const Point& a, const Rational& ra, const Point& b, const Rational& rb);

struct InequalityCheck {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

struct DecompBall {
  std::size_t q_index = 0;
  Point center;
  CriticalRadius crit;
  AnnulusChoice annulus;
  double theta = 0;      // r_bar / r
  Value eta_one;         // H~C(B(p, r) ∩ Y')
  Value eta_theta;       // H~C(B(p, r_bar) ∩ Y')
  Subset inside;         // cells of Y' inside B(p, r_bar)
};

struct DecomposeOptions {
  std::optional<double> A;    // default Constants::of(m).A
  std::optional<double> eps;  // absolute; default 1e-3 H~C(Y')
  SolverOptions solver;
  bool strict = true;  // throw DecompositionViolation when a check fails
};

struct Decomposition {
  double m = 2;
  double A = 0;
  double eps = 0;
  Constants constants;
  std::vector<Ball> q;
  Value q_cost;        // H~C(Y')
  double hc_lower = 0; // solver lower bound for HC_m(Y')
  bool q_optimal = false;
  bool q_near_optimal = false;
  bool tilde_exact = true;  // every H~C value solved to optimality
  std::vector<VitaliCandidate> candidates;
  std::vector<DecompBall> balls;
  double alpha = 0;
  double eta_sum = 0;
  Subset remainder;  // cells of Y' inside no B_j
  Value remainder_content;
  std::vector<InequalityCheck> checks;
  bool disjoint = false;
  bool triple_cover = false;
  bool additivity = false;
  bool alpha_in_range = false;
  bool coarea_ok = false;
  bool all_hold = false;
};

Decomposition decompose(const Space& y, double m, const DecomposeOptions& opt = {});
nlohmann::json to_json(const Decomposition& d);

struct IndependentCheck {
  std::vector<InequalityCheck> checks;
  bool consistent = true;  // recomputed values agree with the reported ones
  bool complete = true;    // every recomputation finished within budget
  bool all_hold = false;
  std::vector<std::string> notes;
};

// Recomputes both sides of every inequality from y, Q and the ball list alone,
// with its own exhaustive cover search.
IndependentCheck verify_decomposition(const Space& y, const Decomposition& d, std::size_t node_budget = 2000000);
nlohmann::json to_json(const IndependentCheck& c);

}  // namespace hcf
