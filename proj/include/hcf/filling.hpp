#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcf/cone.hpp"
#include "hcf/cover.hpp"
#include "hcf/decomposition.hpp"
#include "hcf/pushout.hpp"
#include "hcf/rational.hpp"
#include "hcf/space.hpp"

namespace hcf {

struct FillOptions {
  std::optional<double> A;     // default Constants::of(m).A
  std::optional<double> eps;   // absolute; default 1e-3 HC_m(Y)
  std::optional<double> eps0;  // stop threshold; default 1e-4 HC_m(Y)
  int K = 50;
  ConeVariant variant = ConeVariant::improved;
  SolverOptions solver;
  PushoutConfig pushout;
  int max_depth = 8;
};

struct FillingCertificate;

// What happens inside one ball B_j of a step.
struct BallFilling {
  std::size_t ball = 0;  // index into the step's decomposition balls
  Point hub;             // p_j; removed cells collapse here
  Subset slice;          // S_j, cells of the step input
  std::vector<Ball> interior;  // Q-subcover of the cells meeting B_j
  Value interior_cost;         // H~C(Y ∩ B_j)
  Value slice_content;   // HC_{m-1}(S_j)
  std::vector<Ball> footprint;  // balls holding the filling of S_j
  double footprint_cost = 0;    // HC_m bound of that filling
  double footprint_bound = 0;   // I1(m) HC_{m-1}(S_j)^{m/(m-1)} + slack
  bool footprint_ok = true;
  bool recursive = false;
  std::shared_ptr<const FillingCertificate> sub;  // filling of S_j one exponent down
  std::size_t kept = 0;   // cells of Y ∩ B_j inside the footprint
  std::size_t moved = 0;  // cells sent to the hub
  std::size_t hub_cell = 0;  // index in the next space
  bool hub_extra = false;    // hub cell added only to stand for the point p_j
};

struct ImprovementStep {
  int k = 1;
  double m = 2;
  double eps = 0;
  Decomposition decomposition;
  std::vector<BallFilling> balls;
  Space next;                      // Y~: core cells plus hub cells
  Subset core;                     // cells of next that carry content
  std::vector<std::size_t> theta;  // input cell -> cell of next
  std::vector<Rational> displacement;  // per input cell, max distance moved
  double content_in = 0;           // HC_m(Y) upper (the pruned Q cost)
  ContentResult content_out;       // HC_m(core)
  double hub_content = 0;          // content of the extra hub cells, not counted
  double certificate_bound = 0;    // H~C(remainder) + sum of footprint costs
  double ratio = 0;                // content_out.upper / content_in
  double decay_bound = 0;          // decay content_in + eps
  Rational max_displacement;
  double displacement_bound = 0;   // 3 A content_in^{1/m} + eps
  bool decay_ok = false;
  bool displacement_ok = false;
  bool fixed_point = false;        // next equals the input as a cell set
};

ImprovementStep improvement_step(const Space& y, double m, double eps, const FillOptions& opt = {}, int k = 1,
                                 int depth = 0);

struct SequenceReport {
  double m = 2;
  double A = 0;
  double hc = 0;        // HC_m(Y) upper
  double hc_lower = 0;  // solver lower bound
  double eps = 0;
  double eps0 = 0;
  int K = 0;
  std::vector<ImprovementStep> steps;
  std::vector<double> contents;  // HC_m(Y^(k)), k = 1 .. steps + 1
  std::vector<double> decay_envelope;  // decay^{k-1} hc + eps
  std::vector<Rational> cumulative;    // per input cell, summed displacement
  Rational max_cumulative;
  double cumulative_bound = 0;         // I2 hc^{1/m} + eps
  double cumulative_bound_linear = 0;  // I2 hc + eps, the other reading
  bool decay_ok = false;
  bool envelope_ok = false;
  bool cumulative_ok = false;
  bool cumulative_linear_ok = false;
  std::string stop_reason;
};

SequenceReport improvement_sequence(const Space& y, double m, const FillOptions& opt = {}, int depth = 0);

struct ConeStep {
  std::size_t step = 0;
  std::size_t ball = 0;
  ConeCertificate cert;
  double coning_estimate = 0;  // e m r_bar (footprint cost + H~C(Y ∩ B_j))
  bool within_estimate = false;
  double radius = 0;           // max over output balls of d(center, Y) + radius
};

struct FillingCertificate {
  double m = 2;
  int n = 0;
  Rational delta;
  std::size_t cells = 0;
  Constants constants;        // for m
  Constants constants_next;   // for m + 1, when m + 1 > 1
  double hc = 0;
  double hc_lower = 0;
  double eps = 0;
  SequenceReport sequence;
  std::vector<ConeStep> cones;
  std::vector<double> step_cone_cost;  // per step
  std::vector<double> condition_one;   // per step, (1/4) I1(m) alpha^{m+1} H~C^{(m+1)/m} + eps
  std::vector<bool> condition_one_ok;
  std::string terminal;  // "none", "pushout", "cone"
  Subset residual;       // core cells of the last step, in its space
  double residual_content = 0;
  std::optional<DeformationTrace> pushout;
  std::optional<ConeCertificate> terminal_cone;
  double terminal_cost = 0;
  double terminal_radius = 0;
  double cone_total = 0;
  double trace_total = 0;     // cone_total + terminal_cost
  double filling_radius = 0;
  double trace_bound = 0;     // I1(m+1) hc_lower^{(m+1)/m} + eps
  double radius_bound = 0;    // I2(m) hc^{1/m} + delta
  double trace_ratio = 0;     // trace_total / hc_lower^{(m+1)/m}
  double radius_ratio = 0;    // filling_radius / hc^{1/m}
  bool trace_ok = false;
  bool radius_ok = false;
  bool totals_consistent = false;  // totals equal the sums of their entries

  // Every ball of the certificate's cones, in order.
  std::vector<Ball> footprint() const;
};

FillingCertificate fill(const Space& y, double m, const FillOptions& opt = {}, int depth = 0);

nlohmann::json to_json(const ImprovementStep& s);
nlohmann::json to_json(const SequenceReport& s);
nlohmann::json to_json(const FillingCertificate& c);

}  // namespace hcf
