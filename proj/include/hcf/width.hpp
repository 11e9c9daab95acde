#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcf/cover.hpp"
#include "hcf/rational.hpp"
#include "hcf/space.hpp"

namespace hcf {

// Nerve of a covering of a voxel set by closed l_inf balls on the half grid.
// A family of balls spans a simplex when their common intersection meets an
// occupied cell.
struct NerveComplex {
  std::size_t vertices = 0;
  std::vector<std::vector<std::size_t>> simplices;  // maximal ones, sorted
  std::size_t multiplicity = 0;
  int dimension = -1;  // multiplicity - 1
  // l_inf diameter of the union of a simplex's balls intersected with the
  // space, maximized over simplices.
  Rational fiber_bound;
  std::vector<Rational> star_bound;  // per vertex, the same over its simplices
  std::vector<std::size_t> simplex_of_max;  // a simplex attaining fiber_bound
};

// Throws InputError when the balls do not cover s or leave the half grid.
NerveComplex nerve(const Covering& cover, const Space& s);

struct WidthResult {
  int m = 1;                // bound is for UW_{m-1}
  Rational bound;
  Covering covering;
  NerveComplex nerve;
  double hc = 0;            // HC_m(s) upper
  double c_measured = 0;    // bound / hc^{1/m}
  Rational diameter;
  bool trivial = false;     // only the single-ball covering was found
  std::string source;       // which candidate produced the bound
  std::size_t evaluations = 0;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::vector<Rational> history;  // best bound after each search stage
};

// Searches coverings with multiplicity <= m: one enclosing ball, grid tilings,
// the content solver's witness, then seeded annealing over merge, split,
// shrink and grow moves. Voxel spaces only.
WidthResult width_bound(const Space& s, int m, std::size_t budget = 2000, std::uint64_t seed = 0,
                        const SolverOptions& opt = {});

struct WidthVerification {
  bool covers = false;
  bool multiplicity_ok = false;  // recomputed multiplicity equals the reported one and is <= m
  bool dimension_ok = false;
  bool fiber_ok = false;         // recomputed fiber bound equals the reported one
  std::size_t multiplicity = 0;
  Rational fiber_bound;
  bool all_ok = false;
};

// Recomputes cover, multiplicity (cliques of the pairwise-intersection graph
// per cell) and fiber diameters in rational arithmetic.
WidthVerification verify_width(const Space& s, const WidthResult& r);

struct LocalWidthReport {
  int m = 1;
  Rational R;
  double max_ratio = 0;  // max over centers of HC_m(B(x, R) ∩ s) / R^m
  std::size_t centers = 0;
  WidthResult width;
  bool width_below_R = false;
  std::string verdict;
};

LocalWidthReport local_width_check(const Space& s, int m, const Rational& R, std::size_t budget = 2000,
                                   std::uint64_t seed = 0, const SolverOptions& opt = {});

nlohmann::json to_json(const NerveComplex& n);
nlohmann::json to_json(const WidthResult& r);
nlohmann::json to_json(const WidthVerification& v);
nlohmann::json to_json(const LocalWidthReport& r);

}  // namespace hcf
