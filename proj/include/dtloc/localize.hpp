#pragma once

// Per-slope localization series, wall/chamber diagnostics and the product law
// under disjoint union.

#include <optional>
#include <string>
#include <vector>

#include "dtloc/crystal.hpp"
#include "dtloc/half_laurent.hpp"
#include "dtloc/quiver.hpp"
#include "dtloc/tangent.hpp"

namespace dtloc {

/// Sum over fixed points of y^Ind, graded by crystal size. This is the virtual
/// class of the attracting locus of the slope; it equals the class of the whole
/// moduli space only when the action is circle-compact.
struct LocalizationSeries {
  Slope slope;
  int order = 0;
  TruncatedSeries series;
  bool attracting_locus_only = true;
};

/// Throws DomainError when the slope violates the potential, hits a wall
/// (the message names the zero-weight cycle) or a fixed point is not isolated.
LocalizationSeries localization_series(const Quiver &q, const Slope &s, int order, int threads = 1);

/// y -> 1 per degree: the number of fixed points of each size.
std::vector<BigInt> euler_specialization(const LocalizationSeries &ls);

struct WallReport {
  std::vector<CycleFunctional> cycles;
  std::vector<std::int64_t> weights;
  std::vector<CycleFunctional> walls_hit;
  /// Sign of the slope on each cycle: -1, 0, +1.
  std::vector<int> chamber_signature;
};

WallReport wall_report(const Quiver &q, const Slope &s, int max_cycle_len);

struct ChamberComparison {
  bool equal = true;
  std::optional<int> first_differing_degree;
};

ChamberComparison compare_chambers(const Quiver &q, const Slope &s1, const Slope &s2, int order,
                                   int threads = 1);

/// Series of the disjoint union (two framings, sizes summed) against the
/// product of the factor series.
bool product_law_check(const Quiver &q1, const Quiver &q2, const Slope &s1, const Slope &s2, int order,
                       int threads = 1);

/// Circle-compactness annotation for built-in models: "yes", "no" or
/// "unknown" (file models and anything not annotated).
std::string circle_compact_annotation(std::string_view model, const Slope &s);

} // namespace dtloc
