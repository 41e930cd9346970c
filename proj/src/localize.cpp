#include "dtloc/localize.hpp"

#include <algorithm>
#include <map>

#include "dtloc/errors.hpp"
#include "dtloc/parallel.hpp"

namespace dtloc {

namespace {

void require_valid(const Quiver &q, const Slope &s) {
  auto violated = validate_slope(q, s);
  if (violated.empty())
    return;
  std::string msg = "slope " + s.render() + " does not preserve the potential; nonzero weight on";
  for (std::size_t t : violated)
    msg += " [" + std::string(q.potential[t].sign > 0 ? "+" : "-") + q.render_word(q.potential[t].word) + "]";
  throw DomainError(msg);
}

} // namespace

LocalizationSeries localization_series(const Quiver &q, const Slope &s, int order, int threads) {
  if (order < 0)
    throw std::invalid_argument("order must be non-negative");
  require_valid(q, s);
  if (s.is_zero())
    throw DomainError("wall slope: the zero slope fixes everything");
  const int cycle_len = 2 * std::max(order, 1);
  if (auto c = zero_weight_cycle(q, s, cycle_len))
    throw DomainError("wall slope: elementary cycle '" + q.render_word(c->cycle) + "' has weight 0");

  const AtomPoset p = build_atom_poset(q, std::max(order - 1, 0));
  const auto crystals = enumerate_crystals(p, order, threads);
  const TangentComplex complex(p, s);

  using Tally = std::map<std::pair<std::size_t, std::int64_t>, long>;
  std::vector<Tally> partial(chunk_count(crystals.size(), threads));
  parallel_chunks(crystals.size(), threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      IndexReport r = complex.report(crystals[i]);
      if (!r.isolated())
        throw DomainError("fixed point not isolated for this slope: crystal of size " +
                          std::to_string(crystals[i].size()) + " has " + std::to_string(r.zero_tangent) +
                          " zero-weight tangent directions");
      ++partial[chunk][{crystals[i].size(), r.ind}];
    }
  });

  LocalizationSeries ls{s, order, TruncatedSeries(order), true};
  for (const auto &tally : partial)
    for (const auto &[key, count] : tally)
      ls.series[static_cast<int>(key.first)].add_term(key.second, count);
  return ls;
}

std::vector<BigInt> euler_specialization(const LocalizationSeries &ls) { return ls.series.specialize_y1(); }

WallReport wall_report(const Quiver &q, const Slope &s, int max_cycle_len) {
  if (s.weights.size() != q.arrow_count())
    throw DomainError("slope arity does not match the quiver");
  WallReport r;
  r.cycles = elementary_cycles(q, max_cycle_len);
  for (const auto &c : r.cycles) {
    const std::int64_t w = c.weight_of(s);
    r.weights.push_back(w);
    r.chamber_signature.push_back((w > 0) - (w < 0));
    if (w == 0)
      r.walls_hit.push_back(c);
  }
  return r;
}

ChamberComparison compare_chambers(const Quiver &q, const Slope &s1, const Slope &s2, int order, int threads) {
  const auto a = localization_series(q, s1, order, threads);
  const auto b = localization_series(q, s2, order, threads);
  ChamberComparison out;
  for (int n = 0; n <= order; ++n)
    if (!(a.series[n] == b.series[n])) {
      out.equal = false;
      out.first_differing_degree = n;
      break;
    }
  return out;
}

bool product_law_check(const Quiver &q1, const Quiver &q2, const Slope &s1, const Slope &s2, int order,
                       int threads) {
  const Quiver joint = disjoint_union(q1, q2);
  const auto lhs = localization_series(joint, concat_slopes(s1, s2), order, threads);
  const auto f1 = localization_series(q1, s1, order, threads);
  const auto f2 = localization_series(q2, s2, order, threads);
  return lhs.series == series_mul(f1.series, f2.series);
}

std::string circle_compact_annotation(std::string_view model, const Slope &s) {
  // Hilbert schemes of C^3 and of the conifold are never contracted onto
  // their fixed points: every admissible slope has a repelling cycle.
  if (model == "c3" || model == "conifold")
    return "no";
  // Symmetric powers of a line are contracted exactly when the loop attracts.
  if (model == "loop" && s.weights.size() == 1)
    return s.weights[0] > 0 ? "yes" : "no";
  return "unknown";
}

} // namespace dtloc
