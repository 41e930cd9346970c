#include <doctest.h>

#include <random>

#include "dtloc/errors.hpp"
#include "dtloc/localize.hpp"
#include "oracles.hpp"

using namespace dtloc;

namespace {

std::string error_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const DomainError &e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST_CASE("localization_series examples") {
  const Quiver c3 = builtin_quiver("c3");
  const auto a = localization_series(c3, Slope{{1, 1, -2}}, 1);
  CHECK(a.series == TruncatedSeries(1, {HalfLaurent{{0, 1}}, HalfLaurent{{1, 1}}}));
  CHECK(a.attracting_locus_only);
  const auto b = localization_series(c3, Slope{{2, -1, -1}}, 1);
  CHECK(b.series == TruncatedSeries(1, {HalfLaurent{{0, 1}}, HalfLaurent{{-1, 1}}}));
  for (const auto &name : builtin_names()) {
    const Quiver q = builtin_quiver(name);
    Slope s{std::vector<std::int64_t>(q.arrow_count(), 0)};
    if (name == "c3")
      s = Slope{{1, 1, -2}};
    else if (name == "conifold")
      s = Slope{{1, 2, -3, 0}};
    else
      s = Slope{{1}};
    CHECK(localization_series(q, s, 0).series == TruncatedSeries::one(0));
  }
}

TEST_CASE("single loop: every point attracted or repelled") {
  // Symmetric powers of a line: the n-point chain has tangent weights
  // s, 2s, ..., ns, so the coefficient of q^n is y^{n} or y^{-n}.
  const Quiver loop = builtin_quiver("loop");
  const auto up = localization_series(loop, Slope{{1}}, 4);
  const auto down = localization_series(loop, Slope{{-3}}, 4);
  for (int n = 0; n <= 4; ++n) {
    CHECK(up.series[n] == HalfLaurent::monomial(n));
    CHECK(down.series[n] == HalfLaurent::monomial(-n));
  }
}

TEST_CASE("wall and invalid slopes are rejected") {
  const Quiver c3 = builtin_quiver("c3");
  CHECK(error_of([&] { localization_series(c3, Slope{{1, -1, 0}}, 3); }) ==
        "wall slope: elementary cycle 'z' has weight 0");
  CHECK(error_of([&] { localization_series(c3, Slope{{1, 1, 1}}, 3); }).find("does not preserve") !=
        std::string::npos);
  CHECK(error_of([&] { localization_series(c3, Slope{{0, 0, 0}}, 3); }).find("wall slope") != std::string::npos);
  CHECK(error_of([&] { localization_series(c3, Slope{{1, 1, -2}}, 3); }) ==
        "fixed point not isolated for this slope: crystal of size 2 has 1 zero-weight tangent directions");
}

TEST_CASE("euler_specialization") {
  const auto c3 = localization_series(builtin_quiver("c3"), Slope{{10, 21, -31}}, 5);
  CHECK(euler_specialization(c3) == std::vector<BigInt>{1, 1, 3, 6, 13, 24});
  const auto loop = localization_series(builtin_quiver("loop"), Slope{{2}}, 4);
  CHECK(euler_specialization(loop) == std::vector<BigInt>{1, 1, 1, 1, 1});
  const auto con = localization_series(builtin_quiver("conifold"), Slope{{7, 2, -4, -5}}, 4);
  const auto oracle_counts = oracle::pyramid_partition_counts(4);
  const auto euler = euler_specialization(con);
  for (int n = 0; n <= 4; ++n)
    CHECK(euler[n] == oracle_counts[n]);
}

TEST_CASE("wall_report") {
  const Quiver c3 = builtin_quiver("c3");
  const auto r = wall_report(c3, Slope{{1, 1, -2}}, 1);
  CHECK(r.chamber_signature == std::vector<int>{1, 1, -1});
  CHECK(r.walls_hit.empty());
  const auto w = wall_report(c3, Slope{{1, -1, 0}}, 1);
  REQUIRE(w.walls_hit.size() == 1);
  CHECK(c3.render_word(w.walls_hit[0].cycle) == "z");
  const Quiver acyclic = parse_quiver("vertex 0 vertex 1 arrow a 0 1 ; framing 0");
  CHECK(wall_report(acyclic, Slope{{4}}, 3).chamber_signature.empty());
}

TEST_CASE("compare_chambers") {
  const Quiver c3 = builtin_quiver("c3");
  CHECK(compare_chambers(c3, Slope{{10, 21, -31}}, Slope{{30, 7, -37}}, 5).equal);
  const auto diff = compare_chambers(c3, Slope{{1, 1, -2}}, Slope{{2, -1, -1}}, 1);
  CHECK_FALSE(diff.equal);
  CHECK(diff.first_differing_degree == 1);
  CHECK(compare_chambers(c3, Slope{{13, -5, -8}}, Slope{{13, -5, -8}}, 3).equal);
  const Quiver con = builtin_quiver("conifold");
  CHECK(compare_chambers(con, Slope{{7, 2, -4, -5}}, Slope{{11, 3, -6, -8}}, 5).equal);
  // (1,1,-2) has a line of two-box fixed points.
  CHECK_THROWS_AS(compare_chambers(c3, Slope{{1, 1, -2}}, Slope{{2, 3, -5}}, 4), DomainError);
}

TEST_CASE("product_law_check") {
  const Quiver loop = builtin_quiver("loop");
  const Quiver c3 = builtin_quiver("c3");
  CHECK(product_law_check(loop, loop, Slope{{1}}, Slope{{1}}, 3));
  CHECK(product_law_check(c3, loop, Slope{{10, 21, -31}}, Slope{{-1}}, 3));
  CHECK(product_law_check(c3, loop, Slope{{1, 1, -2}}, Slope{{-1}}, 0));

  // Both sides of loop x loop at order 3: (n+1) q^n with exponents summed.
  const Quiver joint = disjoint_union(loop, loop);
  const auto s = localization_series(joint, Slope{{1, 1}}, 3);
  for (int n = 0; n <= 3; ++n)
    CHECK(s.series[n] == HalfLaurent::monomial(n, n + 1));
}

TEST_CASE("slope negation inverts y") {
  const Quiver c3 = builtin_quiver("c3");
  const Slope s{{13, -5, -8}};
  CHECK(localization_series(c3, -s, 5).series == localization_series(c3, s, 5).series.invert_y());
}

TEST_CASE("series is independent of thread count") {
  const Quiver con = builtin_quiver("conifold");
  const Slope s{{7, 2, -4, -5}};
  const auto one = localization_series(con, s, 5, 1).series;
  CHECK(localization_series(con, s, 5, 3).series == one);
  CHECK(localization_series(con, s, 5, 8).series == one);
}

TEST_CASE("circle-compact annotations") {
  CHECK(circle_compact_annotation("c3", Slope{{1, 1, -2}}) == "no");
  CHECK(circle_compact_annotation("loop", Slope{{1}}) == "yes");
  CHECK(circle_compact_annotation("loop", Slope{{-1}}) == "no");
  CHECK(circle_compact_annotation("my.quiver", Slope{{1}}) == "unknown");
}
