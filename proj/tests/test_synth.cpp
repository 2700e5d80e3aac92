// test_synth.cpp - feasibility test and constructive witnesses for
// (n, b1', b1) targets.
//
// The feasibility predicate is falsified against an independent closure
// oracle: starting from the invariant records of all small base manifolds,
// close under the product and connected-sum record arithmetic. Everything
// reachable must be declared feasible, and nothing declared infeasible may
// be reachable.

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <tuple>
#include <vector>

#include "corank/expr.hpp"
#include "corank/invariants.hpp"
#include "corank/synth.hpp"

using namespace corank;

namespace {

bool contains_harvey(const ManifoldExpr& e) {
  if (e.kind == ExprKind::Base) return e.base.kind == BaseKind::Harvey;
  for (const ManifoldExpr& c : e.children)
    if (contains_harvey(c)) return true;
  return false;
}

// (dim, orientable, b1, b1') with small caps, used by the closure oracle
using Rec = std::tuple<std::int64_t, bool, std::int64_t, std::int64_t>;

constexpr std::int64_t kDimCap = 5;
constexpr std::int64_t kBettiCap = 6;

bool in_caps(const Rec& r) {
  return std::get<0>(r) <= kDimCap && std::get<2>(r) <= kBettiCap;
}

// record arithmetic restates the counting rules directly, independent of the
// library's recursion
Rec rec_product(const Rec& a, const Rec& b) {
  return {std::get<0>(a) + std::get<0>(b), std::get<1>(a) && std::get<1>(b),
          std::get<2>(a) + std::get<2>(b), std::max(std::get<3>(a), std::get<3>(b))};
}

// connected sums in dimension 2 go through the surface classification; a
// dim-2 record determines the surface, so this is well defined
Rec rec_sum2(const Rec& a, const Rec& b) {
  const std::int64_t ga = std::get<2>(a) / 2, gb = std::get<2>(b) / 2;  // genus if orientable
  const std::int64_t ha = std::get<2>(a) + 1, hb = std::get<2>(b) + 1;  // crosscaps otherwise
  std::int64_t h = 0;
  if (std::get<1>(a) && std::get<1>(b))
    return {2, true, 2 * (ga + gb), ga + gb};
  if (std::get<1>(a))
    h = 2 * ga + hb;
  else if (std::get<1>(b))
    h = 2 * gb + ha;
  else
    h = ha + hb;
  return {2, false, h - 1, h / 2};
}

std::set<Rec> reachable_records() {
  std::set<Rec> seen;
  std::vector<Rec> bases;
  bases.push_back({0, true, 0, 0});  // pt
  for (std::int64_t k = 1; k <= kDimCap; ++k)
    bases.push_back({k, true, k == 1 ? 1 : 0, k == 1 ? 1 : 0});  // spheres
  for (std::int64_t g = 0; g <= 3; ++g) bases.push_back({2, true, 2 * g, g});
  for (std::int64_t h = 1; h <= 7; ++h) bases.push_back({2, false, h - 1, h / 2});
  for (std::int64_t b = 1; b <= kBettiCap; ++b) bases.push_back({3, true, b, 1});
  for (const Rec& r : bases)
    if (in_caps(r)) seen.insert(r);

  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Rec> snapshot(seen.begin(), seen.end());
    for (const Rec& a : snapshot)
      for (const Rec& b : snapshot) {
        std::vector<Rec> next;
        if (std::get<0>(a) >= 1 && std::get<0>(b) >= 1)
          next.push_back(rec_product(a, b));
        if (std::get<0>(a) == 2 && std::get<0>(b) == 2)
          next.push_back(rec_sum2(a, b));
        if (std::get<0>(a) == std::get<0>(b) && std::get<0>(a) >= 3)
          next.push_back({std::get<0>(a), std::get<1>(a) && std::get<1>(b),
                          std::get<2>(a) + std::get<2>(b),
                          std::get<3>(a) + std::get<3>(b)});
        for (const Rec& r : next)
          if (in_caps(r) && seen.insert(r).second) grew = true;
      }
  }
  return seen;
}

}  // namespace

// ============================================================================
// Feasibility
// ============================================================================

TEST_CASE("feasibility in dimension >= 3 follows the betti-pair rule") {
  CHECK(feasible({3, 0, 0, false}));
  CHECK(feasible({3, 1, 1, false}));
  CHECK(feasible({8, 3, 12, false}));
  CHECK(feasible({3, 2, 2, false}));

  const Feasibility zero = feasible({3, 0, 2, false});
  CHECK_FALSE(zero);
  CHECK(zero.violation == Violation::BettiPairRange);
  CHECK(zero.reason == "b1' = 0 forces b1 = 0 (got b1 = 2)");

  const Feasibility over = feasible({4, 5, 3, false});
  CHECK_FALSE(over);
  CHECK(over.violation == Violation::BettiPairRange);
  CHECK(over.reason == "b1' = 5 exceeds b1 = 3");
}

TEST_CASE("feasibility in low dimensions is rigid") {
  CHECK(feasible({2, 2, 3, false}));
  CHECK(feasible({2, 2, 4, false}));
  const Feasibility surf = feasible({2, 1, 3, false});
  CHECK(surf.violation == Violation::SurfaceBettiPair);
  CHECK(surf.reason == "n=2 forces b1' = floor((b1+1)/2) = 2 (got b1' = 1)");

  CHECK(feasible({2, 2, 4, true}));
  const Feasibility parity = feasible({2, 2, 3, true});
  CHECK(parity.violation == Violation::SurfaceOrientableParity);
  CHECK(parity.reason == "n=2 orientable requires b1 even (got b1 = 3)");

  CHECK(feasible({1, 1, 1, false}));
  CHECK(feasible({1, 0, 1, false}).violation == Violation::CircleBetti);
  CHECK(feasible({0, 0, 0, false}));
  CHECK(feasible({0, 1, 1, false}).violation == Violation::PointBetti);
  CHECK(feasible({3, -1, 2, false}).violation == Violation::NegativeInput);
  CHECK(feasible({-1, 0, 0, false}).violation == Violation::NegativeInput);
}

TEST_CASE("feasibility is exactly reachability of invariant records") {
  const std::set<Rec> reachable = reachable_records();

  // soundness of the predicate: every reachable pair is declared feasible
  for (const Rec& r : reachable) {
    const auto [n, orientable, b, bp] = r;
    CAPTURE(n, orientable, b, bp);
    REQUIRE(feasible({n, bp, b, false}));
    if (orientable) REQUIRE(feasible({n, bp, b, true}));
  }

  // no pair declared infeasible is reachable by any expression
  for (std::int64_t n = 0; n <= kDimCap; ++n)
    for (std::int64_t b = 0; b <= kBettiCap; ++b)
      for (std::int64_t bp = 0; bp <= b; ++bp) {
        CAPTURE(n, b, bp);
        if (!feasible({n, bp, b, false})) {
          REQUIRE_FALSE(reachable.count({n, true, b, bp}));
          REQUIRE_FALSE(reachable.count({n, false, b, bp}));
        }
        if (feasible({n, bp, b, false}) && !feasible({n, bp, b, true}))
          REQUIRE_FALSE(reachable.count({n, true, b, bp}));
      }
}

// ============================================================================
// Building blocks
// ============================================================================

TEST_CASE("partitions are lopsided with b1' parts summing to b1") {
  CHECK(choose_partition(1, 5) == std::vector<std::int64_t>{5});
  CHECK(choose_partition(3, 5) == std::vector<std::int64_t>{3, 1, 1});
  CHECK(choose_partition(5, 5) == std::vector<std::int64_t>{1, 1, 1, 1, 1});
  CHECK_THROWS_AS(choose_partition(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(choose_partition(6, 5), std::invalid_argument);
  for (std::int64_t b = 1; b <= 12; ++b)
    for (std::int64_t bp = 1; bp <= b; ++bp) {
      const std::vector<std::int64_t> parts = choose_partition(bp, b);
      REQUIRE(static_cast<std::int64_t>(parts.size()) == bp);
      std::int64_t sum = 0;
      for (std::int64_t p : parts) {
        REQUIRE(p >= 1);
        sum += p;
      }
      REQUIRE(sum == b);
    }
}

TEST_CASE("blocks realize co-rank one with prescribed b1") {
  CHECK(h_block(3, 1) == parse("S1 x S2"));
  CHECK(h_block(6, 1) == parse("S1 x S5"));
  CHECK(h_block(3, 4) == parse("H4"));
  CHECK(h_block(4, 3) == parse("H2 x S1"));
  CHECK(h_block(5, 2) == parse("H2 x S2"));
  CHECK(h_block(7, 5) == parse("H5 x S4"));
  CHECK_THROWS_AS(h_block(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(h_block(3, 0), std::invalid_argument);
  for (std::int64_t n = 3; n <= 8; ++n)
    for (std::int64_t k = 1; k <= 6; ++k) {
      const InvariantRecord r = invariants(h_block(n, k));
      CAPTURE(n, k);
      REQUIRE(r == InvariantRecord{n, true, k, 1});
    }
}

// ============================================================================
// Witness construction
// ============================================================================

TEST_CASE("construct produces the documented witnesses") {
  CHECK(construct({4, 2, 5, false}) == parse("(H3 x S1) # (S1 x S3)"));
  CHECK(construct({3, 1, 1, false}) == parse("S1 x S2"));
  CHECK(construct({3, 2, 2, false}) == parse("(S1 x S2) # (S1 x S2)"));
  CHECK(construct({3, 1, 4, false}) == parse("H4"));
  CHECK(construct({3, 0, 0, false}) == parse("S3"));
  CHECK(construct({6, 0, 0, false}) == parse("S6"));
  CHECK(construct({2, 0, 0, false}) == parse("S2"));
  CHECK(construct({2, 2, 4, false}) == parse("M2"));
  CHECK(construct({2, 2, 3, false}) == parse("N4"));
  CHECK(construct({1, 1, 1, false}) == parse("S1"));
  CHECK(construct({0, 0, 0, false}) == parse("pt"));
}

TEST_CASE("construct throws InfeasibleError with the violation attached") {
  CHECK_THROWS_AS(construct({3, 0, 2, false}), InfeasibleError);
  try {
    construct({2, 2, 3, true});
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK(e.info().violation == Violation::SurfaceOrientableParity);
    CHECK(std::string(e.what()) == e.info().reason);
    CHECK(violation_name(e.info().violation) == "surface-orientable-parity");
  }
}

TEST_CASE("construct round-trips over the full small grid") {
  std::vector<std::int64_t> dims{0, 1, 2, 3, 4, 5, 6, 7, 8};
  for (std::int64_t n : dims)
    for (std::int64_t b = 0; b <= 12; ++b)
      for (std::int64_t bp = 0; bp <= b; ++bp) {
        const SynthesisTarget t{n, bp, b, false};
        CAPTURE(n, bp, b);
        if (!feasible(t)) {
          REQUIRE_THROWS_AS(construct(t), InfeasibleError);
          continue;
        }
        const ManifoldExpr e = construct(t);
        REQUIRE(is_valid(e));
        const InvariantRecord r = invariants(e);
        REQUIRE(r.dim == n);
        REQUIRE(r.b1 == b);
        REQUIRE(r.b1_prime == bp);
        REQUIRE(r.orientable == (n != 2 || b % 2 == 0));
      }
}

TEST_CASE("witnesses avoid opaque blocks when plain ones suffice") {
  // b1' = b1 is realizable by circle-sphere blocks alone
  for (std::int64_t n = 3; n <= 6; ++n)
    for (std::int64_t b = 1; b <= 6; ++b) {
      CAPTURE(n, b);
      REQUIRE_FALSE(contains_harvey(construct({n, b, b, false})));
    }
  CHECK(contains_harvey(construct({3, 1, 2, false})));
}

TEST_CASE("orientable witnesses appear whenever permitted") {
  for (std::int64_t n = 3; n <= 8; ++n)
    for (std::int64_t b = 0; b <= 8; ++b)
      for (std::int64_t bp = 0; bp <= b; ++bp) {
        const SynthesisTarget t{n, bp, b, true};
        if (!feasible({n, bp, b, false})) continue;
        CAPTURE(n, bp, b);
        REQUIRE(feasible(t));  // orientability costs nothing above dim 2
        REQUIRE(invariants(construct(t)).orientable);
      }
  CHECK(invariants(construct({2, 3, 6, true})).orientable);
}
