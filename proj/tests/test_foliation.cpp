// test_foliation.cpp - foliation feasibility, plan construction, and the
// comparison of the two counting bounds.

#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <string>
#include <vector>

#include "corank/expr.hpp"
#include "corank/foliation.hpp"
#include "corank/invariants.hpp"

using namespace corank;

namespace {

std::vector<std::string> summand_lines(const FoliationPlan& p) {
  std::vector<std::string> out;
  for (const FoliationSummand& s : p.summands)
    out.push_back(render(s.expr) + " " + std::string(kind_name(s.kind)));
  return out;
}

void check_plan_consistent(const FoliationTarget& t, const FoliationPlan& p) {
  std::int64_t m = 0, c = 0;
  for (const FoliationSummand& s : p.summands) {
    const auto [mi, ci] = kind_contribution(s.kind);
    REQUIRE(s.m_i == mi);
    REQUIRE(s.c_i == ci);
    m += mi;
    c += ci;
  }
  REQUIRE(p.m == m);
  REQUIRE(p.c == c);
  REQUIRE(m == t.m);
  REQUIRE(c == t.c);
  REQUIRE(is_valid(p.ambient));
  const InvariantRecord r = invariants(p.ambient);
  REQUIRE(r.dim == t.n);
  REQUIRE(r.b1 == t.b);
  REQUIRE(r.b1_prime == t.b_prime);
}

}  // namespace

// ============================================================================
// Feasibility
// ============================================================================

TEST_CASE("foliation feasibility enforces both counting bounds") {
  CHECK(feasible_foliation({3, 2, 1, 4, 5}));
  CHECK(feasible_foliation({3, 0, 0, 0, 0}));

  const Feasibility f1 = feasible_foliation({3, 2, 2, 3, 6});
  CHECK(f1.violation == Violation::MinimalCompactBound);
  CHECK(f1.reason == "m + c = 4 exceeds b1' = 3");

  const Feasibility f2 = feasible_foliation({3, 3, 0, 4, 5});
  CHECK(f2.violation == Violation::MinimalTwiceCompactBound);
  CHECK(f2.reason == "2m + c = 6 exceeds b1 = 5");

  const Feasibility f3 = feasible_foliation({4, 0, 0, 3, 2});
  CHECK(f3.violation == Violation::BettiPairRange);

  CHECK(feasible_foliation({3, -1, 0, 1, 1}).violation == Violation::NegativeInput);
  CHECK_THROWS_AS(feasible_foliation({1, 0, 0, 1, 1}), std::invalid_argument);
}

TEST_CASE("surface foliations demand the doubled Betti number") {
  CHECK(feasible_foliation({2, 1, 1, 3, 6}));
  const Feasibility f = feasible_foliation({2, 1, 1, 2, 3});
  CHECK(f.violation == Violation::SurfaceDoubling);
  CHECK(f.reason == "n=2 requires b1 = 2*b1' (got b1 = 3, b1' = 2)");
  // the second bound is vacuous on surfaces: 2m + c <= 2(m + c) <= 2 b1' = b1
  CHECK(feasible_foliation({2, 3, 0, 3, 6}));
}

// ============================================================================
// Plans
// ============================================================================

TEST_CASE("plans cover the documented examples") {
  const FoliationPlan p = plan({3, 2, 1, 4, 5});
  CHECK(summand_lines(p) ==
        std::vector<std::string>{"H2 minimal-component",
                                 "(S1 x S2) # (S1 x S2) minimal-component",
                                 "S1 x S2 compact-fibration"});
  check_plan_consistent({3, 2, 1, 4, 5}, p);
  CHECK(p.ambient == parse("H2 # ((S1 x S2) # (S1 x S2)) # (S1 x S2)"));

  const FoliationPlan q = plan({4, 1, 1, 3, 5});
  CHECK(summand_lines(q) ==
        std::vector<std::string>{"H2 x S1 minimal-component",
                                 "S1 x S3 compact-fibration",
                                 "S1 x S3 trivial-centered"});
  check_plan_consistent({4, 1, 1, 3, 5}, q);
}

TEST_CASE("surface plans ride on tori") {
  const FoliationPlan p = plan({2, 1, 1, 3, 6});
  CHECK(summand_lines(p) ==
        std::vector<std::string>{"S1 x S1 irrational-winding",
                                 "S1 x S1 compact-fibration",
                                 "S1 x S1 trivial-centered"});
  check_plan_consistent({2, 1, 1, 3, 6}, p);
  CHECK(surface_canonical(p.ambient) == SurfaceForm{true, 3});

  const FoliationPlan sphere_plan = plan({2, 0, 0, 0, 0});
  CHECK(summand_lines(sphere_plan) == std::vector<std::string>{"S2 trivial-centered"});
  CHECK(sphere_plan.ambient == parse("S2"));
}

TEST_CASE("trivial targets foliate the sphere") {
  const FoliationPlan p = plan({5, 0, 0, 0, 0});
  CHECK(p.ambient == parse("S5"));
  CHECK(p.summands.size() == 1);
  CHECK(p.summands[0].kind == FoliationKind::TrivialCentered);
}

TEST_CASE("plans without minimal components park the excess correctly") {
  // excess > 0 and every block must carry a compact leaf
  const FoliationPlan p = plan({3, 0, 2, 2, 3});
  CHECK(summand_lines(p) ==
        std::vector<std::string>{"H2 compact-fibration", "S1 x S2 compact-fibration"});
  check_plan_consistent({3, 0, 2, 2, 3}, p);

  // excess > 0 with a spare block for it
  const FoliationPlan q = plan({3, 0, 1, 2, 3});
  CHECK(summand_lines(q) ==
        std::vector<std::string>{"H2 trivial-centered", "S1 x S2 compact-fibration"});
  check_plan_consistent({3, 0, 1, 2, 3}, q);

  // no excess at all
  const FoliationPlan r = plan({4, 0, 2, 3, 3});
  CHECK(summand_lines(r) ==
        std::vector<std::string>{"S1 x S3 compact-fibration", "S1 x S3 compact-fibration",
                                 "S1 x S3 trivial-centered"});
  check_plan_consistent({4, 0, 2, 3, 3}, r);
}

TEST_CASE("plans pair unit blocks when minimal components outnumber the excess") {
  const FoliationPlan p = plan({3, 3, 0, 5, 6});
  CHECK(summand_lines(p) ==
        std::vector<std::string>{"H2 minimal-component",
                                 "(S1 x S2) # (S1 x S2) minimal-component",
                                 "(S1 x S2) # (S1 x S2) minimal-component"});
  check_plan_consistent({3, 3, 0, 5, 6}, p);

  // excess = 0: every minimal component lives on a paired block
  const FoliationPlan q = plan({4, 2, 1, 5, 5});
  CHECK(summand_lines(q) ==
        std::vector<std::string>{"(S1 x S3) # (S1 x S3) minimal-component",
                                 "(S1 x S3) # (S1 x S3) minimal-component",
                                 "S1 x S3 compact-fibration"});
  check_plan_consistent({4, 2, 1, 5, 5}, q);
}

TEST_CASE("every feasible tuple in the small grid yields a consistent plan") {
  for (std::int64_t n = 2; n <= 5; ++n)
    for (std::int64_t b = 0; b <= 7; ++b)
      for (std::int64_t bp = 0; bp <= b; ++bp)
        for (std::int64_t m = 0; m <= 4; ++m)
          for (std::int64_t c = 0; c <= 4; ++c) {
            const FoliationTarget t{n, m, c, bp, b};
            const Feasibility f = feasible_foliation(t);
            CAPTURE(n, m, c, bp, b);
            if (f) {
              check_plan_consistent(t, plan(t));
            } else {
              REQUIRE(f.violation != Violation::None);
              REQUIRE_FALSE(f.reason.empty());
              REQUIRE_THROWS_AS(plan(t), InfeasibleError);
            }
          }
}

TEST_CASE("plan kinds carry their contributions") {
  CHECK(kind_contribution(FoliationKind::MinimalComponent) == std::pair<std::int64_t, std::int64_t>{1, 0});
  CHECK(kind_contribution(FoliationKind::CompactFibration) == std::pair<std::int64_t, std::int64_t>{0, 1});
  CHECK(kind_contribution(FoliationKind::TrivialCentered) == std::pair<std::int64_t, std::int64_t>{0, 0});
  CHECK(kind_contribution(FoliationKind::IrrationalWinding) == std::pair<std::int64_t, std::int64_t>{1, 0});
  CHECK(kind_name(FoliationKind::IrrationalWinding) == "irrational-winding");
}

// ============================================================================
// Comparing the bounds
// ============================================================================

TEST_CASE("bound comparison follows the trichotomy") {
  CHECK(compare_bounds(2, 5).verdict == BoundVerdict::FirstStronger);
  CHECK(compare_bounds(2, 4).verdict == BoundVerdict::FirstStronger);
  CHECK(compare_bounds(4, 4).verdict == BoundVerdict::SecondStronger);
  CHECK(compare_bounds(3, 4).verdict == BoundVerdict::Independent);
  CHECK(compare_bounds(0, 3).verdict == BoundVerdict::FirstStronger);
  CHECK_THROWS_AS(compare_bounds(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(compare_bounds(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(compare_bounds(-1, 2), std::invalid_argument);

  for (std::int64_t b = 0; b <= 20; ++b)
    for (std::int64_t bp = 0; bp <= b; ++bp) {
      if (b == 0 && bp == 0) continue;
      const BoundVerdict v = compare_bounds(bp, b).verdict;
      CAPTURE(bp, b);
      if (2 * bp <= b)
        REQUIRE(v == BoundVerdict::FirstStronger);
      else if (bp == b)
        REQUIRE(v == BoundVerdict::SecondStronger);
      else
        REQUIRE(v == BoundVerdict::Independent);
    }
}

TEST_CASE("a fixed m or c resolves the mixed region") {
  // b1' = 3, b1 = 4: pivots are m = 1 and c = 2
  CHECK(compare_bounds(3, 4, 0).verdict == BoundVerdict::FirstStronger);
  CHECK(compare_bounds(3, 4, 1).verdict == BoundVerdict::Equivalent);
  CHECK(compare_bounds(3, 4, 2).verdict == BoundVerdict::SecondStronger);
  CHECK(compare_bounds(3, 4, {}, 3).verdict == BoundVerdict::FirstStronger);
  CHECK(compare_bounds(3, 4, {}, 2).verdict == BoundVerdict::Equivalent);
  CHECK(compare_bounds(3, 4, {}, 1).verdict == BoundVerdict::SecondStronger);

  // both supplied: agreement wins, an equivalent side defers, conflict stays independent
  CHECK(compare_bounds(3, 4, 0, 3).verdict == BoundVerdict::FirstStronger);
  CHECK(compare_bounds(3, 4, 2, 1).verdict == BoundVerdict::SecondStronger);
  CHECK(compare_bounds(3, 4, 1, 1).verdict == BoundVerdict::SecondStronger);
  CHECK(compare_bounds(3, 4, 1, 2).verdict == BoundVerdict::Equivalent);
  CHECK(compare_bounds(3, 4, 0, 1).verdict == BoundVerdict::Independent);

  CHECK(compare_bounds(3, 4, 2).explanation ==
        "given m = 2 the bounds on c are c <= 1 and c <= 0; 2m + c <= b1 is tighter");

  // outside the mixed region the trichotomy verdict stands regardless of m, c
  CHECK(compare_bounds(2, 5, 1, 1).verdict == BoundVerdict::FirstStronger);
  CHECK(compare_bounds(4, 4, 3).verdict == BoundVerdict::SecondStronger);
}

TEST_CASE("verdicts match the actual feasibility regions") {
  for (std::int64_t b = 1; b <= 12; ++b)
    for (std::int64_t bp = 0; bp <= b; ++bp) {
      const BoundVerdict v = compare_bounds(bp, b).verdict;
      bool first_implies_second = true, second_implies_first = true;
      for (std::int64_t m = 0; m <= b; ++m)
        for (std::int64_t c = 0; c <= b; ++c) {
          const bool first = m + c <= bp;
          const bool second = 2 * m + c <= b;
          if (first && !second) first_implies_second = false;
          if (second && !first) second_implies_first = false;
        }
      CAPTURE(bp, b);
      if (v == BoundVerdict::FirstStronger) REQUIRE(first_implies_second);
      if (v == BoundVerdict::SecondStronger) REQUIRE(second_implies_first);
      if (v == BoundVerdict::Independent) {
        REQUIRE_FALSE(first_implies_second);
        REQUIRE_FALSE(second_implies_first);
      }
    }
}
