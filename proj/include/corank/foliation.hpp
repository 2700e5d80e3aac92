// foliation.hpp - symbolic plans for Morse-form foliations with a given
// number of minimal components (m) and homologically independent compact
// leaves (c), plus a comparator for the two counting bounds.
//
// A plan is a connected sum of summands, each tagged with a foliation kind
// and its contribution (m_i, c_i):
//
//   minimal-component   (1,0)  a minimal (dense-leaf) foliation; needs a
//                              summand with b1 >= 2
//   compact-fibration   (0,1)  fibers over S1; the fiber is one
//                              homologically independent compact leaf
//   trivial-centered    (0,0)  every compact leaf null-homologous (a level
//                              foliation with connected regular levels)
//   irrational-winding  (1,0)  dense lines on the 2-torus
//
// Feasibility: m + c <= b1' and 2m + c <= b1, on top of the realizability
// of (n, b1', b1) itself; for n = 2 additionally b1 = 2 b1' (orientable
// surfaces). Plans are blueprints, not leaf-by-leaf descriptions.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corank/expr.hpp"
#include "corank/invariants.hpp"
#include "corank/synth.hpp"

namespace corank {

struct FoliationTarget {
  std::int64_t n = 2;
  std::int64_t m = 0;
  std::int64_t c = 0;
  std::int64_t b_prime = 0;
  std::int64_t b = 0;
};

enum class FoliationKind : std::uint8_t {
  MinimalComponent,
  CompactFibration,
  TrivialCentered,
  IrrationalWinding,
};

constexpr std::pair<std::int64_t, std::int64_t> kind_contribution(FoliationKind k) {
  switch (k) {
    case FoliationKind::MinimalComponent: return {1, 0};
    case FoliationKind::CompactFibration: return {0, 1};
    case FoliationKind::TrivialCentered: return {0, 0};
    case FoliationKind::IrrationalWinding: return {1, 0};
  }
  return {0, 0};
}

constexpr std::string_view kind_name(FoliationKind k) {
  switch (k) {
    case FoliationKind::MinimalComponent: return "minimal-component";
    case FoliationKind::CompactFibration: return "compact-fibration";
    case FoliationKind::TrivialCentered: return "trivial-centered";
    case FoliationKind::IrrationalWinding: return "irrational-winding";
  }
  return "?";
}

struct FoliationSummand {
  ManifoldExpr expr;
  FoliationKind kind = FoliationKind::TrivialCentered;
  std::int64_t m_i = 0;
  std::int64_t c_i = 0;
};

struct FoliationPlan {
  std::vector<FoliationSummand> summands;
  std::int64_t m = 0;  // sum of m_i
  std::int64_t c = 0;  // sum of c_i
  ManifoldExpr ambient;
};

inline Feasibility feasible_foliation(const FoliationTarget& t) {
  if (t.n < 2) throw std::invalid_argument("foliation targets need n >= 2");
  if (Feasibility f = detail::check_nonnegative({t.m, t.c, t.b_prime, t.b}); !f) return f;
  if (t.n == 2) {
    if (t.b != 2 * t.b_prime)
      return Feasibility::no(Violation::SurfaceDoubling,
                             "n=2 requires b1 = 2*b1' (got b1 = " + std::to_string(t.b) +
                                 ", b1' = " + std::to_string(t.b_prime) + ")");
  } else if (Feasibility f = detail::betti_pair_ok(t.b_prime, t.b); !f) {
    return f;
  }
  if (t.m + t.c > t.b_prime)
    return Feasibility::no(Violation::MinimalCompactBound,
                           "m + c = " + std::to_string(t.m + t.c) + " exceeds b1' = " +
                               std::to_string(t.b_prime));
  if (t.n >= 3 && 2 * t.m + t.c > t.b)
    return Feasibility::no(Violation::MinimalTwiceCompactBound,
                           "2m + c = " + std::to_string(2 * t.m + t.c) + " exceeds b1 = " +
                               std::to_string(t.b));
  return Feasibility::yes();
}

namespace detail {

inline FoliationSummand tagged(ManifoldExpr e, FoliationKind k) {
  auto [mi, ci] = kind_contribution(k);
  return {std::move(e), k, mi, ci};
}

}  // namespace detail

// Emits a plan for any feasible target.
//
// n = 2 (genus g = b1'): m winding tori + c fibered tori + (g - m - c)
// centered tori; g = 0 degenerates to the sphere.
//
// n >= 3: connected sums of co-rank-1 blocks. When the Betti excess
// b1 - b1' covers m, each minimal block takes a share >= 2 of the excess
// and everything else rides on S1 x S(n-1) blocks. When the excess is
// smaller than m, the shortfall is made up by pairing S1 x S(n-1) blocks
// into connected-sum summands (b1 = 2 each) that carry minimal foliations.
// With m = 0 the excess has no minimal block to live on, so it is parked
// on one extra block foliated without minimal components: by compact
// fibers if every block must contribute a compact leaf (c = b1'), by a
// centered level foliation otherwise.
inline FoliationPlan plan(const FoliationTarget& t) {
  Feasibility f = feasible_foliation(t);
  if (!f) throw InfeasibleError(std::move(f));

  using detail::tagged;
  FoliationPlan out;
  auto add = [&out](std::int64_t count, ManifoldExpr e, FoliationKind k) {
    for (std::int64_t i = 0; i < count; ++i) out.summands.push_back(tagged(e, k));
  };

  if (t.n == 2) {
    if (t.b_prime == 0) {
      add(1, sphere(2), FoliationKind::TrivialCentered);
    } else {
      const ManifoldExpr torus = product({sphere(1), sphere(1)});
      add(t.m, torus, FoliationKind::IrrationalWinding);
      add(t.c, torus, FoliationKind::CompactFibration);
      add(t.b_prime - t.m - t.c, torus, FoliationKind::TrivialCentered);
    }
  } else if (t.b == 0) {
    add(1, sphere(t.n), FoliationKind::TrivialCentered);
  } else {
    const ManifoldExpr unit = h_block(t.n, 1);
    const std::int64_t excess = t.b - t.b_prime;
    if (excess >= t.m) {
      if (t.m >= 1) {
        add(t.m - 1, h_block(t.n, 2), FoliationKind::MinimalComponent);
        add(1, h_block(t.n, excess - t.m + 2), FoliationKind::MinimalComponent);
        add(t.c, unit, FoliationKind::CompactFibration);
        add(t.b_prime - t.m - t.c, unit, FoliationKind::TrivialCentered);
      } else if (excess == 0) {
        add(t.c, unit, FoliationKind::CompactFibration);
        add(t.b_prime - t.c, unit, FoliationKind::TrivialCentered);
      } else if (t.c == t.b_prime) {
        add(1, h_block(t.n, excess + 1), FoliationKind::CompactFibration);
        add(t.c - 1, unit, FoliationKind::CompactFibration);
      } else {
        add(1, h_block(t.n, excess + 1), FoliationKind::TrivialCentered);
        add(t.c, unit, FoliationKind::CompactFibration);
        add(t.b_prime - 1 - t.c, unit, FoliationKind::TrivialCentered);
      }
    } else {
      const std::int64_t doubles = t.m - excess;
      add(excess, h_block(t.n, 2), FoliationKind::MinimalComponent);
      add(doubles, conn_sum({unit, unit}), FoliationKind::MinimalComponent);
      add(t.c, unit, FoliationKind::CompactFibration);
      add(t.b_prime - excess - 2 * doubles - t.c, unit, FoliationKind::TrivialCentered);
    }
  }

  std::vector<ManifoldExpr> pieces;
  pieces.reserve(out.summands.size());
  for (const FoliationSummand& s : out.summands) {
    out.m += s.m_i;
    out.c += s.c_i;
    pieces.push_back(s.expr);
  }
  out.ambient = pieces.size() == 1 ? std::move(pieces.front()) : conn_sum(std::move(pieces));
  return out;
}

// ============================================================================
// Comparing the two bounds
// ============================================================================

enum class BoundVerdict : std::uint8_t {
  FirstStronger,   // m + c <= b1' implies 2m + c <= b1
  Independent,     // neither implies the other
  SecondStronger,  // 2m + c <= b1 implies m + c <= b1'
  Equivalent,      // equal constraints at the supplied m or c
};

constexpr std::string_view verdict_name(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::FirstStronger: return "first-stronger";
    case BoundVerdict::Independent: return "independent";
    case BoundVerdict::SecondStronger: return "second-stronger";
    case BoundVerdict::Equivalent: return "equivalent";
  }
  return "?";
}

struct BoundComparison {
  BoundVerdict verdict = BoundVerdict::Independent;
  std::string explanation;
};

// Which of m + c <= b1' and 2m + c <= b1 cuts deeper. Without m or c the
// verdict is the global trichotomy; in the mixed region a supplied m (resp.
// c) settles which bound is tighter on the other variable. If m and c pull
// in different directions the bounds stay independent.
inline BoundComparison compare_bounds(std::int64_t b_prime, std::int64_t b,
                                      std::optional<std::int64_t> m = {},
                                      std::optional<std::int64_t> c = {}) {
  if (b_prime < 0 || b < b_prime)
    throw std::invalid_argument("compare_bounds needs 0 <= b1' <= b1");
  if (b_prime == 0 && b == 0)
    throw std::invalid_argument("compare_bounds is undefined for b1' = b1 = 0");
  if (2 * b_prime <= b)
    return {BoundVerdict::FirstStronger, "m + c <= b1' implies 2m + c <= b1"};
  if (b_prime == b)
    return {BoundVerdict::SecondStronger, "2m + c <= b1 implies m + c <= b1'"};

  // b1/2 < b1' < b1: the bounds cross
  std::optional<BoundVerdict> vm, vc;
  std::string note;
  if (m) {
    const std::int64_t pivot = b - b_prime;
    vm = *m < pivot   ? BoundVerdict::FirstStronger
         : *m > pivot ? BoundVerdict::SecondStronger
                      : BoundVerdict::Equivalent;
    note += "given m = " + std::to_string(*m) + " the bounds on c are c <= " +
            std::to_string(b_prime - *m) + " and c <= " + std::to_string(b - 2 * *m) + "; ";
  }
  if (c) {
    const std::int64_t pivot = 2 * b_prime - b;
    vc = *c > pivot   ? BoundVerdict::FirstStronger
         : *c < pivot ? BoundVerdict::SecondStronger
                      : BoundVerdict::Equivalent;
    note += "given c = " + std::to_string(*c) + " the bounds on m are m <= " +
            std::to_string(b_prime - *c) + " and 2m <= " + std::to_string(b - *c) + "; ";
  }
  auto finish = [&note](BoundVerdict v) -> BoundComparison {
    switch (v) {
      case BoundVerdict::FirstStronger:
        return {v, note + "m + c <= b1' is tighter"};
      case BoundVerdict::SecondStronger:
        return {v, note + "2m + c <= b1 is tighter"};
      case BoundVerdict::Equivalent:
        return {v, note + "both impose the same constraint"};
      default:
        return {v, note + "the bounds bind in different directions"};
    }
  };
  if (vm && vc) {
    if (*vm == *vc) return finish(*vm);
    if (*vm == BoundVerdict::Equivalent) return finish(*vc);
    if (*vc == BoundVerdict::Equivalent) return finish(*vm);
    return finish(BoundVerdict::Independent);
  }
  if (vm) return finish(*vm);
  if (vc) return finish(*vc);
  return {BoundVerdict::Independent, "neither bound implies the other"};
}

}  // namespace corank
