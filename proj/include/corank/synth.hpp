// synth.hpp - which (dim, b1', b1) pairs a closed manifold can have, and
// explicit expression witnesses for the feasible ones.
//
// Feasible combinations:
//   n >= 3: b1' = b1 = 0, or 1 <= b1' <= b1   (orientable witness exists)
//   n = 2:  b1' = floor((b1+1)/2)             (orientable iff b1 even)
//   n = 1:  b1' = b1 = 1                      (the circle)
//   n = 0:  b1' = b1 = 0                      (the point)
//
// Witnesses in dimension n >= 3 are connected sums of b1' blocks, each with
// co-rank 1; block i carries k_i of the Betti budget (sum k_i = b1). The
// partition is deliberately lopsided: one block takes b1 - b1' + 1, the
// rest take 1.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corank/expr.hpp"
#include "corank/invariants.hpp"

namespace corank {

enum class Violation : std::uint8_t {
  None,
  NegativeInput,             // some target value is negative
  BettiPairRange,            // n >= 3 needs b1' = b1 = 0 or 1 <= b1' <= b1
  SurfaceBettiPair,          // n = 2 forces b1' = floor((b1+1)/2)
  SurfaceOrientableParity,   // n = 2 orientable forces b1 even
  CircleBetti,               // n = 1 forces b1' = b1 = 1
  PointBetti,                // n = 0 forces b1' = b1 = 0
  SurfaceDoubling,           // n = 2 foliation targets need b1 = 2 b1'
  MinimalCompactBound,       // m + c <= b1'
  MinimalTwiceCompactBound,  // 2m + c <= b1
};

constexpr std::string_view violation_name(Violation v) {
  switch (v) {
    case Violation::None: return "none";
    case Violation::NegativeInput: return "negative-input";
    case Violation::BettiPairRange: return "betti-pair-range";
    case Violation::SurfaceBettiPair: return "surface-betti-pair";
    case Violation::SurfaceOrientableParity: return "surface-orientable-parity";
    case Violation::CircleBetti: return "circle-betti";
    case Violation::PointBetti: return "point-betti";
    case Violation::SurfaceDoubling: return "surface-doubling";
    case Violation::MinimalCompactBound: return "minimal-compact-bound";
    case Violation::MinimalTwiceCompactBound: return "minimal-twice-compact-bound";
  }
  return "?";
}

struct Feasibility {
  bool ok = true;
  Violation violation = Violation::None;
  std::string reason;
  explicit operator bool() const { return ok; }
  static Feasibility yes() { return {}; }
  static Feasibility no(Violation v, std::string reason) {
    return {false, v, std::move(reason)};
  }
};

class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(Feasibility f)
      : std::runtime_error(f.reason), info_(std::move(f)) {}
  const Feasibility& info() const { return info_; }

 private:
  Feasibility info_;
};

struct SynthesisTarget {
  std::int64_t n = 0;
  std::int64_t b_prime = 0;
  std::int64_t b = 0;
  bool require_orientable = false;
};

namespace detail {

// The n >= 3 realizability clause, shared by synthesis and foliation.
inline Feasibility betti_pair_ok(std::int64_t b_prime, std::int64_t b) {
  if (b_prime == 0 && b == 0) return Feasibility::yes();
  if (b_prime == 0)
    return Feasibility::no(Violation::BettiPairRange,
                           "b1' = 0 forces b1 = 0 (got b1 = " + std::to_string(b) + ")");
  if (b_prime > b)
    return Feasibility::no(Violation::BettiPairRange,
                           "b1' = " + std::to_string(b_prime) + " exceeds b1 = " +
                               std::to_string(b));
  return Feasibility::yes();
}

inline Feasibility check_nonnegative(std::initializer_list<std::int64_t> values) {
  for (std::int64_t v : values)
    if (v < 0) return Feasibility::no(Violation::NegativeInput, "target values must be >= 0");
  return Feasibility::yes();
}

}  // namespace detail

inline Feasibility feasible(const SynthesisTarget& t) {
  if (Feasibility f = detail::check_nonnegative({t.n, t.b_prime, t.b}); !f) return f;
  if (t.n >= 3) return detail::betti_pair_ok(t.b_prime, t.b);
  if (t.n == 2) {
    const std::int64_t expected = (t.b + 1) / 2;
    if (t.b_prime != expected)
      return Feasibility::no(Violation::SurfaceBettiPair,
                             "n=2 forces b1' = floor((b1+1)/2) = " + std::to_string(expected) +
                                 " (got b1' = " + std::to_string(t.b_prime) + ")");
    if (t.require_orientable && t.b % 2 != 0)
      return Feasibility::no(Violation::SurfaceOrientableParity,
                             "n=2 orientable requires b1 even (got b1 = " +
                                 std::to_string(t.b) + ")");
    return Feasibility::yes();
  }
  if (t.n == 1) {
    if (t.b_prime == 1 && t.b == 1) return Feasibility::yes();
    return Feasibility::no(Violation::CircleBetti, "n=1 forces b1' = b1 = 1");
  }
  if (t.b_prime == 0 && t.b == 0) return Feasibility::yes();
  return Feasibility::no(Violation::PointBetti, "n=0 forces b1' = b1 = 0");
}

// Partition of b into b_prime parts: [b - b_prime + 1, 1, ..., 1].
inline std::vector<std::int64_t> choose_partition(std::int64_t b_prime, std::int64_t b) {
  if (b_prime < 1 || b_prime > b)
    throw std::invalid_argument("choose_partition needs 1 <= b1' <= b1");
  std::vector<std::int64_t> parts(static_cast<std::size_t>(b_prime), 1);
  parts.front() = b - b_prime + 1;
  return parts;
}

// A connected closed orientable n-manifold with b1' = 1 and b1 = k:
//   k = 1:           S1 x S(n-1)
//   k >= 2, n = 3:   Hk
//   k >= 2, n = 4:   H(k-1) x S1
//   k >= 2, n >= 5:  Hk x S(n-3)
inline ManifoldExpr h_block(std::int64_t n, std::int64_t k) {
  if (n < 3 || k < 1) throw std::invalid_argument("h_block needs n >= 3 and k >= 1");
  if (k == 1) return product({sphere(1), sphere(n - 1)});
  if (n == 3) return harvey(k);
  if (n == 4) return product({harvey(k - 1), sphere(1)});
  return product({harvey(k), sphere(n - 3)});
}

inline ManifoldExpr construct(const SynthesisTarget& t) {
  Feasibility f = feasible(t);
  if (!f) throw InfeasibleError(std::move(f));
  if (t.n == 0) return point();
  if (t.n == 1) return sphere(1);
  if (t.n == 2) {
    if (t.b == 0) return sphere(2);
    return t.b % 2 == 0 ? orientable_surface(t.b / 2) : nonorientable_surface(t.b + 1);
  }
  if (t.b == 0) return sphere(t.n);
  std::vector<ManifoldExpr> blocks;
  for (std::int64_t k : choose_partition(t.b_prime, t.b)) blocks.push_back(h_block(t.n, k));
  if (blocks.size() == 1) return std::move(blocks.front());
  return conn_sum(std::move(blocks));
}

}  // namespace corank
