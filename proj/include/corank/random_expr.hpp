// random_expr.hpp - seeded random expressions for property tests and the
// sweep harness.

#pragma once

#include <random>

#include "corank/expr.hpp"
#include "corank/invariants.hpp"

namespace corank {

struct ExprGenOptions {
  int max_depth = 3;
  std::int64_t max_param = 5;
  std::int64_t max_dim = 6;
  int max_arity = 3;
  bool allow_harvey = true;
};

namespace detail {

inline std::int64_t rand_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline ManifoldExpr random_base_of_dim(std::mt19937_64& rng, std::int64_t dim,
                                       const ExprGenOptions& opt) {
  switch (dim) {
    case 0:
      return point();
    case 1:
      return sphere(1);
    case 2:
      switch (rand_int(rng, 0, 2)) {
        case 0: return sphere(2);
        case 1: return orientable_surface(rand_int(rng, 0, opt.max_param));
        default: return nonorientable_surface(rand_int(rng, 1, std::max<std::int64_t>(1, opt.max_param)));
      }
    case 3:
      if (opt.allow_harvey && rand_int(rng, 0, 1) == 0)
        return harvey(rand_int(rng, 1, std::max<std::int64_t>(1, opt.max_param)));
      return sphere(3);
    default:
      return sphere(dim);
  }
}

inline ManifoldExpr random_expr_of_dim(std::mt19937_64& rng, std::int64_t dim, int depth,
                                       const ExprGenOptions& opt) {
  if (depth <= 0 || dim < 2) return random_base_of_dim(rng, dim, opt);
  switch (rand_int(rng, 0, 2)) {
    case 0:
      return random_base_of_dim(rng, dim, opt);
    case 1: {  // connected sum of equal-dimension children
      std::vector<ManifoldExpr> parts;
      const std::int64_t arity = rand_int(rng, 2, opt.max_arity);
      for (std::int64_t i = 0; i < arity; ++i)
        parts.push_back(random_expr_of_dim(rng, dim, depth - 1, opt));
      return conn_sum(std::move(parts));
    }
    default: {  // product over a random composition of the dimension
      std::vector<ManifoldExpr> factors;
      std::int64_t remaining = dim;
      const std::int64_t arity = rand_int(rng, 2, std::min<std::int64_t>(opt.max_arity, dim));
      for (std::int64_t i = 0; i < arity - 1; ++i) {
        const std::int64_t take = rand_int(rng, 1, remaining - (arity - 1 - i));
        factors.push_back(random_expr_of_dim(rng, take, depth - 1, opt));
        remaining -= take;
      }
      factors.push_back(random_expr_of_dim(rng, remaining, depth - 1, opt));
      if (rand_int(rng, 0, 9) == 0) factors.push_back(point());  // harmless spice
      std::shuffle(factors.begin(), factors.end(), rng);
      return product(std::move(factors));
    }
  }
}

}  // namespace detail

// A random expression that passes validate().
inline ManifoldExpr random_valid_expr(std::mt19937_64& rng, const ExprGenOptions& opt) {
  // favor the dimensions where all the structure lives
  static constexpr std::int64_t weighted[] = {0, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4};
  std::int64_t dim = weighted[detail::rand_int(rng, 0, std::size(weighted) - 1)];
  if (dim > opt.max_dim) dim = opt.max_dim;
  if (detail::rand_int(rng, 0, 4) == 0) dim = detail::rand_int(rng, 0, opt.max_dim);
  return detail::random_expr_of_dim(rng, dim, opt.max_depth, opt);
}

// A random expression with b1' != 0 (resamples until one turns up).
inline ManifoldExpr random_essential_expr(std::mt19937_64& rng, const ExprGenOptions& opt) {
  for (;;) {
    ManifoldExpr e = random_valid_expr(rng, opt);
    if (invariants(e).b1_prime != 0) return e;
  }
}

// A structurally well-formed tree that may fail validate(): connected sums
// draw children of independently random dimensions.
inline ManifoldExpr random_mixed_expr(std::mt19937_64& rng, const ExprGenOptions& opt,
                                      int depth = -1) {
  using detail::rand_int;
  if (depth < 0) depth = opt.max_depth;
  if (depth <= 0)
    return detail::random_base_of_dim(rng, rand_int(rng, 0, opt.max_dim), opt);
  switch (rand_int(rng, 0, 2)) {
    case 0:
      return detail::random_base_of_dim(rng, rand_int(rng, 0, opt.max_dim), opt);
    case 1: {
      std::vector<ManifoldExpr> parts;
      const std::int64_t arity = rand_int(rng, 2, opt.max_arity);
      for (std::int64_t i = 0; i < arity; ++i)
        parts.push_back(random_mixed_expr(rng, opt, depth - 1));
      return conn_sum(std::move(parts));
    }
    default: {
      std::vector<ManifoldExpr> factors;
      const std::int64_t arity = rand_int(rng, 2, opt.max_arity);
      for (std::int64_t i = 0; i < arity; ++i)
        factors.push_back(random_mixed_expr(rng, opt, depth - 1));
      return product(std::move(factors));
    }
  }
}

}  // namespace corank
