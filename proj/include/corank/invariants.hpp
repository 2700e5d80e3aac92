// invariants.hpp - dimension, orientability, first Betti number b1 and
// co-rank b1' (maximal rank of a free quotient of pi_1) for expressions.
//
// Evaluation rules:
//   direct product:        dim adds, b1 adds, b1' is the max over factors
//   connected sum, n >= 3: b1 and b1' both add
//   connected sum, n = 2:  reduce to the canonical surface, then look up
//
// Base values:
//   pt    (0, orientable, 0, 0)
//   S1    (1, orientable, 1, 1)
//   Sk    (k, orientable, 0, 0)            k >= 2
//   Mg    (2, orientable, 2g, g)
//   Nh    (2, non-orientable, h-1, floor(h/2))
//   Hb    (3, orientable, b, 1)

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "corank/expr.hpp"

namespace corank {

struct InvariantRecord {
  std::int64_t dim = 0;
  bool orientable = true;
  std::int64_t b1 = 0;
  std::int64_t b1_prime = 0;
  friend bool operator==(const InvariantRecord&, const InvariantRecord&) = default;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics)
      : std::runtime_error(diagnostics.empty() ? "invalid expression"
                                               : diagnostics.front().message),
        diagnostics_(std::move(diagnostics)) {}
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

class SurfaceFormError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline InvariantRecord base_invariants(const BaseManifold& m) {
  switch (m.kind) {
    case BaseKind::Point:
      return {0, true, 0, 0};
    case BaseKind::Sphere:
      if (m.param == 1) return {1, true, 1, 1};
      return {m.param, true, 0, 0};
    case BaseKind::OrientableSurface:
      return {2, true, detail::checked_mul(2, m.param), m.param};
    case BaseKind::NonorientableSurface:
      return {2, false, m.param - 1, m.param / 2};
    case BaseKind::Harvey:
      return {3, true, m.param, 1};
  }
  return {};
}

// Canonical closed surface: orientable of genus g, or non-orientable with
// h crosscaps.
struct SurfaceForm {
  bool orientable = true;
  std::int64_t param = 0;  // genus if orientable, crosscaps otherwise
  friend bool operator==(const SurfaceForm&, const SurfaceForm&) = default;
};

inline BaseManifold surface_base(const SurfaceForm& s) {
  if (s.orientable) return {BaseKind::OrientableSurface, s.param};
  return {BaseKind::NonorientableSurface, s.param};
}

namespace detail {

// Genus arithmetic for connected sums. A torus summand absorbed into a
// non-orientable surface contributes two crosscaps per handle.
inline SurfaceForm surface_sum(const SurfaceForm& a, const SurfaceForm& b) {
  if (a.orientable && b.orientable) return {true, checked_add(a.param, b.param)};
  if (!a.orientable && !b.orientable) return {false, checked_add(a.param, b.param)};
  const SurfaceForm& orient = a.orientable ? a : b;
  const SurfaceForm& cross = a.orientable ? b : a;
  return {false, checked_add(checked_mul(2, orient.param), cross.param)};
}

// Expects a normalized expression of dimension 2.
inline SurfaceForm surface_of(const ManifoldExpr& e) {
  switch (e.kind) {
    case ExprKind::Base:
      switch (e.base.kind) {
        case BaseKind::OrientableSurface: return {true, e.base.param};
        case BaseKind::NonorientableSurface: return {false, e.base.param};
        case BaseKind::Sphere:
          if (e.base.param == 2) return {true, 0};
          break;
        default: break;
      }
      throw SurfaceFormError("not a surface: " + render(e));
    case ExprKind::Product:
      // the only 2-dimensional product of positive-dimensional manifolds
      // is the torus S1 x S1
      if (e.children.size() == 2 && e.children[0] == sphere(1) && e.children[1] == sphere(1))
        return {true, 1};
      throw SurfaceFormError("not a surface: " + render(e));
    case ExprKind::ConnSum: {
      SurfaceForm acc = surface_of(e.children.front());
      for (std::size_t i = 1; i < e.children.size(); ++i)
        acc = surface_sum(acc, surface_of(e.children[i]));
      return acc;
    }
  }
  throw SurfaceFormError("not a surface: " + render(e));
}

}  // namespace detail

// Classifies a 2-dimensional expression up to homeomorphism.
inline SurfaceForm surface_canonical(const ManifoldExpr& e) {
  return detail::surface_of(normalize(e));
}

namespace detail {

inline InvariantRecord invariants_rec(const ManifoldExpr& e) {
  switch (e.kind) {
    case ExprKind::Base:
      return base_invariants(e.base);
    case ExprKind::Product: {
      InvariantRecord acc{0, true, 0, 0};
      for (const ManifoldExpr& c : e.children) {
        const InvariantRecord r = invariants_rec(c);
        acc.dim = checked_add(acc.dim, r.dim);
        acc.orientable = acc.orientable && r.orientable;
        acc.b1 = checked_add(acc.b1, r.b1);
        acc.b1_prime = std::max(acc.b1_prime, r.b1_prime);
      }
      return acc;
    }
    case ExprKind::ConnSum: {
      if (dimension(e.children.front()) == 2)
        return base_invariants(surface_base(surface_canonical(e)));
      InvariantRecord acc{dimension(e.children.front()), true, 0, 0};
      for (const ManifoldExpr& c : e.children) {
        const InvariantRecord r = invariants_rec(c);
        acc.orientable = acc.orientable && r.orientable;
        acc.b1 = checked_add(acc.b1, r.b1);
        acc.b1_prime = checked_add(acc.b1_prime, r.b1_prime);
      }
      return acc;
    }
  }
  return {};
}

}  // namespace detail

inline InvariantRecord invariants(const ManifoldExpr& e) {
  std::vector<Diagnostic> diags = validate(e);
  if (!diags.empty()) throw ValidationError(std::move(diags));
  return detail::invariants_rec(e);
}

}  // namespace corank
