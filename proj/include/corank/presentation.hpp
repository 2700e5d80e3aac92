// presentation.hpp - fundamental group presentations and an independent
// route to b1 through integer linear algebra.
//
// presentation_of builds a finite presentation of pi_1 for any valid
// H-free expression. b1 is then n_generators - rank of the exponent-sum
// (abelianization) matrix, with the rank read off the Smith normal form.
// rational_rank recomputes the rank by fraction-free elimination so the
// two linear-algebra routes can cross-check each other.

#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "corank/expr.hpp"
#include "corank/invariants.hpp"

namespace corank {

class HarveyOpaqueError : public std::runtime_error {
 public:
  HarveyOpaqueError()
      : std::runtime_error(
            "H<b> blocks are opaque: no presentation is available for them") {}
};

// A relator word: signed 1-based generator indices, negative = inverse.
using Word = std::vector<std::int64_t>;

struct GroupPresentation {
  std::int64_t n_generators = 0;
  std::vector<Word> relators;
  std::vector<std::string> generator_names;  // for display only
};

namespace detail {

// Disjoint union of presentations with factor-indexed generator names
// ("g2.a1" = generator a1 of the second operand). When commuting is set,
// adds a commutator relator for every cross-operand generator pair, which
// presents the direct product; otherwise the free product.
inline GroupPresentation combine(const std::vector<GroupPresentation>& parts, bool commuting) {
  GroupPresentation out;
  std::vector<std::int64_t> offset(parts.size(), 0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    offset[i] = out.n_generators;
    out.n_generators += parts[i].n_generators;
    const std::string prefix = "g" + std::to_string(i + 1) + ".";
    for (const std::string& name : parts[i].generator_names)
      out.generator_names.push_back(prefix + name);
    for (const Word& w : parts[i].relators) {
      Word shifted;
      shifted.reserve(w.size());
      for (std::int64_t s : w)
        shifted.push_back(s > 0 ? s + offset[i] : s - offset[i]);
      out.relators.push_back(std::move(shifted));
    }
  }
  if (commuting) {
    for (std::size_t i = 0; i < parts.size(); ++i)
      for (std::size_t j = i + 1; j < parts.size(); ++j)
        for (std::int64_t x = 1; x <= parts[i].n_generators; ++x)
          for (std::int64_t y = 1; y <= parts[j].n_generators; ++y) {
            const std::int64_t a = offset[i] + x;
            const std::int64_t b = offset[j] + y;
            out.relators.push_back({a, b, -a, -b});
          }
  }
  return out;
}

inline GroupPresentation base_presentation(const BaseManifold& m) {
  GroupPresentation p;
  switch (m.kind) {
    case BaseKind::Point:
      return p;
    case BaseKind::Sphere:
      if (m.param == 1) {
        p.n_generators = 1;
        p.generator_names = {"z"};
      }
      return p;
    case BaseKind::OrientableSurface: {
      // <a1,b1,...,ag,bg | [a1,b1]...[ag,bg]>
      const std::int64_t g = m.param;
      if (g == 0) return p;
      p.n_generators = 2 * g;
      Word rel;
      for (std::int64_t i = 0; i < g; ++i) {
        const std::int64_t a = 2 * i + 1, b = 2 * i + 2;
        rel.insert(rel.end(), {a, b, -a, -b});
        p.generator_names.push_back("a" + std::to_string(i + 1));
        p.generator_names.push_back("b" + std::to_string(i + 1));
      }
      p.relators.push_back(std::move(rel));
      return p;
    }
    case BaseKind::NonorientableSurface: {
      // <a1,...,ah | a1^2 ... ah^2>
      const std::int64_t h = m.param;
      p.n_generators = h;
      Word rel;
      for (std::int64_t i = 1; i <= h; ++i) {
        rel.insert(rel.end(), {i, i});
        p.generator_names.push_back("a" + std::to_string(i));
      }
      p.relators.push_back(std::move(rel));
      return p;
    }
    case BaseKind::Harvey:
      throw HarveyOpaqueError();
  }
  return p;
}

inline GroupPresentation presentation_rec(const ManifoldExpr& e) {
  switch (e.kind) {
    case ExprKind::Base:
      return base_presentation(e.base);
    case ExprKind::ConnSum: {
      // dimension >= 3: pi_1 of a connected sum is the free product;
      // dimension 2: classify the surface first (surface sums are not
      // free products)
      if (dimension(e.children.front()) == 2)
        return base_presentation(surface_base(surface_canonical(e)));
      std::vector<GroupPresentation> parts;
      parts.reserve(e.children.size());
      for (const ManifoldExpr& c : e.children) parts.push_back(presentation_rec(c));
      return combine(parts, false);
    }
    case ExprKind::Product: {
      std::vector<GroupPresentation> parts;
      parts.reserve(e.children.size());
      for (const ManifoldExpr& c : e.children) parts.push_back(presentation_rec(c));
      return combine(parts, true);
    }
  }
  return {};
}

}  // namespace detail

inline GroupPresentation free_product(const GroupPresentation& a, const GroupPresentation& b) {
  return detail::combine({a, b}, false);
}

inline GroupPresentation direct_product(const GroupPresentation& a, const GroupPresentation& b) {
  return detail::combine({a, b}, true);
}

inline GroupPresentation presentation_of(const ManifoldExpr& e) {
  std::vector<Diagnostic> diags = validate(e);
  if (!diags.empty()) throw ValidationError(std::move(diags));
  return detail::presentation_rec(e);
}

// ============================================================================
// Integer matrices, Smith normal form, rank
// ============================================================================

struct IntegerMatrix {
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<std::int64_t> data;  // row-major

  static IntegerMatrix zero(std::int64_t rows, std::int64_t cols) {
    IntegerMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.data.assign(static_cast<std::size_t>(rows * cols), 0);
    return m;
  }
  std::int64_t& at(std::int64_t r, std::int64_t c) {
    return data[static_cast<std::size_t>(r * cols + c)];
  }
  std::int64_t at(std::int64_t r, std::int64_t c) const {
    return data[static_cast<std::size_t>(r * cols + c)];
  }
};

// Rows are relators, columns are generators, entries are exponent sums.
inline IntegerMatrix abelianization_matrix(const GroupPresentation& p) {
  IntegerMatrix m = IntegerMatrix::zero(static_cast<std::int64_t>(p.relators.size()),
                                        p.n_generators);
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (std::int64_t s : p.relators[r]) {
      const std::int64_t col = std::abs(s) - 1;
      std::int64_t& cell = m.at(static_cast<std::int64_t>(r), col);
      cell = detail::checked_add(cell, s > 0 ? 1 : -1);
    }
  return m;
}

struct SmithForm {
  std::vector<std::int64_t> diagonal;  // d1 | d2 | ... | dr, all >= 1
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::int64_t rank() const { return static_cast<std::int64_t>(diagonal.size()); }
};

// Diagonalizes by row/column operations, pivoting on a least-magnitude
// entry; each pivot is made to divide everything that remains, so the
// divisibility chain holds by construction.
inline SmithForm smith_normal_form(IntegerMatrix m) {
  using detail::checked_mul;
  using detail::checked_sub;
  const std::int64_t R = m.rows, C = m.cols;
  auto swap_rows = [&](std::int64_t a, std::int64_t b) {
    if (a == b) return;
    for (std::int64_t j = 0; j < C; ++j) std::swap(m.at(a, j), m.at(b, j));
  };
  auto swap_cols = [&](std::int64_t a, std::int64_t b) {
    if (a == b) return;
    for (std::int64_t i = 0; i < R; ++i) std::swap(m.at(i, a), m.at(i, b));
  };
  SmithForm out;
  out.rows = R;
  out.cols = C;
  for (std::int64_t t = 0; t < R && t < C; ++t) {
    std::int64_t pi = -1, pj = -1;
    for (std::int64_t i = t; i < R; ++i)
      for (std::int64_t j = t; j < C; ++j) {
        const std::int64_t v = m.at(i, j);
        if (v != 0 && (pi < 0 || std::abs(v) < std::abs(m.at(pi, pj)))) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // remaining submatrix is zero
    swap_rows(t, pi);
    swap_cols(t, pj);
    for (bool clean = false; !clean;) {
      clean = true;
      for (std::int64_t i = t + 1; i < R; ++i) {
        if (m.at(i, t) == 0) continue;
        const std::int64_t q = m.at(i, t) / m.at(t, t);
        for (std::int64_t j = t; j < C; ++j)
          m.at(i, j) = checked_sub(m.at(i, j), checked_mul(q, m.at(t, j)));
        if (m.at(i, t) != 0) {  // remainder beats the pivot; promote it
          swap_rows(t, i);
          clean = false;
        }
      }
      if (!clean) continue;
      for (std::int64_t j = t + 1; j < C; ++j) {
        if (m.at(t, j) == 0) continue;
        const std::int64_t q = m.at(t, j) / m.at(t, t);
        for (std::int64_t i = t; i < R; ++i)
          m.at(i, j) = checked_sub(m.at(i, j), checked_mul(q, m.at(i, t)));
        if (m.at(t, j) != 0) {
          swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the rest of the matrix; if not, fold the bad row
      // into row t and keep reducing (the pivot shrinks every round)
      for (std::int64_t i = t + 1; i < R && clean; ++i)
        for (std::int64_t j = t + 1; j < C && clean; ++j)
          if (m.at(i, j) % m.at(t, t) != 0) {
            for (std::int64_t k = t; k < C; ++k)
              m.at(t, k) = detail::checked_add(m.at(t, k), m.at(i, k));
            clean = false;
          }
    }
    if (m.at(t, t) < 0)
      for (std::int64_t j = t; j < C; ++j) m.at(t, j) = -m.at(t, j);
    out.diagonal.push_back(m.at(t, t));
  }
  return out;
}

// Diagonal entries > 1, i.e. the torsion coefficients of the cokernel.
inline std::vector<std::int64_t> torsion_coefficients(const SmithForm& f) {
  std::vector<std::int64_t> out;
  for (std::int64_t d : f.diagonal)
    if (d > 1) out.push_back(d);
  return out;
}

// Rank over the rationals by Bareiss fraction-free elimination. Independent
// of smith_normal_form; all intermediate values are exact minors.
inline std::int64_t rational_rank(const IntegerMatrix& m) {
  const std::int64_t R = m.rows, C = m.cols;
  std::vector<__int128> a(m.data.begin(), m.data.end());
  auto at = [&](std::int64_t r, std::int64_t c) -> __int128& {
    return a[static_cast<std::size_t>(r * C + c)];
  };
  __int128 prev = 1;
  std::int64_t rank = 0;
  for (std::int64_t col = 0; col < C && rank < R; ++col) {
    std::int64_t p = -1;
    for (std::int64_t i = rank; i < R; ++i)
      if (at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != rank)
      for (std::int64_t j = 0; j < C; ++j) std::swap(at(p, j), at(rank, j));
    for (std::int64_t i = rank + 1; i < R; ++i) {
      for (std::int64_t j = col + 1; j < C; ++j) {
        __int128 hi = 0, lo = 0;
        if (__builtin_mul_overflow(at(i, j), at(rank, col), &hi) ||
            __builtin_mul_overflow(at(i, col), at(rank, j), &lo) ||
            __builtin_sub_overflow(hi, lo, &hi))
          throw OverflowError();
        at(i, j) = hi / prev;
      }
      at(i, col) = 0;
    }
    prev = at(rank, col);
    ++rank;
  }
  return rank;
}

inline std::int64_t betti_from_presentation(const GroupPresentation& p) {
  return p.n_generators - smith_normal_form(abelianization_matrix(p)).rank();
}

}  // namespace corank
