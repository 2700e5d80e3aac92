// expr.hpp - Manifold expression DSL: AST, parser, printer, normalization.
//
// Grammar (whitespace-insensitive):
//
//   expr    := term ( "#" term )*          connected sum
//   term    := factor ( "x" factor )*      direct product
//   factor  := base | "(" expr ")"
//   base    := "pt" | "S" INT | "M" INT | "N" INT | "H" INT
//
// "x" binds tighter than "#"; chains of either operator are collected into
// a single n-ary node, while parenthesized groups stay nested as written.
//
// Base manifolds:
//   pt    the point
//   S<k>  the k-sphere, k >= 1
//   M<g>  closed orientable surface of genus g >= 0 (M0 = S2)
//   N<h>  closed non-orientable surface with h >= 1 crosscaps
//   H<b>  closed orientable 3-manifold with first Betti number b >= 1 and
//         co-rank 1 (hyperbolic building block, treated as opaque)
//
// Integer parameters are capped at 1e6 so every derived quantity fits
// comfortably in 64 bits; sums are still overflow-checked.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace corank {

inline constexpr std::int64_t kMaxParameter = 1'000'000;

// Byte range [start, end) into the original input text.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourceSpan span)
      : std::runtime_error(message), span_(span) {}
  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

class OverflowError : public std::runtime_error {
 public:
  OverflowError() : std::runtime_error("integer overflow in invariant arithmetic") {}
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
  return r;
}

}  // namespace detail

// ============================================================================
// AST
// ============================================================================

enum class BaseKind : std::uint8_t {
  Point,
  Sphere,
  OrientableSurface,
  NonorientableSurface,
  Harvey,
};

struct BaseManifold {
  BaseKind kind = BaseKind::Point;
  std::int64_t param = 0;  // sphere dimension, genus, crosscaps, or b1
  friend bool operator==(const BaseManifold&, const BaseManifold&) = default;
};

enum class ExprKind : std::uint8_t { Base, ConnSum, Product };

struct ManifoldExpr {
  ExprKind kind = ExprKind::Base;
  BaseManifold base{};                 // meaningful when kind == Base
  std::vector<ManifoldExpr> children;  // meaningful otherwise, size >= 2
  SourceSpan span{};                   // set by the parser, ignored by ==
};

namespace detail {

inline void require_param(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

inline ManifoldExpr base_expr(BaseKind kind, std::int64_t param) {
  ManifoldExpr e;
  e.kind = ExprKind::Base;
  e.base = BaseManifold{kind, param};
  return e;
}

}  // namespace detail

inline ManifoldExpr point() { return detail::base_expr(BaseKind::Point, 0); }

inline ManifoldExpr sphere(std::int64_t k) {
  detail::require_param(k >= 1 && k <= kMaxParameter, "sphere dimension must be in [1, 1000000]");
  return detail::base_expr(BaseKind::Sphere, k);
}

inline ManifoldExpr orientable_surface(std::int64_t g) {
  detail::require_param(g >= 0 && g <= kMaxParameter, "genus must be in [0, 1000000]");
  return detail::base_expr(BaseKind::OrientableSurface, g);
}

inline ManifoldExpr nonorientable_surface(std::int64_t h) {
  detail::require_param(h >= 1 && h <= kMaxParameter, "crosscap count must be in [1, 1000000]");
  return detail::base_expr(BaseKind::NonorientableSurface, h);
}

inline ManifoldExpr harvey(std::int64_t b) {
  detail::require_param(b >= 1 && b <= kMaxParameter, "H parameter must be in [1, 1000000]");
  return detail::base_expr(BaseKind::Harvey, b);
}

inline ManifoldExpr conn_sum(std::vector<ManifoldExpr> parts) {
  detail::require_param(parts.size() >= 2, "connected sum needs at least 2 summands");
  ManifoldExpr e;
  e.kind = ExprKind::ConnSum;
  e.children = std::move(parts);
  return e;
}

inline ManifoldExpr product(std::vector<ManifoldExpr> factors) {
  detail::require_param(factors.size() >= 2, "direct product needs at least 2 factors");
  ManifoldExpr e;
  e.kind = ExprKind::Product;
  e.children = std::move(factors);
  return e;
}

// ============================================================================
// Structural comparison (spans ignored)
// ============================================================================

// Total order used for canonical child ordering: bases before sums before
// products; bases by kind then parameter; composites lexicographically.
inline int expr_cmp(const ManifoldExpr& a, const ManifoldExpr& b) {
  if (a.kind != b.kind)
    return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  if (a.kind == ExprKind::Base) {
    if (a.base.kind != b.base.kind)
      return static_cast<int>(a.base.kind) < static_cast<int>(b.base.kind) ? -1 : 1;
    if (a.base.param != b.base.param) return a.base.param < b.base.param ? -1 : 1;
    return 0;
  }
  const std::size_t n = std::min(a.children.size(), b.children.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = expr_cmp(a.children[i], b.children[i])) return c;
  if (a.children.size() != b.children.size())
    return a.children.size() < b.children.size() ? -1 : 1;
  return 0;
}

inline bool expr_less(const ManifoldExpr& a, const ManifoldExpr& b) {
  return expr_cmp(a, b) < 0;
}

inline bool operator==(const ManifoldExpr& a, const ManifoldExpr& b) {
  return expr_cmp(a, b) == 0;
}

inline bool operator!=(const ManifoldExpr& a, const ManifoldExpr& b) {
  return expr_cmp(a, b) != 0;
}

// ============================================================================
// Dimension
// ============================================================================

inline std::int64_t dimension(const BaseManifold& m) {
  switch (m.kind) {
    case BaseKind::Point: return 0;
    case BaseKind::Sphere: return m.param;
    case BaseKind::OrientableSurface:
    case BaseKind::NonorientableSurface: return 2;
    case BaseKind::Harvey: return 3;
  }
  return 0;
}

inline std::int64_t dimension(const ManifoldExpr& e) {
  switch (e.kind) {
    case ExprKind::Base:
      return dimension(e.base);
    case ExprKind::ConnSum:
      // children share a dimension when valid; validate() reports otherwise
      return dimension(e.children.front());
    case ExprKind::Product: {
      std::int64_t d = 0;
      for (const ManifoldExpr& c : e.children) d = detail::checked_add(d, dimension(c));
      return d;
    }
  }
  return 0;
}

// ============================================================================
// Validation
// ============================================================================

enum class DiagnosticKind : std::uint8_t {
  DimensionMismatch,     // connected sum of manifolds of different dimensions
  SumBelowDimensionTwo,  // connected sum in dimension 0 or 1
};

struct Diagnostic {
  DiagnosticKind kind = DiagnosticKind::DimensionMismatch;
  std::string message;
  ManifoldExpr subject;  // the offending subexpression
};

namespace detail {

// The two checks are independent of each other and of child order, so
// flattening nested sums preserves the set of diagnostic kinds.
inline void validate_into(const ManifoldExpr& e, std::vector<Diagnostic>& out) {
  for (const ManifoldExpr& c : e.children) validate_into(c, out);
  if (e.kind != ExprKind::ConnSum) return;
  const std::int64_t d0 = dimension(e.children.front());
  std::int64_t d_min = d0;
  bool mismatch = false;
  std::int64_t d_other = d0;
  for (const ManifoldExpr& c : e.children) {
    const std::int64_t d = dimension(c);
    d_min = std::min(d_min, d);
    if (d != d0 && !mismatch) {
      mismatch = true;
      d_other = d;
    }
  }
  if (mismatch)
    out.push_back({DiagnosticKind::DimensionMismatch,
                   "connected sum mixes dimensions " + std::to_string(d0) + " and " +
                       std::to_string(d_other),
                   e});
  if (d_min < 2)
    out.push_back({DiagnosticKind::SumBelowDimensionTwo,
                   "connected sum summand has dimension " + std::to_string(d_min) +
                       "; dimension >= 2 is required",
                   e});
}

}  // namespace detail

inline std::vector<Diagnostic> validate(const ManifoldExpr& e) {
  std::vector<Diagnostic> out;
  detail::validate_into(e, out);
  return out;
}

inline bool is_valid(const ManifoldExpr& e) { return validate(e).empty(); }

// ============================================================================
// Normalization
// ============================================================================

// Canonical form: nested sums/products flattened, point factors dropped,
// M0 rewritten to S2, singleton composites collapsed, children sorted.
inline ManifoldExpr normalize(const ManifoldExpr& e) {
  if (e.kind == ExprKind::Base) {
    if (e.base.kind == BaseKind::OrientableSurface && e.base.param == 0) {
      ManifoldExpr s = sphere(2);
      s.span = e.span;
      return s;
    }
    return e;
  }
  std::vector<ManifoldExpr> kids;
  kids.reserve(e.children.size());
  for (const ManifoldExpr& c : e.children) {
    ManifoldExpr n = normalize(c);
    if (n.kind == e.kind) {
      for (ManifoldExpr& g : n.children) kids.push_back(std::move(g));
    } else {
      kids.push_back(std::move(n));
    }
  }
  if (e.kind == ExprKind::Product) {
    std::erase_if(kids, [](const ManifoldExpr& k) {
      return k.kind == ExprKind::Base && k.base.kind == BaseKind::Point;
    });
    if (kids.empty()) return point();  // a product of points is a point
  }
  if (kids.size() == 1) return std::move(kids.front());
  std::sort(kids.begin(), kids.end(), expr_less);
  ManifoldExpr out;
  out.kind = e.kind;
  out.children = std::move(kids);
  out.span = e.span;
  return out;
}

// ============================================================================
// Parser
// ============================================================================

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ManifoldExpr run() {
    ManifoldExpr e = parse_sum();
    skip_ws();
    if (pos_ < text_.size())
      fail("expected '#', 'x', or end of input", {pos_, pos_ + 1});
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& message, SourceSpan span) const {
    throw ParseError(message, span);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ManifoldExpr parse_sum() {
    std::vector<ManifoldExpr> parts;
    parts.push_back(parse_term());
    while (eat('#')) parts.push_back(parse_term());
    return collect(ExprKind::ConnSum, std::move(parts));
  }

  ManifoldExpr parse_term() {
    std::vector<ManifoldExpr> factors;
    factors.push_back(parse_factor());
    while (eat('x')) factors.push_back(parse_factor());
    return collect(ExprKind::Product, std::move(factors));
  }

  static ManifoldExpr collect(ExprKind kind, std::vector<ManifoldExpr> ops) {
    if (ops.size() == 1) return std::move(ops.front());
    ManifoldExpr e;
    e.kind = kind;
    e.span = {ops.front().span.start, ops.back().span.end};
    e.children = std::move(ops);
    return e;
  }

  ManifoldExpr parse_factor() {
    skip_ws();
    if (pos_ >= text_.size())
      fail("expected 'pt', 'S<k>', 'M<g>', 'N<h>', 'H<b>', or '('", {pos_, pos_});
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ManifoldExpr e = parse_sum();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        fail("expected ')'", {pos_, std::min(pos_ + 1, text_.size())});
      ++pos_;
      e.span = {start, pos_};
      return e;
    }
    if (c == 'p') {
      if (text_.substr(pos_, 2) != "pt")
        fail("expected 'pt', 'S<k>', 'M<g>', 'N<h>', 'H<b>', or '('",
             {start, std::min(start + 2, text_.size())});
      pos_ += 2;
      ManifoldExpr e = point();
      e.span = {start, pos_};
      return e;
    }
    if (c == 'S' || c == 'M' || c == 'N' || c == 'H') {
      ++pos_;
      const std::int64_t v = parse_int(c, start);
      const SourceSpan span{start, pos_};
      ManifoldExpr e;
      switch (c) {
        case 'S':
          if (v < 1) fail("sphere dimension must be >= 1", span);
          e = sphere(v);
          break;
        case 'M':
          e = orientable_surface(v);
          break;
        case 'N':
          if (v < 1) fail("crosscap count must be >= 1", span);
          e = nonorientable_surface(v);
          break;
        default:
          if (v < 1) fail("H parameter must be >= 1", span);
          e = harvey(v);
          break;
      }
      e.span = span;
      return e;
    }
    fail("expected 'pt', 'S<k>', 'M<g>', 'N<h>', 'H<b>', or '('",
         {start, std::min(start + 1, text_.size())});
  }

  std::int64_t parse_int(char prefix, std::size_t base_start) {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(std::string("expected an integer after '") + prefix + "'",
           {pos_, std::min(pos_ + 1, text_.size())});
    std::int64_t v = 0;
    bool over = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (!over) {
        v = v * 10 + (text_[pos_] - '0');
        if (v > kMaxParameter) over = true;
      }
      ++pos_;
    }
    if (over)
      fail("parameter exceeds " + std::to_string(kMaxParameter), {base_start, pos_});
    return v;
  }
};

}  // namespace detail

inline ManifoldExpr parse(std::string_view text) { return detail::Parser(text).run(); }

// ============================================================================
// Printer
// ============================================================================

namespace detail {

inline void render_into(const ManifoldExpr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::Base:
      switch (e.base.kind) {
        case BaseKind::Point: out += "pt"; return;
        case BaseKind::Sphere: out += 'S'; break;
        case BaseKind::OrientableSurface: out += 'M'; break;
        case BaseKind::NonorientableSurface: out += 'N'; break;
        case BaseKind::Harvey: out += 'H'; break;
      }
      out += std::to_string(e.base.param);
      return;
    case ExprKind::ConnSum:
    case ExprKind::Product: {
      const char* sep = e.kind == ExprKind::ConnSum ? " # " : " x ";
      bool first = true;
      for (const ManifoldExpr& c : e.children) {
        if (!first) out += sep;
        first = false;
        if (c.kind == ExprKind::Base) {
          render_into(c, out);
        } else {
          out += '(';
          render_into(c, out);
          out += ')';
        }
      }
      return;
    }
  }
}

}  // namespace detail

// Prints the expression as written; composite operands are parenthesized, so
// parse(render(e)) reproduces e exactly.
inline std::string render(const ManifoldExpr& e) {
  std::string out;
  detail::render_into(e, out);
  return out;
}

inline std::string canonical_render(const ManifoldExpr& e) { return render(normalize(e)); }

}  // namespace corank
