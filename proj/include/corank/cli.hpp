// cli.hpp - command-line front end.
//
// Subcommands: parse, invariants, oracle-check, synthesize, foliate,
// compare, sweep. A global --json flag switches stdout to a single JSON
// object. Exit codes: 0 success, 1 parse/validation/usage error,
// 2 infeasible target, 3 oracle mismatch.

#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "corank/expr.hpp"
#include "corank/foliation.hpp"
#include "corank/invariants.hpp"
#include "corank/json_io.hpp"
#include "corank/presentation.hpp"
#include "corank/random_expr.hpp"
#include "corank/synth.hpp"

namespace corank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitMismatch = 3;

// ============================================================================
// Sweep harness
// ============================================================================

struct SweepBounds {
  std::int64_t samples = 200;
  std::int64_t b_max = 8;
  std::int64_t n_max = 6;
  std::uint64_t seed = 20250825;
  bool inject_bug = false;  // deliberately breaks the oracle property, to
                            // prove the harness can fail
};

struct PropertyResult {
  std::string name;
  std::int64_t cases = 0;
  std::int64_t failures = 0;
};

namespace detail {

inline std::set<DiagnosticKind> diagnostic_kinds(const ManifoldExpr& e) {
  std::set<DiagnosticKind> kinds;
  for (const Diagnostic& d : validate(e)) kinds.insert(d.kind);
  return kinds;
}

}  // namespace detail

inline std::vector<PropertyResult> run_sweep(const SweepBounds& bounds) {
  std::mt19937_64 rng(bounds.seed);
  ExprGenOptions gen;
  gen.max_depth = 3;
  gen.max_param = 5;
  gen.max_dim = std::max<std::int64_t>(2, bounds.n_max);
  ExprGenOptions gen_free = gen;
  gen_free.allow_harvey = false;

  std::vector<PropertyResult> out;

  {
    PropertyResult r{"parse-render round-trip"};
    for (std::int64_t i = 0; i < bounds.samples; ++i) {
      const ManifoldExpr e =
          i % 2 == 0 ? random_valid_expr(rng, gen) : random_mixed_expr(rng, gen);
      const ManifoldExpr n = normalize(e);
      ++r.cases;
      if (parse(render(e)) != e || parse(render(n)) != n) ++r.failures;
    }
    out.push_back(std::move(r));
  }
  {
    PropertyResult r{"normalize idempotent, validation stable"};
    for (std::int64_t i = 0; i < bounds.samples; ++i) {
      const ManifoldExpr e = random_mixed_expr(rng, gen);
      const ManifoldExpr n = normalize(e);
      ++r.cases;
      if (normalize(n) != n ||
          detail::diagnostic_kinds(e) != detail::diagnostic_kinds(n))
        ++r.failures;
    }
    out.push_back(std::move(r));
  }
  {
    PropertyResult r{"invariant record laws"};
    for (std::int64_t i = 0; i < bounds.samples; ++i) {
      const ManifoldExpr e = random_valid_expr(rng, gen);
      const InvariantRecord rec = invariants(e);
      ++r.cases;
      const bool ok = 0 <= rec.b1_prime && rec.b1_prime <= rec.b1 &&
                      (rec.b1_prime == 0) == (rec.b1 == 0) &&
                      (rec.b1 != 1 || rec.b1_prime == 1) &&
                      (rec.dim != 2 || rec.b1_prime == (rec.b1 + 1) / 2) &&
                      invariants(normalize(e)) == rec;
      if (!ok) ++r.failures;
    }
    out.push_back(std::move(r));
  }
  {
    PropertyResult r{"calculus b1 matches presentation b1"};
    for (std::int64_t i = 0; i < bounds.samples; ++i) {
      const ManifoldExpr e = random_valid_expr(rng, gen_free);
      const std::int64_t want = invariants(e).b1 + (bounds.inject_bug ? 1 : 0);
      ++r.cases;
      if (betti_from_presentation(presentation_of(e)) != want) ++r.failures;
    }
    out.push_back(std::move(r));
  }
  {
    PropertyResult r{"synthesis round-trip"};
    std::vector<std::int64_t> dims{0, 1, 2};
    for (std::int64_t n = 3; n <= bounds.n_max; ++n) dims.push_back(n);
    for (std::int64_t n : dims)
      for (std::int64_t b = 1; b <= bounds.b_max; ++b)
        for (std::int64_t bp = 0; bp <= b; ++bp) {
          const SynthesisTarget t{n, bp, b, false};
          ++r.cases;
          bool ok = false;
          if (feasible(t)) {
            const InvariantRecord rec = invariants(construct(t));
            ok = rec.dim == n && rec.b1 == b && rec.b1_prime == bp &&
                 rec.orientable == (n != 2 || b % 2 == 0);
          } else {
            try {
              construct(t);
            } catch (const InfeasibleError&) {
              ok = true;
            }
          }
          if (!ok) ++r.failures;
        }
    out.push_back(std::move(r));
  }
  {
    PropertyResult r{"foliation plan totals"};
    const std::int64_t mc_max = std::min<std::int64_t>(5, bounds.b_max);
    for (std::int64_t n = 2; n <= bounds.n_max; ++n)
      for (std::int64_t b = 1; b <= bounds.b_max; ++b)
        for (std::int64_t bp = 0; bp <= b; ++bp)
          for (std::int64_t m = 0; m <= mc_max; ++m)
            for (std::int64_t c = 0; c <= mc_max; ++c) {
              const FoliationTarget t{n, m, c, bp, b};
              const Feasibility f = feasible_foliation(t);
              ++r.cases;
              bool ok = false;
              if (f) {
                const FoliationPlan p = plan(t);
                const InvariantRecord rec = invariants(p.ambient);
                ok = p.m == m && p.c == c && rec.dim == n && rec.b1 == b &&
                     rec.b1_prime == bp;
              } else {
                ok = f.violation != Violation::None;
              }
              if (!ok) ++r.failures;
            }
    out.push_back(std::move(r));
  }
  return out;
}

// ============================================================================
// Subcommand handlers
// ============================================================================

namespace detail {

inline std::string record_line(const InvariantRecord& r) {
  return "dim=" + std::to_string(r.dim) +
         (r.orientable ? " orientable" : " non-orientable") + " b1=" +
         std::to_string(r.b1) + " b1'=" + std::to_string(r.b1_prime);
}

inline int cmd_parse(const std::string& text, bool json, std::ostream& out) {
  const ManifoldExpr e = parse(text);
  const std::vector<Diagnostic> diags = validate(e);
  if (json) {
    nlohmann::json j{{"expr", canonical_render(e)},
                     {"dim", dimension(e)},
                     {"valid", diags.empty()},
                     {"diagnostics", diagnostics_json(diags)}};
    out << j.dump(2) << '\n';
  } else {
    out << canonical_render(e) << '\n';
    out << "dim=" << dimension(e) << '\n';
    for (const Diagnostic& d : diags)
      out << "invalid: " << d.message << " in '" << render(d.subject) << "'\n";
  }
  return diags.empty() ? kExitOk : kExitUsage;
}

inline int cmd_invariants(const std::string& text, bool json, std::ostream& out) {
  const ManifoldExpr e = parse(text);
  if (json) {
    out << invariants_json(e).dump(2) << '\n';
  } else {
    out << canonical_render(e) << '\n' << record_line(invariants(e)) << '\n';
  }
  return kExitOk;
}

inline int cmd_oracle_check(const std::string& text, bool json, std::ostream& out) {
  const ManifoldExpr e = parse(text);
  const std::int64_t calculus = invariants(e).b1;
  const GroupPresentation p = presentation_of(e);
  const SmithForm snf = smith_normal_form(abelianization_matrix(p));
  const std::int64_t oracle = p.n_generators - snf.rank();
  const std::vector<std::int64_t> torsion = torsion_coefficients(snf);
  const bool match = calculus == oracle;
  if (json) {
    nlohmann::json j{{"expr", canonical_render(e)},
                     {"b1_calculus", calculus},
                     {"b1_oracle", oracle},
                     {"torsion", torsion},
                     {"match", match}};
    out << j.dump(2) << '\n';
  } else {
    out << "b1 (calculus)     = " << calculus << '\n';
    out << "b1 (presentation) = " << oracle << '\n';
    out << "torsion:";
    if (torsion.empty()) out << " none";
    for (std::int64_t d : torsion) out << ' ' << d;
    out << '\n' << (match ? "match" : "MISMATCH") << '\n';
  }
  return match ? kExitOk : kExitMismatch;
}

inline int cmd_synthesize(const SynthesisTarget& t, bool json, std::ostream& out) {
  const ManifoldExpr e = construct(t);  // throws InfeasibleError when impossible
  if (json) {
    out << invariants_json(e).dump(2) << '\n';
  } else {
    out << render(e) << '\n' << record_json(invariants(e), render(e)).dump() << '\n';
  }
  return kExitOk;
}

inline int cmd_foliate(const FoliationTarget& t, bool json, std::ostream& out) {
  const FoliationPlan p = plan(t);
  if (json) {
    out << plan_json(p).dump(2) << '\n';
  } else {
    out << "ambient: " << render(p.ambient) << '\n';
    for (std::size_t i = 0; i < p.summands.size(); ++i) {
      const FoliationSummand& s = p.summands[i];
      out << "  " << i + 1 << ". " << render(s.expr) << "  [" << kind_name(s.kind)
          << "]  m_i=" << s.m_i << " c_i=" << s.c_i << '\n';
    }
    out << "totals: m=" << p.m << " c=" << p.c << '\n';
  }
  return kExitOk;
}

inline int cmd_compare(std::int64_t b_prime, std::int64_t b, std::optional<std::int64_t> m,
                       std::optional<std::int64_t> c, bool json, std::ostream& out) {
  const BoundComparison r = compare_bounds(b_prime, b, m, c);
  if (json) {
    nlohmann::json j{{"b_prime", b_prime},
                     {"b", b},
                     {"verdict", std::string(verdict_name(r.verdict))},
                     {"explanation", r.explanation}};
    if (m) j["m"] = *m;
    if (c) j["c"] = *c;
    out << j.dump(2) << '\n';
  } else {
    out << "verdict: " << verdict_name(r.verdict) << '\n' << r.explanation << '\n';
  }
  return kExitOk;
}

inline int cmd_sweep(const SweepBounds& bounds, bool json, std::ostream& out,
                     std::ostream& err) {
  const std::vector<PropertyResult> results = run_sweep(bounds);
  std::int64_t failures = 0, cases = 0;
  for (const PropertyResult& r : results) {
    failures += r.failures;
    cases += r.cases;
  }
  const bool vacuous = cases == 0;
  if (json) {
    nlohmann::json props = nlohmann::json::array();
    for (const PropertyResult& r : results)
      props.push_back({{"name", r.name}, {"cases", r.cases}, {"failures", r.failures}});
    out << nlohmann::json{{"properties", std::move(props)},
                          {"failures", failures},
                          {"vacuous", vacuous}}
               .dump(2)
        << '\n';
  } else {
    for (const PropertyResult& r : results)
      out << (r.failures == 0 ? "pass" : "FAIL") << "  " << std::left << std::setw(42)
          << r.name << " cases=" << r.cases << " failures=" << r.failures << '\n';
    out << "sweep: " << failures << " failure(s) over " << cases << " case(s)\n";
  }
  if (vacuous) err << "warning: empty grid, nothing was checked (vacuous pass)\n";
  return failures == 0 ? kExitOk : kExitUsage;
}

}  // namespace detail

// ============================================================================
// Argument parsing and dispatch
// ============================================================================

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"first Betti number / co-rank calculator for closed-manifold expressions"};
  app.name("corank");
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit a single JSON object on stdout");

  std::string expr_text;
  auto* parse_cmd = app.add_subcommand("parse", "parse an expression and print its canonical form");
  parse_cmd->fallthrough();
  parse_cmd->add_option("expr", expr_text, "expression, e.g. \"H4 # (S1 x S2)\"")->required();

  auto* inv_cmd = app.add_subcommand("invariants", "dimension, orientability, b1 and b1'");
  inv_cmd->fallthrough();
  inv_cmd->add_option("expr", expr_text, "expression")->required();

  auto* oracle_cmd = app.add_subcommand(
      "oracle-check", "compare calculus b1 against the group-presentation b1");
  oracle_cmd->fallthrough();
  oracle_cmd->add_option("expr", expr_text, "H-free expression")->required();

  SynthesisTarget synth_target;
  auto* synth_cmd =
      app.add_subcommand("synthesize", "construct an expression with given (n, b1', b1)");
  synth_cmd->fallthrough();
  synth_cmd->add_option("-n", synth_target.n, "dimension")->required();
  synth_cmd->add_option("--b-prime", synth_target.b_prime, "target co-rank b1'")->required();
  synth_cmd->add_option("--b", synth_target.b, "target first Betti number b1")->required();
  synth_cmd->add_flag("--orientable", synth_target.require_orientable,
                      "demand an orientable witness");

  FoliationTarget fol_target;
  auto* fol_cmd = app.add_subcommand(
      "foliate", "plan a foliation with m minimal components and c compact leaves");
  fol_cmd->fallthrough();
  fol_cmd->add_option("-n", fol_target.n, "dimension (>= 2)")->required();
  fol_cmd->add_option("-m", fol_target.m, "minimal components");
  fol_cmd->add_option("-c", fol_target.c, "homologically independent compact leaves");
  fol_cmd->add_option("--b-prime", fol_target.b_prime, "ambient co-rank b1'")->required();
  fol_cmd->add_option("--b", fol_target.b, "ambient first Betti number b1")->required();

  std::int64_t cmp_b_prime = 0, cmp_b = 0;
  std::optional<std::int64_t> cmp_m, cmp_c;
  auto* cmp_cmd =
      app.add_subcommand("compare", "which of m + c <= b1' and 2m + c <= b1 is stronger");
  cmp_cmd->fallthrough();
  cmp_cmd->add_option("--b-prime", cmp_b_prime, "co-rank b1'")->required();
  cmp_cmd->add_option("--b", cmp_b, "first Betti number b1")->required();
  cmp_cmd->add_option("-m", cmp_m, "fixed number of minimal components");
  cmp_cmd->add_option("-c", cmp_c, "fixed number of compact leaves");

  SweepBounds bounds;
  auto* sweep_cmd = app.add_subcommand("sweep", "run the randomized/grid property suite");
  sweep_cmd->fallthrough();
  sweep_cmd->add_option("--samples", bounds.samples, "random cases per property");
  sweep_cmd->add_option("--b-max", bounds.b_max, "largest b1 in grid properties");
  sweep_cmd->add_option("--n-max", bounds.n_max, "largest dimension");
  sweep_cmd->add_option("--seed", bounds.seed, "random seed");
  sweep_cmd->add_flag("--inject-bug", bounds.inject_bug)->group("");  // harness self-test

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
    if (app.got_subcommand(parse_cmd)) return detail::cmd_parse(expr_text, json, out);
    if (app.got_subcommand(inv_cmd)) return detail::cmd_invariants(expr_text, json, out);
    if (app.got_subcommand(oracle_cmd)) return detail::cmd_oracle_check(expr_text, json, out);
    if (app.got_subcommand(synth_cmd)) return detail::cmd_synthesize(synth_target, json, out);
    if (app.got_subcommand(fol_cmd)) return detail::cmd_foliate(fol_target, json, out);
    if (app.got_subcommand(cmp_cmd))
      return detail::cmd_compare(cmp_b_prime, cmp_b, cmp_m, cmp_c, json, out);
    if (app.got_subcommand(sweep_cmd)) return detail::cmd_sweep(bounds, json, out, err);
    return kExitUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const ParseError& e) {
    if (json)
      out << nlohmann::json{{"error", "parse-error"},
                            {"message", e.what()},
                            {"start", e.span().start},
                            {"end", e.span().end}}
                 .dump(2)
          << '\n';
    err << "parse error at offset " << e.span().start << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    if (json)
      out << nlohmann::json{{"error", "validation-error"},
                            {"diagnostics", diagnostics_json(e.diagnostics())}}
                 .dump(2)
          << '\n';
    for (const Diagnostic& d : e.diagnostics())
      err << "invalid: " << d.message << " in '" << render(d.subject) << "'\n";
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    if (json)
      out << nlohmann::json{{"feasible", false},
                            {"violation", std::string(violation_name(e.info().violation))},
                            {"reason", e.info().reason}}
                 .dump(2)
          << '\n';
    else
      out << "infeasible: " << e.info().reason << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    // HarveyOpaqueError, SurfaceFormError, OverflowError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace corank::cli
