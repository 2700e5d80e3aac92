// json_io.hpp - JSON views of records, presentations, plans, diagnostics.
// Key names are part of the CLI contract; change them deliberately.

#pragma once

#include <json.hpp>

#include "corank/expr.hpp"
#include "corank/foliation.hpp"
#include "corank/invariants.hpp"
#include "corank/presentation.hpp"

namespace corank {

inline nlohmann::json record_json(const InvariantRecord& r, const std::string& expr_text) {
  return {{"expr", expr_text},
          {"dim", r.dim},
          {"orientable", r.orientable},
          {"b1", r.b1},
          {"b1_prime", r.b1_prime}};
}

inline nlohmann::json invariants_json(const ManifoldExpr& e) {
  return record_json(invariants(e), canonical_render(e));
}

inline nlohmann::json plan_json(const FoliationPlan& p) {
  nlohmann::json summands = nlohmann::json::array();
  for (const FoliationSummand& s : p.summands)
    summands.push_back({{"expr", render(s.expr)},
                        {"kind", std::string(kind_name(s.kind))},
                        {"m_i", s.m_i},
                        {"c_i", s.c_i}});
  return {{"ambient", render(p.ambient)},
          {"summands", std::move(summands)},
          {"m", p.m},
          {"c", p.c}};
}

inline nlohmann::json diagnostics_json(const std::vector<Diagnostic>& diags) {
  nlohmann::json out = nlohmann::json::array();
  for (const Diagnostic& d : diags)
    out.push_back({{"message", d.message},
                   {"expr", render(d.subject)},
                   {"start", d.subject.span.start},
                   {"end", d.subject.span.end}});
  return out;
}

}  // namespace corank
