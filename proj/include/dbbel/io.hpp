#pragma once

#include "json.hpp"

#include "dbbel/belief.hpp"
#include "dbbel/forest.hpp"
#include "dbbel/proof.hpp"
#include "dbbel/solver.hpp"

namespace dbbel {

/// JSON wire formats shared by the CLI and the tests. Sentences travel
/// as grammar strings; rationals as "n/d" (or bare integer) strings.

nlohmann::json forest_to_json(const Forest& forest);

/// Validates and rebuilds a forest: node ids must form a dense 0..n-1
/// range, every non-root node needs a parent in the same tree, children
/// come in beta / !beta pairs. Leaf information is always recomputed,
/// never read from the document. Throws std::invalid_argument on any
/// violation.
Forest forest_from_json(const nlohmann::json& doc, const ParseOptions& opts = {});

nlohmann::json mass_to_json(const MassFunction& mass);
MassFunction mass_from_json(const Forest& forest, const nlohmann::json& doc);

/// {"depth", "mode", "query"?, "supp"?, and exactly one of
/// "raw_constraints" / "constraints"}.
Problem problem_from_json(const nlohmann::json& doc, const ParseOptions& opts = {});

nlohmann::json trace_to_json(const DerivationTrace& trace);

}  // namespace dbbel
