#pragma once

#include <optional>
#include <vector>

#include "dbbel/rational.hpp"

namespace dbbel {

enum class Rel { Le, Eq, Ge };
enum class Sense { Minimize, Maximize, Feasibility };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpRow {
  std::vector<Rat> coeffs;  // width == num_vars
  Rel rel = Rel::Le;
  Rat bound;
};

/// Linear program over free rational variables. The objective is ignored
/// (and may be absent) under Sense::Feasibility.
struct LinearProgram {
  int num_vars = 0;
  std::vector<LpRow> rows;
  std::optional<std::vector<Rat>> objective;
  Sense sense = Sense::Feasibility;
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::optional<std::vector<Rat>> witness;  // present unless Infeasible
  std::optional<Rat> optimum;               // present iff Optimal with objective
};

/// Two-phase simplex over exact rationals with Bland's anti-cycling rule.
/// Free variables are handled by the u - w split. Every Optimal witness
/// is re-checked against the rows by substitution before being returned;
/// Infeasible means the phase-1 optimum was strictly positive. Throws
/// std::invalid_argument on malformed input (row width or objective width
/// mismatch, missing objective for an optimizing sense).
LpOutcome solve(const LinearProgram& lp);

}  // namespace dbbel
