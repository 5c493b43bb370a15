#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "dbbel/belief.hpp"
#include "dbbel/forest.hpp"
#include "dbbel/ratlp.hpp"

namespace dbbel {

/// One summand of a pure-belief constraint: d * B(sentence).
struct RawTerm {
  Rat coeff;
  Sentence sentence;
};

/// Sum of raw terms compared against a rational bound.
struct RawConstraint {
  std::vector<RawTerm> terms;
  Rel rel = Rel::Le;
  Rat bound;
};

/// One summand with a natural coefficient.
struct NatTerm {
  Rat coeff;  // integral and nonnegative
  Sentence sentence;
};

/// Normalized form: sum a_j B(phi_j) + w <= sum b_j Pl(psi_j) + v, with
/// natural coefficients and constants.
struct NormalizedConstraint {
  std::vector<NatTerm> bel_terms;
  Rat w = 0;
  std::vector<NatTerm> pl_terms;
  Rat v = 0;
};

/// Mechanical rewrite of pure-belief constraints into the normalized
/// form: equalities split into two <=, >= flipped, negative-coefficient
/// terms moved across the inequality (where they become Plausibility
/// terms), each row scaled by the LCM of its denominators. Note that the
/// rewrite is NOT value-preserving at finite depth, where B and Pl
/// differ; the solver evaluates raw constraints literally and only
/// applies this rewrite on request.
std::vector<NormalizedConstraint> normalize(const std::vector<RawConstraint>& raw);

enum class ProblemMode { Gensat, Binf };

struct Problem {
  int depth = 0;
  ProblemMode mode = ProblemMode::Gensat;
  std::optional<Sentence> query;  // required for Binf

  /// Exactly one of the two constraint lists is meaningful; use_raw
  /// selects which. Empty lists are allowed (unconstrained problems).
  bool use_raw = true;
  std::vector<RawConstraint> raw_constraints;
  std::vector<NormalizedConstraint> constraints;

  /// Support override. When absent the support is the deduplicated list
  /// of constraint sentences in order of first appearance.
  std::optional<std::vector<Sentence>> supp;

  /// Caps guarding the |S(Supp)|^(2^k - 1) enumeration blow-up.
  int max_depth = 3;
  long long max_forests = 100000;
};

/// Raised when depth or the forest-enumeration budget exceeds the
/// problem's caps; the CLI maps this to its resource-limit exit code.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveResult {
  bool sat = false;
  std::optional<DbmStage> witness;  // gensat SAT
  long long forests_checked = 0;
  // Binf bounds: lower <= B_k(query) and Pl_k(query) <= upper.
  std::optional<Rat> lower, upper;
  std::optional<DbmStage> lower_witness, upper_witness;
};

/// Support roots of a problem (explicit or derived from constraints).
std::vector<Root> problem_supp(const Problem& problem);

/// Exact check of every problem constraint against a concrete stage,
/// evaluated through the belief module.
bool constraints_hold(const DbmStage& stage, const Problem& problem);

/// Depth-0 generalized satisfiability: is there a stage-0 mass over the
/// support satisfying every constraint? One LP feasibility call.
SolveResult gensat0(const Problem& problem);

/// Depth-k generalized satisfiability: enumerate uniform analytic
/// depth-k forests, keep the Pareto-maximal deep-contradiction-free
/// ones, and return the first (in canonical order) carrying a feasible
/// mass. Witnesses are re-verified through the belief module.
SolveResult gensat_k(const Problem& problem);

/// Tightest interval [lower, upper] with lower <= B_k(query) and
/// Pl_k(query) <= upper across all admissible feasible forests; UNSAT
/// when no forest is feasible.
SolveResult b_k_inf(const Problem& problem);

/// Dispatch on mode and depth.
SolveResult solve_problem(const Problem& problem);

}  // namespace dbbel
