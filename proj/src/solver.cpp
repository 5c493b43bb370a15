#include "dbbel/solver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dbbel {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void append_normalized(std::vector<NormalizedConstraint>& out,
                       const std::vector<RawTerm>& terms, const Rat& bound) {
  // terms <= bound, to be scaled integral and split by coefficient sign.
  BigInt scale = denominator(bound);
  for (const RawTerm& t : terms) scale = lcm(scale, denominator(t.coeff));
  NormalizedConstraint row;
  for (const RawTerm& t : terms) {
    Rat c = t.coeff * Rat(scale);
    if (c > 0)
      row.bel_terms.push_back({c, t.sentence});
    else if (c < 0)
      row.pl_terms.push_back({-c, t.sentence});
  }
  Rat z = bound * Rat(scale);
  if (z >= 0)
    row.v = z;
  else
    row.w = -z;
  out.push_back(std::move(row));
}

}  // namespace

std::vector<NormalizedConstraint> normalize(const std::vector<RawConstraint>& raw) {
  std::vector<NormalizedConstraint> out;
  for (const RawConstraint& c : raw) {
    if (c.terms.empty()) throw std::invalid_argument("normalize: constraint with no terms");
    std::vector<RawTerm> flipped;
    for (const RawTerm& t : c.terms) flipped.push_back({-t.coeff, t.sentence});
    switch (c.rel) {
      case Rel::Le:
        append_normalized(out, c.terms, c.bound);
        break;
      case Rel::Ge:
        append_normalized(out, flipped, -c.bound);
        break;
      case Rel::Eq:
        append_normalized(out, c.terms, c.bound);
        append_normalized(out, flipped, -c.bound);
        break;
    }
  }
  return out;
}

std::vector<Root> problem_supp(const Problem& problem) {
  std::vector<Sentence> sentences;
  auto add = [&sentences](const Sentence& s) {
    if (std::find(sentences.begin(), sentences.end(), s) == sentences.end())
      sentences.push_back(s);
  };
  if (problem.supp) {
    for (const Sentence& s : *problem.supp) add(s);
  } else if (problem.use_raw) {
    for (const RawConstraint& c : problem.raw_constraints)
      for (const RawTerm& t : c.terms) add(t.sentence);
  } else {
    for (const NormalizedConstraint& c : problem.constraints) {
      for (const NatTerm& t : c.bel_terms) add(t.sentence);
      for (const NatTerm& t : c.pl_terms) add(t.sentence);
    }
  }
  if (sentences.empty())
    throw std::invalid_argument("problem: empty support (no constraint sentences and no "
                                "explicit supp)");
  std::vector<Root> supp;
  for (const Sentence& s : sentences) supp.push_back(Root::info(s));
  return supp;
}

namespace {

// Indicator tables: for each constraint sentence, which leaf (by column
// index) belongs to its b-set / pl-set.
struct LeafIndex {
  std::vector<Leaf> leaves;
  std::map<int, int> column_of;  // leaf id -> LP column
  std::map<Sentence, std::vector<char>, SentenceLess> b_mem, pl_mem;

  explicit LeafIndex(const Forest& forest) : leaves(forest.leaves()) {
    for (std::size_t i = 0; i < leaves.size(); ++i)
      column_of[leaves[i].id] = static_cast<int>(i);
  }

  const std::vector<char>& b_of(const Forest& forest, const Sentence& s) {
    auto it = b_mem.find(s);
    if (it == b_mem.end()) {
      std::vector<char> mem(leaves.size(), 0);
      for (int id : b_set(forest, s)) mem[column_of.at(id)] = 1;
      it = b_mem.emplace(s, std::move(mem)).first;
    }
    return it->second;
  }

  const std::vector<char>& pl_of(const Forest& forest, const Sentence& s) {
    auto it = pl_mem.find(s);
    if (it == pl_mem.end()) {
      std::vector<char> mem(leaves.size(), 0);
      for (int id : pl_set(forest, s)) mem[column_of.at(id)] = 1;
      it = pl_mem.emplace(s, std::move(mem)).first;
    }
    return it->second;
  }
};

bool leaf_inconsistent(const Leaf& leaf) {
  return !leaf.information.is_star() &&
         derives0({leaf.information.sentence()}, Sentence::bot());
}

// The mass-vector program over a forest's leaves: simplex rows, zero on
// 0-inconsistent leaves, one row per constraint. Raw constraints use
// literal Belief semantics; normalized constraints pair Belief terms on
// the left with Plausibility terms on the right.
LinearProgram mass_program(const Forest& forest, const Problem& problem, LeafIndex& index) {
  int n = static_cast<int>(index.leaves.size());
  LinearProgram lp;
  lp.num_vars = n;

  std::vector<Rat> ones(n, Rat(1));
  lp.rows.push_back({ones, Rel::Eq, Rat(1)});
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> row(n, Rat(0));
    row[i] = 1;
    if (leaf_inconsistent(index.leaves[i]))
      lp.rows.push_back({std::move(row), Rel::Eq, Rat(0)});
    else
      lp.rows.push_back({std::move(row), Rel::Ge, Rat(0)});
  }

  if (problem.use_raw) {
    for (const RawConstraint& c : problem.raw_constraints) {
      if (c.terms.empty()) throw std::invalid_argument("problem: constraint with no terms");
      std::vector<Rat> row(n, Rat(0));
      for (const RawTerm& t : c.terms) {
        const std::vector<char>& mem = index.b_of(forest, t.sentence);
        for (int i = 0; i < n; ++i)
          if (mem[i]) row[i] += t.coeff;
      }
      lp.rows.push_back({std::move(row), c.rel, c.bound});
    }
  } else {
    for (const NormalizedConstraint& c : problem.constraints) {
      std::vector<Rat> row(n, Rat(0));
      for (const NatTerm& t : c.bel_terms) {
        const std::vector<char>& mem = index.b_of(forest, t.sentence);
        for (int i = 0; i < n; ++i)
          if (mem[i]) row[i] += t.coeff;
      }
      for (const NatTerm& t : c.pl_terms) {
        const std::vector<char>& mem = index.pl_of(forest, t.sentence);
        for (int i = 0; i < n; ++i)
          if (mem[i]) row[i] -= t.coeff;
      }
      lp.rows.push_back({std::move(row), Rel::Le, c.v - c.w});
    }
  }
  return lp;
}

DbmStage stage_from_witness(const Forest& forest, const LeafIndex& index,
                            const std::vector<Rat>& witness) {
  std::map<int, Rat> weights;
  for (std::size_t i = 0; i < index.leaves.size(); ++i)
    weights[index.leaves[i].id] = witness[i];
  return DbmStage{forest, MassFunction(forest, std::move(weights)), forest.stage()};
}

// Admissible depth-k candidates: uniform analytic enumeration, Pareto
// maximality over the subsentence agenda, no deep contradictions. Also
// enforces the depth and enumeration-budget caps.
std::vector<Forest> admissible_forests(const std::vector<Root>& supp, const Problem& problem) {
  int k = problem.depth;
  if (k > problem.max_depth)
    throw BudgetError("depth " + std::to_string(k) + " exceeds the configured cap " +
                      std::to_string(problem.max_depth));
  if (k == 0) return {Forest::create(supp)};

  std::vector<Sentence> supp_sentences;
  for (const Root& r : supp)
    if (!r.is_star()) supp_sentences.push_back(r.sentence());
  std::vector<Sentence> pool = subsentences(supp_sentences);
  BigInt budget = pow(BigInt(pool.size()), (1u << k) - 1);
  if (budget > problem.max_forests)
    throw BudgetError("enumeration would require " + budget.str() +
                      " forests, above the configured cap " +
                      std::to_string(problem.max_forests));

  std::vector<Forest> candidates = enumerate_uniform_analytic(supp, k, pool);
  candidates = select_pareto_maximal(candidates, pool);
  std::vector<Forest> out;
  for (Forest& f : candidates)
    if (free_of_deep_contradictions(f)) out.push_back(std::move(f));
  return out;
}

bool rel_holds(const Rat& lhs, Rel rel, const Rat& rhs) {
  switch (rel) {
    case Rel::Le: return lhs <= rhs;
    case Rel::Eq: return lhs == rhs;
    case Rel::Ge: return lhs >= rhs;
  }
  return false;
}

}  // namespace

bool constraints_hold(const DbmStage& stage, const Problem& problem) {
  if (problem.use_raw) {
    for (const RawConstraint& c : problem.raw_constraints) {
      Rat lhs = 0;
      for (const RawTerm& t : c.terms)
        lhs += t.coeff * belief_and_plausibility(stage, t.sentence).belief;
      if (!rel_holds(lhs, c.rel, c.bound)) return false;
    }
  } else {
    for (const NormalizedConstraint& c : problem.constraints) {
      Rat lhs = c.w, rhs = c.v;
      for (const NatTerm& t : c.bel_terms)
        lhs += t.coeff * belief_and_plausibility(stage, t.sentence).belief;
      for (const NatTerm& t : c.pl_terms)
        rhs += t.coeff * belief_and_plausibility(stage, t.sentence).plausibility;
      if (lhs > rhs) return false;
    }
  }
  return true;
}

SolveResult gensat0(const Problem& problem) {
  Forest forest = Forest::create(problem_supp(problem));
  LeafIndex index(forest);
  LinearProgram lp = mass_program(forest, problem, index);
  LpOutcome outcome = solve(lp);
  SolveResult result;
  result.forests_checked = 1;
  if (outcome.status != LpStatus::Optimal) return result;
  result.sat = true;
  result.witness = stage_from_witness(forest, index, *outcome.witness);
  if (!constraints_hold(*result.witness, problem))
    throw std::logic_error("gensat0: witness failed constraint re-verification");
  return result;
}

SolveResult gensat_k(const Problem& problem) {
  if (problem.depth < 1) throw std::invalid_argument("gensat_k: depth must be >= 1");
  std::vector<Root> supp = problem_supp(problem);
  SolveResult result;
  for (const Forest& forest : admissible_forests(supp, problem)) {
    ++result.forests_checked;
    LeafIndex index(forest);
    LpOutcome outcome = solve(mass_program(forest, problem, index));
    if (outcome.status != LpStatus::Optimal) continue;
    result.sat = true;
    result.witness = stage_from_witness(forest, index, *outcome.witness);
    if (!constraints_hold(*result.witness, problem))
      throw std::logic_error("gensat_k: witness failed constraint re-verification");
    return result;
  }
  return result;
}

SolveResult b_k_inf(const Problem& problem) {
  if (!problem.query) throw std::invalid_argument("binf: missing query");
  const Sentence& query = *problem.query;
  std::vector<Root> supp = problem_supp(problem);
  SolveResult result;
  for (const Forest& forest : admissible_forests(supp, problem)) {
    ++result.forests_checked;
    LeafIndex index(forest);
    LinearProgram lp = mass_program(forest, problem, index);
    int n = lp.num_vars;

    // Minimize B_k(query) = mass of the b-set.
    const std::vector<char>& b_mem = index.b_of(forest, query);
    lp.objective = std::vector<Rat>(n, Rat(0));
    for (int i = 0; i < n; ++i)
      if (b_mem[i]) (*lp.objective)[i] = 1;
    lp.sense = Sense::Minimize;
    LpOutcome low = solve(lp);
    if (low.status != LpStatus::Optimal) continue;  // infeasible forest

    // Maximize Pl_k(query) = mass of the pl-set.
    const std::vector<char>& pl_mem = index.pl_of(forest, query);
    lp.objective = std::vector<Rat>(n, Rat(0));
    for (int i = 0; i < n; ++i)
      if (pl_mem[i]) (*lp.objective)[i] = 1;
    lp.sense = Sense::Maximize;
    LpOutcome high = solve(lp);
    if (high.status != LpStatus::Optimal)
      throw std::logic_error("binf: plausibility program infeasible after a feasible "
                             "belief program");

    result.sat = true;
    if (!result.lower || *low.optimum < *result.lower) {
      result.lower = *low.optimum;
      result.lower_witness = stage_from_witness(forest, index, *low.witness);
    }
    if (!result.upper || *high.optimum > *result.upper) {
      result.upper = *high.optimum;
      result.upper_witness = stage_from_witness(forest, index, *high.witness);
    }
  }
  if (result.sat) {
    if (!constraints_hold(*result.lower_witness, problem) ||
        !constraints_hold(*result.upper_witness, problem))
      throw std::logic_error("binf: bound witness failed constraint re-verification");
  }
  return result;
}

SolveResult solve_problem(const Problem& problem) {
  if (problem.depth < 0) throw std::invalid_argument("problem: negative depth");
  if (problem.mode == ProblemMode::Binf) return b_k_inf(problem);
  return problem.depth == 0 ? gensat0(problem) : gensat_k(problem);
}

}  // namespace dbbel
