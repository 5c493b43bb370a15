#pragma once

#include <map>
#include <utility>
#include <vector>

#include "dbbel/forest.hpp"
#include "dbbel/rational.hpp"

namespace dbbel {

/// Exact-rational leaf weights over a forest: nonnegative, summing to 1,
/// zero on every 0-inconsistent leaf. Validated at construction.
class MassFunction {
 public:
  MassFunction(const Forest& forest, std::map<int, Rat> weights);

  const std::map<int, Rat>& weights() const { return weights_; }
  Rat weight(int leaf_id) const;
  Rat mass_of(const std::vector<int>& leaf_ids) const;

 private:
  std::map<int, Rat> weights_;
};

/// One stage of a depth-bounded mass sequence: the forest together with
/// its mass function.
struct DbmStage {
  Forest forest;
  MassFunction mass;
  int stage;
};

struct BeliefAssessment {
  Sentence query;
  Rat belief;
  Rat plausibility;
  std::vector<int> belief_witnesses;
  std::vector<int> plausibility_witnesses;
};

/// b_k: leaves whose information 0-derives the query and is not
/// 0-inconsistent.
std::vector<int> b_set(const Forest& forest, const Sentence& query);

/// pl_k: leaves whose information does not 0-derive the negated query.
std::vector<int> pl_set(const Forest& forest, const Sentence& query);

BeliefAssessment belief_and_plausibility(const DbmStage& stage, const Sentence& query);

/// Masses for the two children of an expanded leaf, beta child first.
using ChildMasses = std::map<int, std::pair<Rat, Rat>>;

/// Expands the chosen leaves and redistributes each parent's mass onto
/// its children per the given split. Children must be nonnegative, sum
/// exactly to the parent, and put zero on 0-inconsistent children.
DbmStage refine(const DbmStage& stage, const std::map<int, Sentence>& choices,
                const ChildMasses& child_masses,
                const std::vector<Sentence>& agenda = {});

/// Convenience split: each parent's mass is halved, except that a
/// 0-inconsistent child forces (0, m) or (m, 0). One policy among many.
ChildMasses symmetric_split(const DbmStage& stage, const std::map<int, Sentence>& choices);

/// Star-rooted forest of depth n branching on the variables in order;
/// leaves coincide with the atoms of the language and carry the given
/// probabilities, so belief queries reproduce the probability exactly.
DbmStage atom_forest_embedding(const std::map<Sentence, Rat, SentenceLess>& distribution,
                               const std::vector<std::string>& vars);

}  // namespace dbbel
