#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dbbel/sentence.hpp"

namespace dbbel {

/// One step of a 0-depth derivation: the derived sentence, the intelim
/// rule that produced it ("premise" for assumptions), and the indices of
/// the earlier steps it was derived from.
struct TraceStep {
  Sentence sentence;
  std::string rule;
  std::vector<int> premises;
};

using DerivationTrace = std::vector<TraceStep>;

/// Checks that every step of a trace is locally valid: premises refer to
/// earlier steps, premise steps belong to the premise set, rule steps
/// match the rule's schema, and the last step is the goal. Independent
/// of the saturation engine.
bool verify_trace(const std::vector<Sentence>& premises, const Sentence& goal,
                  const DerivationTrace& trace);

/// Gamma |-0 goal, by forward saturation of the intelim rules restricted
/// to the analytic universe U(Gamma, goal). Star premises contribute
/// nothing. When a trace pointer is given and the result is true, a
/// verifiable derivation (pruned to the steps the goal depends on) is
/// written to it.
bool derives0(const std::vector<Sentence>& premises, const Sentence& goal,
              DerivationTrace* trace = nullptr);
bool derives0(const std::vector<Root>& premises, const Sentence& goal,
              DerivationTrace* trace = nullptr);

enum class Decision { Positive, Negative, Undecided };

/// Positive if info |-0 target, else Negative if info |-0 !target,
/// else Undecided. Inconsistent info is Positive via bot-elimination.
Decision decides0(const Root& info, const Sentence& target);

/// dec(candidates, target): the candidates whose decides0 result is not
/// Undecided, in canonical order.
std::vector<Sentence> decided_subset(const std::vector<Sentence>& candidates,
                                     const Sentence& target);

/// inc(candidates): the 0-inconsistent candidates, in canonical order.
std::vector<Sentence> inc_subset(const std::vector<Sentence>& candidates);

/// Gamma |-k goal. For k > 0 branches on some beta with both
/// Gamma,beta |-(k-1) goal and Gamma,!beta |-(k-1) goal. The branching
/// pool is fixed to the subsentences of the ORIGINAL Gamma and goal and
/// is not enlarged by hypotheses added along the way.
bool derives_k(const std::vector<Sentence>& premises, const Sentence& goal, int k);
bool derives_k(const std::vector<Root>& premises, const Sentence& goal, int k);

/// A witness of root |-k goal reconstructed from the successful branch
/// choices: depth of each node, its branching formula (labels come in
/// beta / !beta pairs), and children. Empty children = leaf; every leaf's
/// accumulated information 0-derives the goal. Kept deliberately simple;
/// the forest module converts this into its own tree representation.
struct WitnessNode {
  std::optional<Sentence> branch;  // absent at the root
  std::vector<WitnessNode> children;
};

std::optional<WitnessNode> witness_tree(const std::vector<Sentence>& premises,
                                        const Sentence& goal, int k);
std::optional<WitnessNode> witness_tree(const Root& root, const Sentence& goal, int k);

}  // namespace dbbel
