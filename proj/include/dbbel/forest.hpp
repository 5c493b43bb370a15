#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dbbel/proof.hpp"
#include "dbbel/sentence.hpp"

namespace dbbel {

/// One node of a depth-bounded tree. Branch labels come in beta / !beta
/// pairs; the root carries no branch. Node ids are allocation-order
/// integers, unique across the whole forest.
struct ForestNode {
  int id = 0;
  int tree = 0;
  int parent = -1;                  // -1 at roots
  std::optional<Sentence> branch;   // absent at roots
  int child_beta = -1;              // the beta child
  int child_neg = -1;               // the !beta child
  int depth = 0;
};

struct Leaf {
  int id;
  Root information;  // Star only for the leaf of a bare {*} stage-0 forest
};

/// A depth-bounded forest: one tree per support element, grown in
/// stages. Immutable; expand() returns a new forest.
class Forest {
 public:
  /// Stage-0 forest: each support element becomes a single-node tree.
  /// Requires a nonempty, deduplicated support with at least one element
  /// that is not 0-inconsistent; Star only as the singleton {*}.
  static Forest create(const std::vector<Root>& supp);

  const std::vector<Root>& supp() const { return supp_; }
  int stage() const { return stage_; }
  int tree_count() const { return static_cast<int>(supp_.size()); }
  const std::vector<ForestNode>& nodes() const { return nodes_; }
  const ForestNode& node(int id) const;
  bool is_leaf(int id) const;

  /// Conjunction of the root sentence and the branch labels along the
  /// path, left-associated. A Star root contributes nothing: its depth-1
  /// descendants start from the bare branch label, and the root node
  /// itself carries the empty information Star.
  Root information(int id) const;

  /// Information extended by one more branch label.
  static Sentence extend_information(const Root& info, const Sentence& branch);

  /// Leaf ids of a single tree, in id order.
  std::vector<int> tree_leaves(int tree) const;

  /// All leaves in canonical order (tree index, then node id).
  std::vector<Leaf> leaves() const;

  /// Branches the chosen leaves with beta / !beta children. Every tree
  /// with no chosen leaf must be agenda-closed (Ellsberg-style trees that
  /// decided everything stop growing); every growing tree must branch at
  /// least one leaf of depth == stage.
  Forest expand(const std::map<int, Sentence>& choices,
                const std::vector<Sentence>& agenda = {}) const;

  bool tree_closed(int tree, const Sentence& target) const;
  bool tree_closed_for(int tree, const std::vector<Sentence>& agenda) const;

  /// Canonical structural serialization, used for deduplication.
  std::string structure_key() const;

 private:
  Forest() = default;
  std::vector<Root> supp_;
  std::vector<int> roots_;  // node id of each tree's root
  std::vector<ForestNode> nodes_;
  int stage_ = 0;

  friend Forest forest_from_parts(std::vector<Root> supp, std::vector<int> roots,
                                  std::vector<ForestNode> nodes, int stage);
};

/// Low-level assembler used by deserialization after validation; performs
/// no consistency checks of its own.
Forest forest_from_parts(std::vector<Root> supp, std::vector<int> roots,
                         std::vector<ForestNode> nodes, int stage);

/// Every leaf information decides target, in every tree.
bool is_closed(const Forest& forest, const Sentence& target);

/// No candidate's same-root tree decides target at strictly more leaves.
/// Candidates must share support and stage with forest.
bool is_maximal(const Forest& forest, const Sentence& target,
                const std::vector<Forest>& candidates);

/// Every classically inconsistent leaf is already 0-inconsistent.
bool free_of_deep_contradictions(const Forest& forest,
                                 std::optional<int> var_cap = std::nullopt);

/// All uniform analytic depth-k forests over supp: a complete binary
/// branching skeleton with 2^k - 1 internal positions, each assigned a
/// sentence from S(supp), replicated under every root. Trees that are
/// already agenda-closed stop growing. Canonical order, structural
/// duplicates removed.
std::vector<Forest> enumerate_uniform_analytic(const std::vector<Root>& supp, int k,
                                               std::vector<Sentence> agenda = {});

/// Pareto filter over per-(tree, agenda formula) deciding-leaf counts:
/// drops candidates weakly dominated with at least one strict loss.
std::vector<Forest> select_pareto_maximal(const std::vector<Forest>& candidates,
                                          const std::vector<Sentence>& agenda);

}  // namespace dbbel
