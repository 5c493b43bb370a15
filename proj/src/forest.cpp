#include "dbbel/forest.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace dbbel {

Forest forest_from_parts(std::vector<Root> supp, std::vector<int> roots,
                         std::vector<ForestNode> nodes, int stage) {
  Forest f;
  f.supp_ = std::move(supp);
  f.roots_ = std::move(roots);
  f.nodes_ = std::move(nodes);
  f.stage_ = stage;
  return f;
}

Forest Forest::create(const std::vector<Root>& supp) {
  std::vector<Root> dedup;
  for (const Root& r : supp)
    if (std::find(dedup.begin(), dedup.end(), r) == dedup.end()) dedup.push_back(r);
  if (dedup.empty()) throw std::invalid_argument("forest: empty support");
  bool has_star = std::any_of(dedup.begin(), dedup.end(),
                              [](const Root& r) { return r.is_star(); });
  if (has_star && dedup.size() > 1)
    throw std::invalid_argument("forest: '*' is only allowed as the singleton support");
  bool any_consistent = false;
  for (const Root& r : dedup)
    if (r.is_star() || !derives0({r.sentence()}, Sentence::bot())) {
      any_consistent = true;
      break;
    }
  if (!any_consistent)
    throw std::invalid_argument("forest: every support sentence is 0-inconsistent");

  std::vector<int> roots;
  std::vector<ForestNode> nodes;
  for (int t = 0; t < static_cast<int>(dedup.size()); ++t) {
    ForestNode n;
    n.id = t;
    n.tree = t;
    roots.push_back(t);
    nodes.push_back(std::move(n));
  }
  return forest_from_parts(std::move(dedup), std::move(roots), std::move(nodes), 0);
}

const ForestNode& Forest::node(int id) const {
  if (id < 0 || id >= static_cast<int>(nodes_.size()))
    throw std::out_of_range("forest: unknown node id");
  return nodes_[id];
}

bool Forest::is_leaf(int id) const { return node(id).child_beta < 0; }

Root Forest::information(int id) const {
  std::vector<Sentence> path;
  int cur = id;
  while (cur >= 0) {
    const ForestNode& n = nodes_[cur];
    if (n.branch) path.push_back(*n.branch);
    cur = n.parent;
  }
  Root info = supp_[node(id).tree];
  for (auto it = path.rbegin(); it != path.rend(); ++it)
    info = Root::info(extend_information(info, *it));
  return info;
}

Sentence Forest::extend_information(const Root& info, const Sentence& branch) {
  return info.is_star() ? branch : Sentence::conj(info.sentence(), branch);
}

std::vector<int> Forest::tree_leaves(int tree) const {
  // Depth-first preorder, beta child before !beta child: the order in
  // which the tree reads on paper.
  std::vector<int> out;
  std::vector<int> stack{roots_[tree]};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    const ForestNode& n = nodes_[id];
    if (n.child_beta < 0) {
      out.push_back(id);
    } else {
      stack.push_back(n.child_neg);
      stack.push_back(n.child_beta);
    }
  }
  return out;
}

std::vector<Leaf> Forest::leaves() const {
  std::vector<Leaf> out;
  for (int t = 0; t < tree_count(); ++t)
    for (int id : tree_leaves(t)) out.push_back({id, information(id)});
  return out;
}

bool Forest::tree_closed(int tree, const Sentence& target) const {
  for (int id : tree_leaves(tree))
    if (decides0(information(id), target) == Decision::Undecided) return false;
  return true;
}

bool Forest::tree_closed_for(int tree, const std::vector<Sentence>& agenda) const {
  for (const Sentence& s : agenda)
    if (!tree_closed(tree, s)) return false;
  return true;
}

Forest Forest::expand(const std::map<int, Sentence>& choices,
                      const std::vector<Sentence>& agenda) const {
  std::vector<bool> tree_grows(tree_count(), false);
  std::vector<bool> tree_hits_frontier(tree_count(), false);
  for (const auto& [id, beta] : choices) {
    const ForestNode& n = node(id);
    if (n.child_beta >= 0)
      throw std::invalid_argument("expand: node " + std::to_string(id) + " is not a leaf");
    (void)beta;
    tree_grows[n.tree] = true;
    if (n.depth == stage_) tree_hits_frontier[n.tree] = true;
  }
  for (int t = 0; t < tree_count(); ++t) {
    if (!tree_grows[t]) {
      if (agenda.empty() || !tree_closed_for(t, agenda))
        throw std::invalid_argument("expand: tree " + std::to_string(t) +
                                    " has no branching choice and is not agenda-closed");
    } else if (!tree_hits_frontier[t]) {
      throw std::invalid_argument("expand: tree " + std::to_string(t) +
                                  " must branch at least one leaf of depth " +
                                  std::to_string(stage_));
    }
  }

  std::vector<ForestNode> nodes = nodes_;
  for (int t = 0; t < tree_count(); ++t) {
    for (int id : tree_leaves(t)) {
      auto it = choices.find(id);
      if (it == choices.end()) continue;
      const Sentence& beta = it->second;
      int base = static_cast<int>(nodes.size());
      ForestNode pos, neg;
      pos.id = base;
      pos.tree = t;
      pos.parent = id;
      pos.branch = beta;
      pos.depth = nodes[id].depth + 1;
      neg = pos;
      neg.id = base + 1;
      neg.branch = Sentence::neg(beta);
      nodes[id].child_beta = base;
      nodes[id].child_neg = base + 1;
      nodes.push_back(std::move(pos));
      nodes.push_back(std::move(neg));
    }
  }
  return forest_from_parts(supp_, roots_, std::move(nodes), stage_ + 1);
}

std::string Forest::structure_key() const {
  std::string key;
  for (const Root& r : supp_) {
    key += print_root(r);
    key += '\x01';
  }
  key += '\x02';
  // Preorder branch labels per tree; node ids themselves are not part of
  // the structure.
  for (int t = 0; t < tree_count(); ++t) {
    std::vector<int> stack{roots_[t]};
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      const ForestNode& n = nodes_[id];
      key += n.branch ? print_sentence(*n.branch) : std::string("*");
      key += n.child_beta >= 0 ? '[' : '.';
      if (n.child_beta >= 0) {
        stack.push_back(n.child_neg);
        stack.push_back(n.child_beta);
      }
    }
    key += '\x03';
  }
  return key;
}

bool is_closed(const Forest& forest, const Sentence& target) {
  for (int t = 0; t < forest.tree_count(); ++t)
    if (!forest.tree_closed(t, target)) return false;
  return true;
}

namespace {

int deciding_leaf_count(const Forest& forest, int tree, const Sentence& target) {
  int count = 0;
  for (int id : forest.tree_leaves(tree))
    if (decides0(forest.information(id), target) != Decision::Undecided) ++count;
  return count;
}

}  // namespace

bool is_maximal(const Forest& forest, const Sentence& target,
                const std::vector<Forest>& candidates) {
  for (const Forest& c : candidates)
    if (c.supp() != forest.supp() || c.stage() != forest.stage())
      throw std::invalid_argument("is_maximal: candidate support/stage mismatch");
  for (int t = 0; t < forest.tree_count(); ++t) {
    int own = deciding_leaf_count(forest, t, target);
    for (const Forest& c : candidates)
      if (deciding_leaf_count(c, t, target) > own) return false;
  }
  return true;
}

bool free_of_deep_contradictions(const Forest& forest, std::optional<int> var_cap) {
  for (const Leaf& leaf : forest.leaves()) {
    if (leaf.information.is_star()) continue;  // empty information is consistent
    const Sentence& info = leaf.information.sentence();
    if (classical_entails({info}, Sentence::bot(), var_cap) &&
        !derives0({info}, Sentence::bot()))
      return false;
  }
  return true;
}

namespace {

// Skeleton position of a leaf within a complete binary tree, BFS order:
// root position 0; the beta child of position p is 2p+1, the !beta child
// 2p+2.
int skeleton_position(const Forest& forest, int id) {
  std::vector<bool> took_neg;
  int cur = id;
  while (forest.node(cur).parent >= 0) {
    int parent = forest.node(cur).parent;
    took_neg.push_back(forest.node(parent).child_neg == cur);
    cur = parent;
  }
  int pos = 0;
  for (auto it = took_neg.rbegin(); it != took_neg.rend(); ++it)
    pos = 2 * pos + (*it ? 2 : 1);
  return pos;
}

}  // namespace

std::vector<Forest> enumerate_uniform_analytic(const std::vector<Root>& supp, int k,
                                               std::vector<Sentence> agenda) {
  if (k < 0) throw std::invalid_argument("enumerate_uniform_analytic: negative depth");
  std::vector<Sentence> supp_sentences;
  for (const Root& r : supp)
    if (!r.is_star()) supp_sentences.push_back(r.sentence());
  std::vector<Sentence> pool = subsentences(supp_sentences);
  if (agenda.empty()) agenda = pool;

  Forest base = Forest::create(supp);
  if (k == 0 || pool.empty()) return {base};

  int positions = (1 << k) - 1;
  std::vector<int> assignment(positions, 0);
  std::vector<Forest> out;
  std::unordered_set<std::string> seen;

  while (true) {
    Forest forest = base;
    for (int stage = 1; stage <= k; ++stage) {
      std::map<int, Sentence> choices;
      for (int t = 0; t < forest.tree_count(); ++t) {
        if (forest.tree_closed_for(t, agenda)) continue;
        for (int id : forest.tree_leaves(t))
          choices.emplace(id, pool[assignment[skeleton_position(forest, id)]]);
      }
      if (choices.empty()) break;  // everything closed; later positions are moot
      forest = forest.expand(choices, agenda);
    }
    if (seen.insert(forest.structure_key()).second) out.push_back(std::move(forest));

    // Odometer over assignments: position 0 most significant, pool in
    // canonical order.
    int i = positions - 1;
    while (i >= 0 && ++assignment[i] == static_cast<int>(pool.size())) {
      assignment[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::vector<Forest> select_pareto_maximal(const std::vector<Forest>& candidates,
                                          const std::vector<Sentence>& agenda) {
  if (candidates.size() <= 1) return candidates;
  std::vector<std::vector<int>> scores;
  scores.reserve(candidates.size());
  for (const Forest& f : candidates) {
    std::vector<int> row;
    for (int t = 0; t < f.tree_count(); ++t)
      for (const Sentence& phi : agenda) row.push_back(deciding_leaf_count(f, t, phi));
    scores.push_back(std::move(row));
  }
  std::vector<Forest> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < candidates.size() && !dominated; ++j) {
      if (i == j) continue;
      bool weakly = true, strictly = false;
      for (std::size_t c = 0; c < scores[i].size(); ++c) {
        if (scores[j][c] < scores[i][c]) {
          weakly = false;
          break;
        }
        if (scores[j][c] > scores[i][c]) strictly = true;
      }
      dominated = weakly && strictly;
    }
    if (!dominated) out.push_back(candidates[i]);
  }
  return out;
}

}  // namespace dbbel
