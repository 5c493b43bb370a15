#include "dbbel/belief.hpp"

#include <algorithm>
#include <stdexcept>

namespace dbbel {

namespace {

bool leaf_inconsistent(const Root& info) {
  return !info.is_star() && derives0({info.sentence()}, Sentence::bot());
}

}  // namespace

MassFunction::MassFunction(const Forest& forest, std::map<int, Rat> weights)
    : weights_(std::move(weights)) {
  Rat total = 0;
  std::vector<Leaf> leaves = forest.leaves();
  if (weights_.size() != leaves.size())
    throw std::invalid_argument("mass: weight count differs from leaf count");
  for (const Leaf& leaf : leaves) {
    auto it = weights_.find(leaf.id);
    if (it == weights_.end())
      throw std::invalid_argument("mass: missing weight for leaf " + std::to_string(leaf.id));
    if (it->second < 0) throw std::invalid_argument("mass: negative weight");
    if (it->second != 0 && leaf_inconsistent(leaf.information))
      throw std::invalid_argument("mass: nonzero weight on 0-inconsistent leaf " +
                                  std::to_string(leaf.id));
    total += it->second;
  }
  if (total != 1) throw std::invalid_argument("mass: weights sum to " + rat_to_string(total) +
                                              ", expected 1");
}

Rat MassFunction::weight(int leaf_id) const {
  auto it = weights_.find(leaf_id);
  if (it == weights_.end())
    throw std::out_of_range("mass: unknown leaf " + std::to_string(leaf_id));
  return it->second;
}

Rat MassFunction::mass_of(const std::vector<int>& leaf_ids) const {
  Rat total = 0;
  for (int id : leaf_ids) total += weight(id);
  return total;
}

std::vector<int> b_set(const Forest& forest, const Sentence& query) {
  std::vector<int> out;
  for (const Leaf& leaf : forest.leaves())
    if (derives0({leaf.information}, query) && !leaf_inconsistent(leaf.information))
      out.push_back(leaf.id);
  return out;
}

std::vector<int> pl_set(const Forest& forest, const Sentence& query) {
  std::vector<int> out;
  for (const Leaf& leaf : forest.leaves())
    if (!derives0({leaf.information}, Sentence::neg(query))) out.push_back(leaf.id);
  return out;
}

BeliefAssessment belief_and_plausibility(const DbmStage& stage, const Sentence& query) {
  BeliefAssessment out;
  out.query = query;
  out.belief_witnesses = b_set(stage.forest, query);
  out.plausibility_witnesses = pl_set(stage.forest, query);
  out.belief = stage.mass.mass_of(out.belief_witnesses);
  out.plausibility = stage.mass.mass_of(out.plausibility_witnesses);
  return out;
}

DbmStage refine(const DbmStage& stage, const std::map<int, Sentence>& choices,
                const ChildMasses& child_masses, const std::vector<Sentence>& agenda) {
  Forest next = stage.forest.expand(choices, agenda);
  std::map<int, Rat> weights;
  for (const Leaf& leaf : stage.forest.leaves()) {
    auto it = choices.find(leaf.id);
    if (it == choices.end()) {
      weights[leaf.id] = stage.mass.weight(leaf.id);  // persisted leaf keeps its mass
      continue;
    }
    auto split = child_masses.find(leaf.id);
    if (split == child_masses.end())
      throw std::invalid_argument("refine: no child masses for expanded leaf " +
                                  std::to_string(leaf.id));
    const auto& [beta_mass, neg_mass] = split->second;
    if (beta_mass < 0 || neg_mass < 0)
      throw std::invalid_argument("refine: negative child mass");
    if (beta_mass + neg_mass != stage.mass.weight(leaf.id))
      throw std::invalid_argument("refine: children of leaf " + std::to_string(leaf.id) +
                                  " do not sum to the parent mass");
    const ForestNode& parent = next.node(leaf.id);
    weights[parent.child_beta] = beta_mass;
    weights[parent.child_neg] = neg_mass;
  }
  // MassFunction validation rejects mass on 0-inconsistent children; a
  // consistent parent with two 0-inconsistent children cannot satisfy
  // the sum law and surfaces as an error here.
  return DbmStage{next, MassFunction(next, std::move(weights)), stage.stage + 1};
}

ChildMasses symmetric_split(const DbmStage& stage, const std::map<int, Sentence>& choices) {
  ChildMasses out;
  for (const auto& [id, beta] : choices) {
    Rat parent = stage.mass.weight(id);
    Root info = stage.forest.information(id);
    Sentence with_beta = Forest::extend_information(info, beta);
    Sentence with_neg = Forest::extend_information(info, Sentence::neg(beta));
    bool beta_inc = derives0({with_beta}, Sentence::bot());
    bool neg_inc = derives0({with_neg}, Sentence::bot());
    if (beta_inc && neg_inc && parent != 0)
      throw std::invalid_argument("symmetric_split: both children of leaf " +
                                  std::to_string(id) + " are 0-inconsistent");
    if (beta_inc)
      out[id] = {Rat(0), parent};
    else if (neg_inc)
      out[id] = {parent, Rat(0)};
    else
      out[id] = {parent / 2, parent / 2};
  }
  return out;
}

namespace {

// Left-associated conjunction of the first `len` literals of an atom
// over `total` variables (the atom itself when len == total).
Sentence atom_prefix(const Sentence& atom, std::size_t total, std::size_t len) {
  Sentence prefix = atom;
  for (std::size_t i = total; i > len; --i) prefix = prefix.left();
  return prefix;
}

}  // namespace

DbmStage atom_forest_embedding(const std::map<Sentence, Rat, SentenceLess>& distribution,
                               const std::vector<std::string>& vars) {
  std::vector<Sentence> atoms = atoms_of_language(vars);
  Rat total = 0;
  for (const Sentence& atom : atoms) {
    auto it = distribution.find(atom);
    if (it == distribution.end())
      throw std::invalid_argument("embedding: distribution missing atom " +
                                  print_sentence(atom));
    if (it->second < 0) throw std::invalid_argument("embedding: negative probability");
    total += it->second;
  }
  if (total != 1 || distribution.size() != atoms.size())
    throw std::invalid_argument("embedding: not a probability distribution over the atoms");

  // Grow stagewise so the refinement law is exercised, with each partial
  // literal conjunction carrying the total probability of its extensions.
  Forest forest = Forest::create({Root::star()});
  DbmStage stage{forest, MassFunction(forest, {{0, Rat(1)}}), 0};
  for (std::size_t d = 0; d < vars.size(); ++d) {
    Sentence var = Sentence::atom(vars[d]);
    std::map<int, Sentence> choices;
    ChildMasses splits;
    for (const Leaf& leaf : stage.forest.leaves()) {
      choices.emplace(leaf.id, var);
      Sentence prefix_pos = Forest::extend_information(leaf.information, var);
      Sentence prefix_neg = Forest::extend_information(leaf.information, Sentence::neg(var));
      Rat pos = 0, neg = 0;
      for (const Sentence& atom : atoms) {
        Sentence prefix = atom_prefix(atom, vars.size(), d + 1);
        if (prefix == prefix_pos) pos += distribution.at(atom);
        if (prefix == prefix_neg) neg += distribution.at(atom);
      }
      splits[leaf.id] = {pos, neg};
    }
    stage = refine(stage, choices, splits);
  }
  return stage;
}

}  // namespace dbbel
