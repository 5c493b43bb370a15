#pragma once

// Shared fixtures and random generators for the test suites. Everything
// here is deterministic given the caller's RNG seed.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "dbbel/belief.hpp"
#include "dbbel/forest.hpp"
#include "dbbel/proof.hpp"
#include "dbbel/sentence.hpp"

namespace testutil {

using namespace dbbel;

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Random sentence over the given variables with AST depth <= depth.
/// allow_bot adds _|_ as a leaf option.
inline Sentence random_sentence(Rng& rng, const std::vector<std::string>& vars, int depth,
                                bool allow_bot = false) {
  if (depth <= 0 || pick(rng, 0, 3) == 0) {
    if (allow_bot && pick(rng, 0, 7) == 0) return Sentence::bot();
    return Sentence::atom(vars[pick(rng, 0, static_cast<int>(vars.size()) - 1)]);
  }
  switch (pick(rng, 0, 2)) {
    case 0: return Sentence::neg(random_sentence(rng, vars, depth - 1, allow_bot));
    case 1:
      return Sentence::conj(random_sentence(rng, vars, depth - 1, allow_bot),
                            random_sentence(rng, vars, depth - 1, allow_bot));
    default:
      return Sentence::disj(random_sentence(rng, vars, depth - 1, allow_bot),
                            random_sentence(rng, vars, depth - 1, allow_bot));
  }
}

/// Random nonnegative rationals summing to 1 over the given leaf ids,
/// forcing zeros where `forbidden` says so (0-inconsistent leaves). At
/// least one permitted leaf required.
inline std::map<int, Rat> random_mass(Rng& rng, const std::vector<int>& leaf_ids,
                                      const std::vector<bool>& forbidden) {
  std::map<int, Rat> weights;
  Rat total = 0;
  for (std::size_t i = 0; i < leaf_ids.size(); ++i) {
    Rat w = forbidden[i] ? Rat(0) : Rat(pick(rng, 0, 6));
    weights[leaf_ids[i]] = w;
    total += w;
  }
  if (total == 0) {  // all zero draws: put everything on the first allowed leaf
    for (std::size_t i = 0; i < leaf_ids.size(); ++i)
      if (!forbidden[i]) {
        weights[leaf_ids[i]] = 1;
        return weights;
      }
  }
  for (auto& [id, w] : weights) w /= total;
  return weights;
}

inline bool info_inconsistent(const Root& info) {
  return !info.is_star() && derives0({info.sentence()}, Sentence::bot());
}

/// Random stage-0 DBM stage over a small random support (consistent by
/// construction: plain variables are always included).
inline DbmStage random_stage0(Rng& rng, const std::vector<std::string>& vars, int max_supp = 2,
                              int sentence_depth = 3) {
  std::vector<Root> supp;
  supp.push_back(Root::info(Sentence::atom(vars[pick(rng, 0, static_cast<int>(vars.size()) - 1)])));
  int extra = pick(rng, 0, max_supp - 1);
  for (int i = 0; i < extra; ++i) {
    Root r = Root::info(random_sentence(rng, vars, sentence_depth));
    if (std::find(supp.begin(), supp.end(), r) == supp.end()) supp.push_back(r);
  }
  Forest forest = Forest::create(supp);
  std::vector<int> ids;
  std::vector<bool> forbidden;
  for (const Leaf& leaf : forest.leaves()) {
    ids.push_back(leaf.id);
    forbidden.push_back(info_inconsistent(leaf.information));
  }
  MassFunction mass(forest, random_mass(rng, ids, forbidden));
  return DbmStage{forest, std::move(mass), 0};
}

/// One random refinement step: every tree branches every leaf on a random
/// subsentence of the support (so no agenda bookkeeping is needed), with
/// the symmetric mass split. A leaf carrying mass must keep at least one
/// 0-consistent child, so bad draws are rerolled.
inline DbmStage random_refinement(Rng& rng, const DbmStage& stage) {
  std::vector<Sentence> supp_sentences;
  for (const Root& r : stage.forest.supp())
    if (!r.is_star()) supp_sentences.push_back(r.sentence());
  std::vector<Sentence> pool = subsentences(supp_sentences);
  if (pool.empty()) pool.push_back(Sentence::atom("p"));
  std::map<int, Sentence> choices;
  for (const Leaf& leaf : stage.forest.leaves()) {
    Sentence beta = pool[pick(rng, 0, static_cast<int>(pool.size()) - 1)];
    if (stage.mass.weight(leaf.id) != 0) {
      auto dead_end = [&](const Sentence& b) {
        return derives0({Forest::extend_information(leaf.information, b)}, Sentence::bot()) &&
               derives0({Forest::extend_information(leaf.information, Sentence::neg(b))},
                        Sentence::bot());
      };
      for (int reroll = 0; reroll < 16 && dead_end(beta); ++reroll)
        beta = pool[pick(rng, 0, static_cast<int>(pool.size()) - 1)];
      if (dead_end(beta))
        for (const Sentence& b : pool)
          if (!dead_end(b)) {
            beta = b;
            break;
          }
    }
    choices.emplace(leaf.id, beta);
  }
  ChildMasses splits = symmetric_split(stage, choices);
  return refine(stage, choices, splits);
}

/// Example 3.1's background sentence: each color excludes the others,
/// and some color holds. Built over {Y, G, R} (or any color list).
inline Sentence exclusion_background(const std::vector<std::string>& colors) {
  std::vector<Sentence> parts;
  for (const std::string& c : colors) {
    Sentence others = Sentence::bot();
    bool first = true;
    for (const std::string& o : colors) {
      if (o == c) continue;
      Sentence lit = Sentence::neg(Sentence::atom(o));
      others = first ? lit : Sentence::conj(others, lit);
      first = false;
    }
    parts.push_back(Sentence::disj(Sentence::neg(Sentence::atom(c)), others));
  }
  Sentence any = Sentence::atom(colors[0]);
  for (std::size_t i = 1; i < colors.size(); ++i)
    any = Sentence::disj(any, Sentence::atom(colors[i]));
  parts.push_back(any);
  Sentence bg = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) bg = Sentence::conj(bg, parts[i]);
  return bg;
}

struct EllsbergFixture {
  Sentence bg;
  Sentence yg_root, r_root;  // (Y|G) & bg and R & bg
  DbmStage stage0;
};

inline EllsbergFixture ellsberg_stage0() {
  Sentence bg = exclusion_background({"Y", "G", "R"});
  Sentence yg = Sentence::conj(
      Sentence::disj(Sentence::atom("Y"), Sentence::atom("G")), bg);
  Sentence r = Sentence::conj(Sentence::atom("R"), bg);
  Forest forest = Forest::create({Root::info(yg), Root::info(r)});
  MassFunction mass(forest, {{0, Rat(2) / 3}, {1, Rat(1) / 3}});
  return EllsbergFixture{bg, yg, r, DbmStage{forest, std::move(mass), 0}};
}

}  // namespace testutil
