#include "dbbel/proof.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace dbbel {

namespace {

// Forward saturation of the intelim rules over the analytic universe
// U(Gamma, goal) = S(Gamma + goal) + negations thereof + {_|_, goal}.
// Elimination conclusions stay inside U by construction; introduction
// rules are applied only when their conclusion is a member of U.
class Saturation {
 public:
  Saturation(const std::vector<Sentence>& premises, const Sentence& goal)
      : goal_(goal) {
    std::vector<Sentence> base(premises);
    base.push_back(goal);
    for (const Sentence& s : subsentences(base)) {
      add_to_universe(s);
      add_to_universe(Sentence::neg(s));
    }
    add_to_universe(Sentence::bot());
    goal_index_ = index_.at(goal);
    bot_index_ = index_.at(Sentence::bot());
    just_.assign(universe_.size(), Justification{});
    for (const Sentence& p : premises) {
      int i = index_.at(p);
      if (!derived(i)) mark(i, "premise", {});
    }
  }

  bool run() {
    bool changed = true;
    while (changed && !done()) {
      changed = false;
      for (int u = 0; u < static_cast<int>(universe_.size()) && !done(); ++u) {
        if (derived(u)) continue;
        if (try_derive(u)) changed = true;
      }
    }
    if (derived(bot_index_) && !derived(goal_index_))
      mark(goal_index_, "botE", {bot_index_});
    return derived(goal_index_);
  }

  DerivationTrace trace() const {
    // Prune to the steps the goal actually depends on, preserving the
    // original derivation order.
    std::vector<bool> needed(universe_.size(), false);
    std::vector<int> stack{goal_index_};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      if (needed[u]) continue;
      needed[u] = true;
      for (int p : just_[u].premises) stack.push_back(p);
    }
    std::unordered_map<int, int> step_of;
    DerivationTrace out;
    for (int u : order_) {
      if (!needed[u]) continue;
      TraceStep step;
      step.sentence = universe_[u];
      step.rule = just_[u].rule;
      for (int p : just_[u].premises) step.premises.push_back(step_of.at(p));
      step_of[u] = static_cast<int>(out.size());
      out.push_back(std::move(step));
    }
    return out;
  }

 private:
  struct Justification {
    std::string rule;  // empty = not derived
    std::vector<int> premises;
  };

  void add_to_universe(const Sentence& s) {
    if (index_.emplace(s, static_cast<int>(universe_.size())).second)
      universe_.push_back(s);
  }

  bool done() const { return derived(goal_index_) || derived(bot_index_); }
  bool derived(int u) const { return !just_[u].rule.empty(); }

  bool derived(const Sentence& s) const {
    auto it = index_.find(s);
    return it != index_.end() && derived(it->second);
  }

  int lookup(const Sentence& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
  }

  void mark(int u, const std::string& rule, std::vector<int> premises) {
    just_[u] = {rule, std::move(premises)};
    order_.push_back(u);
  }

  bool try_derive(int u) {
    const Sentence& s = universe_[u];

    // Eliminations whose conclusion is s.
    for (int d : order_) {
      const Sentence& f = universe_[d];
      if (f.kind() == Conn::Conj) {
        if (f.left() == s) return mark(u, "andE1", {d}), true;
        if (f.right() == s) return mark(u, "andE2", {d}), true;
      } else if (f.kind() == Conn::Disj) {
        int na = lookup(Sentence::neg(f.left()));
        int nb = lookup(Sentence::neg(f.right()));
        if (f.right() == s && na >= 0 && derived(na)) return mark(u, "orE1", {d, na}), true;
        if (f.left() == s && nb >= 0 && derived(nb)) return mark(u, "orE2", {d, nb}), true;
      } else if (f.kind() == Conn::Neg) {
        const Sentence& inner = f.child();
        if (inner.kind() == Conn::Disj) {
          if (Sentence::neg(inner.left()) == s) return mark(u, "negOrE1", {d}), true;
          if (Sentence::neg(inner.right()) == s) return mark(u, "negOrE2", {d}), true;
        } else if (inner.kind() == Conn::Conj) {
          int a = lookup(inner.left());
          int b = lookup(inner.right());
          if (Sentence::neg(inner.right()) == s && a >= 0 && derived(a))
            return mark(u, "negAndE1", {d, a}), true;
          if (Sentence::neg(inner.left()) == s && b >= 0 && derived(b))
            return mark(u, "negAndE2", {d, b}), true;
        } else if (inner.kind() == Conn::Neg) {
          if (inner.child() == s) return mark(u, "negNegE", {d}), true;
        }
      }
    }

    // Introductions: s itself must match the rule's conclusion shape.
    switch (s.kind()) {
      case Conn::Conj: {
        int a = lookup(s.left()), b = lookup(s.right());
        if (a >= 0 && b >= 0 && derived(a) && derived(b))
          return mark(u, "andI", {a, b}), true;
        break;
      }
      case Conn::Disj: {
        int a = lookup(s.left()), b = lookup(s.right());
        if (a >= 0 && derived(a)) return mark(u, "orI1", {a}), true;
        if (b >= 0 && derived(b)) return mark(u, "orI2", {b}), true;
        break;
      }
      case Conn::Neg: {
        const Sentence& inner = s.child();
        if (inner.kind() == Conn::Conj) {
          int na = lookup(Sentence::neg(inner.left()));
          int nb = lookup(Sentence::neg(inner.right()));
          if (na >= 0 && derived(na)) return mark(u, "negAndI1", {na}), true;
          if (nb >= 0 && derived(nb)) return mark(u, "negAndI2", {nb}), true;
        } else if (inner.kind() == Conn::Disj) {
          int na = lookup(Sentence::neg(inner.left()));
          int nb = lookup(Sentence::neg(inner.right()));
          if (na >= 0 && nb >= 0 && derived(na) && derived(nb))
            return mark(u, "negOrI", {na, nb}), true;
        } else if (inner.kind() == Conn::Neg) {
          int a = lookup(inner.child());
          if (a >= 0 && derived(a)) return mark(u, "negNegI", {a}), true;
        }
        break;
      }
      case Conn::Bot: {
        for (int d : order_) {
          int nd = lookup(Sentence::neg(universe_[d]));
          if (nd >= 0 && derived(nd)) return mark(u, "botI", {d, nd}), true;
        }
        break;
      }
      case Conn::Atom:
        break;
    }
    return false;
  }

  Sentence goal_;
  std::vector<Sentence> universe_;
  std::unordered_map<Sentence, int, SentenceHash> index_;
  std::vector<Justification> just_;
  std::vector<int> order_;  // derivation order (indices into universe_)
  int goal_index_ = -1;
  int bot_index_ = -1;
};

std::vector<Sentence> strip_stars(const std::vector<Root>& premises) {
  std::vector<Sentence> out;
  for (const Root& r : premises)
    if (!r.is_star()) out.push_back(r.sentence());
  return out;
}

std::vector<Sentence> canonical_set(std::vector<Sentence> sentences) {
  std::sort(sentences.begin(), sentences.end(), SentenceLess{});
  sentences.erase(std::unique(sentences.begin(), sentences.end()), sentences.end());
  return sentences;
}

std::string set_key(const std::vector<Sentence>& canonical) {
  std::string key;
  for (const Sentence& s : canonical) {
    key += print_sentence(s);
    key += '\x01';
  }
  return key;
}

// Memoized search for the k-depth branch choices. Codes: kFail = no
// derivation, kLeaf = 0-depth derivable, otherwise index of the chosen
// branching formula in the pool.
constexpr int kFail = -2;
constexpr int kLeaf = -1;

class KDepthEngine {
 public:
  KDepthEngine(const std::vector<Sentence>& premises, const Sentence& goal)
      : goal_(goal) {
    std::vector<Sentence> base(premises);
    base.push_back(goal);
    pool_ = subsentences(base);
  }

  int search(const std::vector<Sentence>& canonical_premises, int k) {
    if (derives0(canonical_premises, goal_)) return kLeaf;
    if (k <= 0) return kFail;
    auto memo_key = std::make_pair(set_key(canonical_premises), k);
    auto it = memo_.find(memo_key);
    if (it != memo_.end()) return it->second;
    int result = kFail;
    for (int b = 0; b < static_cast<int>(pool_.size()); ++b) {
      auto with_pos = canonical_set(extend(canonical_premises, pool_[b]));
      auto with_neg = canonical_set(extend(canonical_premises, Sentence::neg(pool_[b])));
      if (search(with_pos, k - 1) != kFail && search(with_neg, k - 1) != kFail) {
        result = b;
        break;
      }
    }
    memo_.emplace(std::move(memo_key), result);
    return result;
  }

  const Sentence& pool_at(int i) const { return pool_[i]; }

 private:
  static std::vector<Sentence> extend(const std::vector<Sentence>& premises,
                                      const Sentence& extra) {
    std::vector<Sentence> out(premises);
    out.push_back(extra);
    return out;
  }

  Sentence goal_;
  std::vector<Sentence> pool_;
  std::map<std::pair<std::string, int>, int> memo_;
};

}  // namespace

bool derives0(const std::vector<Sentence>& premises, const Sentence& goal,
              DerivationTrace* trace) {
  Saturation engine(premises, goal);
  bool ok = engine.run();
  if (ok && trace) *trace = engine.trace();
  return ok;
}

bool derives0(const std::vector<Root>& premises, const Sentence& goal,
              DerivationTrace* trace) {
  return derives0(strip_stars(premises), goal, trace);
}

Decision decides0(const Root& info, const Sentence& target) {
  std::vector<Sentence> premises;
  if (!info.is_star()) premises.push_back(info.sentence());
  if (derives0(premises, target)) return Decision::Positive;
  if (derives0(premises, Sentence::neg(target))) return Decision::Negative;
  return Decision::Undecided;
}

std::vector<Sentence> decided_subset(const std::vector<Sentence>& candidates,
                                     const Sentence& target) {
  std::vector<Sentence> out;
  for (const Sentence& c : canonical_set(candidates))
    if (decides0(Root::info(c), target) != Decision::Undecided) out.push_back(c);
  return out;
}

std::vector<Sentence> inc_subset(const std::vector<Sentence>& candidates) {
  std::vector<Sentence> out;
  for (const Sentence& c : canonical_set(candidates))
    if (derives0({c}, Sentence::bot())) out.push_back(c);
  return out;
}

bool derives_k(const std::vector<Sentence>& premises, const Sentence& goal, int k) {
  if (k < 0) throw std::invalid_argument("derives_k: negative depth");
  KDepthEngine engine(premises, goal);
  return engine.search(canonical_set(premises), k) != kFail;
}

bool derives_k(const std::vector<Root>& premises, const Sentence& goal, int k) {
  return derives_k(strip_stars(premises), goal, k);
}

namespace {

std::optional<WitnessNode> build_witness(KDepthEngine& engine,
                                         const std::vector<Sentence>& premises, int k,
                                         std::optional<Sentence> branch) {
  int code = engine.search(premises, k);
  if (code == kFail) return std::nullopt;
  WitnessNode node;
  node.branch = std::move(branch);
  if (code == kLeaf) return node;
  Sentence beta = engine.pool_at(code);
  Sentence neg_beta = Sentence::neg(beta);
  auto with = [&](const Sentence& extra) {
    std::vector<Sentence> out(premises);
    out.push_back(extra);
    return canonical_set(out);
  };
  auto left = build_witness(engine, with(beta), k - 1, beta);
  auto right = build_witness(engine, with(neg_beta), k - 1, neg_beta);
  node.children.push_back(std::move(*left));
  node.children.push_back(std::move(*right));
  return node;
}

}  // namespace

std::optional<WitnessNode> witness_tree(const std::vector<Sentence>& premises,
                                        const Sentence& goal, int k) {
  KDepthEngine engine(premises, goal);
  return build_witness(engine, canonical_set(premises), k, std::nullopt);
}

std::optional<WitnessNode> witness_tree(const Root& root, const Sentence& goal, int k) {
  std::vector<Sentence> premises;
  if (!root.is_star()) premises.push_back(root.sentence());
  return witness_tree(premises, goal, k);
}

bool verify_trace(const std::vector<Sentence>& premises, const Sentence& goal,
                  const DerivationTrace& trace) {
  if (trace.empty()) return false;
  std::unordered_set<Sentence, SentenceHash> premise_set(premises.begin(), premises.end());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceStep& step = trace[i];
    for (int p : step.premises)
      if (p < 0 || static_cast<std::size_t>(p) >= i) return false;
    auto prem = [&](int j) -> const Sentence& { return trace[step.premises[j]].sentence; };
    auto arity = [&](std::size_t n) { return step.premises.size() == n; };
    const Sentence& c = step.sentence;
    const std::string& r = step.rule;

    if (r == "premise") {
      if (!arity(0) || !premise_set.count(c)) return false;
    } else if (r == "andI") {
      if (!arity(2) || c.kind() != Conn::Conj || c.left() != prem(0) || c.right() != prem(1))
        return false;
    } else if (r == "andE1") {
      if (!arity(1) || prem(0).kind() != Conn::Conj || prem(0).left() != c) return false;
    } else if (r == "andE2") {
      if (!arity(1) || prem(0).kind() != Conn::Conj || prem(0).right() != c) return false;
    } else if (r == "orI1") {
      if (!arity(1) || c.kind() != Conn::Disj || c.left() != prem(0)) return false;
    } else if (r == "orI2") {
      if (!arity(1) || c.kind() != Conn::Disj || c.right() != prem(0)) return false;
    } else if (r == "orE1") {
      // from a|b and !a conclude b
      if (!arity(2) || prem(0).kind() != Conn::Disj || prem(0).right() != c ||
          prem(1) != Sentence::neg(prem(0).left()))
        return false;
    } else if (r == "orE2") {
      if (!arity(2) || prem(0).kind() != Conn::Disj || prem(0).left() != c ||
          prem(1) != Sentence::neg(prem(0).right()))
        return false;
    } else if (r == "negAndI1") {
      if (!arity(1) || c.kind() != Conn::Neg || c.child().kind() != Conn::Conj ||
          prem(0) != Sentence::neg(c.child().left()))
        return false;
    } else if (r == "negAndI2") {
      if (!arity(1) || c.kind() != Conn::Neg || c.child().kind() != Conn::Conj ||
          prem(0) != Sentence::neg(c.child().right()))
        return false;
    } else if (r == "negAndE1") {
      // from !(a&b) and a conclude !b
      if (!arity(2) || prem(0).kind() != Conn::Neg || prem(0).child().kind() != Conn::Conj ||
          prem(1) != prem(0).child().left() || c != Sentence::neg(prem(0).child().right()))
        return false;
    } else if (r == "negAndE2") {
      if (!arity(2) || prem(0).kind() != Conn::Neg || prem(0).child().kind() != Conn::Conj ||
          prem(1) != prem(0).child().right() || c != Sentence::neg(prem(0).child().left()))
        return false;
    } else if (r == "negOrI") {
      if (!arity(2) || c.kind() != Conn::Neg || c.child().kind() != Conn::Disj ||
          prem(0) != Sentence::neg(c.child().left()) ||
          prem(1) != Sentence::neg(c.child().right()))
        return false;
    } else if (r == "negOrE1") {
      if (!arity(1) || prem(0).kind() != Conn::Neg || prem(0).child().kind() != Conn::Disj ||
          c != Sentence::neg(prem(0).child().left()))
        return false;
    } else if (r == "negOrE2") {
      if (!arity(1) || prem(0).kind() != Conn::Neg || prem(0).child().kind() != Conn::Disj ||
          c != Sentence::neg(prem(0).child().right()))
        return false;
    } else if (r == "negNegI") {
      if (!arity(1) || c != Sentence::neg(Sentence::neg(prem(0)))) return false;
    } else if (r == "negNegE") {
      if (!arity(1) || prem(0) != Sentence::neg(Sentence::neg(c))) return false;
    } else if (r == "botI") {
      if (!arity(2) || c.kind() != Conn::Bot || prem(1) != Sentence::neg(prem(0)))
        return false;
    } else if (r == "botE") {
      if (!arity(1) || prem(0).kind() != Conn::Bot) return false;
    } else {
      return false;
    }
  }
  return trace.back().sentence == goal;
}

}  // namespace dbbel
