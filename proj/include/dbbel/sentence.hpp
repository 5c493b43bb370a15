#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dbbel {

enum class Conn { Atom, Neg, Conj, Disj, Bot };

class Sentence;

namespace detail {
struct Node;
}

/// Immutable propositional formula over !, &, | and the constant _|_.
/// Value type backed by a shared immutable node; structural equality.
class Sentence {
 public:
  Sentence();  // Bot by default; keeps the type regular

  static Sentence atom(const std::string& name);
  static Sentence neg(const Sentence& child);
  static Sentence conj(const Sentence& left, const Sentence& right);
  static Sentence disj(const Sentence& left, const Sentence& right);
  static Sentence bot();

  Conn kind() const;
  const std::string& atom_name() const;  // Atom only
  const Sentence& child() const;         // Neg only
  const Sentence& left() const;          // Conj/Disj
  const Sentence& right() const;         // Conj/Disj

  int size() const;  // number of AST nodes
  std::size_t hash() const;

  bool operator==(const Sentence& other) const;
  bool operator!=(const Sentence& other) const { return !(*this == other); }

 private:
  explicit Sentence(std::shared_ptr<const detail::Node> node);
  std::shared_ptr<const detail::Node> node_;
};

struct SentenceHash {
  std::size_t operator()(const Sentence& s) const { return s.hash(); }
};

/// Canonical total order: by size, then lexicographically on the printed
/// form. Used wherever a deterministic iteration order is required.
struct SentenceLess {
  bool operator()(const Sentence& a, const Sentence& b) const;
};

/// Root of a hypothetical-information tree: either the empty information
/// "*" or an actual sentence.
class Root {
 public:
  static Root star() { return Root(); }
  static Root info(const Sentence& s) { return Root(s); }

  bool is_star() const { return !sentence_.has_value(); }
  const Sentence& sentence() const { return *sentence_; }

  bool operator==(const Root& other) const;
  bool operator!=(const Root& other) const { return !(*this == other); }

 private:
  Root() = default;
  explicit Root(const Sentence& s) : sentence_(s) {}
  std::optional<Sentence> sentence_;
};

using Valuation = std::map<std::string, bool>;

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t offset);
  std::size_t offset;
};

struct ParseOptions {
  /// When set, "a -> b" is accepted and expanded to "!a | b".
  bool desugar_implication = false;
};

Sentence parse_sentence(const std::string& text, const ParseOptions& opts = {});
/// Accepts the sentence grammar plus the bare token "*".
Root parse_root(const std::string& text, const ParseOptions& opts = {});

std::string print_sentence(const Sentence& s);
std::string print_root(const Root& r);

/// S(Gamma): the input set closed under immediate subsentences, in
/// canonical order.
std::vector<Sentence> subsentences(const std::vector<Sentence>& sentences);

/// Distinct atom names occurring in the given sentences, sorted.
std::vector<std::string> variables_of(const std::vector<Sentence>& sentences);

/// At_L: the 2^n maximal consistent conjunctions of literals, with
/// literals in the given variable order, left-associated. Ordered so
/// that the all-positive atom comes first (bit i of the index flips
/// variable i to its negation).
std::vector<Sentence> atoms_of_language(const std::vector<std::string>& vars);

bool eval_classical(const Sentence& s, const Valuation& v);

/// Default brute-force variable cap; override via DBBEL_BRUTE_FORCE_VARS.
int brute_force_var_cap();

/// Truth-table entailment oracle. Throws std::runtime_error when the
/// combined variable count exceeds the brute-force cap.
bool classical_entails(const std::vector<Sentence>& premises, const Sentence& goal,
                       std::optional<int> var_cap = std::nullopt);

}  // namespace dbbel
