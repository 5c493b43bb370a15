#include "dbbel/sentence.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <set>
#include <unordered_set>

namespace dbbel {

namespace detail {
struct Node {
  Conn kind;
  std::string name;          // Atom
  std::optional<Sentence> first, second;  // Neg uses first; Conj/Disj use both
  int size = 1;
  std::size_t hash = 0;
};
}  // namespace detail

using detail::Node;

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::shared_ptr<const Node>& bot_node() {
  static const std::shared_ptr<const Node> n = [] {
    auto node = std::make_shared<Node>();
    node->kind = Conn::Bot;
    node->size = 1;
    node->hash = 0x5f0e1b2c3d4a5968ULL;
    return node;
  }();
  return n;
}

bool valid_atom_name(const std::string& name) {
  if (name.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace

Sentence::Sentence() : node_(bot_node()) {}
Sentence::Sentence(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Sentence Sentence::atom(const std::string& name) {
  if (!valid_atom_name(name)) throw std::invalid_argument("invalid atom name: " + name);
  auto node = std::make_shared<Node>();
  node->kind = Conn::Atom;
  node->name = name;
  node->size = 1;
  node->hash = mix(0xA70Bull, std::hash<std::string>{}(name));
  return Sentence(std::move(node));
}

Sentence Sentence::neg(const Sentence& child) {
  auto node = std::make_shared<Node>();
  node->kind = Conn::Neg;
  node->first = child;
  node->size = 1 + child.size();
  node->hash = mix(0x4e9ull, child.hash());
  return Sentence(std::move(node));
}

Sentence Sentence::conj(const Sentence& left, const Sentence& right) {
  auto node = std::make_shared<Node>();
  node->kind = Conn::Conj;
  node->first = left;
  node->second = right;
  node->size = 1 + left.size() + right.size();
  node->hash = mix(mix(0xC07ull, left.hash()), right.hash());
  return Sentence(std::move(node));
}

Sentence Sentence::disj(const Sentence& left, const Sentence& right) {
  auto node = std::make_shared<Node>();
  node->kind = Conn::Disj;
  node->first = left;
  node->second = right;
  node->size = 1 + left.size() + right.size();
  node->hash = mix(mix(0xD15ull, left.hash()), right.hash());
  return Sentence(std::move(node));
}

Sentence Sentence::bot() { return Sentence(bot_node()); }

Conn Sentence::kind() const { return node_->kind; }
const std::string& Sentence::atom_name() const { return node_->name; }
const Sentence& Sentence::child() const { return *node_->first; }
const Sentence& Sentence::left() const { return *node_->first; }
const Sentence& Sentence::right() const { return *node_->second; }
int Sentence::size() const { return node_->size; }
std::size_t Sentence::hash() const { return node_->hash; }

bool Sentence::operator==(const Sentence& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash || node_->size != other.node_->size ||
      node_->kind != other.node_->kind)
    return false;
  switch (node_->kind) {
    case Conn::Bot: return true;
    case Conn::Atom: return node_->name == other.node_->name;
    case Conn::Neg: return *node_->first == *other.node_->first;
    case Conn::Conj:
    case Conn::Disj:
      return *node_->first == *other.node_->first && *node_->second == *other.node_->second;
  }
  return false;
}

bool SentenceLess::operator()(const Sentence& a, const Sentence& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a == b) return false;
  return print_sentence(a) < print_sentence(b);
}

bool Root::operator==(const Root& other) const {
  if (is_star() != other.is_star()) return false;
  return is_star() || sentence() == other.sentence();
}

ParseError::ParseError(const std::string& msg, std::size_t off)
    : std::runtime_error(msg + " at byte " + std::to_string(off)), offset(off) {}

namespace {

// Recursive-descent parser for:
//   sentence := disj ; disj := conj ('|' conj)* ; conj := unary ('&' unary)* ;
//   unary := '!' unary | '(' sentence ')' | atom | '_|_'
// "_|_" must be checked before atoms since '_' starts an identifier.
class Parser {
 public:
  Parser(const std::string& text, const ParseOptions& opts) : text_(text), opts_(opts) {}

  Sentence parse_full() {
    skip_ws();
    if (at_end()) throw ParseError("empty input", pos_);
    Sentence s = parse_sentence_rule();
    skip_ws();
    if (!at_end()) throw ParseError("unexpected trailing input", pos_);
    return s;
  }

  Root parse_root_full() {
    skip_ws();
    if (at_end()) throw ParseError("empty input", pos_);
    if (peek() == '*') {
      ++pos_;
      skip_ws();
      if (!at_end()) throw ParseError("unexpected input after '*'", pos_);
      return Root::star();
    }
    Sentence s = parse_sentence_rule();
    skip_ws();
    if (!at_end()) throw ParseError("unexpected trailing input", pos_);
    return Root::info(s);
  }

 private:
  Sentence parse_sentence_rule() {
    Sentence s = parse_disj();
    if (opts_.desugar_implication) {
      skip_ws();
      if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '>') {
        pos_ += 2;
        skip_ws();
        Sentence rhs = parse_sentence_rule();  // right-associative
        return Sentence::disj(Sentence::neg(s), rhs);
      }
    }
    return s;
  }

  Sentence parse_disj() {
    Sentence s = parse_conj();
    while (true) {
      skip_ws();
      if (at_end() || peek() != '|') break;
      ++pos_;
      s = Sentence::disj(s, parse_conj());
    }
    return s;
  }

  Sentence parse_conj() {
    Sentence s = parse_unary();
    while (true) {
      skip_ws();
      if (at_end() || peek() != '&') break;
      ++pos_;
      s = Sentence::conj(s, parse_unary());
    }
    return s;
  }

  Sentence parse_unary() {
    skip_ws();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    char c = peek();
    if (c == '!') {
      ++pos_;
      return Sentence::neg(parse_unary());
    }
    if (c == '(') {
      std::size_t open = pos_++;
      Sentence s = parse_sentence_rule();
      skip_ws();
      if (at_end() || peek() != ')') throw ParseError("unbalanced '('", open);
      ++pos_;
      return s;
    }
    if (text_.compare(pos_, 3, "_|_") == 0) {
      pos_ += 3;
      return Sentence::bot();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
        ++pos_;
      return Sentence::atom(text_.substr(start, pos_ - start));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  const std::string& text_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
};

int precedence(Conn k) {
  switch (k) {
    case Conn::Disj: return 1;
    case Conn::Conj: return 2;
    default: return 3;  // atoms, bot, negation bind tightest
  }
}

void print_rec(const Sentence& s, std::string& out) {
  switch (s.kind()) {
    case Conn::Atom:
      out += s.atom_name();
      return;
    case Conn::Bot:
      out += "_|_";
      return;
    case Conn::Neg: {
      out += '!';
      bool parens = precedence(s.child().kind()) < 3;
      if (parens) out += '(';
      print_rec(s.child(), out);
      if (parens) out += ')';
      return;
    }
    case Conn::Conj:
    case Conn::Disj: {
      const char* op = s.kind() == Conn::Conj ? " & " : " | ";
      int prec = precedence(s.kind());
      // left child keeps equal precedence (left-associative), right does not
      bool lp = precedence(s.left().kind()) < prec;
      bool rp = precedence(s.right().kind()) <= prec;
      if (lp) out += '(';
      print_rec(s.left(), out);
      if (lp) out += ')';
      out += op;
      if (rp) out += '(';
      print_rec(s.right(), out);
      if (rp) out += ')';
      return;
    }
  }
}

}  // namespace

Sentence parse_sentence(const std::string& text, const ParseOptions& opts) {
  return Parser(text, opts).parse_full();
}

Root parse_root(const std::string& text, const ParseOptions& opts) {
  return Parser(text, opts).parse_root_full();
}

std::string print_sentence(const Sentence& s) {
  std::string out;
  print_rec(s, out);
  return out;
}

std::string print_root(const Root& r) {
  return r.is_star() ? "*" : print_sentence(r.sentence());
}

std::vector<Sentence> subsentences(const std::vector<Sentence>& sentences) {
  std::unordered_set<Sentence, SentenceHash> seen;
  std::vector<Sentence> stack(sentences.begin(), sentences.end());
  while (!stack.empty()) {
    Sentence s = stack.back();
    stack.pop_back();
    if (!seen.insert(s).second) continue;
    switch (s.kind()) {
      case Conn::Neg:
        stack.push_back(s.child());
        break;
      case Conn::Conj:
      case Conn::Disj:
        stack.push_back(s.left());
        stack.push_back(s.right());
        break;
      default:
        break;  // atoms and _|_ have no immediate subsentences
    }
  }
  std::vector<Sentence> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), SentenceLess{});
  return out;
}

std::vector<std::string> variables_of(const std::vector<Sentence>& sentences) {
  std::set<std::string> names;
  for (const Sentence& s : subsentences(sentences))
    if (s.kind() == Conn::Atom) names.insert(s.atom_name());
  return {names.begin(), names.end()};
}

std::vector<Sentence> atoms_of_language(const std::vector<std::string>& vars) {
  if (vars.empty()) throw std::invalid_argument("atoms_of_language: empty variable list");
  std::set<std::string> distinct(vars.begin(), vars.end());
  if (distinct.size() != vars.size())
    throw std::invalid_argument("atoms_of_language: duplicate variable");
  std::vector<Sentence> out;
  std::size_t count = std::size_t{1} << vars.size();
  out.reserve(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Sentence atom_sentence;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      Sentence lit = Sentence::atom(vars[i]);
      if (mask & (std::size_t{1} << (vars.size() - 1 - i))) lit = Sentence::neg(lit);
      atom_sentence = i == 0 ? lit : Sentence::conj(atom_sentence, lit);
    }
    out.push_back(atom_sentence);
  }
  return out;
}

bool eval_classical(const Sentence& s, const Valuation& v) {
  switch (s.kind()) {
    case Conn::Bot: return false;
    case Conn::Atom: {
      auto it = v.find(s.atom_name());
      if (it == v.end())
        throw std::runtime_error("valuation missing atom: " + s.atom_name());
      return it->second;
    }
    case Conn::Neg: return !eval_classical(s.child(), v);
    case Conn::Conj: return eval_classical(s.left(), v) && eval_classical(s.right(), v);
    case Conn::Disj: return eval_classical(s.left(), v) || eval_classical(s.right(), v);
  }
  return false;
}

int brute_force_var_cap() {
  if (const char* env = std::getenv("DBBEL_BRUTE_FORCE_VARS")) {
    int cap = std::atoi(env);
    if (cap > 0) return cap;
  }
  return 20;
}

bool classical_entails(const std::vector<Sentence>& premises, const Sentence& goal,
                       std::optional<int> var_cap) {
  std::vector<Sentence> all(premises);
  all.push_back(goal);
  std::vector<std::string> vars = variables_of(all);
  int cap = var_cap.value_or(brute_force_var_cap());
  if (static_cast<int>(vars.size()) > cap)
    throw std::runtime_error("classical_entails: " + std::to_string(vars.size()) +
                             " variables exceed brute-force cap " + std::to_string(cap));
  std::size_t count = std::size_t{1} << vars.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    Valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = (mask >> i) & 1;
    bool all_premises = true;
    for (const Sentence& p : premises)
      if (!eval_classical(p, v)) {
        all_premises = false;
        break;
      }
    if (all_premises && !eval_classical(goal, v)) return false;
  }
  return true;
}

}  // namespace dbbel
