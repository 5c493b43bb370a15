#include "dbbel/io.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace dbbel {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) bad(std::string("missing field \"") + key + '"');
  return *it;
}

Rat rat_field(const json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + ": rationals must be strings");
  return rat_from_string(j.get<std::string>());
}

}  // namespace

json forest_to_json(const Forest& forest) {
  json trees = json::array();
  for (int t = 0; t < forest.tree_count(); ++t) {
    json nodes = json::array();
    for (const ForestNode& n : forest.nodes()) {
      if (n.tree != t) continue;
      json node;
      node["id"] = n.id;
      node["parent"] = n.parent < 0 ? json(nullptr) : json(n.parent);
      node["branch"] = n.branch ? json(print_sentence(*n.branch)) : json(nullptr);
      nodes.push_back(std::move(node));
    }
    trees.push_back(json{{"root", print_root(forest.supp()[t])}, {"nodes", std::move(nodes)}});
  }
  json supp = json::array();
  for (const Root& r : forest.supp()) supp.push_back(print_root(r));
  return json{{"supp", std::move(supp)}, {"trees", std::move(trees)}};
}

Forest forest_from_json(const json& doc, const ParseOptions& opts) {
  const json& supp_json = field(doc, "supp");
  const json& trees_json = field(doc, "trees");
  if (!supp_json.is_array() || supp_json.empty()) bad("forest: \"supp\" must be a nonempty array");
  if (!trees_json.is_array() || trees_json.size() != supp_json.size())
    bad("forest: one tree per support element required");

  std::vector<Root> supp;
  for (const json& s : supp_json) supp.push_back(parse_root(s.get<std::string>(), opts));
  for (std::size_t t = 0; t < supp.size(); ++t)
    for (std::size_t u = t + 1; u < supp.size(); ++u)
      if (supp[t] == supp[u]) bad("forest: duplicate support element");
  if (std::any_of(supp.begin(), supp.end(), [](const Root& r) { return r.is_star(); }) &&
      supp.size() > 1)
    bad("forest: '*' is only allowed as the singleton support");
  bool any_consistent = false;
  for (const Root& r : supp)
    if (r.is_star() || !derives0({r.sentence()}, Sentence::bot())) any_consistent = true;
  if (!any_consistent) bad("forest: every support sentence is 0-inconsistent");

  std::size_t total = 0;
  for (const json& tree : trees_json) total += field(tree, "nodes").size();

  std::vector<ForestNode> nodes(total);
  std::vector<char> seen(total, 0);
  std::vector<int> roots(supp.size(), -1);
  for (std::size_t t = 0; t < trees_json.size(); ++t) {
    const json& tree = trees_json[t];
    if (parse_root(field(tree, "root").get<std::string>(), opts) != supp[t])
      bad("forest: tree root differs from its support element");
    for (const json& nj : field(tree, "nodes")) {
      int id = field(nj, "id").get<int>();
      if (id < 0 || id >= static_cast<int>(total)) bad("forest: node ids must be dense 0..n-1");
      if (seen[id]) bad("forest: duplicate node id " + std::to_string(id));
      seen[id] = 1;
      ForestNode& n = nodes[id];
      n.id = id;
      n.tree = static_cast<int>(t);
      const json& parent = field(nj, "parent");
      const json& branch = field(nj, "branch");
      if (parent.is_null()) {
        if (!branch.is_null()) bad("forest: a root node cannot carry a branch label");
        if (roots[t] >= 0) bad("forest: tree with two roots");
        roots[t] = id;
      } else {
        n.parent = parent.get<int>();
        if (branch.is_null()) bad("forest: non-root node without a branch label");
        n.branch = parse_sentence(branch.get<std::string>(), opts);
      }
    }
  }
  for (std::size_t t = 0; t < supp.size(); ++t)
    if (roots[t] < 0) bad("forest: tree without a root node");

  // Children must come in beta / !beta pairs under a same-tree parent.
  std::map<int, std::vector<int>> children;
  for (const ForestNode& n : nodes) {
    if (n.parent < 0) continue;
    if (n.parent >= static_cast<int>(total) || nodes[n.parent].tree != n.tree)
      bad("forest: node " + std::to_string(n.id) + " has an invalid parent");
    children[n.parent].push_back(n.id);
  }
  for (auto& [parent, kids] : children) {
    if (kids.size() != 2)
      bad("forest: node " + std::to_string(parent) + " must have exactly two children");
    int a = kids[0], b = kids[1];
    if (*nodes[a].branch == Sentence::neg(*nodes[b].branch))
      std::swap(a, b);  // the second child was the beta child
    else if (*nodes[b].branch != Sentence::neg(*nodes[a].branch))
      bad("forest: children of node " + std::to_string(parent) +
          " are not a beta / !beta pair");
    nodes[parent].child_beta = a;
    nodes[parent].child_neg = b;
  }

  // Depths via repeated passes (parents may appear after children).
  int stage = 0;
  for (ForestNode& n : nodes) {
    int depth = 0, cur = n.id, hops = 0;
    while (nodes[cur].parent >= 0) {
      cur = nodes[cur].parent;
      ++depth;
      if (++hops > static_cast<int>(total)) bad("forest: parent cycle");
    }
    if (roots[n.tree] != cur) bad("forest: node not connected to its tree root");
    n.depth = depth;
    stage = std::max(stage, depth);
  }
  return forest_from_parts(std::move(supp), std::move(roots), std::move(nodes), stage);
}

json mass_to_json(const MassFunction& mass) {
  json weights = json::object();
  for (const auto& [id, value] : mass.weights())
    weights[std::to_string(id)] = rat_to_string(value);
  return json{{"mass", std::move(weights)}};
}

MassFunction mass_from_json(const Forest& forest, const json& doc) {
  const json& weights_json = field(doc, "mass");
  if (!weights_json.is_object()) bad("mass: \"mass\" must be an object");
  std::map<int, Rat> weights;
  for (const auto& [key, value] : weights_json.items()) {
    int id;
    try {
      std::size_t pos;
      id = std::stoi(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      bad("mass: leaf ids must be integer strings, got \"" + key + '"');
    }
    weights[id] = rat_field(value, "mass");
  }
  return MassFunction(forest, std::move(weights));
}

namespace {

std::vector<RawTerm> raw_terms_from_json(const json& terms, const ParseOptions& opts) {
  std::vector<RawTerm> out;
  for (const json& term : terms) {
    if (!term.is_array() || term.size() != 2) bad("problem: terms must be [coeff, sentence] pairs");
    out.push_back({rat_field(term[0], "problem"), parse_sentence(term[1].get<std::string>(), opts)});
  }
  return out;
}

std::vector<NatTerm> nat_terms_from_json(const json& terms, const ParseOptions& opts) {
  std::vector<NatTerm> out;
  for (const json& term : terms) {
    if (!term.is_array() || term.size() != 2) bad("problem: terms must be [coeff, sentence] pairs");
    Rat c = rat_field(term[0], "problem");
    if (c < 0 || denominator(c) != 1) bad("problem: normalized coefficients must be naturals");
    out.push_back({c, parse_sentence(term[1].get<std::string>(), opts)});
  }
  return out;
}

Rat nat_field(const json& j, const char* what) {
  Rat r = rat_field(j, what);
  if (r < 0 || denominator(r) != 1) bad(std::string(what) + ": expected a natural number");
  return r;
}

}  // namespace

Problem problem_from_json(const json& doc, const ParseOptions& opts) {
  Problem p;
  p.depth = field(doc, "depth").get<int>();
  if (p.depth < 0) bad("problem: negative depth");
  std::string mode = field(doc, "mode").get<std::string>();
  if (mode == "gensat")
    p.mode = ProblemMode::Gensat;
  else if (mode == "binf")
    p.mode = ProblemMode::Binf;
  else
    bad("problem: mode must be \"gensat\" or \"binf\"");
  if (doc.contains("query"))
    p.query = parse_sentence(doc["query"].get<std::string>(), opts);

  bool has_raw = doc.contains("raw_constraints");
  bool has_norm = doc.contains("constraints");
  if (has_raw == has_norm)
    bad("problem: exactly one of \"raw_constraints\" / \"constraints\" required");
  p.use_raw = has_raw;
  if (has_raw) {
    for (const json& cj : doc["raw_constraints"]) {
      RawConstraint c;
      c.terms = raw_terms_from_json(field(cj, "terms"), opts);
      std::string rel = field(cj, "rel").get<std::string>();
      if (rel == "<=")
        c.rel = Rel::Le;
      else if (rel == "=")
        c.rel = Rel::Eq;
      else if (rel == ">=")
        c.rel = Rel::Ge;
      else
        bad("problem: rel must be one of \"<=\", \"=\", \">=\"");
      c.bound = rat_field(field(cj, "bound"), "problem");
      p.raw_constraints.push_back(std::move(c));
    }
  } else {
    for (const json& cj : doc["constraints"]) {
      NormalizedConstraint c;
      c.bel_terms = nat_terms_from_json(field(cj, "bel"), opts);
      c.w = nat_field(field(cj, "w"), "problem w");
      c.pl_terms = nat_terms_from_json(field(cj, "pl"), opts);
      c.v = nat_field(field(cj, "v"), "problem v");
      p.constraints.push_back(std::move(c));
    }
  }
  if (doc.contains("supp")) {
    std::vector<Sentence> supp;
    for (const json& s : doc["supp"]) supp.push_back(parse_sentence(s.get<std::string>(), opts));
    if (supp.empty()) bad("problem: explicit \"supp\" must be nonempty");
    p.supp = std::move(supp);
  }
  if (doc.contains("max_depth")) p.max_depth = doc["max_depth"].get<int>();
  if (doc.contains("max_forests")) p.max_forests = doc["max_forests"].get<long long>();
  return p;
}

json trace_to_json(const DerivationTrace& trace) {
  json out = json::array();
  for (const TraceStep& step : trace) {
    out.push_back(json{{"sentence", print_sentence(step.sentence)},
                       {"rule", step.rule},
                       {"premises", step.premises}});
  }
  return out;
}

}  // namespace dbbel
