#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dbbel/io.hpp"

namespace {

using dbbel::Rat;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Premises come semicolon-separated on the flag, or one per line (also
// allowing semicolons) in a file. "*" stands for the empty premise set.
std::vector<dbbel::Root> parse_premises(const std::string& text,
                                        const dbbel::ParseOptions& opts) {
  std::vector<dbbel::Root> out;
  std::string chunk;
  std::istringstream stream(text);
  auto flush = [&](const std::string& piece) {
    if (piece.find_first_not_of(" \t\r\n") == std::string::npos) return;
    try {
      out.push_back(dbbel::parse_root(piece, opts));
    } catch (const dbbel::ParseError& e) {
      throw UsageError("premise \"" + piece + "\": " + e.what() + " (offset " +
                       std::to_string(e.offset) + ")");
    }
  };
  for (std::string line; std::getline(stream, line);) {
    std::size_t start = 0;
    for (std::size_t semi = line.find(';'); semi != std::string::npos;
         start = semi + 1, semi = line.find(';', start))
      flush(line.substr(start, semi - start));
    flush(line.substr(start));
  }
  if (out.empty()) throw UsageError("no premises given (use \"*\" for none)");
  return out;
}

dbbel::Sentence parse_query(const std::string& text, const dbbel::ParseOptions& opts) {
  try {
    return dbbel::parse_sentence(text, opts);
  } catch (const dbbel::ParseError& e) {
    throw UsageError("sentence \"" + text + "\": " + e.what() + " (offset " +
                     std::to_string(e.offset) + ")");
  }
}

json witness_to_json(const dbbel::WitnessNode& node) {
  json out;
  out["branch"] = node.branch ? json(dbbel::print_sentence(*node.branch)) : json(nullptr);
  json children = json::array();
  for (const dbbel::WitnessNode& child : node.children)
    children.push_back(witness_to_json(child));
  out["children"] = std::move(children);
  return out;
}

json stage_to_json(const dbbel::DbmStage& stage) {
  return json{{"forest", dbbel::forest_to_json(stage.forest)},
              {"mass", dbbel::mass_to_json(stage.mass)},
              {"k", stage.stage}};
}

json assessment_row(const dbbel::DbmStage& stage, const dbbel::Sentence& query) {
  dbbel::BeliefAssessment a = dbbel::belief_and_plausibility(stage, query);
  return json{{"k", stage.stage},
              {"query", dbbel::print_sentence(query)},
              {"belief", dbbel::rat_to_string(a.belief)},
              {"plausibility", dbbel::rat_to_string(a.plausibility)}};
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// --- subcommand bodies -----------------------------------------------------

struct ProveArgs {
  std::string premises, premises_file, goal;
  bool trace = false;
  int k = 0;
};

std::vector<dbbel::Root> prove_premises(const ProveArgs& args, const dbbel::ParseOptions& opts) {
  if (args.premises.empty() == args.premises_file.empty())
    throw UsageError("exactly one of --premises / --premises-file required");
  std::string text = args.premises.empty() ? read_file(args.premises_file) : args.premises;
  return parse_premises(text, opts);
}

int run_prove0(const ProveArgs& args, const dbbel::ParseOptions& opts) {
  std::vector<dbbel::Root> premises = prove_premises(args, opts);
  dbbel::Sentence goal = parse_query(args.goal, opts);
  dbbel::DerivationTrace trace;
  bool derivable = dbbel::derives0(premises, goal, args.trace ? &trace : nullptr);
  json out{{"derivable", derivable}};
  if (args.trace && derivable) out["trace"] = dbbel::trace_to_json(trace);
  emit(out);
  return 0;
}

int run_provek(const ProveArgs& args, const dbbel::ParseOptions& opts) {
  std::vector<dbbel::Root> roots = prove_premises(args, opts);
  dbbel::Sentence goal = parse_query(args.goal, opts);
  std::vector<dbbel::Sentence> premises;
  for (const dbbel::Root& r : roots)
    if (!r.is_star()) premises.push_back(r.sentence());
  json out{{"k", args.k}, {"derivable", dbbel::derives_k(premises, goal, args.k)}};
  if (args.trace) {
    if (auto witness = dbbel::witness_tree(premises, goal, args.k))
      out["witness"] = witness_to_json(*witness);
  }
  emit(out);
  return 0;
}

int run_belief(const std::string& forest_path, const std::string& mass_path,
               const std::string& query_text, const std::string& format,
               const dbbel::ParseOptions& opts) {
  dbbel::Forest forest = dbbel::forest_from_json(load_json(forest_path), opts);
  dbbel::MassFunction mass = dbbel::mass_from_json(forest, load_json(mass_path));
  dbbel::Sentence query = parse_query(query_text, opts);
  dbbel::DbmStage stage{forest, mass, forest.stage()};
  dbbel::BeliefAssessment a = dbbel::belief_and_plausibility(stage, query);
  if (format == "csv") {
    std::cout << "k,query,belief,plausibility\n"
              << stage.stage << ',' << dbbel::print_sentence(query) << ','
              << dbbel::rat_to_string(a.belief) << ',' << dbbel::rat_to_string(a.plausibility)
              << "\n";
  } else {
    emit(assessment_row(stage, query));
  }
  return 0;
}

json solve_result_to_json(const dbbel::SolveResult& result, bool binf) {
  json out{{"status", result.sat ? "SAT" : "UNSAT"},
           {"forests_checked", result.forests_checked}};
  if (binf) {
    if (result.sat) {
      out["lower"] = dbbel::rat_to_string(*result.lower);
      out["upper"] = dbbel::rat_to_string(*result.upper);
      out["lower_witness"] = stage_to_json(*result.lower_witness);
      out["upper_witness"] = stage_to_json(*result.upper_witness);
    }
  } else if (result.sat) {
    out["witness"] = stage_to_json(*result.witness);
  }
  return out;
}

int run_solver(const std::string& problem_path, dbbel::ProblemMode mode,
               const dbbel::ParseOptions& opts) {
  dbbel::Problem problem = dbbel::problem_from_json(load_json(problem_path), opts);
  if (problem.mode != mode)
    throw UsageError("problem file's \"mode\" does not match the subcommand");
  dbbel::SolveResult result = dbbel::solve_problem(problem);
  emit(solve_result_to_json(result, mode == dbbel::ProblemMode::Binf));
  return 0;
}

// --- demo fixtures ----------------------------------------------------------

dbbel::Sentence exclusion_background(const std::vector<std::string>& colors) {
  // Conjunction of "each color excludes the others" with "some color".
  dbbel::ParseOptions desugared{true};
  std::string text;
  for (const std::string& c : colors) {
    std::string others;
    for (const std::string& o : colors) {
      if (o == c) continue;
      if (!others.empty()) others += " & ";
      others += "!" + o;
    }
    text += "(" + c + " -> " + others + ") & ";
  }
  std::string any;
  for (const std::string& c : colors) {
    if (!any.empty()) any += " | ";
    any += c;
  }
  text += "(" + any + ")";
  return dbbel::parse_sentence(text, desugared);
}

json urn_demo(const char* fixture, const std::vector<std::string>& colors,
              const std::vector<std::string>& supp_disjuncts,
              const std::vector<Rat>& root_masses,
              const std::vector<std::string>& split_vars,
              const std::vector<std::string>& k0_queries,
              const std::vector<std::string>& k1_queries) {
  dbbel::Sentence bg = exclusion_background(colors);
  std::vector<dbbel::Root> supp;
  std::vector<dbbel::Sentence> supp_sentences;
  for (const std::string& d : supp_disjuncts) {
    dbbel::Sentence s = dbbel::Sentence::conj(dbbel::parse_sentence(d), bg);
    supp_sentences.push_back(s);
    supp.push_back(dbbel::Root::info(s));
  }
  dbbel::Forest forest = dbbel::Forest::create(supp);
  std::map<int, Rat> weights;
  for (std::size_t t = 0; t < root_masses.size(); ++t)
    weights[static_cast<int>(t)] = root_masses[t];
  dbbel::DbmStage stage{forest, dbbel::MassFunction(forest, std::move(weights)), 0};

  // The query token "bg" stands for the background conjunction itself.
  auto query_of = [&bg](const std::string& q) {
    return q == "bg" ? bg : dbbel::parse_sentence(q);
  };
  json rows = json::array();
  for (const std::string& q : k0_queries)
    rows.push_back(assessment_row(stage, query_of(q)));

  // Depth 1: split the chosen roots evenly; the untouched trees already
  // decide the whole subsentence agenda.
  std::map<int, dbbel::Sentence> choices;
  for (std::size_t t = 0; t < split_vars.size(); ++t)
    if (!split_vars[t].empty())
      choices.emplace(static_cast<int>(t), dbbel::parse_sentence(split_vars[t]));
  stage = dbbel::refine(stage, choices, dbbel::symmetric_split(stage, choices),
                        dbbel::subsentences(supp_sentences));
  for (const std::string& q : k1_queries)
    rows.push_back(assessment_row(stage, query_of(q)));
  return json{{"fixture", fixture}, {"rows", std::move(rows)}};
}

json levesque_demo() {
  dbbel::ParseOptions opts;
  std::vector<dbbel::Sentence> premises = {
      dbbel::parse_sentence("l_ja", opts), dbbel::parse_sentence("l_ag", opts),
      dbbel::parse_sentence("m_j", opts), dbbel::parse_sentence("!m_g", opts)};
  dbbel::Sentence goal =
      dbbel::parse_sentence("(l_ja & m_j & !m_a) | (l_ag & m_a & !m_g)", opts);
  json out{{"fixture", "levesque"},
           {"goal", dbbel::print_sentence(goal)},
           {"k0_derivable", dbbel::derives_k(premises, goal, 0)},
           {"k1_derivable", dbbel::derives_k(premises, goal, 1)}};
  if (auto witness = dbbel::witness_tree(premises, goal, 1))
    out["witness"] = witness_to_json(*witness);
  return out;
}

json hierarchy_demo() {
  dbbel::Problem problem;
  problem.mode = dbbel::ProblemMode::Gensat;
  problem.use_raw = true;
  problem.raw_constraints = {
      {{{Rat(1), dbbel::parse_sentence("p")}}, dbbel::Rel::Ge, Rat(1) / 2},
      {{{Rat(1), dbbel::parse_sentence("q")}}, dbbel::Rel::Ge, Rat(2) / 3}};
  problem.depth = 0;
  json k0 = solve_result_to_json(dbbel::solve_problem(problem), false);
  problem.depth = 1;
  json k1 = solve_result_to_json(dbbel::solve_problem(problem), false);
  return json{{"fixture", "hierarchy"}, {"k0", std::move(k0)}, {"k1", std::move(k1)}};
}

int run_demo(const std::string& name) {
  if (name == "ellsberg") {
    emit(urn_demo("ellsberg", {"Y", "G", "R"}, {"Y | G", "R"},
                  {Rat(2) / 3, Rat(1) / 3}, {"Y", ""},
                  {"Y | G", "R", "bg", "Y", "G"}, {"Y", "G", "R"}));
  } else if (name == "ellsberg-variant") {
    emit(urn_demo("ellsberg-variant", {"Y", "G", "R", "W"}, {"Y | G", "W | R"},
                  {Rat(1) / 2, Rat(1) / 2}, {"Y", "W"},
                  {"Y | G", "W | R", "bg", "Y", "G", "R", "W"}, {"Y", "G", "R", "W"}));
  } else if (name == "levesque") {
    emit(levesque_demo());
  } else if (name == "hierarchy") {
    emit(hierarchy_demo());
  } else {
    throw UsageError("unknown demo \"" + name +
                     "\" (try: ellsberg, ellsberg-variant, levesque, hierarchy)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Depth-bounded Boolean belief toolkit"};
  app.require_subcommand(1);
  dbbel::ParseOptions opts;
  app.add_flag("--desugar-implication", opts.desugar_implication,
               "accept A -> B in input as shorthand for !A | B");

  ProveArgs prove;
  CLI::App* prove0 = app.add_subcommand("prove0", "decide Gamma |-0 goal");
  prove0->add_option("--premises", prove.premises, "semicolon-separated premises");
  prove0->add_option("--premises-file", prove.premises_file, "premises, one per line");
  prove0->add_option("--goal", prove.goal, "goal sentence")->required();
  prove0->add_flag("--trace", prove.trace, "include a checkable derivation");

  CLI::App* provek = app.add_subcommand("provek", "decide Gamma |-k goal");
  provek->add_option("--k", prove.k, "depth bound")->required();
  provek->add_option("--premises", prove.premises, "semicolon-separated premises");
  provek->add_option("--premises-file", prove.premises_file, "premises, one per line");
  provek->add_option("--goal", prove.goal, "goal sentence")->required();
  provek->add_flag("--trace", prove.trace, "include the branching witness");

  std::string forest_path, mass_path, query_text, format = "json";
  CLI::App* belief = app.add_subcommand("belief", "evaluate B_k / Pl_k on a forest + mass");
  belief->add_option("--forest", forest_path, "forest JSON file")->required();
  belief->add_option("--mass", mass_path, "mass JSON file")->required();
  belief->add_option("--query", query_text, "query sentence")->required();
  belief->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string problem_path;
  CLI::App* gensat = app.add_subcommand("gensat", "depth-k generalized satisfiability");
  gensat->add_option("--problem", problem_path, "problem JSON file")->required();
  CLI::App* binf = app.add_subcommand("binf", "tightest B_k / Pl_k interval for a query");
  binf->add_option("--problem", problem_path, "problem JSON file")->required();

  std::string demo_name;
  CLI::App* demo = app.add_subcommand("demo", "run a bundled fixture");
  demo->add_option("name", demo_name, "ellsberg | ellsberg-variant | levesque | hierarchy")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cout, std::cerr);
    return kExitUsage;
  }

  try {
    if (prove0->parsed()) return run_prove0(prove, opts);
    if (provek->parsed()) return run_provek(prove, opts);
    if (belief->parsed())
      return run_belief(forest_path, mass_path, query_text, format, opts);
    if (gensat->parsed()) return run_solver(problem_path, dbbel::ProblemMode::Gensat, opts);
    if (binf->parsed()) return run_solver(problem_path, dbbel::ProblemMode::Binf, opts);
    if (demo->parsed()) return run_demo(demo_name);
  } catch (const dbbel::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const dbbel::ParseError& e) {
    std::cerr << "error: " << e.what() << " (offset " << e.offset << ")\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
