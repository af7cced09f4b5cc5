#include "zsc/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "zsc/codec.hpp"
#include "zsc/constructive.hpp"
#include "zsc/error.hpp"
#include "zsc/explorer.hpp"
#include "zsc/group.hpp"
#include "zsc/oracle.hpp"
#include "zsc/undirected.hpp"

namespace zsc {

namespace {

using ojson = nlohmann::ordered_json;

// Flag validation failure detected after parsing; maps to the usage code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable or unusable input data; maps to the data code.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string output;
  std::string config;
  std::optional<int> k, n, r, u, v, min_len, kmax;
  std::optional<std::uint64_t> seed, trials, budget;
  std::string strategy;
  std::string theorem;
  std::string generator;
  std::string set;
  std::string tree;
  int jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
};

std::string read_input(const Options& o, std::istream& in) {
  if (o.input.empty() || o.input == "-") {
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(o.input);
  if (!f) throw DataError("cannot open input file " + o.input);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

AnyGraph read_graph(const Options& o, std::istream& in) {
  try {
    return parse_graph(read_input(o, in));
  } catch (const CodecError& e) {
    throw DataError(std::string(o.input.empty() ? "<stdin>" : o.input) + ": " + e.what());
  }
}

template <class G>
const G& expect(const AnyGraph& g, const char* what) {
  if (!std::holds_alternative<G>(g)) throw DataError(std::string("expected ") + what);
  return std::get<G>(g);
}

ojson cycle_json(const GroupSpec& grp, const CycleWitness& c) {
  return {{"vertices", c.vertices}, {"directed", c.directed}, {"weight", elem_to_json(grp, c.weight)}};
}

ojson path_json(const GroupSpec& grp, const PathWitness& p) {
  return {{"vertices", p.vertices}, {"weight", elem_to_json(grp, p.weight)}};
}

ojson family_json(const GroupSpec& grp, const PathFamily& f) {
  auto paths = ojson::array();
  for (const auto& p : f.paths) paths.push_back(path_json(grp, p));
  return {{"source", f.source}, {"sink", f.sink}, {"paths", paths}};
}

ojson trace_json(const Trace& t) {
  auto a = ojson::array();
  for (const auto& s : t) a.push_back(s.label());
  return a;
}

SearchBudget budget_of(const Options& o) {
  return o.budget ? SearchBudget::nodes(*o.budget) : SearchBudget{};
}

void emit(const Options& o, std::ostream& out, const ojson& doc) {
  if (o.output.empty() || o.output == "-") {
    out << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw DataError("cannot write output file " + o.output);
  f << doc.dump(2) << "\n";
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: " + s);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> parse_tree(const std::string& s) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dash = item.find('-');
    if (dash == std::string::npos) throw UsageError("tree edges look like 0-1,1-2");
    auto a = parse_int_list(item.substr(0, dash));
    auto b = parse_int_list(item.substr(dash + 1));
    if (a.size() != 1 || b.size() != 1) throw UsageError("tree edges look like 0-1,1-2");
    out.emplace_back(a[0], b[0]);
  }
  return out;
}

int need(const std::optional<int>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag ") + flag);
  return *v;
}

// ---------------------------------------------------------------------------

int cmd_find_zero_cycle(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  AnyGraph g = read_graph(o, in);
  const bool directed = std::holds_alternative<WeightedDigraph>(g);
  const int min_len = o.min_len.value_or(directed ? 2 : 3);
  if (min_len < 2) throw UsageError("--min-len must be >= 2");
  CycleSearch s = std::visit([&](const auto& x) { return find_zero_cycle(x, min_len, kAllVertices, budget_of(o)); }, g);
  const GroupSpec& grp = std::visit([](const auto& x) -> const GroupSpec& { return x.group(); }, g);
  ojson doc;
  doc["outcome"] = s.cycle ? "found" : (s.status == SearchStatus::kBudgetExceeded ? "budget-exceeded" : "none");
  doc["cycle"] = s.cycle ? cycle_json(grp, *s.cycle) : ojson(nullptr);
  doc["min_len"] = min_len;
  doc["nodes"] = s.nodes;
  doc["cycles_enumerated"] = s.cycles;
  emit(o, out, doc);
  err << "find-zero-cycle: " << doc["outcome"].get<std::string>() << " after " << s.cycles << " cycles\n";
  return s.status == SearchStatus::kBudgetExceeded && !s.cycle ? kExitBudget : kExitOk;
}

int cmd_paths(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const int source = need(o.v, "--v"), sink = need(o.u, "--u"), r = need(o.r, "--r");
  if (r < 1) throw UsageError("--r must be >= 1");
  AnyGraph g = read_graph(o, in);
  PathFamilySearch s = std::visit(
      [&](const auto& x) {
        if (source < 0 || sink < 0 || source >= x.size() || sink >= x.size() || source == sink) {
          throw UsageError("--u and --v must be distinct vertices of the graph");
        }
        return distinct_weight_paths(x, source, sink, r, kAllVertices, budget_of(o));
      },
      g);
  const GroupSpec& grp = std::visit([](const auto& x) -> const GroupSpec& { return x.group(); }, g);
  ojson doc;
  doc["outcome"] = to_string(s.status);
  doc["family"] = s.family ? family_json(grp, *s.family) : ojson(nullptr);
  auto achieved = ojson::array();
  for (auto a : s.achieved) achieved.push_back(elem_to_json(grp, a));
  doc["achieved"] = achieved;
  doc["nodes"] = s.nodes;
  emit(o, out, doc);
  err << "paths: " << s.achieved.size() << " distinct weights achieved, r=" << r << "\n";
  return s.status == SearchStatus::kBudgetExceeded ? kExitBudget : kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
  const int k = need(o.k, "--k");
  if (k < 1) throw UsageError("--k must be >= 1");
  auto members = parse_int_list(o.set);
  for (int x : members) {
    if (x < 0 || x >= k) throw UsageError("set element " + std::to_string(x) + " outside [0,k)");
  }
  ResidueSet a(k, members);
  ojson doc;
  doc["k"] = k;
  doc["set"] = a.members();
  if (a.size() > 0) doc["shift_set"] = shift_set(a).members();
  NearApClassification c = classify_near_ap(a);
  doc["near_ap"] = c.witness.has_value();
  doc["witness"] = c.witness ? ojson{{"base", c.witness->base.members()}, {"shift", c.witness->shift}} : ojson(nullptr);
  doc["tag"] = to_string(c.tag);
  if (c.tag == NearApClassification::Tag::kDivisorCase) doc["divisor"] = c.divisor;
  if (c.tag == NearApClassification::Tag::kUnitCase) doc["unit"] = c.unit;
  doc["tie"] = c.tie;
  emit(o, out, doc);
  err << "classify-nearap: " << to_string(c.tag) << "\n";
  return kExitOk;
}

int cmd_construct(const std::string& which, const Options& o, std::ostream& out, std::ostream& err) {
  const int k = need(o.k, "--k");
  if (k < 2) throw UsageError("--k must be >= 2");
  if (which == "extremal-digraph") {
    if (k > kMaxVertices) throw UsageError("--k too large");
    emit(o, out, to_json(build_extremal_digraph(k)));
    err << "construct: extremal digraph on " << k << " vertices\n";
    return kExitOk;
  }
  auto tree = o.tree.empty() ? path_tree(o.n.value_or(2)) : parse_tree(o.tree);
  WeightedGraph g = [&] {
    try {
      return build_extremal_undirected(k, tree);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }();
  emit(o, out, to_json(g));
  err << "construct: extremal undirected graph on " << g.size() << " vertices, min degree " << g.min_degree()
      << ", " << g.edge_count() << " edges\n";
  return kExitOk;
}

int cmd_solve(const std::string& which, const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const AnyGraph doc_graph = read_graph(o, in);
  if (which == "lemma-one") {
    const int r = need(o.r, "--r"), sink = need(o.u, "--u"), source = need(o.v, "--v");
    const auto& g = expect<WeightedDigraph>(doc_graph, "a directed graph");
    LemmaOneOutcome res = lemma_one_solve(g, source, sink, r);
    ojson doc;
    doc["outcome"] = res.is_zero_cycle() ? "zero-cycle" : "family";
    doc["cycle"] = res.is_zero_cycle() ? cycle_json(g.group(), res.cycle()) : ojson(nullptr);
    doc["family"] = res.is_zero_cycle() ? ojson(nullptr) : family_json(g.group(), res.family());
    doc["trace"] = trace_json(res.trace);
    doc["fallbacks"] = res.fallbacks();
    emit(o, out, doc);
    err << "solve lemma-one: " << doc["outcome"].get<std::string>() << ", " << res.trace.size() << " steps, "
        << res.fallbacks() << " fallbacks\n";
    return kExitOk;
  }
  if (which == "theorem-main") {
    const auto& g = expect<WeightedDigraph>(doc_graph, "a directed graph");
    TheoremOutcome res = theorem_main_solve(g);
    ojson doc;
    doc["outcome"] = "zero-cycle";
    doc["cycle"] = cycle_json(g.group(), res.cycle);
    doc["trace"] = trace_json(res.trace);
    doc["fallbacks"] = res.fallbacks();
    emit(o, out, doc);
    err << "solve theorem-main: zero cycle of length " << res.cycle.vertices.size() << "\n";
    return kExitOk;
  }
  const auto& g = expect<WeightedGraph>(doc_graph, "an undirected graph");
  UndirectedOutcome res = theorem_undirected_solve(g);
  ojson doc;
  doc["outcome"] = "zero-cycle";
  doc["cycle"] = cycle_json(g.group(), res.cycle);
  doc["fallbacks"] = res.fallbacks;
  doc["log"] = res.log;
  emit(o, out, doc);
  err << "solve theorem-undirected: zero cycle of length " << res.cycle.vertices.size() << "\n";
  return kExitOk;
}

ExperimentConfig experiment_config(const std::string& task, const Options& o) {
  ExperimentConfig c;
  if (!o.config.empty()) {
    std::ifstream f(o.config);
    if (!f) throw DataError("cannot open config file " + o.config);
    nlohmann::json j = nlohmann::json::parse(f, nullptr, false);
    if (j.is_discarded()) throw DataError(o.config + ": malformed JSON");
    try {
      c = config_from_json(j);
    } catch (const DomainError& e) {
      throw DataError(o.config + ": " + e.what());
    }
    if (c.task != task) throw UsageError("config task \"" + c.task + "\" does not match subcommand " + task);
  }
  c.task = task;
  if (o.k) c.k = *o.k;
  if (o.n) c.n = *o.n;
  if (o.kmax) c.k_max = *o.kmax;
  if (o.seed) c.seed = *o.seed;
  if (o.trials) c.trials = *o.trials;
  if (o.budget) c.budget = *o.budget;
  if (!o.theorem.empty()) c.theorem = o.theorem;
  if (!o.generator.empty()) c.generator = o.generator;
  if (!o.strategy.empty()) {
    try {
      c.strategy = strategy_from_string(o.strategy);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  } else if (o.config.empty() && c.seed && task != "lemma-inc" && c.trials > 0) {
    c.strategy = Strategy::kRandom;
  }
  c.jobs = o.jobs;
  try {
    c.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return c;
}

int cmd_experiment(const std::string& task, const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = experiment_config(task, o);
  BoundReport rep = [&] {
    try {
      return run_experiment(cfg);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }();
  Options o2 = o;
  if (o2.output.empty()) o2.output = cfg.output;
  emit(o2, out, rep.to_json());
  err << task << ": " << to_string(rep.outcome) << " (" << rep.wall_seconds << " s)\n";
  return rep.exit_code();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-sum cycles in group-weighted graphs"};
  app.require_subcommand(1);
  Options o;

  auto add_io = [&](CLI::App* sc) {
    sc->add_option("--input", o.input, "Graph JSON file (default: standard input)");
    sc->add_option("--output", o.output, "Write JSON here instead of standard output");
  };
  auto add_experiment = [&](CLI::App* sc) {
    sc->add_option("--k", o.k, "Group order");
    sc->add_option("--n", o.n, "Number of vertices");
    sc->add_option("--seed", o.seed, "Seed for random strategies");
    sc->add_option("--trials", o.trials, "Number of random instances");
    sc->add_option("--budget", o.budget, "Cap on instances examined");
    sc->add_option("--strategy", o.strategy, "exhaustive | random | local_search");
    sc->add_option("--generator", o.generator, "Instance generator");
    sc->add_option("--config", o.config, "ExperimentConfig JSON file");
    sc->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sc->add_option("--output", o.output, "Write the report here instead of standard output");
  };

  auto* fzc = app.add_subcommand("find-zero-cycle", "Search a graph for a zero cycle");
  add_io(fzc);
  fzc->add_option("--min-len", o.min_len, "Minimum cycle length");
  fzc->add_option("--budget", o.budget, "Node budget");

  auto* paths = app.add_subcommand("paths", "Distinct-weight v-u paths");
  add_io(paths);
  paths->add_option("--u", o.u, "Sink");
  paths->add_option("--v", o.v, "Source");
  paths->add_option("--r", o.r, "Number of paths wanted");
  paths->add_option("--budget", o.budget, "Node budget");

  auto* classify = app.add_subcommand("classify-nearap", "Classify a subset of Z_k");
  classify->add_option("--k", o.k, "Modulus")->required();
  classify->add_option("--set", o.set, "Comma-separated residues")->required();
  classify->add_option("--output", o.output, "Write JSON here");

  auto* construct = app.add_subcommand("construct", "Extremal constructions");
  construct->require_subcommand(1);
  for (const char* name : {"extremal-digraph", "extremal-undirected"}) {
    auto* sc = construct->add_subcommand(name);
    sc->add_option("--k", o.k, "Group order")->required();
    sc->add_option("--output", o.output, "Write JSON here");
    if (std::string(name) == "extremal-undirected") {
      sc->add_option("--n", o.n, "Order of the path tree (default 2)");
      sc->add_option("--tree", o.tree, "Tree edges, e.g. 0-1,1-2");
    }
  }

  auto* solve = app.add_subcommand("solve", "Constructive solvers");
  solve->require_subcommand(1);
  for (const char* name : {"lemma-one", "theorem-main", "theorem-undirected"}) {
    auto* sc = solve->add_subcommand(name);
    add_io(sc);
    if (std::string(name) == "lemma-one") {
      sc->add_option("--u", o.u, "Sink")->required();
      sc->add_option("--v", o.v, "Source")->required();
      sc->add_option("--r", o.r, "Number of paths")->required();
    }
  }

  auto* verify = app.add_subcommand("verify", "Verification sweeps");
  verify->require_subcommand(1);
  auto* lemma_inc = verify->add_subcommand("lemma-inc", "Near-AP dichotomy for every subset");
  lemma_inc->add_option("--kmax", o.kmax, "Largest modulus")->required();
  lemma_inc->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  lemma_inc->add_option("--output", o.output, "Write the report here");
  auto* vtheorem = verify->add_subcommand("theorem", "Random or exhaustive theorem checks");
  add_experiment(vtheorem);
  vtheorem->add_option("--theorem", o.theorem, "main | corollary | undirected");

  auto* explore = app.add_subcommand("explore", "Open-question searches");
  explore->require_subcommand(1);
  auto* fbound = explore->add_subcommand("f-bound", "Zero-cycle-free complete digraphs");
  add_experiment(fbound);
  auto* q1 = explore->add_subcommand("q1", "Zero cycle or constant Hamiltonian path");
  add_experiment(q1);
  auto* q2 = explore->add_subcommand("q2", "Minimum degree k+1");
  add_experiment(q2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (auto* sc : app.get_subcommands()) {
      for (auto* sub : sc->get_subcommands()) {
        err << sub->help();
        return kExitUsage;
      }
      err << sc->help();
      return kExitUsage;
    }
    err << app.help();
    return kExitUsage;
  }

  try {
    if (fzc->parsed()) return cmd_find_zero_cycle(o, in, out, err);
    if (paths->parsed()) return cmd_paths(o, in, out, err);
    if (classify->parsed()) return cmd_classify(o, out, err);
    for (auto* sc : construct->get_subcommands()) return cmd_construct(sc->get_name(), o, out, err);
    for (auto* sc : solve->get_subcommands()) return cmd_solve(sc->get_name(), o, in, out, err);
    if (lemma_inc->parsed()) return cmd_experiment("lemma-inc", o, out, err);
    if (vtheorem->parsed()) return cmd_experiment("theorem", o, out, err);
    if (fbound->parsed()) return cmd_experiment("f-bound", o, out, err);
    if (q1->parsed()) return cmd_experiment("q1", o, out, err);
    if (q2->parsed()) return cmd_experiment("q2", o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitData;
  } catch (const LemmaViolation& e) {
    err << "internal error: " << e.what() << "\n";
    if (!o.input.empty()) err << "input: " << o.input << "\n";
    return kExitInternal;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitData;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace zsc
