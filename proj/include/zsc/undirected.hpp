#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "zsc/graph.hpp"
#include "zsc/oracle.hpp"

// Undirected graphs with a distinguished clique K. Configurations describe
// vertices outside K with many neighbours in K, joined by paths avoiding K.

namespace zsc {

struct CliquePair {
  WeightedGraph g;
  VertexSet clique = 0;

  VertexSet outside() const { return g.vertices() & ~clique; }
  /// |N(v) ∩ K|
  int clique_degree(int v) const { return set_size(g.neighbors(v) & clique); }
};

/// K induces a complete subgraph and is a proper subset of V(G).
bool is_clique_pair(const CliquePair& p);

using VertexPath = std::vector<int>;

struct ConfigA {
  int x = 0;
};
struct ConfigB {
  int x = 0, y = 0;
  VertexPath path;
};
struct ConfigC {
  int rank = 0;
  int x = 0, y = 0;
  std::vector<VertexPath> paths;
};
struct ConfigD {
  int rank = 0;
  int x = 0, y = 0, z = 0;
  int xp = 0, yp = 0, zp = 0;
  VertexPath px, py, pz;  // x..xp, y..yp, z..zp; a single vertex when trivial
  std::vector<VertexPath> paths;
};

using Configuration = std::variant<ConfigA, ConfigB, ConfigC, ConfigD>;

char config_type(const Configuration& c);
/// Rank for C and D, 0 otherwise.
int config_rank(const Configuration& c);
nlohmann::ordered_json to_json(const Configuration& c);

/// Checks every clause of the configuration's definition against G and K.
bool verify_configuration(const CliquePair& p, const Configuration& c);

struct ConfigSearch {
  SearchStatus status = SearchStatus::kExhausted;
  std::optional<Configuration> config;
  std::uint64_t nodes = 0;
};

/// Tries A, B, C (rank k down to 2) and D (rank k-1 down to 2) in that order.
/// Complete when the budget is unlimited.
ConfigSearch detect_configuration(const CliquePair& p, const SearchBudget& budget = {});

struct PeelResult {
  CliquePair pair;
  /// Vertex i of the new graph is vertex to_original[i] of the old one.
  std::vector<int> to_original;
};

/// Lowest-indexed vertex of K not adjacent to v, for every v in N(u) - K.
/// Entries for other vertices are -1.
std::vector<int> lowest_non_neighbour_map(const CliquePair& p, int u);

/// Deletes u from K and G and joins each v in N(u) - K to f[v] by a zero
/// edge. Requires that no vertex outside K is adjacent to all of K and that
/// f[v] is a vertex of K not adjacent to v.
PeelResult clique_peel_step(const CliquePair& p, int u, const std::vector<int>& f);

struct ReductionOutcome {
  std::variant<CycleWitness, Configuration> result;
  int fallbacks = 0;
  std::vector<std::string> log;

  bool is_zero_cycle() const { return std::holds_alternative<CycleWitness>(result); }
  const CycleWitness& cycle() const { return std::get<CycleWitness>(result); }
  const Configuration& config() const { return std::get<Configuration>(result); }
};

/// Either a zero cycle in G - V(K) or a configuration in (G, K). Requires
/// every vertex outside K to have degree >= 2k - 1 where k = |group|.
ReductionOutcome lemma_reduction_solve(const CliquePair& p);

struct UndirectedOutcome {
  CycleWitness cycle;
  int fallbacks = 0;
  std::vector<std::string> log;
};

/// Zero cycle in a graph of minimum degree >= 2k - 1.
UndirectedOutcome theorem_undirected_solve(const WeightedGraph& g);

}  // namespace zsc
