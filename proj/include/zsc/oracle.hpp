#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zsc/graph.hpp"

// Brute-force search engines. Every routine enumerates in a fixed vertex
// order, so identical inputs give identical outputs. Running out of budget is
// reported as its own status and is never confused with "nothing exists".

namespace zsc {

inline constexpr VertexSet kAllVertices = ~VertexSet{0};

struct SearchBudget {
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
  std::optional<std::chrono::steady_clock::time_point> deadline;

  static SearchBudget nodes(std::uint64_t n) { return SearchBudget{n, std::nullopt}; }
  bool unlimited() const {
    return max_nodes == std::numeric_limits<std::uint64_t>::max() && !deadline;
  }
};

enum class SearchStatus { kFound, kExhausted, kBudgetExceeded };
std::string to_string(SearchStatus s);

struct CycleWitness {
  std::vector<int> vertices;
  bool directed = true;
  GroupElem weight;
};

struct PathWitness {
  std::vector<int> vertices;
  GroupElem weight;
};

struct PathFamily {
  int source = 0;
  int sink = 0;
  std::vector<PathWitness> paths;
};

struct HeavyTriple {
  int x = 0, y = 0, z = 0;
  GroupElem c;
};

// ---------------------------------------------------------------------------
// Weights and witness checking. Weights include vertex weights.

/// Throws DomainError if the sequence is not a closed walk on distinct vertices.
GroupElem cycle_weight(const WeightedDigraph& g, std::span<const int> cycle);
GroupElem cycle_weight(const WeightedGraph& g, std::span<const int> cycle);
GroupElem path_weight(const WeightedDigraph& g, std::span<const int> path);
GroupElem path_weight(const WeightedGraph& g, std::span<const int> path);

/// Recomputes everything from the graph: distinct vertices inside `allowed`,
/// all edges present, length >= min_len, weight equal to the identity and to
/// the recorded weight.
bool is_zero_cycle(const WeightedDigraph& g, const CycleWitness& c, int min_len = 2,
                   VertexSet allowed = kAllVertices);
bool is_zero_cycle(const WeightedGraph& g, const CycleWitness& c, int min_len = 3,
                   VertexSet allowed = kAllVertices);

/// Simple path from `from` to `to` whose interior lies in `interior`.
bool is_simple_path(const WeightedDigraph& g, std::span<const int> path, int from, int to,
                    VertexSet interior = kAllVertices);
bool is_simple_path(const WeightedGraph& g, std::span<const int> path, int from, int to,
                    VertexSet interior = kAllVertices);

/// At least r paths, each simple with order >= min_order, pairwise-distinct
/// recomputed weights matching the recorded ones.
bool is_valid_family(const WeightedDigraph& g, const PathFamily& f, int r,
                     VertexSet interior = kAllVertices, int min_order = 3);
bool is_valid_family(const WeightedGraph& g, const PathFamily& f, int r,
                     VertexSet interior = kAllVertices, int min_order = 2);

// ---------------------------------------------------------------------------
// Cycle enumeration

/// Called with each simple cycle (smallest vertex first) and its weight.
/// Return false to stop.
using CycleVisitor = std::function<bool(std::span<const int>, GroupElem)>;

struct EnumerationStats {
  SearchStatus status = SearchStatus::kExhausted;  // kFound when the visitor stopped early
  std::uint64_t nodes = 0;
  std::uint64_t cycles = 0;
};

EnumerationStats for_each_simple_cycle(const WeightedDigraph& g, const CycleVisitor& visit,
                                       int min_len = 2, VertexSet allowed = kAllVertices,
                                       const SearchBudget& budget = {});
/// Each undirected cycle is reported once.
EnumerationStats for_each_simple_cycle(const WeightedGraph& g, const CycleVisitor& visit,
                                       int min_len = 3, VertexSet allowed = kAllVertices,
                                       const SearchBudget& budget = {});

struct CycleSearch {
  SearchStatus status = SearchStatus::kExhausted;
  std::optional<CycleWitness> cycle;
  std::uint64_t nodes = 0;
  std::uint64_t cycles = 0;
};

/// First zero cycle of length >= min_len within `allowed`, in DFS order.
CycleSearch find_zero_cycle(const WeightedDigraph& g, int min_len = 2,
                            VertexSet allowed = kAllVertices, const SearchBudget& budget = {});
CycleSearch find_zero_cycle(const WeightedGraph& g, int min_len = 3,
                            VertexSet allowed = kAllVertices, const SearchBudget& budget = {});

// ---------------------------------------------------------------------------
// Path families

struct PathFamilySearch {
  /// kFound iff at least r distinct weights were achieved.
  SearchStatus status = SearchStatus::kExhausted;
  std::optional<PathFamily> family;
  /// Achieved weights, sorted. Partial when the budget ran out or when the
  /// search stopped at r.
  std::vector<GroupElem> achieved;
  std::uint64_t nodes = 0;
};

/// Simple source-sink paths of order >= min_order with interior inside
/// `interior`. The family holds the first path found for each of the first r
/// distinct weights.
PathFamilySearch distinct_weight_paths(const WeightedDigraph& g, int source, int sink, int r,
                                       VertexSet interior = kAllVertices,
                                       const SearchBudget& budget = {}, bool stop_at_r = false,
                                       int min_order = 3);
PathFamilySearch distinct_weight_paths(const WeightedGraph& g, int source, int sink, int r,
                                       VertexSet interior = kAllVertices,
                                       const SearchBudget& budget = {}, bool stop_at_r = false,
                                       int min_order = 2);

/// Calls `visit` with every simple source-sink path (and its weight) of order
/// >= min_order. Return false to stop.
using PathVisitor = std::function<bool(std::span<const int>, GroupElem)>;
EnumerationStats for_each_simple_path(const WeightedGraph& g, int source, int sink,
                                      const PathVisitor& visit, VertexSet interior = kAllVertices,
                                      int min_order = 2, const SearchBudget& budget = {});
EnumerationStats for_each_simple_path(const WeightedDigraph& g, int source, int sink,
                                      const PathVisitor& visit, VertexSet interior = kAllVertices,
                                      int min_order = 3, const SearchBudget& budget = {});

// ---------------------------------------------------------------------------
// Heavy triples and single-weight Hamiltonian paths

/// Vertices x, y, z with w(xy) == w(yz) == c and w(xz) == -c, c in {a, -a}.
/// Requires every edge weight among `allowed` to be 0, a or -a, and a to be a
/// unit of a cyclic group; throws DomainError otherwise.
std::optional<HeavyTriple> find_heavy_triple(const WeightedDigraph& derived, GroupElem a,
                                             VertexSet allowed = kAllVertices);

struct HamPathSearch {
  SearchStatus status = SearchStatus::kExhausted;
  std::optional<PathWitness> path;
  std::uint64_t nodes = 0;
};

/// Hamiltonian path through `allowed` whose edges all weigh exactly c.
HamPathSearch mono_hamiltonian_path(const WeightedDigraph& g, GroupElem c,
                                    VertexSet allowed = kAllVertices,
                                    const SearchBudget& budget = {});

}  // namespace zsc
