#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "zsc/graph.hpp"
#include "zsc/oracle.hpp"

namespace zsc {

/// One step of the constructive recursion.
struct TraceStep {
  enum class Kind { kBase1, kBase2, kAppend, kQuotient, kHeavyTriple, kDominatingEdge, kOracleFallback };

  Kind kind;
  int detail = 0;  // the divisor for kQuotient

  /// "Base1", "Quotient(2)", ...
  std::string label() const;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

using Trace = std::vector<TraceStep>;
int count_steps(const Trace& trace, TraceStep::Kind kind);

/// Either a zero cycle avoiding both endpoints, or r source-sink paths of
/// order >= 3 with pairwise-distinct weights.
struct LemmaOneOutcome {
  std::variant<CycleWitness, PathFamily> result;
  Trace trace;

  bool is_zero_cycle() const { return std::holds_alternative<CycleWitness>(result); }
  const CycleWitness& cycle() const { return std::get<CycleWitness>(result); }
  const PathFamily& family() const { return std::get<PathFamily>(result); }
  int fallbacks() const { return count_steps(trace, TraceStep::Kind::kOracleFallback); }
};

/// For a complete Z_k-weighted digraph on `scope` with zero vertex weights,
/// |scope| >= r + 2*omega(k) and 1 <= r < k: returns a zero cycle inside
/// scope - {source, sink} or r source-sink paths with distinct weights.
/// Every returned witness has been re-validated against g.
LemmaOneOutcome lemma_one_solve(const WeightedDigraph& g, int source, int sink, int r,
                                VertexSet scope = kAllVertices);

struct TheoremOutcome {
  CycleWitness cycle;
  Trace trace;
  int fallbacks() const { return count_steps(trace, TraceStep::Kind::kOracleFallback); }
};

/// Zero cycle in a complete Z_k-weighted digraph on at least k + 2*omega(k)
/// vertices (restricted to `scope`). Vertex weights must be zero.
TheoremOutcome theorem_main_solve(const WeightedDigraph& g, VertexSet scope = kAllVertices);

/// A derived weighting with values in {0, c, -c} on `vertices` where the zero
/// edges are acyclic, xy is a zero edge with exactly one of w(zx), w(yz) zero
/// for every other z, and yx is the only edge of weight -c.
struct DominatingStructure {
  WeightedDigraph derived;
  VertexSet vertices = 0;
  int x = 0;
  int y = 0;
  GroupElem c;
};

/// Throws DomainError describing the first violated property.
void check_dominating_structure(const DominatingStructure& s);

/// Hamiltonian path through s.vertices with every edge of weight c, obtained
/// by reordering a topological order of the zero edges around the dominating
/// edge. Throws DomainError if the structure is invalid.
PathWitness dominating_order_hampath(const DominatingStructure& s);

/// Order of `vertices` in which every zero edge points backwards, or a cycle
/// of zero edges if none exists.
std::variant<std::vector<int>, CycleWitness> zero_edge_order(const WeightedDigraph& derived,
                                                             VertexSet vertices);

/// Outcome of trying to build a DominatingStructure on a derived weighting
/// free of heavy triples that has edges of both weights a and -a.
struct StructureSearch {
  std::variant<std::monostate, DominatingStructure, CycleWitness, HeavyTriple> result;
  bool failed() const { return std::holds_alternative<std::monostate>(result); }
};
StructureSearch establish_dominating_structure(const WeightedDigraph& derived, VertexSet vertices,
                                               GroupElem a);

/// Complete digraph on 0..k-1 with w(i->j) = 0 for i < j and 1 for i > j.
/// A cycle weighs its number of descending edges, which is in [1, k-1].
WeightedDigraph build_extremal_digraph(int k);

/// A nontrivial tree joined to every vertex of a clique of order k-1. Clique
/// vertices weigh 1, everything else 0. Tree vertices are 0..t-1 and clique
/// vertices t..t+k-2. Throws DomainError if the edges do not form a tree.
WeightedGraph build_extremal_undirected(int k, std::span<const std::pair<int, int>> tree_edges);

/// Path tree 0-1-...-(t-1).
std::vector<std::pair<int, int>> path_tree(int t);

}  // namespace zsc
