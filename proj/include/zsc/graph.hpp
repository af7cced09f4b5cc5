#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "zsc/group.hpp"

namespace zsc {

/// Vertex subsets as bitmasks. Graphs are limited to 64 vertices, which is
/// far beyond the sizes any exhaustive search here can handle.
using VertexSet = std::uint64_t;
inline constexpr int kMaxVertices = 64;

constexpr VertexSet vertex_bit(int v) { return VertexSet{1} << v; }
constexpr bool contains(VertexSet s, int v) { return (s >> v) & 1U; }
constexpr int set_size(VertexSet s) { return std::popcount(s); }
constexpr int lowest_vertex(VertexSet s) { return std::countr_zero(s); }
constexpr VertexSet first_n(int n) { return n >= 64 ? ~VertexSet{0} : vertex_bit(n) - 1; }
std::vector<int> members(VertexSet s);
VertexSet make_set(std::span<const int> vertices);

/// Simple digraph with group weights on vertices and on ordered pairs.
class WeightedDigraph {
 public:
  WeightedDigraph(GroupSpec group, int n);
  /// Complete digraph with all edge and vertex weights zero.
  static WeightedDigraph complete(GroupSpec group, int n);

  int size() const { return n_; }
  const GroupSpec& group() const { return group_; }
  VertexSet vertices() const { return first_n(n_); }

  bool has_edge(int u, int v) const;
  /// Throws DomainError when the edge is absent.
  GroupElem weight(int u, int v) const;
  void set_edge(int u, int v, GroupElem w);
  void remove_edge(int u, int v);
  int edge_count() const;
  /// Every ordered pair of distinct vertices is an edge.
  bool is_complete() const;
  /// Every ordered pair of distinct vertices of s is an edge.
  bool is_complete_on(VertexSet s) const;

  GroupElem vertex_weight(int v) const;
  void set_vertex_weight(int v, GroupElem w);
  bool has_zero_vertex_weights() const;

  friend bool operator==(const WeightedDigraph&, const WeightedDigraph&) = default;

 private:
  void check_vertex(int v) const;
  std::size_t slot(int u, int v) const { return static_cast<std::size_t>(u) * n_ + v; }

  GroupSpec group_;
  int n_;
  std::vector<GroupElem> vertex_weight_;
  std::vector<GroupElem> edge_weight_;
  std::vector<std::uint8_t> present_;
};

/// Simple undirected graph with group weights on vertices and edges.
class WeightedGraph {
 public:
  WeightedGraph(GroupSpec group, int n);
  static WeightedGraph complete(GroupSpec group, int n);

  int size() const { return n_; }
  const GroupSpec& group() const { return group_; }
  VertexSet vertices() const { return first_n(n_); }

  bool has_edge(int u, int v) const;
  GroupElem weight(int u, int v) const;
  void set_edge(int u, int v, GroupElem w);
  void remove_edge(int u, int v);
  int edge_count() const;
  bool is_complete() const;

  VertexSet neighbors(int v) const;
  int degree(int v) const { return set_size(neighbors(v)); }
  int min_degree() const;

  GroupElem vertex_weight(int v) const;
  void set_vertex_weight(int v, GroupElem w);

  /// Graph on the vertices of `keep`, renumbered in increasing order.
  WeightedGraph induced(VertexSet keep) const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  void check_vertex(int v) const;

  GroupSpec group_;
  int n_;
  std::vector<GroupElem> vertex_weight_;
  std::vector<GroupElem> edge_weight_;  // n*n, kept symmetric
  std::vector<VertexSet> adjacency_;
};

/// Folds each vertex weight into the edges leaving it. The result has zero
/// vertex weights and the same weight on every directed cycle.
WeightedDigraph normalize_vertex_weights(const WeightedDigraph& g);

/// Re-weights edges relative to a sink: w'(xy) = w(xy) + w(yu) - w(xu) for
/// distinct x, y outside {sink} and outside `excluded`. Cycles avoiding the
/// sink keep their weight. Requires zero vertex weights.
WeightedDigraph derived_weighting(const WeightedDigraph& g, int sink, VertexSet excluded = 0);

/// The derived weighting divided by d, as a graph over Z_{k/d}. Throws
/// PreconditionError naming the first pair whose derived weight is not a
/// multiple of d. Zero cycles of the result are zero cycles of g.
WeightedDigraph quotient_weighting(const WeightedDigraph& g, int sink, int d, VertexSet excluded = 0);

}  // namespace zsc
