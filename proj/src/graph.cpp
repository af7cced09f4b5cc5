#include "zsc/graph.hpp"

#include <algorithm>

#include <string>

#include "zsc/error.hpp"

namespace zsc {

std::vector<int> members(VertexSet s) {
  std::vector<int> out;
  out.reserve(set_size(s));
  for (; s; s &= s - 1) out.push_back(lowest_vertex(s));
  return out;
}

VertexSet make_set(std::span<const int> vertices) {
  VertexSet s = 0;
  for (int v : vertices) {
    if (v < 0 || v >= kMaxVertices) throw DomainError("vertex " + std::to_string(v) + " out of range");
    s |= vertex_bit(v);
  }
  return s;
}

namespace {

void check_size(int n) {
  if (n < 0 || n > kMaxVertices) {
    throw DomainError("vertex count must be in [0," + std::to_string(kMaxVertices) + "], got " +
                      std::to_string(n));
  }
}

std::string pair_name(int u, int v) { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }

}  // namespace

// ---------------------------------------------------------------------------
// WeightedDigraph

WeightedDigraph::WeightedDigraph(GroupSpec group, int n) : group_(std::move(group)), n_(n) {
  check_size(n);
  vertex_weight_.assign(n, group_.zero());
  edge_weight_.assign(static_cast<std::size_t>(n) * n, group_.zero());
  present_.assign(static_cast<std::size_t>(n) * n, 0);
}

WeightedDigraph WeightedDigraph::complete(GroupSpec group, int n) {
  WeightedDigraph g(std::move(group), n);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) g.present_[g.slot(u, v)] = 1;
    }
  }
  return g;
}

void WeightedDigraph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw DomainError("vertex " + std::to_string(v) + " out of range");
}

bool WeightedDigraph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return present_[slot(u, v)] != 0;
}

GroupElem WeightedDigraph::weight(int u, int v) const {
  if (!has_edge(u, v)) throw DomainError("missing edge " + pair_name(u, v));
  return edge_weight_[slot(u, v)];
}

void WeightedDigraph::set_edge(int u, int v, GroupElem w) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
  group_.element(w.code);
  present_[slot(u, v)] = 1;
  edge_weight_[slot(u, v)] = w;
}

void WeightedDigraph::remove_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  present_[slot(u, v)] = 0;
  edge_weight_[slot(u, v)] = group_.zero();
}

int WeightedDigraph::edge_count() const {
  int count = 0;
  for (auto p : present_) count += p;
  return count;
}

bool WeightedDigraph::is_complete() const { return edge_count() == n_ * (n_ - 1); }

bool WeightedDigraph::is_complete_on(VertexSet s) const {
  for (int u : members(s)) {
    for (int v : members(s)) {
      if (u != v && !has_edge(u, v)) return false;
    }
  }
  return true;
}

GroupElem WeightedDigraph::vertex_weight(int v) const {
  check_vertex(v);
  return vertex_weight_[v];
}

void WeightedDigraph::set_vertex_weight(int v, GroupElem w) {
  check_vertex(v);
  group_.element(w.code);
  vertex_weight_[v] = w;
}

bool WeightedDigraph::has_zero_vertex_weights() const {
  for (auto w : vertex_weight_) {
    if (w != group_.zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// WeightedGraph

WeightedGraph::WeightedGraph(GroupSpec group, int n) : group_(std::move(group)), n_(n) {
  check_size(n);
  vertex_weight_.assign(n, group_.zero());
  edge_weight_.assign(static_cast<std::size_t>(n) * n, group_.zero());
  adjacency_.assign(n, 0);
}

WeightedGraph WeightedGraph::complete(GroupSpec group, int n) {
  WeightedGraph g(std::move(group), n);
  for (int v = 0; v < n; ++v) g.adjacency_[v] = first_n(n) & ~vertex_bit(v);
  return g;
}

void WeightedGraph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw DomainError("vertex " + std::to_string(v) + " out of range");
}

bool WeightedGraph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return contains(adjacency_[u], v);
}

GroupElem WeightedGraph::weight(int u, int v) const {
  if (!has_edge(u, v)) throw DomainError("missing edge " + pair_name(u, v));
  return edge_weight_[static_cast<std::size_t>(u) * n_ + v];
}

void WeightedGraph::set_edge(int u, int v, GroupElem w) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
  group_.element(w.code);
  adjacency_[u] |= vertex_bit(v);
  adjacency_[v] |= vertex_bit(u);
  edge_weight_[static_cast<std::size_t>(u) * n_ + v] = w;
  edge_weight_[static_cast<std::size_t>(v) * n_ + u] = w;
}

void WeightedGraph::remove_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  adjacency_[u] &= ~vertex_bit(v);
  adjacency_[v] &= ~vertex_bit(u);
  edge_weight_[static_cast<std::size_t>(u) * n_ + v] = group_.zero();
  edge_weight_[static_cast<std::size_t>(v) * n_ + u] = group_.zero();
}

int WeightedGraph::edge_count() const {
  int twice = 0;
  for (auto a : adjacency_) twice += set_size(a);
  return twice / 2;
}

bool WeightedGraph::is_complete() const { return edge_count() == n_ * (n_ - 1) / 2; }

VertexSet WeightedGraph::neighbors(int v) const {
  check_vertex(v);
  return adjacency_[v];
}

int WeightedGraph::min_degree() const {
  int best = n_ == 0 ? 0 : n_;
  for (auto a : adjacency_) best = std::min(best, set_size(a));
  return best;
}

GroupElem WeightedGraph::vertex_weight(int v) const {
  check_vertex(v);
  return vertex_weight_[v];
}

void WeightedGraph::set_vertex_weight(int v, GroupElem w) {
  check_vertex(v);
  group_.element(w.code);
  vertex_weight_[v] = w;
}

WeightedGraph WeightedGraph::induced(VertexSet keep) const {
  keep &= vertices();
  std::vector<int> old = members(keep);
  WeightedGraph h(group_, static_cast<int>(old.size()));
  for (std::size_t i = 0; i < old.size(); ++i) {
    h.set_vertex_weight(static_cast<int>(i), vertex_weight(old[i]));
    for (std::size_t j = i + 1; j < old.size(); ++j) {
      if (has_edge(old[i], old[j])) {
        h.set_edge(static_cast<int>(i), static_cast<int>(j), weight(old[i], old[j]));
      }
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Re-weightings

WeightedDigraph normalize_vertex_weights(const WeightedDigraph& g) {
  const GroupSpec& grp = g.group();
  WeightedDigraph out(grp, g.size());
  for (int u = 0; u < g.size(); ++u) {
    for (int v = 0; v < g.size(); ++v) {
      if (g.has_edge(u, v)) out.set_edge(u, v, grp.add(g.weight(u, v), g.vertex_weight(u)));
    }
  }
  return out;
}

WeightedDigraph derived_weighting(const WeightedDigraph& g, int sink, VertexSet excluded) {
  if (sink < 0 || sink >= g.size()) throw DomainError("sink out of range");
  if (!g.has_zero_vertex_weights()) {
    throw DomainError("derived_weighting requires zero vertex weights; normalize first");
  }
  const GroupSpec& grp = g.group();
  WeightedDigraph out(grp, g.size());
  const VertexSet keep = g.vertices() & ~excluded & ~vertex_bit(sink);
  for (int x : members(keep)) {
    for (int y : members(keep)) {
      if (x == y) continue;
      GroupElem w = grp.sub(grp.add(g.weight(x, y), g.weight(y, sink)), g.weight(x, sink));
      out.set_edge(x, y, w);
    }
  }
  return out;
}

WeightedDigraph quotient_weighting(const WeightedDigraph& g, int sink, int d, VertexSet excluded) {
  const GroupSpec& grp = g.group();
  if (!grp.is_cyclic()) throw DomainError("quotient_weighting requires a cyclic group");
  const int k = grp.order();
  if (d <= 1 || d >= k || k % d != 0) {
    throw DomainError("quotient divisor must be a proper divisor > 1 of " + std::to_string(k));
  }
  WeightedDigraph derived = derived_weighting(g, sink, excluded);
  GroupSpec quotient = GroupSpec::cyclic(k / d);
  WeightedDigraph out(quotient, g.size());
  for (int x = 0; x < g.size(); ++x) {
    for (int y = 0; y < g.size(); ++y) {
      if (!derived.has_edge(x, y)) continue;
      int w = derived.weight(x, y).code;
      if (w % d != 0) {
        throw PreconditionError("derived weight of " + pair_name(x, y) + " is " + std::to_string(w) +
                                ", not a multiple of " + std::to_string(d));
      }
      out.set_edge(x, y, quotient.element(w / d));
    }
  }
  return out;
}

}  // namespace zsc
