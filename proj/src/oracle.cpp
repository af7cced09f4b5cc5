#include "zsc/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "zsc/error.hpp"

namespace zsc {

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound: return "found";
    case SearchStatus::kExhausted: return "exhausted";
    case SearchStatus::kBudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

namespace {

// Node accounting shared by every search.
class Meter {
 public:
  explicit Meter(const SearchBudget& b) : budget_(b) {}

  // Returns false once the budget is spent.
  bool tick() {
    ++nodes_;
    if (nodes_ > budget_.max_nodes) {
      exceeded_ = true;
      return false;
    }
    if (budget_.deadline && (nodes_ & 0xfff) == 0 &&
        std::chrono::steady_clock::now() > *budget_.deadline) {
      exceeded_ = true;
      return false;
    }
    return true;
  }
  std::uint64_t nodes() const { return nodes_; }
  bool exceeded() const { return exceeded_; }

 private:
  const SearchBudget& budget_;
  std::uint64_t nodes_ = 0;
  bool exceeded_ = false;
};

VertexSet adjacency_out(const WeightedDigraph& g, int v) {
  VertexSet s = 0;
  for (int w = 0; w < g.size(); ++w) {
    if (g.has_edge(v, w)) s |= vertex_bit(w);
  }
  return s;
}
VertexSet adjacency_out(const WeightedGraph& g, int v) { return g.neighbors(v); }

template <class Graph>
std::vector<VertexSet> out_sets(const Graph& g) {
  std::vector<VertexSet> out(g.size());
  for (int v = 0; v < g.size(); ++v) out[v] = adjacency_out(g, v);
  return out;
}

// DFS over simple cycles rooted at their smallest vertex. Undirected cycles
// are kept only in the orientation whose second vertex is below the last.
template <class Graph, class Visit>
class CycleDfs {
 public:
  CycleDfs(const Graph& g, VertexSet allowed, int min_len, bool directed, const SearchBudget& budget,
           Visit& visit)
      : g_(g),
        grp_(g.group()),
        allowed_(allowed & g.vertices()),
        min_len_(min_len),
        directed_(directed),
        meter_(budget),
        visit_(visit),
        out_(out_sets(g)) {}

  EnumerationStats run() {
    for (VertexSet roots = allowed_; roots && !stop_ && !meter_.exceeded(); roots &= roots - 1) {
      int s = lowest_vertex(roots);
      path_.assign(1, s);
      VertexSet higher = allowed_ & ~(vertex_bit(s + 1) - 1);
      dfs(s, s, g_.vertex_weight(s), higher);
    }
    EnumerationStats st;
    st.nodes = meter_.nodes();
    st.cycles = cycles_;
    st.status = stop_ ? SearchStatus::kFound
                      : (meter_.exceeded() ? SearchStatus::kBudgetExceeded : SearchStatus::kExhausted);
    return st;
  }

 private:
  void dfs(int root, int last, GroupElem acc, VertexSet avail) {
    const auto len = static_cast<int>(path_.size());
    if (len >= min_len_ && len >= (directed_ ? 2 : 3) && contains(out_[last], root) &&
        (directed_ || path_[1] < last)) {
      ++cycles_;
      if (!visit_(std::span<const int>(path_), grp_.add(acc, g_.weight(last, root)))) {
        stop_ = true;
        return;
      }
    }
    for (VertexSet next = avail & out_[last]; next; next &= next - 1) {
      int v = lowest_vertex(next);
      if (!meter_.tick()) return;
      path_.push_back(v);
      dfs(root, v, grp_.add(grp_.add(acc, g_.weight(last, v)), g_.vertex_weight(v)),
          avail & ~vertex_bit(v));
      path_.pop_back();
      if (stop_ || meter_.exceeded()) return;
    }
  }

  const Graph& g_;
  const GroupSpec& grp_;
  VertexSet allowed_;
  int min_len_;
  bool directed_;
  Meter meter_;
  Visit& visit_;
  std::vector<VertexSet> out_;
  std::vector<int> path_;
  std::uint64_t cycles_ = 0;
  bool stop_ = false;
};

template <class Graph, class Visit>
class PathDfs {
 public:
  PathDfs(const Graph& g, int source, int sink, VertexSet interior, int min_order,
          const SearchBudget& budget, Visit& visit)
      : g_(g),
        grp_(g.group()),
        source_(source),
        sink_(sink),
        interior_(interior & g.vertices() & ~vertex_bit(source) & ~vertex_bit(sink)),
        min_order_(min_order),
        meter_(budget),
        visit_(visit),
        out_(out_sets(g)) {}

  EnumerationStats run() {
    path_.assign(1, source_);
    dfs(source_, g_.vertex_weight(source_), interior_);
    EnumerationStats st;
    st.nodes = meter_.nodes();
    st.cycles = found_;
    st.status = stop_ ? SearchStatus::kFound
                      : (meter_.exceeded() ? SearchStatus::kBudgetExceeded : SearchStatus::kExhausted);
    return st;
  }

 private:
  void dfs(int last, GroupElem acc, VertexSet avail) {
    if (static_cast<int>(path_.size()) + 1 >= min_order_ && contains(out_[last], sink_)) {
      path_.push_back(sink_);
      ++found_;
      bool go_on = visit_(std::span<const int>(path_),
                          grp_.add(grp_.add(acc, g_.weight(last, sink_)), g_.vertex_weight(sink_)));
      path_.pop_back();
      if (!go_on) {
        stop_ = true;
        return;
      }
    }
    for (VertexSet next = avail & out_[last]; next; next &= next - 1) {
      int v = lowest_vertex(next);
      if (!meter_.tick()) return;
      path_.push_back(v);
      dfs(v, grp_.add(grp_.add(acc, g_.weight(last, v)), g_.vertex_weight(v)), avail & ~vertex_bit(v));
      path_.pop_back();
      if (stop_ || meter_.exceeded()) return;
    }
  }

  const Graph& g_;
  const GroupSpec& grp_;
  int source_, sink_;
  VertexSet interior_;
  int min_order_;
  Meter meter_;
  Visit& visit_;
  std::vector<VertexSet> out_;
  std::vector<int> path_;
  std::uint64_t found_ = 0;
  bool stop_ = false;
};

template <class Graph>
GroupElem walk_weight(const Graph& g, std::span<const int> seq, bool closed) {
  const GroupSpec& grp = g.group();
  if (seq.empty()) throw DomainError("empty vertex sequence");
  VertexSet seen = 0;
  GroupElem total = grp.zero();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    int v = seq[i];
    if (v < 0 || v >= g.size()) throw DomainError("vertex " + std::to_string(v) + " out of range");
    if (contains(seen, v)) throw DomainError("vertex " + std::to_string(v) + " repeated");
    seen |= vertex_bit(v);
    total = grp.add(total, g.vertex_weight(v));
    if (i + 1 < seq.size()) total = grp.add(total, g.weight(v, seq[i + 1]));
  }
  if (closed) total = grp.add(total, g.weight(seq.back(), seq.front()));
  return total;
}

template <class Graph>
bool check_zero_cycle(const Graph& g, const CycleWitness& c, int min_len, VertexSet allowed,
                      bool directed) {
  if (c.directed != directed) return false;
  if (static_cast<int>(c.vertices.size()) < std::max(min_len, directed ? 2 : 3)) return false;
  for (int v : c.vertices) {
    if (v < 0 || v >= g.size() || !contains(allowed, v)) return false;
  }
  try {
    GroupElem w = cycle_weight(g, c.vertices);
    return w == g.group().zero() && w == c.weight;
  } catch (const DomainError&) {
    return false;
  }
}

template <class Graph>
bool check_simple_path(const Graph& g, std::span<const int> path, int from, int to, VertexSet interior) {
  if (path.size() < 2 || path.front() != from || path.back() != to) return false;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    if (path[i] < 0 || path[i] >= g.size() || !contains(interior, path[i])) return false;
  }
  try {
    (void)path_weight(g, path);
  } catch (const DomainError&) {
    return false;
  }
  return true;
}

template <class Graph>
bool check_family(const Graph& g, const PathFamily& f, int r, VertexSet interior, int min_order) {
  if (static_cast<int>(f.paths.size()) < r) return false;
  std::vector<GroupElem> seen;
  for (const auto& p : f.paths) {
    if (static_cast<int>(p.vertices.size()) < min_order) return false;
    if (!check_simple_path(g, p.vertices, f.source, f.sink, interior)) return false;
    GroupElem w = path_weight(g, p.vertices);
    if (w != p.weight) return false;
    if (std::find(seen.begin(), seen.end(), w) != seen.end()) return false;
    seen.push_back(w);
  }
  return true;
}

template <class Graph>
CycleSearch zero_cycle_search(const Graph& g, int min_len, VertexSet allowed, const SearchBudget& budget,
                              bool directed) {
  CycleSearch out;
  const GroupElem zero = g.group().zero();
  auto visit = [&](std::span<const int> cyc, GroupElem w) {
    if (w != zero) return true;
    out.cycle = CycleWitness{std::vector<int>(cyc.begin(), cyc.end()), directed, w};
    return false;
  };
  CycleDfs<Graph, decltype(visit)> dfs(g, allowed, min_len, directed, budget, visit);
  EnumerationStats st = dfs.run();
  out.status = st.status;
  out.nodes = st.nodes;
  out.cycles = st.cycles;
  return out;
}

template <class Graph>
PathFamilySearch family_search(const Graph& g, int source, int sink, int r, VertexSet interior,
                               const SearchBudget& budget, bool stop_at_r, int min_order) {
  if (source == sink) throw DomainError("path endpoints must differ");
  if (source < 0 || sink < 0 || source >= g.size() || sink >= g.size()) {
    throw DomainError("path endpoint out of range");
  }
  if (r < 1) throw DomainError("r must be >= 1");
  const int order = g.group().order();
  std::vector<std::int8_t> hit(order, 0);
  std::vector<PathWitness> reps;
  auto visit = [&](std::span<const int> path, GroupElem w) {
    if (!hit[w.code]) {
      hit[w.code] = 1;
      reps.push_back(PathWitness{std::vector<int>(path.begin(), path.end()), w});
      if (stop_at_r && static_cast<int>(reps.size()) >= r) return false;
      if (static_cast<int>(reps.size()) == order) return false;
    }
    return true;
  };
  PathDfs<Graph, decltype(visit)> dfs(g, source, sink, interior, min_order, budget, visit);
  EnumerationStats st = dfs.run();

  PathFamilySearch out;
  out.nodes = st.nodes;
  for (const auto& p : reps) out.achieved.push_back(p.weight);
  std::sort(out.achieved.begin(), out.achieved.end());
  if (static_cast<int>(reps.size()) >= r) {
    out.status = SearchStatus::kFound;
    PathFamily fam{source, sink, {}};
    fam.paths.assign(reps.begin(), reps.begin() + r);
    out.family = std::move(fam);
  } else {
    out.status = st.status == SearchStatus::kBudgetExceeded ? SearchStatus::kBudgetExceeded
                                                            : SearchStatus::kExhausted;
  }
  return out;
}

template <class Graph>
EnumerationStats path_enum(const Graph& g, int source, int sink, const PathVisitor& visit,
                           VertexSet interior, int min_order, const SearchBudget& budget) {
  if (source == sink) throw DomainError("path endpoints must differ");
  auto fwd = [&](std::span<const int> p, GroupElem w) { return visit(p, w); };
  PathDfs<Graph, decltype(fwd)> dfs(g, source, sink, interior, min_order, budget, fwd);
  return dfs.run();
}

}  // namespace

GroupElem cycle_weight(const WeightedDigraph& g, std::span<const int> cycle) {
  if (cycle.size() < 2) throw DomainError("directed cycle needs at least 2 vertices");
  return walk_weight(g, cycle, true);
}

GroupElem cycle_weight(const WeightedGraph& g, std::span<const int> cycle) {
  if (cycle.size() < 3) throw DomainError("undirected cycle needs at least 3 vertices");
  return walk_weight(g, cycle, true);
}

GroupElem path_weight(const WeightedDigraph& g, std::span<const int> path) {
  return walk_weight(g, path, false);
}

GroupElem path_weight(const WeightedGraph& g, std::span<const int> path) {
  return walk_weight(g, path, false);
}

bool is_zero_cycle(const WeightedDigraph& g, const CycleWitness& c, int min_len, VertexSet allowed) {
  return check_zero_cycle(g, c, min_len, allowed, true);
}

bool is_zero_cycle(const WeightedGraph& g, const CycleWitness& c, int min_len, VertexSet allowed) {
  return check_zero_cycle(g, c, min_len, allowed, false);
}

bool is_simple_path(const WeightedDigraph& g, std::span<const int> path, int from, int to,
                    VertexSet interior) {
  return check_simple_path(g, path, from, to, interior);
}

bool is_simple_path(const WeightedGraph& g, std::span<const int> path, int from, int to,
                    VertexSet interior) {
  return check_simple_path(g, path, from, to, interior);
}

bool is_valid_family(const WeightedDigraph& g, const PathFamily& f, int r, VertexSet interior,
                     int min_order) {
  return check_family(g, f, r, interior, min_order);
}

bool is_valid_family(const WeightedGraph& g, const PathFamily& f, int r, VertexSet interior,
                     int min_order) {
  return check_family(g, f, r, interior, min_order);
}

EnumerationStats for_each_simple_cycle(const WeightedDigraph& g, const CycleVisitor& visit, int min_len,
                                       VertexSet allowed, const SearchBudget& budget) {
  auto fwd = [&](std::span<const int> c, GroupElem w) { return visit(c, w); };
  CycleDfs<WeightedDigraph, decltype(fwd)> dfs(g, allowed, min_len, true, budget, fwd);
  return dfs.run();
}

EnumerationStats for_each_simple_cycle(const WeightedGraph& g, const CycleVisitor& visit, int min_len,
                                       VertexSet allowed, const SearchBudget& budget) {
  auto fwd = [&](std::span<const int> c, GroupElem w) { return visit(c, w); };
  CycleDfs<WeightedGraph, decltype(fwd)> dfs(g, allowed, min_len, false, budget, fwd);
  return dfs.run();
}

CycleSearch find_zero_cycle(const WeightedDigraph& g, int min_len, VertexSet allowed,
                            const SearchBudget& budget) {
  if (min_len < 2) throw DomainError("directed min_len must be >= 2");
  return zero_cycle_search(g, min_len, allowed, budget, true);
}

CycleSearch find_zero_cycle(const WeightedGraph& g, int min_len, VertexSet allowed,
                            const SearchBudget& budget) {
  if (min_len < 3) throw DomainError("undirected min_len must be >= 3");
  return zero_cycle_search(g, min_len, allowed, budget, false);
}

PathFamilySearch distinct_weight_paths(const WeightedDigraph& g, int source, int sink, int r,
                                       VertexSet interior, const SearchBudget& budget, bool stop_at_r,
                                       int min_order) {
  return family_search(g, source, sink, r, interior, budget, stop_at_r, min_order);
}

PathFamilySearch distinct_weight_paths(const WeightedGraph& g, int source, int sink, int r,
                                       VertexSet interior, const SearchBudget& budget, bool stop_at_r,
                                       int min_order) {
  return family_search(g, source, sink, r, interior, budget, stop_at_r, min_order);
}

EnumerationStats for_each_simple_path(const WeightedGraph& g, int source, int sink,
                                      const PathVisitor& visit, VertexSet interior, int min_order,
                                      const SearchBudget& budget) {
  return path_enum(g, source, sink, visit, interior, min_order, budget);
}

EnumerationStats for_each_simple_path(const WeightedDigraph& g, int source, int sink,
                                      const PathVisitor& visit, VertexSet interior, int min_order,
                                      const SearchBudget& budget) {
  return path_enum(g, source, sink, visit, interior, min_order, budget);
}

std::optional<HeavyTriple> find_heavy_triple(const WeightedDigraph& derived, GroupElem a,
                                             VertexSet allowed) {
  const GroupSpec& grp = derived.group();
  if (!grp.is_cyclic()) throw DomainError("heavy triples are defined over cyclic groups");
  if (a == grp.zero() || std::gcd(a.code, grp.order()) != 1) {
    throw DomainError("heavy triple search needs a unit, got " + std::to_string(a.code));
  }
  const GroupElem minus_a = grp.neg(a);
  std::vector<int> vs = members(allowed & derived.vertices());
  for (int x : vs) {
    for (int y : vs) {
      if (x == y) continue;
      GroupElem w = derived.weight(x, y);
      if (w != grp.zero() && w != a && w != minus_a) {
        throw DomainError("derived weight " + std::to_string(w.code) + " on (" + std::to_string(x) + "," +
                          std::to_string(y) + ") is not in {0,a,-a}");
      }
    }
  }
  for (int x : vs) {
    for (int y : vs) {
      if (y == x) continue;
      GroupElem c = derived.weight(x, y);
      if (c == grp.zero()) continue;
      for (int z : vs) {
        if (z == x || z == y) continue;
        if (derived.weight(y, z) == c && derived.weight(x, z) == grp.neg(c)) return HeavyTriple{x, y, z, c};
      }
    }
  }
  return std::nullopt;
}

HamPathSearch mono_hamiltonian_path(const WeightedDigraph& g, GroupElem c, VertexSet allowed,
                                    const SearchBudget& budget) {
  allowed &= g.vertices();
  HamPathSearch out;
  const int target = set_size(allowed);
  if (target == 0) return out;

  std::vector<VertexSet> step(g.size(), 0);
  for (int u : members(allowed)) {
    for (int v : members(allowed)) {
      if (u != v && g.has_edge(u, v) && g.weight(u, v) == c) step[u] |= vertex_bit(v);
    }
  }

  Meter meter(budget);
  std::vector<int> path;
  bool found = false;
  std::function<void(int, VertexSet)> dfs = [&](int last, VertexSet used) {
    if (static_cast<int>(path.size()) == target) {
      found = true;
      return;
    }
    for (VertexSet next = step[last] & ~used; next; next &= next - 1) {
      int v = lowest_vertex(next);
      if (!meter.tick()) return;
      path.push_back(v);
      dfs(v, used | vertex_bit(v));
      if (found || meter.exceeded()) return;
      path.pop_back();
    }
  };
  for (int s : members(allowed)) {
    path.assign(1, s);
    dfs(s, vertex_bit(s));
    if (found || meter.exceeded()) break;
  }
  out.nodes = meter.nodes();
  if (found) {
    out.status = SearchStatus::kFound;
    out.path = PathWitness{path, path_weight(g, path)};
  } else {
    out.status = meter.exceeded() ? SearchStatus::kBudgetExceeded : SearchStatus::kExhausted;
  }
  return out;
}

}  // namespace zsc
