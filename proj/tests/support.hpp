#pragma once

// Test-side oracles. They only read weights out of the graph classes and do
// their own arithmetic (cyclic groups only), so they share no search code
// with the library.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "zsc/graph.hpp"
#include "zsc/oracle.hpp"

namespace zt {

using zsc::GroupElem;
using zsc::GroupSpec;
using zsc::WeightedDigraph;
using zsc::WeightedGraph;

inline int modk(long long x, int k) { return static_cast<int>(((x % k) + k) % k); }

struct RefCycle {
  std::vector<int> vertices;
  int weight = 0;
};

// Every simple cycle, found by trying each subset and every ordering of it
// that starts at its smallest vertex. Undirected cycles are counted once.
template <class G>
std::vector<RefCycle> all_cycles(const G& g, int min_len, zsc::VertexSet allowed = ~0ULL) {
  constexpr bool directed = std::is_same_v<G, WeightedDigraph>;
  const int n = g.size();
  const int k = g.group().order();
  std::vector<RefCycle> out;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    if (mask & ~static_cast<std::uint32_t>(allowed)) continue;
    std::vector<int> vs;
    for (int v = 0; v < n; ++v) {
      if (mask >> v & 1U) vs.push_back(v);
    }
    if (static_cast<int>(vs.size()) < min_len) continue;
    std::vector<int> rest(vs.begin() + 1, vs.end());
    do {
      if (!directed && rest.size() >= 2 && rest.front() > rest.back()) continue;
      std::vector<int> cyc{vs[0]};
      cyc.insert(cyc.end(), rest.begin(), rest.end());
      bool ok = true;
      long long w = 0;
      for (std::size_t i = 0; i < cyc.size() && ok; ++i) {
        int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
        if (!g.has_edge(a, b)) {
          ok = false;
          break;
        }
        w += g.weight(a, b).code + g.vertex_weight(a).code;
      }
      if (ok) out.push_back({cyc, modk(w, k)});
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return out;
}

template <class G>
bool has_zero_cycle(const G& g, int min_len, zsc::VertexSet allowed = ~0ULL) {
  for (const auto& c : all_cycles(g, min_len, allowed)) {
    if (c.weight == 0) return true;
  }
  return false;
}

// Recomputes a claimed cycle from scratch.
template <class G>
bool check_zero_cycle(const G& g, const std::vector<int>& cyc, int min_len, zsc::VertexSet allowed = ~0ULL) {
  const int k = g.group().order();
  if (static_cast<int>(cyc.size()) < min_len) return false;
  std::vector<int> sorted = cyc;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  long long w = 0;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
    if (a < 0 || a >= g.size() || !(allowed >> a & 1U) || !g.has_edge(a, b)) return false;
    w += g.weight(a, b).code + g.vertex_weight(a).code;
  }
  return modk(w, k) == 0;
}

template <class G>
int ref_path_weight(const G& g, const std::vector<int>& p) {
  long long w = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    w += g.vertex_weight(p[i]).code;
    if (i + 1 < p.size()) w += g.weight(p[i], p[i + 1]).code;
  }
  return modk(w, g.group().order());
}

// r simple source-sink paths of order >= min_order, pairwise distinct weights,
// interiors avoiding `forbidden`.
template <class G>
bool check_family(const G& g, const zsc::PathFamily& f, int source, int sink, int r, int min_order,
                  zsc::VertexSet forbidden = 0) {
  if (static_cast<int>(f.paths.size()) < r) return false;
  std::vector<int> seen;
  for (const auto& p : f.paths) {
    const auto& vs = p.vertices;
    if (static_cast<int>(vs.size()) < min_order || vs.front() != source || vs.back() != sink) return false;
    std::vector<int> s = vs;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
      if (!g.has_edge(vs[i], vs[i + 1])) return false;
    }
    for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
      if (forbidden >> vs[i] & 1U) return false;
    }
    int w = ref_path_weight(g, vs);
    if (w != p.weight.code) return false;
    if (std::find(seen.begin(), seen.end(), w) != seen.end()) return false;
    seen.push_back(w);
  }
  return true;
}

// Set of weights achieved by simple source-sink paths of order >= 3 with
// interior inside `interior`, via permutations of interior subsets.
inline std::vector<int> ref_achieved(const WeightedDigraph& g, int source, int sink, zsc::VertexSet interior) {
  std::vector<int> inner;
  for (int v = 0; v < g.size(); ++v) {
    if (v != source && v != sink && (interior >> v & 1U)) inner.push_back(v);
  }
  std::vector<int> found;
  const int m = static_cast<int>(inner.size());
  for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
    std::vector<int> mid;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1U) mid.push_back(inner[i]);
    }
    do {
      std::vector<int> p{source};
      p.insert(p.end(), mid.begin(), mid.end());
      p.push_back(sink);
      bool ok = true;
      for (std::size_t i = 0; i + 1 < p.size(); ++i) ok = ok && g.has_edge(p[i], p[i + 1]);
      if (ok) found.push_back(ref_path_weight(g, p));
    } while (std::next_permutation(mid.begin(), mid.end()));
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

inline WeightedDigraph random_complete_digraph(int k, int n, std::mt19937_64& rng) {
  WeightedDigraph g = WeightedDigraph::complete(GroupSpec::cyclic(k), n);
  std::uniform_int_distribution<int> d(0, k - 1);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) g.set_edge(u, v, GroupElem{d(rng)});
    }
  }
  return g;
}

inline WeightedGraph random_graph(int k, int n, double p, bool vertex_weights, std::mt19937_64& rng) {
  WeightedGraph g(GroupSpec::cyclic(k), n);
  std::uniform_int_distribution<int> d(0, k - 1);
  std::bernoulli_distribution keep(p);
  for (int u = 0; u < n; ++u) {
    if (vertex_weights) g.set_vertex_weight(u, GroupElem{d(rng)});
    for (int v = u + 1; v < n; ++v) {
      if (keep(rng)) g.set_edge(u, v, GroupElem{d(rng)});
    }
  }
  return g;
}

inline WeightedGraph random_complete_graph(int k, int n, std::mt19937_64& rng) {
  return random_graph(k, n, 1.0, true, rng);
}

}  // namespace zt
