#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <set>

#include "support.hpp"
#include "zsc/error.hpp"
#include "zsc/undirected.hpp"

using namespace zsc;

namespace {

int kdeg(const CliquePair& p, int v) {
  int d = 0;
  for (int c = 0; c < p.g.size(); ++c) {
    if ((p.clique >> c & 1U) && p.g.has_edge(v, c)) ++d;
  }
  return d;
}

// All simple paths in G - K starting at `from` (the trivial path included).
std::vector<std::vector<int>> paths_from(const CliquePair& p, int from) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur{from};
  std::function<void()> dfs = [&] {
    out.push_back(cur);
    for (int b = 0; b < p.g.size(); ++b) {
      if ((p.clique >> b & 1U) || !p.g.has_edge(cur.back(), b)) continue;
      if (std::find(cur.begin(), cur.end(), b) != cur.end()) continue;
      cur.push_back(b);
      dfs();
      cur.pop_back();
    }
  };
  dfs();
  return out;
}

std::uint64_t bits(const std::vector<int>& vs) {
  std::uint64_t s = 0;
  for (int v : vs) s |= std::uint64_t{1} << v;
  return s;
}

struct Existence {
  bool a = false, b = false;
  int c = 0, d = 0;  // best rank, 0 when absent
  bool any() const { return a || b || c || d; }
};

// Scans every candidate tuple of every definition.
Existence exhaustive(const CliquePair& p) {
  const int k = p.g.group().order(), n = p.g.size();
  Existence e;
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (!(p.clique >> v & 1U)) out.push_back(v);
  }
  std::vector<std::vector<std::vector<int>>> from(n);
  for (int v : out) from[v] = paths_from(p, v);
  auto weights_between = [&](int x, int y, std::uint64_t blocked) {
    std::set<int> w;
    for (const auto& path : from[x]) {
      if (path.size() < 2 || path.back() != y) continue;
      std::uint64_t inner = bits(path) & ~bits({x, y});
      if (inner & blocked) continue;
      w.insert(zt::ref_path_weight(p.g, path));
    }
    return static_cast<int>(w.size());
  };

  for (int x : out) e.a = e.a || kdeg(p, x) >= 2 * k - 1;
  for (int x : out) {
    for (int y : out) {
      if (x == y) continue;
      const int w = weights_between(x, y, 0);
      if (w >= 1 && kdeg(p, x) >= 2 * k - 2 && kdeg(p, y) >= 2 * k - 2) e.b = true;
      for (int r = std::min(w, k); r >= 2; --r) {
        if (kdeg(p, x) >= 2 * (k - r) + 1 && kdeg(p, y) >= 2 * (k - r) + 1) e.c = std::max(e.c, r);
      }
    }
  }
  for (int z : out) {
    for (int x : out) {
      for (int y : out) {
        if (x == y || x == z || y == z || !p.g.has_edge(x, z) || !p.g.has_edge(y, z)) continue;
        for (const auto& px : from[x]) {
          for (const auto& py : from[y]) {
            if (bits(px) & bits(py)) continue;
            for (const auto& pz : from[z]) {
              if ((bits(pz) & bits(px)) || (bits(pz) & bits(py))) continue;
              const int w = weights_between(x, y, bits(px) | bits(py) | bits(pz));
              for (int r = std::min(w, k - 1); r >= 2; --r) {
                if (kdeg(p, px.back()) >= 2 * (k - r) - 1 && kdeg(p, py.back()) >= 2 * (k - r) &&
                    kdeg(p, pz.back()) >= 2 * (k - r)) {
                  e.d = std::max(e.d, r);
                  break;
                }
              }
            }
          }
        }
      }
    }
  }
  return e;
}

CliquePair random_pair(int k, int n, int kc, std::mt19937_64& rng, double density) {
  WeightedGraph g = zt::random_graph(k, n, density, true, rng);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  VertexSet clique = 0;
  for (int i = 0; i < kc; ++i) clique |= vertex_bit(order[i]);
  for (int a : members(clique)) {
    for (int b : members(clique)) {
      if (a < b && !g.has_edge(a, b)) g.set_edge(a, b, GroupElem{0});
    }
  }
  return CliquePair{g, clique};
}

void check_reduction(const CliquePair& p, const ReductionOutcome& out) {
  if (out.is_zero_cycle()) {
    CHECK(zt::check_zero_cycle(p.g, out.cycle().vertices, 3, p.outside()));
  } else {
    CHECK(verify_configuration(p, out.config()));
  }
}

}  // namespace

TEST_CASE("clique pairs") {
  WeightedGraph g = WeightedGraph::complete(GroupSpec::cyclic(2), 3);
  CHECK(is_clique_pair({g, 0}));
  CHECK(is_clique_pair({g, vertex_bit(0) | vertex_bit(1)}));
  CHECK_FALSE(is_clique_pair({g, first_n(3)}));
  g.remove_edge(0, 1);
  CHECK_FALSE(is_clique_pair({g, vertex_bit(0) | vertex_bit(1)}));
}

TEST_CASE("verify_configuration: definition clauses") {
  // k = 2: A needs three clique neighbours.
  WeightedGraph g = WeightedGraph::complete(GroupSpec::cyclic(2), 6);
  CliquePair p{g, vertex_bit(0) | vertex_bit(1) | vertex_bit(2)};
  CHECK(verify_configuration(p, ConfigA{3}));
  p.g.remove_edge(3, 2);
  CHECK_FALSE(verify_configuration(p, ConfigA{3}));
  CHECK_FALSE(verify_configuration(p, ConfigA{0}));  // inside K

  // B: degrees >= 2 and a path avoiding K.
  CHECK(verify_configuration(p, ConfigB{3, 4, {3, 4}}));
  CHECK(verify_configuration(p, ConfigB{3, 4, {3, 5, 4}}));
  CHECK_FALSE(verify_configuration(p, ConfigB{3, 4, {3, 0, 4}}));

  // C of rank k = 2: one clique neighbour each and two weights.
  p.g.set_edge(3, 5, GroupElem{1});
  CHECK(verify_configuration(p, ConfigC{2, 3, 4, {{3, 4}, {3, 5, 4}}}));
  p.g.set_vertex_weight(5, GroupElem{1});
  CHECK_FALSE(verify_configuration(p, ConfigC{2, 3, 4, {{3, 4}, {3, 5, 4}}}));
  CHECK_FALSE(verify_configuration(p, ConfigC{3, 3, 4, {{3, 4}, {3, 5, 4}}}));
}

TEST_CASE("verify_configuration: rank-k C built from oracle paths") {
  std::mt19937_64 rng(3);
  int built = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 3;
    CliquePair p = random_pair(k, 7, 2, rng, 0.8);
    auto out = members(p.outside());
    for (int x : out) {
      for (int y : out) {
        if (x >= y || kdeg(p, x) < 1 || kdeg(p, y) < 1) continue;
        PathFamilySearch s = distinct_weight_paths(p.g, x, y, k, p.outside(), {}, true, 2);
        if (!s.family) continue;
        ConfigC c{k, x, y, {}};
        for (const auto& path : s.family->paths) c.paths.push_back(path.vertices);
        CHECK(verify_configuration(p, c));
        ++built;
      }
    }
  }
  CHECK(built > 0);
}

TEST_CASE("detect_configuration examples") {
  // A lone outside vertex adjacent to 2k-1 clique vertices.
  const int k = 3;
  WeightedGraph g = WeightedGraph::complete(GroupSpec::cyclic(k), 6);
  CliquePair p{g, first_n(5)};
  ConfigSearch s = detect_configuration(p);
  REQUIRE(s.config);
  CHECK(config_type(*s.config) == 'A');

  // Empty K: every definition needs a clique neighbour.
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    CliquePair e{zt::random_complete_graph(3, 6, rng), 0};
    CHECK_FALSE(detect_configuration(e).config);
  }
}

TEST_CASE("detect_configuration agrees with the exhaustive tuple scan") {
  std::mt19937_64 rng(31);
  int seen[4] = {0, 0, 0, 0};
  for (int trial = 0; trial < 400; ++trial) {
    const int k = 2 + trial % 2;
    const int n = 5 + trial % 3;
    const int kc = 1 + static_cast<int>(rng() % 4);
    CliquePair p = random_pair(k, n, kc, rng, 0.35 + 0.1 * (trial % 4));
    Existence e = exhaustive(p);
    ConfigSearch s = detect_configuration(p);
    REQUIRE(s.status != SearchStatus::kBudgetExceeded);
    CHECK(s.config.has_value() == e.any());
    if (!s.config) continue;
    CHECK(verify_configuration(p, *s.config));
    const char t = config_type(*s.config);
    ++seen[t - 'A'];
    if (e.a) {
      CHECK(t == 'A');
    } else if (e.b) {
      CHECK(t == 'B');
    } else if (e.c) {
      CHECK(t == 'C');
      CHECK(config_rank(*s.config) == e.c);
    } else {
      CHECK(t == 'D');
      CHECK(config_rank(*s.config) == e.d);
    }
  }
  MESSAGE("A/B/C/D: " << seen[0] << "/" << seen[1] << "/" << seen[2] << "/" << seen[3]);
  CHECK(seen[2] > 0);
  CHECK(seen[3] > 0);
}

TEST_CASE("clique peel step") {
  // K = {0,1,2}; v=3 sees 0 and 1 but not 2.
  WeightedGraph g(GroupSpec::cyclic(3), 5);
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) g.set_edge(a, b, GroupElem{1});
  }
  g.set_edge(3, 0, GroupElem{2});
  g.set_edge(3, 1, GroupElem{1});
  g.set_edge(3, 4, GroupElem{2});
  g.set_edge(4, 2, GroupElem{0});
  CliquePair p{g, first_n(3)};
  auto f = lowest_non_neighbour_map(p, 0);
  CHECK(f[3] == 2);
  CHECK(f[4] == -1);
  PeelResult r = clique_peel_step(p, 0, f);
  CHECK(r.to_original == std::vector<int>{1, 2, 3, 4});
  CHECK(r.pair.clique == (vertex_bit(0) | vertex_bit(1)));
  CHECK(r.pair.clique_degree(2) == 2);  // was 2 with u, still 2 without
  CHECK(r.pair.g.weight(2, 1) == GroupElem{0});

  // Singleton K: with no outside vertex adjacent to u there is nothing to
  // rewire.
  WeightedGraph h(GroupSpec::cyclic(3), 4);
  h.set_edge(0, 1, GroupElem{1});
  h.set_edge(1, 2, GroupElem{2});
  CliquePair single{h, vertex_bit(3)};
  PeelResult r1 = clique_peel_step(single, 3, lowest_non_neighbour_map(single, 3));
  CHECK(r1.pair.clique == 0);
  CHECK(r1.pair.g == h.induced(first_n(3)));

  std::vector<int> bad = f;
  bad[3] = 1;
  CHECK_THROWS_AS(clique_peel_step(p, 0, bad), DomainError);

  CliquePair full{WeightedGraph::complete(GroupSpec::cyclic(3), 4), first_n(2)};
  auto ff = lowest_non_neighbour_map(full, 0);
  CHECK_THROWS_AS(clique_peel_step(full, 0, ff), DomainError);
}

TEST_CASE("clique peel step keeps G - K and never lowers clique degrees") {
  std::mt19937_64 rng(44);
  int done = 0;
  for (int trial = 0; trial < 500; ++trial) {
    CliquePair p = random_pair(3, 7, 3, rng, 0.5);
    bool blocked = false;
    for (int v : members(p.outside())) blocked = blocked || (p.g.neighbors(v) & p.clique) == p.clique;
    if (blocked) continue;
    const int u = lowest_vertex(p.clique);
    PeelResult r = clique_peel_step(p, u, lowest_non_neighbour_map(p, u));
    ++done;
    const auto& back = r.to_original;
    for (int a = 0; a < r.pair.g.size(); ++a) {
      if (contains(r.pair.clique, a)) continue;
      CHECK(r.pair.clique_degree(a) >= p.clique_degree(back[a]));
      for (int b = 0; b < r.pair.g.size(); ++b) {
        if (a == b || contains(r.pair.clique, b)) continue;
        CHECK(r.pair.g.has_edge(a, b) == p.g.has_edge(back[a], back[b]));
        if (r.pair.g.has_edge(a, b)) CHECK(r.pair.g.weight(a, b) == p.g.weight(back[a], back[b]));
      }
      CHECK(r.pair.g.vertex_weight(a) == p.g.vertex_weight(back[a]));
    }
  }
  CHECK(done > 0);
}

TEST_CASE("reduction lemma") {
  // A single outside vertex gives A.
  const int k = 2;
  WeightedGraph g = WeightedGraph::complete(GroupSpec::cyclic(k), 4);
  ReductionOutcome a = lemma_reduction_solve({g, first_n(3)});
  REQUIRE_FALSE(a.is_zero_cycle());
  CHECK(config_type(a.config()) == 'A');

  // Empty K on a complete graph of order 2k: zero cycle.
  std::mt19937_64 rng(6);
  for (int kk = 2; kk <= 3; ++kk) {
    for (int i = 0; i < 50; ++i) {
      CliquePair p{zt::random_complete_graph(kk, 2 * kk, rng), 0};
      ReductionOutcome out = lemma_reduction_solve(p);
      REQUIRE(out.is_zero_cycle());
      check_reduction(p, out);
    }
  }

  WeightedGraph sparse(GroupSpec::cyclic(2), 4);
  CHECK_THROWS_AS(lemma_reduction_solve({sparse, 0}), DomainError);
}

TEST_CASE("reduction lemma on random pairs meeting the degree condition") {
  std::mt19937_64 rng(13);
  int tried = 0, fallbacks = 0;
  int kinds[5] = {0, 0, 0, 0, 0};
  for (int trial = 0; trial < 3000 && tried < 300; ++trial) {
    const int k = 2 + trial % 2;
    const int n = 2 * k + 1 + static_cast<int>(rng() % 3);
    const int kc = static_cast<int>(rng() % (n - 1));
    CliquePair p = random_pair(k, n, kc, rng, 0.75);
    bool ok = true;
    for (int v : members(p.outside())) ok = ok && p.g.degree(v) >= 2 * k - 1;
    if (!ok) continue;
    ++tried;
    ReductionOutcome out = lemma_reduction_solve(p);
    check_reduction(p, out);
    fallbacks += out.fallbacks;
    ++kinds[out.is_zero_cycle() ? 4 : config_type(out.config()) - 'A'];
  }
  MESSAGE("instances " << tried << ", fallbacks " << fallbacks << ", A/B/C/D/cycle " << kinds[0] << "/" << kinds[1]
                       << "/" << kinds[2] << "/" << kinds[3] << "/" << kinds[4]);
  CHECK(tried > 100);
}

TEST_CASE("undirected theorem") {
  WeightedGraph z = WeightedGraph::complete(GroupSpec::cyclic(2), 4);
  UndirectedOutcome t = theorem_undirected_solve(z);
  CHECK(t.cycle.vertices.size() == 3);
  CHECK(zt::check_zero_cycle(z, t.cycle.vertices, 3));

  // Every vertex and edge weighting of K_4 over Z_2.
  for (unsigned m = 0; m < (1U << 10); ++m) {
    WeightedGraph g = WeightedGraph::complete(GroupSpec::cyclic(2), 4);
    int bit = 0;
    for (int v = 0; v < 4; ++v) g.set_vertex_weight(v, GroupElem{static_cast<int>(m >> bit++ & 1U)});
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) g.set_edge(a, b, GroupElem{static_cast<int>(m >> bit++ & 1U)});
    }
    UndirectedOutcome out = theorem_undirected_solve(g);
    REQUIRE(zt::check_zero_cycle(g, out.cycle.vertices, 3));
  }

  std::mt19937_64 rng(606);
  for (int i = 0; i < 100; ++i) {
    WeightedGraph g = zt::random_complete_graph(3, 6, rng);
    CHECK(zt::check_zero_cycle(g, theorem_undirected_solve(g).cycle.vertices, 3));
  }

  WeightedGraph low = WeightedGraph::complete(GroupSpec::cyclic(3), 5);
  CHECK_THROWS_AS(theorem_undirected_solve(low), DomainError);
}

TEST_CASE("configuration JSON") {
  ConfigD d{2, 0, 1, 2, 3, 4, 5, {0, 3}, {1, 4}, {2, 5}, {{0, 6, 1}, {0, 7, 1}}};
  auto j = to_json(Configuration{d});
  CHECK(j["type"] == "D");
  CHECK(j["rank"] == 2);
  CHECK(to_json(Configuration{ConfigA{4}})["x"] == 4);
}
