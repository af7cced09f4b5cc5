#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "zsc/error.hpp"
#include "zsc/explorer.hpp"
#include "zsc/rng.hpp"

using namespace zsc;

namespace {

ExperimentConfig make(const std::string& task, int k, int n) {
  ExperimentConfig c;
  c.task = task;
  c.k = k;
  c.n = n;
  return c;
}

std::vector<int> edge_vector(const WeightedDigraph& g, const std::vector<int>& perm) {
  // Weight of edge (i, j) after relabelling vertex v as perm[v], row-major.
  const int n = g.size();
  std::vector<int> inv(n);
  for (int v = 0; v < n; ++v) inv[perm[v]] = v;
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) out.push_back(g.weight(inv[i], inv[j]).code);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("counter rng is keyed by seed and index") {
  CounterRng a(1, 5), b(1, 5), c(1, 6), d(2, 5);
  const auto x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
  CHECK(x != d.next());
  CounterRng r(9, 0);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 7000; ++i) ++hist[r.below(7)];
  for (int h : hist) CHECK(h > 800);
}

TEST_CASE("config parsing and validation") {
  nlohmann::json j = {{"task", "f-bound"}, {"k", 3}, {"n", 3}, {"strategy", "exhaustive"}};
  ExperimentConfig c = config_from_json(j);
  CHECK(c.task == "f-bound");
  CHECK(c.k == 3);
  CHECK_NOTHROW(c.validate());
  CHECK(config_from_json(nlohmann::json::parse(to_json(c).dump())).k == 3);

  j["bogus"] = 1;
  CHECK_THROWS_AS(config_from_json(j), DomainError);

  ExperimentConfig r = make("f-bound", 3, 4);
  r.strategy = Strategy::kRandom;
  r.trials = 10;
  CHECK_THROWS_AS(r.validate(), DomainError);  // no seed
  r.seed = 1;
  CHECK_NOTHROW(r.validate());

  ExperimentConfig big = make("f-bound", 5, 6);
  CHECK_THROWS_AS(run_experiment(big), DomainError);  // 5^30 exceeds the cap

  CHECK(strategy_from_string("local-search") == Strategy::kLocalSearch);
  CHECK(strategy_from_string("local_search") == Strategy::kLocalSearch);
  CHECK_THROWS_AS(strategy_from_string("annealing"), DomainError);
}

TEST_CASE("canonical weightings") {
  const int n = 3, k = 2;
  int canonical = 0;
  for (unsigned m = 0; m < (1U << 6); ++m) {
    WeightedDigraph g = WeightedDigraph::complete(GroupSpec::cyclic(k), n);
    int bit = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) g.set_edge(i, j, GroupElem{static_cast<int>(m >> (5 - bit++) & 1U)});
      }
    }
    std::vector<int> perm{0, 1, 2};
    const auto own = edge_vector(g, perm);
    bool smallest = true;
    do {
      smallest = smallest && !(edge_vector(g, perm) < own);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(is_canonical_weighting(g) == smallest);
    canonical += smallest;
  }
  CHECK(canonical == 16);  // orbits of S_3 on 2-colourings of the 6 arcs
}

TEST_CASE("f lower bound probes") {
  BoundReport two = probe_f_lower(make("f-bound", 2, 2));
  REQUIRE(two.outcome == Outcome::kWitnessFound);
  const auto& w = std::get<WeightedDigraph>(*two.witness);
  CHECK(w.weight(0, 1) == GroupElem{0});
  CHECK(w.weight(1, 0) == GroupElem{1});
  CHECK(two.exit_code() == 2);

  BoundReport three = probe_f_lower(make("f-bound", 3, 3));
  REQUIRE(three.outcome == Outcome::kWitnessFound);
  CHECK_FALSE(zt::has_zero_cycle(std::get<WeightedDigraph>(*three.witness), 2));

  BoundReport four = probe_f_lower(make("f-bound", 2, 3));
  CHECK(four.outcome == Outcome::kExhaustedNoWitness);
  CHECK(four.exit_code() == 0);

  ExperimentConfig rnd = make("f-bound", 3, 3);
  rnd.strategy = Strategy::kRandom;
  rnd.trials = 2000;
  rnd.seed = 4;
  BoundReport r = probe_f_lower(rnd);
  REQUIRE(r.outcome == Outcome::kWitnessFound);
  CHECK_FALSE(zt::has_zero_cycle(std::get<WeightedDigraph>(*r.witness), 2));

  rnd.strategy = Strategy::kLocalSearch;
  BoundReport ls = probe_f_lower(rnd);
  REQUIRE(ls.outcome == Outcome::kWitnessFound);
  CHECK_FALSE(zt::has_zero_cycle(std::get<WeightedDigraph>(*ls.witness), 2));

  ExperimentConfig capped = make("f-bound", 3, 4);
  capped.budget = 100;
  BoundReport b = probe_f_lower(capped);
  CHECK(b.outcome == Outcome::kBudgetExhausted);
  CHECK(b.exit_code() == 3);
}

TEST_CASE("theorem sweeps") {
  ExperimentConfig m = make("theorem", 4, 0);
  m.theorem = "main";
  m.strategy = Strategy::kRandom;
  m.trials = 50;
  m.seed = 3;
  BoundReport rm = verify_theorem_sweep(m);
  CHECK(rm.outcome == Outcome::kExhaustedNoWitness);
  CHECK(rm.findings["order"] == 8);
  CHECK(rm.counters["solver_found"] == 50);

  ExperimentConfig c = make("theorem", 2, 0);
  c.theorem = "corollary";
  BoundReport rc = verify_theorem_sweep(c);
  CHECK(rc.outcome == Outcome::kExhaustedNoWitness);
  CHECK(rc.counters["instances"] == 1U << 15);

  ExperimentConfig u = make("theorem", 2, 0);
  u.theorem = "undirected";
  BoundReport ru = verify_theorem_sweep(u);
  CHECK(ru.outcome == Outcome::kExhaustedNoWitness);
  CHECK(ru.counters["instances"] == 1U << 10);

  ExperimentConfig below = make("theorem", 4, 7);
  below.strategy = Strategy::kRandom;
  below.trials = 1;
  below.seed = 1;
  CHECK_THROWS_AS(verify_theorem_sweep(below), DomainError);
}

TEST_CASE("near-AP sweep") {
  ExperimentConfig c;
  c.task = "lemma-inc";
  c.k_max = 8;
  BoundReport r = verify_lemma_inc(c);
  CHECK(r.outcome == Outcome::kExhaustedNoWitness);
  CHECK(r.counters["violations"] == 0);
  CHECK(r.findings["example_z8_0_2_4"]["tag"] == "DivisorCase");
  CHECK(r.findings["example_z8_0_2_4"]["divisor"] == 2);

  c.k_max = 2;
  BoundReport v = verify_lemma_inc(c);
  CHECK(v.counters["near_ap"] == 0);

  // Library shift sets against a direct count.
  for (int k = 2; k <= 9; ++k) {
    for (std::uint32_t s = 1; s < (1U << k); ++s) {
      std::uint32_t expect = 0;
      for (int x = 0; x < k; ++x) {
        int misses = 0;
        for (int a = 0; a < k; ++a) {
          if ((s >> a & 1U) && !(s >> ((a + x) % k) & 1U)) ++misses;
        }
        if (misses <= 1) expect |= 1U << x;
      }
      CHECK(brute_shift_mask(k, s) == expect);
    }
  }
}

TEST_CASE("question 1") {
  BoundReport two = question1_search(make("q1", 0, 2));
  CHECK(two.outcome == Outcome::kExhaustedNoWitness);
  CHECK(two.counters["weightings"] == 9);
  BoundReport three = question1_search(make("q1", 0, 3));
  CHECK(three.counters["weightings"] == 729);
  CHECK(three.outcome != Outcome::kBudgetExhausted);
}

TEST_CASE("question 2") {
  BoundReport r = question2_probe(make("q2", 2, 0));
  CHECK(r.outcome == Outcome::kExhaustedNoWitness);
  CHECK(r.findings["boundary_ok"] == true);
  for (const auto& row : r.findings["boundary_construction"]) {
    CHECK(row["edges"] == row["kn_minus_k(k+1)/2"]);
    CHECK(row["zero_cycle_free"] == true);
  }

  ExperimentConfig rnd = make("q2", 3, 0);
  rnd.generator = "random";
  rnd.strategy = Strategy::kRandom;
  rnd.trials = 200;
  rnd.seed = 5;
  BoundReport q = question2_probe(rnd);
  CHECK(q.outcome == Outcome::kExhaustedNoWitness);
}

TEST_CASE("reports do not depend on the thread count") {
  std::vector<ExperimentConfig> cfgs;
  ExperimentConfig a = make("theorem", 3, 0);
  a.strategy = Strategy::kRandom;
  a.trials = 300;
  a.seed = 77;
  cfgs.push_back(a);
  ExperimentConfig b = make("f-bound", 3, 3);
  b.strategy = Strategy::kRandom;
  b.trials = 500;
  b.seed = 2;
  cfgs.push_back(b);
  cfgs.push_back(make("q1", 0, 3));
  ExperimentConfig d = make("q2", 3, 0);
  d.generator = "random";
  d.strategy = Strategy::kRandom;
  d.trials = 100;
  d.seed = 8;
  cfgs.push_back(d);
  for (auto cfg : cfgs) {
    cfg.jobs = 1;
    const std::string serial = run_experiment(cfg).to_json(false).dump();
    cfg.jobs = 4;
    const std::string parallel = run_experiment(cfg).to_json(false).dump();
    CHECK(serial == parallel);
    CHECK(run_experiment(cfg).to_json(false).dump() == parallel);
  }
}
