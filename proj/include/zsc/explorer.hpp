#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "zsc/codec.hpp"

// Experiment harness. Every experiment is a pure function of its
// ExperimentConfig: work is cut into fixed chunks, chunks may run on several
// threads, and results are merged in chunk order, so reports do not depend on
// the thread count.

namespace zsc {

enum class Strategy { kExhaustive, kRandom, kLocalSearch };
std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

inline constexpr std::uint64_t kDefaultExhaustiveCap = std::uint64_t{1} << 33;

struct ExperimentConfig {
  std::string task;              // f-bound | theorem | lemma-inc | q1 | q2
  std::string theorem = "main";  // theorem task: main | corollary | undirected
  std::string generator;         // theorem undirected: complete | min-degree; q2: exhaustive | random
  int k = 2;
  int n = 0;
  int k_max = 0;
  Strategy strategy = Strategy::kExhaustive;
  std::uint64_t trials = 0;
  std::optional<std::uint64_t> seed;
  /// Cap on instances examined (0: none). Hitting it yields BudgetExhausted.
  std::uint64_t budget = 0;
  std::uint64_t cap = kDefaultExhaustiveCap;
  int jobs = 1;
  std::string output;

  /// Throws DomainError for inconsistent settings (missing seed, bad k...).
  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const ExperimentConfig& c);

enum class Outcome { kWitnessFound, kExhaustedNoWitness, kBudgetExhausted };
std::string to_string(Outcome o);

struct BoundReport {
  ExperimentConfig config;
  Outcome outcome = Outcome::kExhaustedNoWitness;
  std::optional<AnyGraph> witness;
  nlohmann::ordered_json counters = nlohmann::ordered_json::object();
  nlohmann::ordered_json findings = nlohmann::ordered_json::object();
  double wall_seconds = 0;

  /// Timing lives under "timing" so it can be dropped for comparisons.
  nlohmann::ordered_json to_json(bool with_timing = true) const;
  /// 0 completed, 2 witness found, 3 budget exhausted.
  int exit_code() const;
};

/// Z_k-weighted complete digraph on n vertices with no zero cycle.
BoundReport probe_f_lower(const ExperimentConfig& cfg);
/// Random (or exhaustive) instances at a theorem's threshold; a witness is a
/// counterexample.
BoundReport verify_theorem_sweep(const ExperimentConfig& cfg);
/// Near-AP dichotomy for every subset of Z_k, 2 <= k <= k_max.
BoundReport verify_lemma_inc(const ExperimentConfig& cfg);
/// {0,1,-1}-weighted complete digraphs with neither an integer-zero cycle nor
/// a Hamiltonian path of constant nonzero weight.
BoundReport question1_search(const ExperimentConfig& cfg);
/// Zero-cycle-free graphs of minimum degree k+1, plus the degree-k boundary
/// construction.
BoundReport question2_probe(const ExperimentConfig& cfg);

/// Dispatches on cfg.task.
BoundReport run_experiment(const ExperimentConfig& cfg);

/// Brute-force shift set of a subset of Z_k given as a bitmask (k <= 16).
std::uint32_t brute_shift_mask(int k, std::uint32_t set);

/// True when no relabelling of the vertices gives a lexicographically smaller
/// edge-weight vector (edges in row-major order, first edge most significant).
bool is_canonical_weighting(const WeightedDigraph& g);

}  // namespace zsc
