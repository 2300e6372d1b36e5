#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmc/solvers.hpp"

namespace mmc {

enum class Algorithm { Lcl, Greedy, Neigh, Exact };

std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

SolveReport run_algorithm(Algorithm a, const BinaryMatrix& m, const ExactOptions& exact = {},
                          Execution execution = Execution::Parallel);

struct BenchConfig {
  /// Instances are p x p.
  std::vector<int> sizes;
  std::vector<double> probabilities;
  int repetitions = 50;
  std::vector<Algorithm> algorithms{Algorithm::Lcl, Algorithm::Greedy, Algorithm::Neigh, Algorithm::Exact};
  std::uint64_t seed = 1;
  /// Per exact run. nullopt means unbounded, which is refused past exact_guard.
  std::optional<std::chrono::duration<double>> budget = std::chrono::seconds(60);
  bool reduce = true;
  /// Free gaps (p-1)+(q-1) above which an unbounded exact run is refused.
  int exact_guard = 22;
  Execution execution = Execution::Parallel;
};

/// Throws DomainError on an invalid config, GuardRefusal on an unbounded
/// exact run that is too large.
void validate(const BenchConfig& cfg);

struct AlgorithmStats {
  Algorithm algorithm{};
  std::int64_t total_density = 0;
  /// Over instances where exact finished certified and the ratio is defined.
  int ratio_count = 0;
  double mean_ratio = 0.0;
  /// d = d* on certified instances.
  int optimal_hits = 0;
  double mean_ms = 0.0;
};

struct BenchCell {
  int p = 0;
  double r = 0.0;
  int instances = 0;
  /// Instances on which exact finished within budget (0 without exact).
  int certified = 0;
  std::vector<AlgorithmStats> stats;  // cfg.algorithms order
  /// wins[a][b]: instances where algorithm a is strictly denser than b.
  std::vector<std::vector<int>> wins;
};

struct BenchResult {
  BenchConfig config;
  std::vector<BenchCell> cells;  // sizes major, probabilities minor
};

/// Instance k of cell c uses seed derive_seed(cfg.seed, {c, k}).
BenchResult run_bench(const BenchConfig& cfg);

/// Pairwise strict-win counts summed over every cell.
std::vector<std::vector<int>> head_to_head(const BenchResult& result);

/// Wall-times are left out unless `timings` is set, so that the output is a
/// pure function of the config.
std::string bench_csv(const BenchResult& result, bool timings = false);
std::string bench_markdown(const BenchResult& result, bool timings = false);
std::string head_to_head_csv(const BenchResult& result);
std::string head_to_head_markdown(const BenchResult& result);

}  // namespace mmc
