#include <doctest.h>

#include <cmath>

#include "mmc/bench.hpp"

using mmc::Algorithm;
using mmc::BenchConfig;

namespace {

BenchConfig small_config() {
  BenchConfig cfg;
  cfg.sizes = {4, 6};
  cfg.probabilities = {0.2, 0.3};
  cfg.repetitions = 8;
  cfg.seed = 77;
  return cfg;
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("algorithm names") {
    CHECK(mmc::parse_algorithm("neigh") == Algorithm::Neigh);
    CHECK_FALSE(mmc::parse_algorithm("bogus").has_value());
    CHECK(mmc::algorithm_name(Algorithm::Exact) == "exact");
  }

  TEST_CASE("config validation") {
    BenchConfig cfg = small_config();
    cfg.repetitions = 0;
    CHECK_THROWS_AS(mmc::validate(cfg), mmc::DomainError);
    cfg = small_config();
    cfg.probabilities = {1.2};
    CHECK_THROWS_AS(mmc::validate(cfg), mmc::DomainError);
    cfg = small_config();
    cfg.sizes = {20};
    cfg.budget.reset();
    CHECK_THROWS_AS(mmc::validate(cfg), mmc::GuardRefusal);
    cfg.algorithms = {Algorithm::Lcl};
    CHECK_NOTHROW(mmc::validate(cfg));
  }

  TEST_CASE("cells, ratios and counts") {
    const auto result = mmc::run_bench(small_config());
    REQUIRE(result.cells.size() == 4);
    CHECK(result.cells[1].p == 4);
    CHECK(result.cells[1].r == doctest::Approx(0.3));
    for (const auto& cell : result.cells) {
      CHECK(cell.certified == cell.instances);
      for (std::size_t a = 0; a < cell.stats.size(); ++a) {
        const auto& s = cell.stats[a];
        CHECK(s.optimal_hits <= cell.instances);
        CHECK(s.mean_ratio >= 1.0);
        CHECK(cell.wins[a][a] == 0);
        for (std::size_t b = 0; b < cell.stats.size(); ++b) CHECK(cell.wins[a][b] + cell.wins[b][a] <= cell.instances);
      }
      // The exact column never loses and always hits.
      CHECK(cell.stats.back().algorithm == Algorithm::Exact);
      CHECK(cell.stats.back().optimal_hits == cell.instances);
      CHECK(cell.stats.back().mean_ratio == 1.0);
      for (std::size_t a = 0; a + 1 < cell.stats.size(); ++a) CHECK(cell.wins[a].back() == 0);
    }
  }

  TEST_CASE("one-line instances give every algorithm the same density") {
    BenchConfig cfg;
    cfg.sizes = {1};
    cfg.probabilities = {0.3, 0.6};
    cfg.repetitions = 20;
    cfg.reduce = false;
    const auto result = mmc::run_bench(cfg);
    for (const auto& cell : result.cells) {
      for (const auto& s : cell.stats) {
        CHECK(s.total_density == cell.stats.front().total_density);
        CHECK(s.optimal_hits == cell.instances);
      }
    }
  }

  TEST_CASE("identical algorithms never win against each other") {
    BenchConfig cfg = small_config();
    cfg.algorithms = {Algorithm::Greedy, Algorithm::Greedy};
    const auto wins = mmc::head_to_head(mmc::run_bench(cfg));
    CHECK(wins[0][1] == 0);
    CHECK(wins[1][0] == 0);
  }

  TEST_CASE("output is a pure function of the config") {
    BenchConfig cfg = small_config();
    const auto a = mmc::run_bench(cfg);
    const auto b = mmc::run_bench(cfg);
    cfg.execution = mmc::Execution::Serial;
    const auto c = mmc::run_bench(cfg);
    CHECK(mmc::bench_csv(a) == mmc::bench_csv(b));
    CHECK(mmc::bench_csv(a) == mmc::bench_csv(c));
    CHECK(mmc::bench_markdown(a) == mmc::bench_markdown(c));
    CHECK(mmc::head_to_head_csv(a) == mmc::head_to_head_csv(c));
    cfg.seed = 78;
    CHECK(mmc::bench_csv(mmc::run_bench(cfg)) != mmc::bench_csv(a));
  }

  TEST_CASE("table layout") {
    BenchConfig cfg = small_config();
    cfg.sizes = {4};
    cfg.probabilities = {0.3};
    cfg.algorithms = {Algorithm::Lcl, Algorithm::Exact};
    const auto result = mmc::run_bench(cfg);
    const std::string csv = mmc::bench_csv(result);
    CHECK(csv.starts_with("p,r,instances,certified,algorithm,mean_ratio,ratio_n,optimal_hits,total_density\n"));
    CHECK(mmc::bench_csv(result, true).find(",mean_ms\n") != std::string::npos);
    const std::string md = mmc::bench_markdown(result);
    std::size_t width = md.find('\n');
    std::size_t pos = 0;
    int lines = 0;
    while (pos < md.size()) {
      const std::size_t end = md.find('\n', pos);
      CHECK(end - pos == width);
      pos = end + 1;
      ++lines;
    }
    CHECK(lines == 4);
    CHECK(mmc::head_to_head_csv(result).starts_with("wins,lcl,exact\n"));
  }
}
