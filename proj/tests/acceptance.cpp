// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mmc/bench.hpp"
#include "mmc/contraction.hpp"
#include "mmc/heuristics.hpp"
#include "mmc/ilp.hpp"
#include "mmc/instances.hpp"
#include "mmc/solvers.hpp"
#include "oracles.hpp"

using mmc::BinaryMatrix;
using mmc::Selection;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const BinaryMatrix kSample = BinaryMatrix::from_rows({"1000", "1010", "0010", "0101"});

mmc::IntegerMatrix integer(std::initializer_list<std::vector<int>> rows) {
  mmc::IntegerMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
  int r = 0;
  for (const auto& row : rows) {
    for (int c = 0; c < static_cast<int>(row.size()); ++c) m(r, c) = row[static_cast<std::size_t>(c)];
    ++r;
  }
  return m;
}

Outcome golden_sample() {
  const auto t0 = Clock::now();
  const std::int64_t d0 = mmc::density(kSample);
  const auto p1 = mmc::contract(kSample, {{3}, {}});
  const std::int64_t d1 = mmc::density(mmc::apply(kSample, {{3}, {}}));
  const auto p2 = mmc::contract(kSample, {{3}, {1}});
  const std::int64_t d2 = mmc::density(mmc::apply(kSample, {{3}, {1}}));
  const double ms = seconds_since(t0) * 1e3;

  const bool products = p1 == integer({{1, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 1, 1}, {0, 0, 0, 0}}) &&
                        p2 == integer({{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 1, 1, 0}, {0, 0, 0, 0}});
  const bool oracle_ok = oracle::pair_density(oracle::product_contraction(kSample, {{3}, {1}})) == 10 &&
                         oracle::pair_density(oracle::product_contraction(kSample, {{3}, {}})) == 7;
  Outcome o;
  o.pass = d0 == 4 && d1 == 7 && d2 == 10 && products && oracle_ok && ms < 1.0;
  o.detail = fmt("densities %lld/%lld/%lld, products %s, %.3f ms", static_cast<long long>(d0),
                 static_cast<long long>(d1), static_cast<long long>(d2), products ? "match" : "differ", ms);
  return o;
}

Outcome invalid_example() {
  const Selection sel{{}, {1, 2}};
  const auto raw = mmc::contract(kSample, sel);
  const bool invalid = !mmc::is_valid(kSample, sel);
  const bool entry = raw(1, 0) == 2;
  const bool whole = raw == integer({{1, 0, 0, 0}, {2, 0, 0, 0}, {1, 0, 0, 0}, {1, 1, 0, 0}});
  return {invalid && entry && whole,
          fmt("valid=%s, entry(2,1)=%d, product %s", invalid ? "no" : "yes", raw(1, 0), whole ? "match" : "differs")};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  int checked = 0;
  int mismatches = 0;
  auto compare = [&](const BinaryMatrix& m) {
    const auto e = mmc::exact_solve(m);
    const auto n = mmc::naive_enumerate(m);
    const auto b = oracle::brute_force(m);
    ++checked;
    if (e.density != n.density || e.density != b.best || e.selection != n.selection) ++mismatches;
  };
  int exhaustive_3x3 = 0;
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q)
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (p * q)); ++mask) {
        compare(oracle::from_mask(p, q, mask));
        if (p == 3 && q == 3) ++exhaustive_3x3;
      }
  for (std::uint64_t k = 0; k < 200; ++k) {
    const double r = 0.1 + 0.05 * static_cast<double>(k % 5);
    compare(mmc::random_instance(5, 5, r, mmc::derive_seed(3, {k})));
  }
  const double s = seconds_since(t0);
  return {mismatches == 0 && exhaustive_3x3 == 512 && s < 60.0,
          fmt("%d instances (512 of them 3x3), %d mismatches, %.2f s", checked, mismatches, s)};
}

Outcome bound_suite() {
  const auto t0 = Clock::now();
  const double probs[] = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
  int violations = 0;
  int runs = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const std::uint64_t seed = mmc::derive_seed(4, {k});
    const int p = 1 + static_cast<int>(seed % 12);
    const int q = 1 + static_cast<int>((seed >> 8) % 12);
    const double r = probs[(seed >> 16) % 6];
    const BinaryMatrix m = mmc::random_instance(p, q, r, seed);
    const double n = static_cast<double>(m.ones());
    for (const auto& rep : {mmc::lcl(m), mmc::greedy(m), mmc::neighborization(m)}) {
      ++runs;
      bool ok = mmc::is_maximal(m, rep.selection) && rep.density == oracle::pair_density(rep.result);
      if (m.ones() >= 1) {
        ok = ok && static_cast<double>(rep.density) >= 2.0 * std::sqrt(n) - 2.0 - 1e-9 && rep.density <= 4 * m.ones();
      }
      if (!ok) ++violations;
    }
  }
  return {violations == 0, fmt("%d heuristic runs on 1000 instances, %d violations, %.2f s", runs, violations,
                               seconds_since(t0))};
}

Outcome ilp_certificate() {
  const auto t0 = Clock::now();
  int checked = 0;
  int failures = 0;
  auto check = [&](const BinaryMatrix& m) {
    ++checked;
    if (!mmc::ilp::model_oracle_check(m)) ++failures;
  };
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q)
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (p * q)); ++mask) {
        if (std::popcount(mask) <= 4) check(oracle::from_mask(p, q, mask));
      }
  for (std::uint64_t k = 0; k < 100; ++k) check(mmc::random_instance(4, 4, 0.3, mmc::derive_seed(5, {k})));
  const double s = seconds_since(t0);
  return {failures == 0 && s < 120.0, fmt("%d matrices, %d failures, %.2f s", checked, failures, s)};
}

Outcome reduction_certificate() {
  const auto t0 = Clock::now();
  int graphs = 0;
  int failures = 0;
  for (int n = 1; n <= 4; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint32_t mask = 0; mask < (1U << pairs); ++mask) {
      std::vector<std::pair<int, int>> edges;
      int bit = 0;
      for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v, ++bit)
          if (mask >> bit & 1U) edges.emplace_back(u, v);
      const mmc::Graph g(n, edges);
      const auto layout = mmc::from_clique(g);
      const std::int64_t d0 = 11 + 6 * n + (n * (n - 1) - 2 * static_cast<std::int64_t>(edges.size()));
      const auto best = mmc::exact_solve(layout.matrix);
      ++graphs;
      if (!(layout.d0 == d0 && oracle::pair_density(layout.matrix) == d0 && mmc::verify_reduction_gadget(layout) &&
            best.certified && best.density == d0 + oracle::max_clique(g))) {
        ++failures;
      }
    }
  }
  const mmc::Graph paw = mmc::parse_graph("p edge 4 4\ne 1 2\ne 2 3\ne 1 3\ne 3 4\n");
  const auto layout = mmc::from_clique(paw);
  const auto best = mmc::exact_solve(layout.matrix);
  const bool paw_ok = layout.d0 == 39 && best.density == 42 && oracle::max_clique(paw) == 3;
  return {failures == 0 && paw_ok, fmt("%d graphs, %d failures; example graph d0=%lld optimum=%lld; %.2f s", graphs,
                                       failures, static_cast<long long>(layout.d0),
                                       static_cast<long long>(best.density), seconds_since(t0))};
}

Outcome table_trend() {
  const auto t0 = Clock::now();
  mmc::BenchConfig cfg;
  cfg.sizes = {5, 10};
  cfg.probabilities = {0.01, 0.02, 0.03, 0.04, 0.05, 0.1, 0.2, 0.3};
  cfg.repetitions = 50;
  const auto result = mmc::run_bench(cfg);

  // algorithms: lcl, greedy, neigh, exact
  int hits[3] = {0, 0, 0};
  int cell_hits[3] = {0, 0, 0};
  bool all_certified = true;
  for (const auto& cell : result.cells) {
    all_certified = all_certified && cell.certified == cell.instances;
    for (int a = 0; a < 3; ++a) {
      hits[a] += cell.stats[static_cast<std::size_t>(a)].optimal_hits;
      if (cell.p == 5 && std::abs(cell.r - 0.3) < 1e-12) cell_hits[a] = cell.stats[static_cast<std::size_t>(a)].optimal_hits;
    }
  }
  const bool cell_ok = cell_hits[0] >= 40 && cell_hits[1] >= 40 && cell_hits[2] >= 40;
  const bool trend_ok = hits[2] >= hits[1] && hits[1] >= hits[0] - 3;
  return {all_certified && cell_ok && trend_ok,
          fmt("p=5 r=0.3 hits lcl/greedy/neigh = %d/%d/%d of 50; grid totals %d/%d/%d of 800; %.2f s", cell_hits[0],
              cell_hits[1], cell_hits[2], hits[0], hits[1], hits[2], seconds_since(t0))};
}

Outcome performance() {
  const BinaryMatrix big = mmc::random_instance(2000, 2000, 0.01, 8);
  auto t0 = Clock::now();
  const auto l = mmc::lcl(big);
  const double lcl_s = seconds_since(t0);
  const BinaryMatrix mid = mmc::random_instance(500, 500, 0.05, 8);
  t0 = Clock::now();
  const auto g = mmc::greedy(mid);
  const double greedy_s = seconds_since(t0);
  const bool ok = lcl_s < 5.0 && greedy_s < 60.0 && mmc::is_maximal(big, l.selection) && mmc::is_maximal(mid, g.selection);
  return {ok, fmt("lcl 2000x2000 r=0.01: %.2f s (d=%lld); greedy 500x500 r=0.05: %.2f s (d=%lld)", lcl_s,
                  static_cast<long long>(l.density), greedy_s, static_cast<long long>(g.density))};
}

Outcome determinism() {
  auto instance_text = [] { return mmc::serialize_instance(mmc::random_instance(30, 40, 0.2, 2024)); };
  auto lp_text = [] { return mmc::ilp::to_lp(mmc::ilp::build_model(mmc::random_instance(6, 7, 0.3, 2024))); };
  auto bench_text = [] {
    mmc::BenchConfig cfg;
    cfg.sizes = {5, 7};
    cfg.probabilities = {0.2, 0.3};
    cfg.repetitions = 10;
    cfg.seed = 2024;
    const auto r = mmc::run_bench(cfg);
    return mmc::bench_csv(r) + mmc::head_to_head_csv(r);
  };
  const bool inst = instance_text() == instance_text();
  const bool lp = lp_text() == lp_text();
  const bool bench = bench_text() == bench_text();
  return {inst && lp && bench, fmt("instance %s, LP %s, bench CSV %s", inst ? "identical" : "DIFFERS",
                                   lp ? "identical" : "DIFFERS", bench ? "identical" : "DIFFERS")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "example densities and products", golden_sample},
      {2, "invalid column pair", invalid_example},
      {3, "exact equals enumeration", oracle_equivalence},
      {4, "heuristic bounds and maximality", bound_suite},
      {5, "integer program certificate", ilp_certificate},
      {6, "clique reduction certificate", reduction_certificate},
      {7, "heuristic quality trend", table_trend},
      {8, "performance at scale", performance},
      {9, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
