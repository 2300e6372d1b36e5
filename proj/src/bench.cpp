#include "mmc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mmc/contraction.hpp"
#include "mmc/heuristics.hpp"
#include "mmc/instances.hpp"

namespace mmc {

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Lcl: return "lcl";
    case Algorithm::Greedy: return "greedy";
    case Algorithm::Neigh: return "neigh";
    case Algorithm::Exact: return "exact";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::Lcl, Algorithm::Greedy, Algorithm::Neigh, Algorithm::Exact}) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

SolveReport run_algorithm(Algorithm a, const BinaryMatrix& m, const ExactOptions& exact, Execution execution) {
  switch (a) {
    case Algorithm::Lcl: return lcl(m);
    case Algorithm::Greedy: return greedy(m, execution);
    case Algorithm::Neigh: return neighborization(m, execution);
    case Algorithm::Exact: {
      ExactOptions opts = exact;
      opts.execution = execution;
      return exact_solve(m, opts);
    }
  }
  throw DomainError("unknown algorithm");
}

void validate(const BenchConfig& cfg) {
  if (cfg.sizes.empty() || cfg.probabilities.empty()) throw DomainError("bench needs sizes and probabilities");
  if (cfg.repetitions < 1) throw DomainError("repetitions must be at least 1");
  if (cfg.algorithms.empty()) throw DomainError("bench needs at least one algorithm");
  for (int p : cfg.sizes) {
    if (p < 1) throw DomainError("sizes must be positive");
  }
  for (double r : cfg.probabilities) {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("probabilities must lie in [0, 1]");
  }
  const bool has_exact = std::ranges::find(cfg.algorithms, Algorithm::Exact) != cfg.algorithms.end();
  if (has_exact && !cfg.budget) {
    const int p = *std::ranges::max_element(cfg.sizes);
    const int gaps = 2 * (p - 1);
    if (gaps > cfg.exact_guard) {
      throw GuardRefusal("exact without a time budget on " + std::to_string(p) + "x" + std::to_string(p) +
                         " instances (" + std::to_string(gaps) + " free gaps, guard " +
                         std::to_string(cfg.exact_guard) + "); pass a budget or drop exact");
    }
  }
}

namespace {

struct InstanceResult {
  std::vector<std::int64_t> density;
  std::vector<double> ms;
  bool certified = false;
  std::int64_t optimum = -1;
};

}  // namespace

BenchResult run_bench(const BenchConfig& cfg) {
  validate(cfg);
  const std::size_t algos = cfg.algorithms.size();
  const auto exact_pos = std::ranges::find(cfg.algorithms, Algorithm::Exact);
  const bool has_exact = exact_pos != cfg.algorithms.end();

  struct Job {
    int cell;
    int rep;
    int p;
    double r;
  };
  std::vector<Job> jobs;
  int cell_index = 0;
  for (int p : cfg.sizes) {
    for (double r : cfg.probabilities) {
      for (int k = 0; k < cfg.repetitions; ++k) jobs.push_back({cell_index, k, p, r});
      ++cell_index;
    }
  }

  std::vector<InstanceResult> results(jobs.size());
  const bool outer_parallel = cfg.execution == Execution::Parallel;
  // Parallelism lives at the instance level only.
  constexpr Execution inner = Execution::Serial;
  ExactOptions exact;
  exact.budget = cfg.budget;

  const auto njobs = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) if (outer_parallel)
  for (std::int64_t t = 0; t < njobs; ++t) {
    const Job& job = jobs[static_cast<std::size_t>(t)];
    const auto seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(job.cell), static_cast<std::uint64_t>(job.rep)});
    BinaryMatrix m = random_instance(job.p, job.p, job.r, seed);
    if (cfg.reduce) m = reduce_empty(m);
    InstanceResult& out = results[static_cast<std::size_t>(t)];
    out.density.resize(algos);
    out.ms.resize(algos);
    for (std::size_t a = 0; a < algos; ++a) {
      const SolveReport rep = run_algorithm(cfg.algorithms[a], m, exact, inner);
      out.density[a] = rep.density;
      out.ms[a] = rep.elapsed.count();
      if (cfg.algorithms[a] == Algorithm::Exact) {
        out.certified = rep.certified;
        out.optimum = rep.density;
      }
    }
  }

  BenchResult result{cfg, {}};
  cell_index = 0;
  for (int p : cfg.sizes) {
    for (double r : cfg.probabilities) {
      BenchCell cell;
      cell.p = p;
      cell.r = r;
      cell.instances = cfg.repetitions;
      cell.wins.assign(algos, std::vector<int>(algos, 0));
      cell.stats.resize(algos);
      std::vector<double> ratio_sum(algos, 0.0);
      std::vector<double> ms_sum(algos, 0.0);
      for (std::size_t a = 0; a < algos; ++a) cell.stats[a].algorithm = cfg.algorithms[a];
      for (std::size_t t = 0; t < jobs.size(); ++t) {
        if (jobs[t].cell != cell_index) continue;
        const InstanceResult& ir = results[t];
        const bool cert = has_exact && ir.certified;
        if (cert) ++cell.certified;
        for (std::size_t a = 0; a < algos; ++a) {
          AlgorithmStats& s = cell.stats[a];
          s.total_density += ir.density[a];
          ms_sum[a] += ir.ms[a];
          for (std::size_t b = 0; b < algos; ++b) {
            if (ir.density[a] > ir.density[b]) ++cell.wins[a][b];
          }
          if (!cert) continue;
          if (ir.density[a] == ir.optimum) ++s.optimal_hits;
          if (ir.density[a] > 0) {
            ratio_sum[a] += static_cast<double>(ir.optimum) / static_cast<double>(ir.density[a]);
            ++s.ratio_count;
          } else if (ir.optimum == 0) {
            ratio_sum[a] += 1.0;
            ++s.ratio_count;
          }
        }
      }
      for (std::size_t a = 0; a < algos; ++a) {
        AlgorithmStats& s = cell.stats[a];
        s.mean_ratio = s.ratio_count > 0 ? ratio_sum[a] / s.ratio_count : std::nan("");
        s.mean_ms = ms_sum[a] / cfg.repetitions;
      }
      result.cells.push_back(std::move(cell));
      ++cell_index;
    }
  }
  return result;
}

std::vector<std::vector<int>> head_to_head(const BenchResult& result) {
  const std::size_t algos = result.config.algorithms.size();
  std::vector<std::vector<int>> total(algos, std::vector<int>(algos, 0));
  for (const BenchCell& cell : result.cells) {
    for (std::size_t a = 0; a < algos; ++a) {
      for (std::size_t b = 0; b < algos; ++b) total[a][b] += cell.wins[a][b];
    }
  }
  return total;
}

namespace {

std::string fixed(double v, int digits) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string prob(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", r);
  return buf;
}

using Table = std::vector<std::vector<std::string>>;

std::string render_markdown(const Table& table) {
  std::vector<std::size_t> width(table.front().size(), 3);
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& row) {
    out << '|';
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << ' ' << row[c] << std::string(width[c] - row[c].size(), ' ') << " |";
    }
    out << '\n';
  };
  line(table.front());
  out << '|';
  for (std::size_t w : width) out << std::string(w + 2, '-') << '|';
  out << '\n';
  for (std::size_t r = 1; r < table.size(); ++r) line(table[r]);
  return out.str();
}

std::string render_csv(const Table& table) {
  std::string out;
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

Table cell_table(const BenchResult& result, bool timings) {
  Table t;
  std::vector<std::string> header{"p", "r", "instances", "certified", "algorithm", "mean_ratio", "ratio_n",
                                  "optimal_hits", "total_density"};
  if (timings) header.push_back("mean_ms");
  t.push_back(header);
  for (const BenchCell& cell : result.cells) {
    for (const AlgorithmStats& s : cell.stats) {
      std::vector<std::string> row{std::to_string(cell.p), prob(cell.r), std::to_string(cell.instances),
                                   std::to_string(cell.certified), std::string(algorithm_name(s.algorithm)),
                                   fixed(s.mean_ratio, 4), std::to_string(s.ratio_count),
                                   std::to_string(s.optimal_hits), std::to_string(s.total_density)};
      if (timings) row.push_back(fixed(s.mean_ms, 3));
      t.push_back(std::move(row));
    }
  }
  return t;
}

Table wins_table(const BenchResult& result) {
  const auto total = head_to_head(result);
  Table t;
  std::vector<std::string> header{"wins"};
  for (Algorithm a : result.config.algorithms) header.emplace_back(algorithm_name(a));
  t.push_back(header);
  for (std::size_t a = 0; a < total.size(); ++a) {
    std::vector<std::string> row{std::string(algorithm_name(result.config.algorithms[a]))};
    for (std::size_t b = 0; b < total.size(); ++b) row.push_back(std::to_string(total[a][b]));
    t.push_back(std::move(row));
  }
  return t;
}

}  // namespace

std::string bench_csv(const BenchResult& result, bool timings) { return render_csv(cell_table(result, timings)); }

std::string bench_markdown(const BenchResult& result, bool timings) {
  return render_markdown(cell_table(result, timings));
}

std::string head_to_head_csv(const BenchResult& result) { return render_csv(wins_table(result)); }

std::string head_to_head_markdown(const BenchResult& result) { return render_markdown(wins_table(result)); }

}  // namespace mmc
