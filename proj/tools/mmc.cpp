#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmc/bench.hpp"
#include "mmc/contraction.hpp"
#include "mmc/heuristics.hpp"
#include "mmc/ilp.hpp"
#include "mmc/instances.hpp"
#include "mmc/solvers.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kRefused = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "-" or empty means stdout.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

void write_meta(const std::string& path, const nlohmann::json& meta) {
  if (path.empty() || path == "-") return;
  write_output(path + ".meta.json", meta.dump(2) + "\n");
}

mmc::BinaryMatrix load_instance(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return mmc::parse_instance(text);
  } catch (const mmc::ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Ones as dots, zeros blank, inside a frame.
std::string render_grid(const mmc::BinaryMatrix& m) {
  std::string frame = "+" + std::string(static_cast<std::size_t>(m.cols()), '-') + "+\n";
  std::string out = frame;
  for (int r = 0; r < m.rows(); ++r) {
    out += '|';
    for (int c = 0; c < m.cols(); ++c) out += m(r, c) ? '.' : ' ';
    out += "|\n";
  }
  return out + frame;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct SolveArgs {
  std::string instance;
  std::string algo;
  double budget = 0.0;
  bool force = false;
  bool serial = false;
  std::string format = "csv";
};

int run_solve(const SolveArgs& a) {
  const mmc::BinaryMatrix m = load_instance(a.instance);
  const auto exec = a.serial ? mmc::Execution::Serial : mmc::Execution::Parallel;
  mmc::SolveReport rep;
  if (a.algo == "naive") {
    mmc::EnumerateOptions opts;
    opts.force = a.force;
    opts.execution = exec;
    rep = mmc::naive_enumerate(m, opts);
  } else {
    mmc::ExactOptions opts;
    if (a.budget > 0) opts.budget = std::chrono::duration<double>(a.budget);
    rep = mmc::run_algorithm(*mmc::parse_algorithm(a.algo), m, opts, exec);
  }

  if (a.format == "md") {
    std::cout << "| algorithm | p | q | n | density | elapsed_ms | I | J |\n"
              << "|---|---|---|---|---|---|---|---|\n";
    std::string cells;
    for (char ch : mmc::csv_row(rep)) cells += ch == ',' ? std::string(" | ") : std::string(1, ch);
    std::cout << "| " << cells << " |\n\n";
    std::cout << "```\n" << mmc::serialize_selection(rep.selection) << render_grid(rep.result) << "```\n";
  } else {
    std::cout << mmc::csv_header() << '\n' << mmc::csv_row(rep) << '\n';
    std::cout << mmc::serialize_selection(rep.selection) << render_grid(rep.result);
  }
  if (!rep.certified) std::cerr << "note: time budget reached, result not certified optimal\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum matrix contraction toolkit"};
  app.require_subcommand(1);

  // gen
  int gen_p = 0;
  int gen_q = 0;
  double gen_r = 0.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Random p x q instance, entries 1 with probability r");
  gen->add_option("-p", gen_p, "Rows")->required()->check(CLI::PositiveNumber);
  gen->add_option("-q", gen_q, "Columns (default p)")->check(CLI::PositiveNumber);
  gen->add_option("-r", gen_r, "Probability of a one")->required()->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  // solve
  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("instance", solve_args.instance, "Instance file")->required();
  solve->add_option("--algo", solve_args.algo, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"lcl", "greedy", "neigh", "exact", "naive"}));
  solve->add_option("--budget", solve_args.budget, "Exact time budget in seconds (0 = none)")
      ->check(CLI::NonNegativeNumber);
  solve->add_flag("--force", solve_args.force, "Let naive run past its size guard");
  solve->add_flag("--serial", solve_args.serial, "Disable OpenMP kernels");
  solve->add_option("--format", solve_args.format, "Output format")
      ->check(CLI::IsMember({"csv", "md"}))
      ->capture_default_str();

  // export-lp
  std::string lp_in;
  std::string lp_out;
  bool lp_check = false;
  auto* export_lp = app.add_subcommand("export-lp", "Write the staged integer program in LP format");
  export_lp->add_option("instance", lp_in, "Instance file")->required();
  export_lp->add_option("-o,--output", lp_out, "Output file (default stdout)");
  export_lp->add_flag("--check", lp_check, "Check the model against brute force first");

  // reduce-clique
  std::string rc_in;
  std::string rc_out;
  auto* reduce = app.add_subcommand("reduce-clique", "Build the contraction instance of a DIMACS graph");
  reduce->add_option("graph", rc_in, "DIMACS edge file")->required();
  reduce->add_option("-o,--output", rc_out, "Output file (default stdout)");

  // bench
  std::string b_sizes = "5,10";
  std::string b_probs = "0.01,0.02,0.03,0.04,0.05,0.1,0.2,0.3";
  std::string b_algos = "lcl,greedy,neigh,exact";
  int b_reps = 50;
  std::uint64_t b_seed = 1;
  double b_budget = 60.0;
  bool b_no_reduce = false;
  bool b_timings = false;
  bool b_serial = false;
  bool b_wins = false;
  std::string b_format = "md";
  std::string b_out;
  auto* bench = app.add_subcommand("bench", "Run the heuristic/exact comparison grid");
  bench->add_option("--sizes", b_sizes, "Comma-separated p values")->capture_default_str();
  bench->add_option("--probs", b_probs, "Comma-separated r values")->capture_default_str();
  bench->add_option("--algos", b_algos, "Subset of lcl,greedy,neigh,exact")->capture_default_str();
  bench->add_option("--reps", b_reps, "Instances per cell")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--seed", b_seed, "Base seed")->capture_default_str();
  bench->add_option("--budget", b_budget, "Exact budget in seconds (0 = none)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench->add_flag("--no-reduce", b_no_reduce, "Keep empty lines and columns");
  bench->add_flag("--timings", b_timings, "Add mean wall-times (not reproducible)");
  bench->add_flag("--serial", b_serial, "Run instances one at a time");
  bench->add_flag("--wins", b_wins, "Append the head-to-head win table");
  bench->add_option("--format", b_format, "Output format")
      ->check(CLI::IsMember({"csv", "md"}))
      ->capture_default_str();
  bench->add_option("-o,--output", b_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) {
      if (gen_q == 0) gen_q = gen_p;
      const mmc::BinaryMatrix m = mmc::random_instance(gen_p, gen_q, gen_r, gen_seed);
      write_output(gen_out, mmc::serialize_instance(m));
      write_meta(gen_out, {{"generator", std::string(mmc::kGeneratorName)},
                           {"p", gen_p},
                           {"q", gen_q},
                           {"r", gen_r},
                           {"seed", gen_seed}});
      return kOk;
    }
    if (solve->parsed()) return run_solve(solve_args);
    if (export_lp->parsed()) {
      const mmc::BinaryMatrix m = load_instance(lp_in);
      const mmc::ilp::IlpModel model = mmc::ilp::build_model(m);
      if (lp_check) {
        const auto report = mmc::ilp::check_formulation(m, model);
        (lp_out.empty() || lp_out == "-" ? std::cerr : std::cout)
            << "check: " << (report.agrees ? "ok" : "MISMATCH") << " (" << report.assignments
            << " assignments, " << report.feasible << " feasible, best " << report.best_objective << ")\n";
        if (!report.agrees) {
          std::cerr << report.first_mismatch << '\n';
          return kFailure;
        }
      }
      write_output(lp_out, mmc::ilp::to_lp(model));
      return kOk;
    }
    if (reduce->parsed()) {
      mmc::Graph g = [&] {
        try {
          return mmc::parse_graph(read_file(rc_in));
        } catch (const mmc::ParseError& e) {
          throw UsageError(rc_in + ": " + e.what());
        }
      }();
      const mmc::ReductionLayout layout = mmc::from_clique(g);
      write_output(rc_out, mmc::serialize_instance(layout.matrix));
      write_meta(rc_out, {{"generator", "clique-reduction"},
                          {"vertices", g.vertex_count()},
                          {"edges", g.edges().size()},
                          {"d0", layout.d0},
                          {"node_lines", layout.node_line},
                          {"node_columns", layout.node_column}});
      return kOk;
    }
    if (bench->parsed()) {
      mmc::BenchConfig cfg;
      cfg.sizes.clear();
      for (const auto& s : split(b_sizes, ',')) cfg.sizes.push_back(std::stoi(s));
      cfg.probabilities.clear();
      for (const auto& s : split(b_probs, ',')) cfg.probabilities.push_back(std::stod(s));
      cfg.algorithms.clear();
      for (const auto& s : split(b_algos, ',')) {
        const auto a = mmc::parse_algorithm(s);
        if (!a) throw UsageError("unknown algorithm " + s);
        cfg.algorithms.push_back(*a);
      }
      cfg.repetitions = b_reps;
      cfg.seed = b_seed;
      if (b_budget > 0) {
        cfg.budget = std::chrono::duration<double>(b_budget);
      } else {
        cfg.budget.reset();
      }
      cfg.reduce = !b_no_reduce;
      cfg.execution = b_serial ? mmc::Execution::Serial : mmc::Execution::Parallel;
      const mmc::BenchResult result = mmc::run_bench(cfg);
      std::string text;
      if (b_format == "csv") {
        text = mmc::bench_csv(result, b_timings);
        if (b_wins) text += "\n" + mmc::head_to_head_csv(result);
      } else {
        text = mmc::bench_markdown(result, b_timings);
        if (b_wins) text += "\n" + mmc::head_to_head_markdown(result);
      }
      write_output(b_out, text);
      return kOk;
    }
  } catch (const mmc::GuardRefusal& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number in list (" << e.what() << ")\n";
    return kUsage;
  } catch (const mmc::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
