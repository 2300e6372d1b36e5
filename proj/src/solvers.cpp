#include "mmc/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <sstream>
#include <vector>

#include "mmc/bitgrid.hpp"
#include "mmc/contraction.hpp"
#include "detail.hpp"

namespace mmc {

namespace {

using detail::Clock;

std::string join(const std::vector<int>& idx) {
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k > 0) out += ';';
    out += std::to_string(idx[k]);
  }
  return out;
}

struct Best {
  std::int64_t density = -1;
  Selection selection;

  // Total order: higher density first, then lexicographically smaller selection.
  bool offer(std::int64_t d, const Selection& sel) {
    if (d > density || (d == density && sel < selection)) {
      density = d;
      selection = sel;
      return true;
    }
    return false;
  }
};

SolveReport make_report(std::string algorithm, const BinaryMatrix& m, Selection sel,
                        Clock::time_point start) {
  SolveReport report;
  report.algorithm = std::move(algorithm);
  report.input_rows = m.rows();
  report.input_cols = m.cols();
  report.ones = m.ones();
  report.result = apply_fast(m, sel);
  report.density = BitGrid(report.result).density();
  report.selection = std::move(sel);
  report.elapsed = Clock::now() - start;
  return report;
}

std::vector<int> bits_to_gaps(std::uint64_t mask, int count) {
  std::vector<int> out;
  for (int k = 0; k < count; ++k) {
    if ((mask >> k) & 1u) out.push_back(k + 1);
  }
  return out;
}

// Merges the gaps of `mask` (bit k = gap k+1) largest first; false on conflict.
bool merge_mask(BitGrid& grid, std::uint64_t mask, int count) {
  for (int k = count - 1; k >= 0; --k) {
    if (!((mask >> k) & 1u)) continue;
    if (!grid.rows_mergeable(k)) return false;
    grid.merge_rows(k);
  }
  return true;
}

}  // namespace

namespace detail {

SolveReport report_from_state(std::string algorithm, const BinaryMatrix& input,
                              const ContractionState& state, Clock::time_point start) {
  SolveReport report;
  report.algorithm = std::move(algorithm);
  report.input_rows = input.rows();
  report.input_cols = input.cols();
  report.ones = input.ones();
  report.selection = state.selection();
  report.result = state.matrix();
  report.density = state.density();
  report.elapsed = Clock::now() - start;
  return report;
}

void complete_state(ContractionState& state, ScanOrder order) {
  auto sweep_lines = [&] {
    bool changed = false;
    for (int i = state.rows() - 1; i >= 1; --i) {
      if (state.line_valid(i)) {
        state.contract_line(i);
        changed = true;
      }
    }
    return changed;
  };
  auto sweep_columns = [&] {
    bool changed = false;
    for (int j = state.cols() - 1; j >= 1; --j) {
      if (state.column_valid(j)) {
        state.contract_column(j);
        changed = true;
      }
    }
    return changed;
  };
  bool changed = true;
  while (changed) {
    if (order == ScanOrder::LinesThenColumns) {
      changed = sweep_lines();
      changed = sweep_columns() || changed;
    } else {
      changed = sweep_columns();
      changed = sweep_lines() || changed;
    }
  }
}

}  // namespace detail

std::string csv_header() { return "algorithm,p,q,n,density,elapsed_ms,I,J"; }

std::string csv_row(const SolveReport& report) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << report.algorithm << ',' << report.input_rows << ',' << report.input_cols << ','
      << report.ones << ',' << report.density << ',' << report.elapsed.count() << ','
      << join(report.selection.lines) << ',' << join(report.selection.columns);
  return out.str();
}

bool is_maximal(const BinaryMatrix& m, const Selection& sel) {
  const BitGrid grid(apply_fast(m, sel));
  for (int r = 0; r + 1 < grid.rows(); ++r) {
    if (grid.rows_mergeable(r)) return false;
  }
  const BitGrid t = grid.transposed();
  for (int c = 0; c + 1 < t.rows(); ++c) {
    if (t.rows_mergeable(c)) return false;
  }
  return true;
}

Selection complete_to_maximal(const BinaryMatrix& m, const Selection& sel, ScanOrder order) {
  ContractionState state = replay(m, sel);
  detail::complete_state(state, order);
  return state.selection();
}

SolveReport naive_enumerate(const BinaryMatrix& m, const EnumerateOptions& options) {
  const auto start = Clock::now();
  const int line_gaps = m.rows() - 1;
  const int col_gaps = m.cols() - 1;
  if (line_gaps + col_gaps > options.max_free_gaps && !options.force) {
    throw GuardRefusal("naive enumeration over " + std::to_string(line_gaps + col_gaps) +
                       " gaps exceeds the guard of " + std::to_string(options.max_free_gaps) +
                       "; use exact_solve or force the run");
  }
  if (line_gaps + col_gaps > 62) throw GuardRefusal("naive enumeration beyond 62 gaps");

  const BitGrid original(m);
  const std::int64_t line_masks = std::int64_t{1} << line_gaps;
  const std::int64_t col_masks = std::int64_t{1} << col_gaps;
  Best best;

#pragma omp parallel if (options.execution == Execution::Parallel)
  {
    Best local;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t lm = 0; lm < line_masks; ++lm) {
      BitGrid rows_merged = original;
      if (!merge_mask(rows_merged, static_cast<std::uint64_t>(lm), line_gaps)) continue;
      const BitGrid columns = rows_merged.transposed();
      std::vector<int> lines;
      bool lines_ready = false;
      for (std::int64_t cm = 0; cm < col_masks; ++cm) {
        BitGrid g = columns;
        if (!merge_mask(g, static_cast<std::uint64_t>(cm), col_gaps)) continue;
        const std::int64_t d = g.density();
        if (d < local.density) continue;
        if (!lines_ready) {
          lines = bits_to_gaps(static_cast<std::uint64_t>(lm), line_gaps);
          lines_ready = true;
        }
        local.offer(d, Selection{lines, bits_to_gaps(static_cast<std::uint64_t>(cm), col_gaps)});
      }
    }
#pragma omp critical
    best.offer(local.density, local.selection);
  }

  return make_report("naive", m, best.selection, start);
}

namespace {

class ExactSearch {
 public:
  ExactSearch(const BinaryMatrix& m, const ExactOptions& options)
      : options_(options), original_(m), cap_(4 * m.ones()) {
    const BitGrid t = original_.transposed();
    for (int g = m.rows() - 1; g >= 1; --g) {
      if (original_.rows_mergeable(g - 1)) lines_.push_back(g);
    }
    for (int g = m.cols() - 1; g >= 1; --g) {
      if (t.rows_mergeable(g - 1)) columns_.push_back(g);
    }
    if (options_.budget) deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(*options_.budget);
  }

  Best run() {
    const int candidates = static_cast<int>(lines_.size() + columns_.size());
    const int split = options_.execution == Execution::Parallel ? std::min(candidates, 10) : 0;
    const std::int64_t tasks = std::int64_t{1} << split;
    std::vector<Best> results(static_cast<std::size_t>(tasks));

#pragma omp parallel for schedule(dynamic, 1) if (options_.execution == Execution::Parallel)
    for (std::int64_t t = 0; t < tasks; ++t) {
      Worker w{*this, static_cast<std::uint64_t>(t), split, {}, {}, {}};
      w.lines(0, original_);
      results[static_cast<std::size_t>(t)] = std::move(w.best);
    }

    Best best;
    for (const Best& r : results) {
      if (r.density >= 0) best.offer(r.density, r.selection);
    }
    return best;
  }

  bool timed_out() const { return stop_.load(); }

 private:
  struct Worker {
    ExactSearch& search;
    std::uint64_t prefix;
    int split;
    Best best;
    std::vector<int> chosen_lines;
    std::vector<int> chosen_columns;
    std::uint64_t nodes = 0;

    // Decisions above `split` depth are forced by the task prefix.
    bool allowed(int depth, bool contract) const {
      if (depth >= split) return true;
      return (((prefix >> depth) & 1u) != 0) == contract;
    }

    bool out_of_time() {
      if (search.stop_.load(std::memory_order_relaxed)) return true;
      if (search.deadline_ && (++nodes & 1023u) == 0 && Clock::now() > *search.deadline_) {
        search.stop_.store(true);
        return true;
      }
      return false;
    }

    void lines(std::size_t k, const BitGrid& grid) {
      if (out_of_time()) return;
      if (search.cap_ < search.best_density_.load(std::memory_order_relaxed)) return;
      if (k == search.lines_.size()) {
        if (column_bound(grid) < search.best_density_.load(std::memory_order_relaxed)) return;
        columns(0, grid.transposed());
        return;
      }
      const int depth = static_cast<int>(k);
      const int gap = search.lines_[k];
      if (allowed(depth, true) && grid.rows_mergeable(gap - 1)) {
        BitGrid next = grid;
        next.merge_rows(gap - 1);
        chosen_lines.push_back(gap);
        lines(k + 1, next);
        chosen_lines.pop_back();
      }
      if (allowed(depth, false)) lines(k + 1, grid);
    }

    void columns(std::size_t k, const BitGrid& t) {
      if (out_of_time()) return;
      if (k == search.columns_.size()) {
        leaf(t);
        return;
      }
      const int depth = static_cast<int>(search.lines_.size() + k);
      const int gap = search.columns_[k];
      if (allowed(depth, true) && t.rows_mergeable(gap - 1)) {
        BitGrid next = t;
        next.merge_rows(gap - 1);
        chosen_columns.push_back(gap);
        columns(k + 1, next);
        chosen_columns.pop_back();
      }
      if (allowed(depth, false)) columns(k + 1, t);
    }

    void leaf(const BitGrid& t) {
      const std::int64_t d = t.density();
      if (d < best.density) return;
      Selection sel{{chosen_lines.rbegin(), chosen_lines.rend()},
                    {chosen_columns.rbegin(), chosen_columns.rend()}};
      if (best.offer(d, sel)) {
        std::int64_t seen = search.best_density_.load();
        while (d > seen && !search.best_density_.compare_exchange_weak(seen, d)) {
        }
      }
    }

    // With the line grouping fixed, every line keeps its count of ones under
    // column merges: at most k-1 horizontal pairs among k ones in a line, and
    // at most 3 partners per one in the adjacent line.
    static std::int64_t column_bound(const BitGrid& grid) {
      std::int64_t bound = 0;
      std::int64_t previous = 0;
      for (int r = 0; r < grid.rows(); ++r) {
        std::int64_t count = 0;
        for (int w = 0; w < grid.words(); ++w) count += std::popcount(grid.row(r)[w]);
        if (count > 0) bound += count - 1;
        if (r > 0) bound += 3 * std::min(previous, count);
        previous = count;
      }
      return bound;
    }
  };

  ExactOptions options_;
  BitGrid original_;
  std::int64_t cap_;
  std::vector<int> lines_;    // singly valid line gaps, descending
  std::vector<int> columns_;  // singly valid column gaps, descending
  std::optional<Clock::time_point> deadline_;
  std::atomic<std::int64_t> best_density_{-1};
  std::atomic<bool> stop_{false};
};

}  // namespace

SolveReport exact_solve(const BinaryMatrix& m, const ExactOptions& options) {
  const auto start = Clock::now();
  ExactSearch search(m, options);
  Best best = search.run();
  if (best.density < 0) best.selection = {};  // stopped before any leaf
  SolveReport report = make_report("exact", m, best.selection, start);
  report.certified = !search.timed_out();
  return report;
}

}  // namespace mmc
