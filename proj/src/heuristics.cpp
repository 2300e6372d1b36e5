#include "mmc/heuristics.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "detail.hpp"
#include "mmc/bitgrid.hpp"
#include "mmc/contraction.hpp"

namespace mmc {

using detail::Clock;

namespace {

void sweep_lines(ContractionState& state) {
  for (int i = state.rows() - 1; i >= 1; --i) {
    if (state.line_valid(i)) state.contract_line(i);
  }
}

void sweep_columns(ContractionState& state) {
  for (int j = state.cols() - 1; j >= 1; --j) {
    if (state.column_valid(j)) state.contract_column(j);
  }
}

constexpr std::int64_t kInvalid = std::numeric_limits<std::int64_t>::min();

}  // namespace

SolveReport lcl(const BinaryMatrix& m) {
  const auto start = Clock::now();
  ContractionState lc(m);
  sweep_lines(lc);
  sweep_columns(lc);
  ContractionState cl(m);
  sweep_columns(cl);
  sweep_lines(cl);

  const std::int64_t lc_density = lc.density();
  const std::int64_t cl_density = cl.density();
  ContractionState& chosen = cl_density > lc_density ? cl : lc;
  const std::int64_t swept = std::max(lc_density, cl_density);
  // A column contraction can re-enable a line skipped earlier in the sweep.
  detail::complete_state(chosen, ScanOrder::LinesThenColumns);

  SolveReport report = detail::report_from_state("lcl", m, chosen, start);
  report.pre_backstop_density = swept;
  return report;
}

SolveReport greedy(const BinaryMatrix& m, Execution execution) {
  const auto start = Clock::now();
  ContractionState state(m);
  std::vector<std::int64_t> line_gain;
  std::vector<std::int64_t> column_gain;
  const bool parallel = execution == Execution::Parallel;

  for (;;) {
    const int line_gaps = state.rows() - 1;
    const int col_gaps = state.cols() - 1;
    line_gain.assign(static_cast<std::size_t>(line_gaps), kInvalid);
    column_gain.assign(static_cast<std::size_t>(col_gaps), kInvalid);

#pragma omp parallel if (parallel)
    {
#pragma omp for schedule(static) nowait
      for (int i = 1; i <= line_gaps; ++i) {
        if (state.line_valid(i)) line_gain[static_cast<std::size_t>(i - 1)] = state.line_delta(i);
      }
#pragma omp for schedule(static)
      for (int j = 1; j <= col_gaps; ++j) {
        if (state.column_valid(j)) column_gain[static_cast<std::size_t>(j - 1)] = state.column_delta(j);
      }
    }

    std::int64_t best = kInvalid;
    int best_line = 0;
    int best_column = 0;
    for (int i = 1; i <= line_gaps; ++i) {
      if (line_gain[static_cast<std::size_t>(i - 1)] > best) {
        best = line_gain[static_cast<std::size_t>(i - 1)];
        best_line = i;
      }
    }
    for (int j = 1; j <= col_gaps; ++j) {
      if (column_gain[static_cast<std::size_t>(j - 1)] > best) {
        best = column_gain[static_cast<std::size_t>(j - 1)];
        best_line = 0;
        best_column = j;
      }
    }
    if (best == kInvalid) break;
    if (best_line > 0) {
      state.contract_line(best_line);
    } else {
      state.contract_column(best_column);
    }
  }
  return detail::report_from_state("greedy", m, state, start);
}

SolveReport greedy_reference(const BinaryMatrix& m) {
  const auto start = Clock::now();
  BinaryMatrix current = m;
  std::vector<int> row_end(static_cast<std::size_t>(m.rows()));
  std::vector<int> col_end(static_cast<std::size_t>(m.cols()));
  for (int r = 0; r < m.rows(); ++r) row_end[static_cast<std::size_t>(r)] = r + 1;
  for (int c = 0; c < m.cols(); ++c) col_end[static_cast<std::size_t>(c)] = c + 1;
  Selection chosen;

  for (;;) {
    std::int64_t best = kInvalid;
    int best_line = 0;
    int best_column = 0;
    for (int i = 1; i < current.rows(); ++i) {
      if (!single_line_valid(current, i)) continue;
      const std::int64_t d = density_delta_line(current, i);
      if (d > best) {
        best = d;
        best_line = i;
      }
    }
    for (int j = 1; j < current.cols(); ++j) {
      if (!single_column_valid(current, j)) continue;
      const std::int64_t d = density_delta_column(current, j);
      if (d > best) {
        best = d;
        best_line = 0;
        best_column = j;
      }
    }
    if (best == kInvalid) break;
    if (best_line > 0) {
      chosen.lines.push_back(row_end[static_cast<std::size_t>(best_line - 1)]);
      row_end.erase(row_end.begin() + (best_line - 1));
      current = apply(current, Selection{{best_line}, {}});
    } else {
      chosen.columns.push_back(col_end[static_cast<std::size_t>(best_column - 1)]);
      col_end.erase(col_end.begin() + (best_column - 1));
      current = apply(current, Selection{{}, {best_column}});
    }
  }

  std::sort(chosen.lines.begin(), chosen.lines.end());
  std::sort(chosen.columns.begin(), chosen.columns.end());
  SolveReport report;
  report.algorithm = "greedy-ref";
  report.input_rows = m.rows();
  report.input_cols = m.cols();
  report.ones = m.ones();
  report.selection = std::move(chosen);
  report.density = density(current);
  report.result = std::move(current);
  report.elapsed = Clock::now() - start;
  return report;
}

namespace {

// Answers pair-reachability queries on one matrix using 2-D prefix sums, so
// every block count is O(1).
//
// Contractions outside the box spanned by the two cells never change their
// relative offset, and validity is closed under taking subsets. So the pair
// is reachable iff, on each axis with gap d >= 1, contracting all but one of
// the d in-between gaps (nothing when d = 0) is valid for some choice of the
// skipped gap on each axis.
class PairKernel {
 public:
  explicit PairKernel(const BinaryMatrix& m)
      : m_(m), rows_(m.rows()), cols_(m.cols()),
        sum_(static_cast<std::size_t>(rows_ + 1) * static_cast<std::size_t>(cols_ + 1), 0) {
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        at(r + 1, c + 1) = at(r, c + 1) + at(r + 1, c) - at(r, c) + (m(r, c) ? 1 : 0);
      }
    }
  }

  // 0-based cells.
  bool reachable(int r1, int c1, int r2, int c2) const {
    if (!m_(r1, c1) || !m_(r2, c2) || (r1 == r2 && c1 == c2)) return false;
    const int top = std::min(r1, r2);
    const int bottom = std::max(r1, r2);
    const int left = std::min(c1, c2);
    const int right = std::max(c1, c2);
    if (bottom - top <= 1 && right - left <= 1) return true;

    // Candidate splits: skip index s means groups [lo, s] and [s+1, hi];
    // s = hi encodes the single group [lo, hi] (only used when lo == hi).
    const std::vector<int> row_splits = splits(top, bottom);
    const std::vector<int> col_splits = splits(left, right);

    std::vector<int> good_rows;
    for (int s : row_splits) {
      if (row_groups_ok(top, bottom, s, left, right)) good_rows.push_back(s);
    }
    if (good_rows.empty()) return false;
    std::vector<int> good_cols;
    for (int s : col_splits) {
      if (col_groups_ok(left, right, s, top, bottom)) good_cols.push_back(s);
    }
    for (int rs : good_rows) {
      for (int cs : good_cols) {
        if (blocks_ok(top, bottom, rs, left, right, cs)) return true;
      }
    }
    return false;
  }

 private:
  std::int64_t& at(int r, int c) {
    return sum_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_ + 1) + static_cast<std::size_t>(c)];
  }
  std::int64_t at(int r, int c) const {
    return sum_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_ + 1) + static_cast<std::size_t>(c)];
  }

  // Ones in rows [r0, r1] x columns [c0, c1], inclusive.
  std::int64_t count(int r0, int r1, int c0, int c1) const {
    return at(r1 + 1, c1 + 1) - at(r0, c1 + 1) - at(r1 + 1, c0) + at(r0, c0);
  }

  static std::vector<int> splits(int lo, int hi) {
    std::vector<int> out;
    if (lo == hi) {
      out.push_back(hi);
    } else {
      for (int s = lo; s < hi; ++s) out.push_back(s);
    }
    return out;
  }

  // The merged line groups must not collide in any column outside [left, right].
  bool row_groups_ok(int top, int bottom, int s, int left, int right) const {
    const int groups[2][2] = {{top, std::min(s, bottom)}, {s + 1, bottom}};
    for (const auto& g : groups) {
      if (g[1] <= g[0]) continue;
      for (int c = 0; c < cols_; ++c) {
        if (c >= left && c <= right) continue;
        if (count(g[0], g[1], c, c) > 1) return false;
      }
    }
    return true;
  }

  bool col_groups_ok(int left, int right, int s, int top, int bottom) const {
    const int groups[2][2] = {{left, std::min(s, right)}, {s + 1, right}};
    for (const auto& g : groups) {
      if (g[1] <= g[0]) continue;
      for (int r = 0; r < rows_; ++r) {
        if (r >= top && r <= bottom) continue;
        if (count(r, r, g[0], g[1]) > 1) return false;
      }
    }
    return true;
  }

  bool blocks_ok(int top, int bottom, int rs, int left, int right, int cs) const {
    const int rg[2][2] = {{top, std::min(rs, bottom)}, {rs + 1, bottom}};
    const int cg[2][2] = {{left, std::min(cs, right)}, {cs + 1, right}};
    for (const auto& r : rg) {
      if (r[1] < r[0]) continue;
      for (const auto& c : cg) {
        if (c[1] < c[0]) continue;
        if (count(r[0], r[1], c[0], c[1]) > 1) return false;
      }
    }
    return true;
  }

  const BinaryMatrix& m_;
  int rows_;
  int cols_;
  std::vector<std::int64_t> sum_;
};

std::vector<Cell> ones_of(const BinaryMatrix& m) {
  std::vector<Cell> out;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (m(r, c)) out.push_back(Cell{r + 1, c + 1});
    }
  }
  return out;
}

}  // namespace

int n_pair(const BinaryMatrix& m, Cell a, Cell b) {
  auto in_range = [&](Cell x) {
    return x.line >= 1 && x.line <= m.rows() && x.column >= 1 && x.column <= m.cols();
  };
  if (!in_range(a) || !in_range(b)) throw BoundsError("cell outside the matrix");
  const PairKernel kernel(m);
  return kernel.reachable(a.line - 1, a.column - 1, b.line - 1, b.column - 1) ? 1 : 0;
}

PairReachability n_value(const BinaryMatrix& m, Execution execution) {
  const PairKernel kernel(m);
  const std::vector<Cell> ones = ones_of(m);
  const auto n = static_cast<std::int64_t>(ones.size());
  std::vector<std::vector<std::uint8_t>> flags(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(dynamic, 4) if (execution == Execution::Parallel)
  for (std::int64_t a = 0; a < n; ++a) {
    auto& row = flags[static_cast<std::size_t>(a)];
    row.resize(static_cast<std::size_t>(n - a - 1));
    const Cell ca = ones[static_cast<std::size_t>(a)];
    for (std::int64_t b = a + 1; b < n; ++b) {
      const Cell cb = ones[static_cast<std::size_t>(b)];
      row[static_cast<std::size_t>(b - a - 1)] =
          kernel.reachable(ca.line - 1, ca.column - 1, cb.line - 1, cb.column - 1) ? 1 : 0;
    }
  }

  PairReachability out;
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = a + 1; b < n; ++b) {
      const int v = flags[static_cast<std::size_t>(a)][static_cast<std::size_t>(b - a - 1)];
      out.per_pair.emplace(std::pair{ones[static_cast<std::size_t>(a)], ones[static_cast<std::size_t>(b)]}, v);
      out.count += v;
    }
  }
  return out;
}

std::int64_t n_count(const BinaryMatrix& m, Execution execution) {
  const PairKernel kernel(m);
  const std::vector<Cell> ones = ones_of(m);
  const auto n = static_cast<std::int64_t>(ones.size());
  std::int64_t total = 0;

#pragma omp parallel for schedule(dynamic, 4) reduction(+ : total) if (execution == Execution::Parallel)
  for (std::int64_t a = 0; a < n; ++a) {
    const Cell ca = ones[static_cast<std::size_t>(a)];
    for (std::int64_t b = a + 1; b < n; ++b) {
      const Cell cb = ones[static_cast<std::size_t>(b)];
      if (kernel.reachable(ca.line - 1, ca.column - 1, cb.line - 1, cb.column - 1)) ++total;
    }
  }
  return total;
}

SolveReport neighborization(const BinaryMatrix& m, Execution execution) {
  const auto start = Clock::now();
  ContractionState state(m);
  for (;;) {
    std::int64_t best = -1;
    int best_line = 0;
    int best_column = 0;
    for (int i = 1; i < state.rows(); ++i) {
      if (!state.line_valid(i)) continue;
      ContractionState next = state;
      next.contract_line(i);
      const std::int64_t value = n_count(next.matrix(), execution);
      if (value > best) {
        best = value;
        best_line = i;
      }
    }
    for (int j = 1; j < state.cols(); ++j) {
      if (!state.column_valid(j)) continue;
      ContractionState next = state;
      next.contract_column(j);
      const std::int64_t value = n_count(next.matrix(), execution);
      if (value > best) {
        best = value;
        best_line = 0;
        best_column = j;
      }
    }
    if (best < 0) break;
    if (best_line > 0) {
      state.contract_line(best_line);
    } else {
      state.contract_column(best_column);
    }
  }
  return detail::report_from_state("neigh", m, state, start);
}

}  // namespace mmc
