#include "mmc/contraction.hpp"

#include <string>
#include <vector>

namespace mmc {

IntegerMatrix contract(const BinaryMatrix& m, const Selection& sel) {
  check_selection(m, sel);
  IntegerMatrix a = m.to_integer();
  const int p = a.rows();
  const int q = a.cols();
  for (auto it = sel.lines.rbegin(); it != sel.lines.rend(); ++it) {
    const int r = *it - 1;
    for (int c = 0; c < q; ++c) a(r, c) += a(r + 1, c);
    for (int k = r + 1; k + 1 < p; ++k) {
      for (int c = 0; c < q; ++c) a(k, c) = a(k + 1, c);
    }
    for (int c = 0; c < q; ++c) a(p - 1, c) = 0;
  }
  for (auto it = sel.columns.rbegin(); it != sel.columns.rend(); ++it) {
    const int c = *it - 1;
    for (int r = 0; r < p; ++r) {
      a(r, c) += a(r, c + 1);
      for (int k = c + 1; k + 1 < q; ++k) a(r, k) = a(r, k + 1);
      a(r, q - 1) = 0;
    }
  }
  return a;
}

bool is_valid(const BinaryMatrix& m, const Selection& sel) {
  return contract(m, sel).is_binary();
}

namespace {

// Pairs (r,c)-(r',c') with the second cell east, south-west, south or
// south-east of the first: every unordered neighbor pair exactly once.
template <typename Get>
std::int64_t count_pairs(int rows, int cols, Get get) {
  std::int64_t total = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (!get(r, c)) continue;
      if (c + 1 < cols && get(r, c + 1)) ++total;
      if (r + 1 < rows) {
        if (c > 0 && get(r + 1, c - 1)) ++total;
        if (get(r + 1, c)) ++total;
        if (c + 1 < cols && get(r + 1, c + 1)) ++total;
      }
    }
  }
  return total;
}

using Line = std::vector<std::uint8_t>;

std::int64_t horizontal(const Line& x) {
  std::int64_t total = 0;
  for (std::size_t k = 0; k + 1 < x.size(); ++k) total += x[k] & x[k + 1];
  return total;
}

std::int64_t cross(const Line& x, const Line& y) {
  std::int64_t total = 0;
  const std::size_t n = x.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (!x[k]) continue;
    total += y[k];
    if (k > 0) total += y[k - 1];
    if (k + 1 < n) total += y[k + 1];
  }
  return total;
}

// `get(line, k)` reads entry k of line `line`; columns are handled by passing
// a transposing getter.
template <typename Get>
std::int64_t merge_delta(int lines, int length, int gap, Get get) {
  auto fetch = [&](int line) {
    Line out(static_cast<std::size_t>(length));
    for (int k = 0; k < length; ++k) out[static_cast<std::size_t>(k)] = get(line, k) ? 1 : 0;
    return out;
  };
  const int a = gap - 1;
  const Line upper = fetch(a);
  const Line lower = fetch(a + 1);
  Line merged(upper.size());
  for (std::size_t k = 0; k < merged.size(); ++k) {
    if (upper[k] && lower[k]) {
      throw DomainError("contraction of gap " + std::to_string(gap) + " is not valid");
    }
    merged[k] = upper[k] | lower[k];
  }
  std::int64_t delta = horizontal(merged) - horizontal(upper) - horizontal(lower) - cross(upper, lower);
  if (a > 0) {
    const Line above = fetch(a - 1);
    delta += cross(above, merged) - cross(above, upper);
  }
  if (a + 2 < lines) {
    const Line below = fetch(a + 2);
    delta += cross(merged, below) - cross(lower, below);
  }
  return delta;
}

void check_gap(int gap, int extent, const char* what) {
  if (gap < 1 || gap > extent - 1) {
    throw BoundsError(std::string(what) + " index " + std::to_string(gap) + " outside [1, " +
                      std::to_string(extent - 1) + "]");
  }
}

}  // namespace

std::int64_t density(const BinaryMatrix& m) {
  return count_pairs(m.rows(), m.cols(), [&](int r, int c) { return m(r, c); });
}

std::int64_t density(const IntegerMatrix& m) {
  if (!m.is_binary()) throw DomainError("density is defined for binary matrices only");
  return count_pairs(m.rows(), m.cols(), [&](int r, int c) { return m(r, c) == 1; });
}

BinaryMatrix trim(const IntegerMatrix& contracted, const Selection& sel) {
  const int p = contracted.rows() - static_cast<int>(sel.lines.size());
  const int q = contracted.cols() - static_cast<int>(sel.columns.size());
  if (p < 1 || q < 1) throw BoundsError("selection larger than the matrix");
  BinaryMatrix out(p, q);
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < q; ++c) {
      const int v = contracted(r, c);
      if (v > 1) throw DomainError("cannot trim an invalid contraction");
      if (v == 1) out.set(r, c, true);
    }
  }
  return out;
}

BinaryMatrix apply(const BinaryMatrix& m, const Selection& sel) {
  const IntegerMatrix raw = contract(m, sel);
  if (!raw.is_binary()) throw DomainError("selection is not a valid contraction");
  return trim(raw, sel);
}

BinaryMatrix reduce_empty(const BinaryMatrix& m) {
  std::vector<int> keep_rows;
  std::vector<int> keep_cols;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (m(r, c)) {
        keep_rows.push_back(r);
        break;
      }
    }
  }
  for (int c = 0; c < m.cols(); ++c) {
    for (int r = 0; r < m.rows(); ++r) {
      if (m(r, c)) {
        keep_cols.push_back(c);
        break;
      }
    }
  }
  if (keep_rows.empty()) return BinaryMatrix(1, 1);
  BinaryMatrix out(static_cast<int>(keep_rows.size()), static_cast<int>(keep_cols.size()));
  for (std::size_t r = 0; r < keep_rows.size(); ++r) {
    for (std::size_t c = 0; c < keep_cols.size(); ++c) {
      if (m(keep_rows[r], keep_cols[c])) out.set(static_cast<int>(r), static_cast<int>(c), true);
    }
  }
  return out;
}

bool single_line_valid(const BinaryMatrix& m, int i) {
  check_gap(i, m.rows(), "line");
  for (int c = 0; c < m.cols(); ++c) {
    if (m(i - 1, c) && m(i, c)) return false;
  }
  return true;
}

bool single_column_valid(const BinaryMatrix& m, int j) {
  check_gap(j, m.cols(), "column");
  for (int r = 0; r < m.rows(); ++r) {
    if (m(r, j - 1) && m(r, j)) return false;
  }
  return true;
}

std::int64_t density_delta_line(const BinaryMatrix& m, int i) {
  check_gap(i, m.rows(), "line");
  return merge_delta(m.rows(), m.cols(), i, [&](int line, int k) { return m(line, k); });
}

std::int64_t density_delta_column(const BinaryMatrix& m, int j) {
  check_gap(j, m.cols(), "column");
  return merge_delta(m.cols(), m.rows(), j, [&](int line, int k) { return m(k, line); });
}

}  // namespace mmc
