#include "mmc/bitgrid.hpp"

#include <algorithm>
#include <bit>

namespace mmc {

namespace {

using Word = std::uint64_t;

// Word w of the row shifted so that bit c holds the original bit c+1.
inline Word shifted(const Word* x, int w, int words) {
  return (x[w] >> 1) | (w + 1 < words ? x[w + 1] << 63 : Word{0});
}

// Horizontal neighbor pairs inside one row.
inline std::int64_t horizontal_pairs(const Word* x, int words) {
  std::int64_t total = 0;
  for (int w = 0; w < words; ++w) total += std::popcount(x[w] & shifted(x, w, words));
  return total;
}

// Vertical and diagonal pairs between an upper row x and the row y below it.
inline std::int64_t cross_pairs(const Word* x, const Word* y, int words) {
  std::int64_t total = 0;
  for (int w = 0; w < words; ++w) {
    total += std::popcount(x[w] & y[w]);
    total += std::popcount(x[w] & shifted(y, w, words));
    total += std::popcount(shifted(x, w, words) & y[w]);
  }
  return total;
}

}  // namespace

BitGrid::BitGrid(const BinaryMatrix& m)
    : rows_(m.rows()), cols_(m.cols()), words_((m.cols() + 63) / 64) {
  bits_.assign(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(words_), 0);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (m(r, c)) set(r, c);
    }
  }
}

bool BitGrid::rows_mergeable(int r) const {
  const Word* a = row(r);
  const Word* b = row(r + 1);
  for (int w = 0; w < words_; ++w) {
    if (a[w] & b[w]) return false;
  }
  return true;
}

bool BitGrid::cols_mergeable(int c) const {
  for (int r = 0; r < rows_; ++r) {
    if (test(r, c) && test(r, c + 1)) return false;
  }
  return true;
}

void BitGrid::merge_rows(int r) {
  Word* a = row(r);
  const Word* b = row(r + 1);
  for (int w = 0; w < words_; ++w) a[w] |= b[w];
  const auto first = bits_.begin() + static_cast<std::ptrdiff_t>(r + 1) * words_;
  bits_.erase(first, first + words_);
  --rows_;
}

void BitGrid::merge_cols(int c) {
  const int drop = c + 1;
  const int w0 = drop >> 6;
  const int b0 = drop & 63;
  const Word low_mask = b0 == 0 ? Word{0} : (~Word{0} >> (64 - b0));
  for (int r = 0; r < rows_; ++r) {
    Word* x = row(r);
    if (test(r, drop)) set(r, c);
    // Delete bit `drop`, moving every higher bit down by one.
    const Word low = x[w0] & low_mask;
    const Word high = (x[w0] >> 1) & ~low_mask;
    x[w0] = low | high;
    for (int w = w0; w < words_; ++w) {
      if (w > w0) x[w] >>= 1;
      if (w + 1 < words_) x[w] |= x[w + 1] << 63;
    }
  }
  --cols_;
}

std::int64_t BitGrid::density() const {
  std::int64_t total = 0;
  for (int r = 0; r < rows_; ++r) {
    total += horizontal_pairs(row(r), words_);
    if (r + 1 < rows_) total += cross_pairs(row(r), row(r + 1), words_);
  }
  return total;
}

std::int64_t BitGrid::row_merge_delta(int r) const {
  const Word* a = row(r);
  const Word* b = row(r + 1);
  std::int64_t delta = 0;
  for (int w = 0; w < words_; ++w) {
    const Word m = a[w] | b[w];
    const Word ms = shifted(a, w, words_) | shifted(b, w, words_);
    delta += std::popcount(m & ms);
  }
  delta -= horizontal_pairs(a, words_) + horizontal_pairs(b, words_) + cross_pairs(a, b, words_);
  if (r > 0) {
    const Word* above = row(r - 1);
    for (int w = 0; w < words_; ++w) {
      const Word m = a[w] | b[w];
      const Word ms = shifted(a, w, words_) | shifted(b, w, words_);
      delta += std::popcount(above[w] & m) + std::popcount(above[w] & ms) +
               std::popcount(shifted(above, w, words_) & m);
    }
    delta -= cross_pairs(above, a, words_);
  }
  if (r + 2 < rows_) {
    const Word* below = row(r + 2);
    for (int w = 0; w < words_; ++w) {
      const Word m = a[w] | b[w];
      const Word ms = shifted(a, w, words_) | shifted(b, w, words_);
      delta += std::popcount(m & below[w]) + std::popcount(m & shifted(below, w, words_)) +
               std::popcount(ms & below[w]);
    }
    delta -= cross_pairs(b, below, words_);
  }
  return delta;
}

std::int64_t BitGrid::ones() const {
  std::int64_t total = 0;
  for (Word w : bits_) total += std::popcount(w);
  return total;
}

BitGrid BitGrid::transposed() const {
  BitGrid out;
  out.rows_ = cols_;
  out.cols_ = rows_;
  out.words_ = (rows_ + 63) / 64;
  out.bits_.assign(static_cast<std::size_t>(out.rows_) * static_cast<std::size_t>(out.words_), 0);
  for (int r = 0; r < rows_; ++r) {
    const Word* x = row(r);
    for (int w = 0; w < words_; ++w) {
      Word bits = x[w];
      while (bits) {
        const int c = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        out.set(c, r);
      }
    }
  }
  return out;
}

BinaryMatrix BitGrid::to_matrix() const {
  BinaryMatrix m(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (test(r, c)) m.set(r, c, true);
    }
  }
  return m;
}

ContractionState::ContractionState(const BinaryMatrix& m)
    : grid_(m), transposed_(grid_.transposed()) {
  row_end_.resize(static_cast<std::size_t>(m.rows()));
  col_end_.resize(static_cast<std::size_t>(m.cols()));
  for (int r = 0; r < m.rows(); ++r) row_end_[static_cast<std::size_t>(r)] = r + 1;
  for (int c = 0; c < m.cols(); ++c) col_end_[static_cast<std::size_t>(c)] = c + 1;
}

void ContractionState::contract_line(int i) {
  lines_.push_back(original_line_gap(i));
  grid_.merge_rows(i - 1);
  transposed_.merge_cols(i - 1);
  row_end_.erase(row_end_.begin() + (i - 1));
}

void ContractionState::contract_column(int j) {
  columns_.push_back(original_column_gap(j));
  transposed_.merge_rows(j - 1);
  grid_.merge_cols(j - 1);
  col_end_.erase(col_end_.begin() + (j - 1));
}

Selection ContractionState::selection() const {
  Selection sel{lines_, columns_};
  std::sort(sel.lines.begin(), sel.lines.end());
  std::sort(sel.columns.begin(), sel.columns.end());
  return sel;
}

ContractionState replay(const BinaryMatrix& m, const Selection& sel) {
  check_selection(m, sel);
  ContractionState state(m);
  for (auto it = sel.lines.rbegin(); it != sel.lines.rend(); ++it) {
    if (!state.line_valid(*it)) throw DomainError("selection is not a valid contraction");
    state.contract_line(*it);
  }
  for (auto it = sel.columns.rbegin(); it != sel.columns.rend(); ++it) {
    if (!state.column_valid(*it)) throw DomainError("selection is not a valid contraction");
    state.contract_column(*it);
  }
  return state;
}

BinaryMatrix apply_fast(const BinaryMatrix& m, const Selection& sel) {
  return replay(m, sel).matrix();
}

}  // namespace mmc
