#pragma once

#include <cstdint>
#include <vector>

#include "mmc/matrix.hpp"

namespace mmc {

/// Row-major bit-packed 0/1 grid used by the fast kernels.
///
/// Each row is a run of 64-bit words; bit c of a row is column c (0-based).
/// Row merges are O(q/64), column merges O(p * q/64). The dense functions in
/// contraction.hpp are the serial reference these kernels are tested against.
class BitGrid {
 public:
  BitGrid() = default;
  explicit BitGrid(const BinaryMatrix& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int words() const { return words_; }

  bool test(int r, int c) const {
    return (row(r)[c >> 6] >> (c & 63)) & 1u;
  }
  void set(int r, int c) { row(r)[c >> 6] |= std::uint64_t{1} << (c & 63); }

  const std::uint64_t* row(int r) const { return bits_.data() + static_cast<std::size_t>(r) * words_; }
  std::uint64_t* row(int r) { return bits_.data() + static_cast<std::size_t>(r) * words_; }

  /// True iff 0-based rows r and r+1 share no column holding a 1.
  bool rows_mergeable(int r) const;
  /// True iff 0-based columns c and c+1 share no line holding a 1.
  bool cols_mergeable(int c) const;

  /// OR row r+1 into row r and delete row r+1. Caller checks mergeability.
  void merge_rows(int r);
  /// OR column c+1 into column c and delete column c+1.
  void merge_cols(int c);

  /// Number of 8-neighbor pairs of ones.
  std::int64_t density() const;
  /// Density change caused by merging rows r and r+1 (must be mergeable).
  std::int64_t row_merge_delta(int r) const;

  std::int64_t ones() const;

  BitGrid transposed() const;
  BinaryMatrix to_matrix() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Dual representation kept in sync: `grid` for line operations and
/// `transposed` for column operations. Tracks which original gaps the current
/// rows/columns came from so selections can be reported in original numbering.
class ContractionState {
 public:
  explicit ContractionState(const BinaryMatrix& m);

  const BitGrid& grid() const { return grid_; }
  const BitGrid& transposed() const { return transposed_; }

  int rows() const { return grid_.rows(); }
  int cols() const { return grid_.cols(); }

  /// 1-based current gap index.
  bool line_valid(int i) const { return grid_.rows_mergeable(i - 1); }
  bool column_valid(int j) const { return transposed_.rows_mergeable(j - 1); }

  std::int64_t line_delta(int i) const { return grid_.row_merge_delta(i - 1); }
  std::int64_t column_delta(int j) const { return transposed_.row_merge_delta(j - 1); }

  /// Apply the contraction of current gap i (resp. j); records the original gap.
  void contract_line(int i);
  void contract_column(int j);

  /// Original 1-based gap index behind current gap i (resp. j).
  int original_line_gap(int i) const { return row_end_[static_cast<std::size_t>(i - 1)]; }
  int original_column_gap(int j) const { return col_end_[static_cast<std::size_t>(j - 1)]; }

  /// Selection applied so far, sorted, in original numbering.
  Selection selection() const;

  std::int64_t density() const { return grid_.density(); }
  BinaryMatrix matrix() const { return grid_.to_matrix(); }

 private:
  BitGrid grid_;
  BitGrid transposed_;
  // 1-based original index of the last line (column) in each current group.
  std::vector<int> row_end_;
  std::vector<int> col_end_;
  std::vector<int> lines_;
  std::vector<int> columns_;
};

/// Applies `sel` through the bit kernels: lines descending, then columns
/// descending. Throws DomainError if the contraction is invalid. Same result as
/// apply() in contraction.hpp at O(|sel| * p * q / 64).
BinaryMatrix apply_fast(const BinaryMatrix& m, const Selection& sel);

/// Replays `sel` into a fresh state (same ordering and errors as apply_fast).
ContractionState replay(const BinaryMatrix& m, const Selection& sel);

}  // namespace mmc
