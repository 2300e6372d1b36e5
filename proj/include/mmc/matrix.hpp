#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmc {

/// Index out of range for the matrix it is applied to.
class BoundsError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Precondition on values violated (non-binary entry, invalid contraction, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exhaustive routine was asked to run beyond its size guard.
class GuardRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense p x q grid of non-negative integers. Holds raw contraction products,
/// which may contain entries greater than one.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  // 0-based access.
  int operator()(int r, int c) const { return data_[index(r, c)]; }
  int& operator()(int r, int c) { return data_[index(r, c)]; }

  bool is_binary() const;

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

/// Dense 0/1 matrix with a cached count of ones.
///
/// Element access is 0-based. Line and column *gaps* used by contractions are
/// 1-based: gap i merges line i with line i+1 in the usual 1-based numbering,
/// i.e. 0-based rows i-1 and i.
class BinaryMatrix {
 public:
  BinaryMatrix() : BinaryMatrix(1, 1) {}
  BinaryMatrix(int rows, int cols);

  /// Each string is one line of '0'/'1' characters; all lines must have the
  /// same length.
  static BinaryMatrix from_rows(const std::vector<std::string>& lines);
  static BinaryMatrix from_rows(std::initializer_list<std::string_view> lines);

  /// Throws DomainError if any entry is not 0 or 1.
  static BinaryMatrix from_integer(const IntegerMatrix& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t ones() const { return ones_; }

  bool operator()(int r, int c) const { return data_[index(r, c)] != 0; }
  void set(int r, int c, bool value);

  IntegerMatrix to_integer() const;
  BinaryMatrix transposed() const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::int64_t ones_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Sorted 1-based gap indices: `lines` from [1, p-1], `columns` from [1, q-1].
struct Selection {
  std::vector<int> lines;
  std::vector<int> columns;

  std::size_t size() const { return lines.size() + columns.size(); }
  bool empty() const { return lines.empty() && columns.empty(); }

  friend bool operator==(const Selection&, const Selection&) = default;
  /// Lexicographic on (lines, columns); used for deterministic tie-breaking.
  friend auto operator<=>(const Selection&, const Selection&) = default;
};

/// Throws BoundsError unless every index of `sel` lies in range for `m`,
/// and DomainError unless both lists are strictly increasing.
void check_selection(const BinaryMatrix& m, const Selection& sel);

/// 1-based coordinate of an entry.
struct Cell {
  int line = 1;
  int column = 1;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

}  // namespace mmc
