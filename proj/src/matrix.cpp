#include "mmc/matrix.hpp"

#include <algorithm>

namespace mmc {

IntegerMatrix::IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw DomainError("matrix dimensions must be at least 1x1");
  }
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
}

bool IntegerMatrix::is_binary() const {
  return std::all_of(data_.begin(), data_.end(), [](int v) { return v == 0 || v == 1; });
}

BinaryMatrix::BinaryMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw DomainError("matrix dimensions must be at least 1x1");
  }
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::string>& lines) {
  if (lines.empty() || lines.front().empty()) {
    throw DomainError("matrix needs at least one line and one column");
  }
  BinaryMatrix m(static_cast<int>(lines.size()), static_cast<int>(lines.front().size()));
  for (int r = 0; r < m.rows(); ++r) {
    const std::string& line = lines[static_cast<std::size_t>(r)];
    if (static_cast<int>(line.size()) != m.cols()) {
      throw DomainError("ragged matrix: line " + std::to_string(r + 1) + " has " +
                        std::to_string(line.size()) + " columns, expected " +
                        std::to_string(m.cols()));
    }
    for (int c = 0; c < m.cols(); ++c) {
      const char ch = line[static_cast<std::size_t>(c)];
      if (ch != '0' && ch != '1') {
        throw DomainError(std::string("illegal matrix character '") + ch + "'");
      }
      m.set(r, c, ch == '1');
    }
  }
  return m;
}

BinaryMatrix BinaryMatrix::from_rows(std::initializer_list<std::string_view> lines) {
  std::vector<std::string> copy;
  copy.reserve(lines.size());
  for (auto line : lines) copy.emplace_back(line);
  return from_rows(copy);
}

BinaryMatrix BinaryMatrix::from_integer(const IntegerMatrix& m) {
  BinaryMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      const int v = m(r, c);
      if (v != 0 && v != 1) {
        throw DomainError("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                          ") = " + std::to_string(v) + " is not binary");
      }
      out.set(r, c, v == 1);
    }
  }
  return out;
}

void BinaryMatrix::set(int r, int c, bool value) {
  std::uint8_t& cell = data_[index(r, c)];
  if (cell != static_cast<std::uint8_t>(value)) {
    ones_ += value ? 1 : -1;
    cell = static_cast<std::uint8_t>(value);
  }
}

IntegerMatrix BinaryMatrix::to_integer() const {
  IntegerMatrix out(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c) ? 1 : 0;
  }
  return out;
}

BinaryMatrix BinaryMatrix::transposed() const {
  BinaryMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if ((*this)(r, c)) out.set(c, r, true);
    }
  }
  return out;
}

namespace {

void check_axis(const std::vector<int>& idx, int extent, const char* what) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 1 || idx[k] > extent - 1) {
      throw BoundsError(std::string(what) + " index " + std::to_string(idx[k]) +
                        " outside [1, " + std::to_string(extent - 1) + "]");
    }
    if (k > 0 && idx[k] <= idx[k - 1]) {
      throw DomainError(std::string(what) + " indices must be strictly increasing");
    }
  }
}

}  // namespace

void check_selection(const BinaryMatrix& m, const Selection& sel) {
  check_axis(sel.lines, m.rows(), "line");
  check_axis(sel.columns, m.cols(), "column");
}

}  // namespace mmc
