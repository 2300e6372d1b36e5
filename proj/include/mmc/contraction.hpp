#pragma once

#include <cstdint>

#include "mmc/matrix.hpp"

namespace mmc {

/// Raw contraction product. Lines of `sel` are merged largest index first,
/// then columns likewise; the result keeps the p x q shape, with |I| trailing
/// zero lines and |J| trailing zero columns. Entries may exceed 1.
IntegerMatrix contract(const BinaryMatrix& m, const Selection& sel);

/// True iff contract(m, sel) is binary.
bool is_valid(const BinaryMatrix& m, const Selection& sel);

/// Number of unordered pairs of ones at Chebyshev distance 1.
std::int64_t density(const BinaryMatrix& m);
/// Same count for a raw product; throws DomainError on a non-binary entry.
std::int64_t density(const IntegerMatrix& m);

/// Drops the |I| trailing lines and |J| trailing columns of a valid product.
BinaryMatrix trim(const IntegerMatrix& contracted, const Selection& sel);

/// contract + validity check + trim. Throws DomainError if `sel` is invalid.
BinaryMatrix apply(const BinaryMatrix& m, const Selection& sel);

/// Deletes every all-zero line and column. An all-zero input becomes 1x1 zero.
BinaryMatrix reduce_empty(const BinaryMatrix& m);

/// O(q): no column holds a one in both line i and line i+1 (1-based gap).
bool single_line_valid(const BinaryMatrix& m, int i);
/// O(p) column mirror of single_line_valid.
bool single_column_valid(const BinaryMatrix& m, int j);

/// density(after contracting line gap i) - density(m), looking only at lines
/// i-1 .. i+2. Throws DomainError if the contraction is invalid.
std::int64_t density_delta_line(const BinaryMatrix& m, int i);
std::int64_t density_delta_column(const BinaryMatrix& m, int j);

}  // namespace mmc
