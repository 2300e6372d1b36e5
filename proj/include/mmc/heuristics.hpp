#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "mmc/matrix.hpp"
#include "mmc/solvers.hpp"

namespace mmc {

/// First-come-first-served: an LC sweep (lines p-1..1, then columns q-1..1,
/// each contracted as soon as it is valid) and a CL sweep (columns first);
/// keeps the denser, LC on ties, then completes it to a maximal solution.
SolveReport lcl(const BinaryMatrix& m);

/// Applies the valid single contraction with the largest density increase
/// (lines before columns, then smallest index) until none is valid.
SolveReport greedy(const BinaryMatrix& m, Execution execution = Execution::Parallel);

/// Same trace as greedy() computed with the dense O(q)/O(p) delta functions
/// and full re-contraction at every step. Kept as the serial reference.
SolveReport greedy_reference(const BinaryMatrix& m);

/// 1 iff both cells hold a one and some valid contraction makes them
/// 8-neighbors. Cells are 1-based; a cell holding 0, or a == b, gives 0.
int n_pair(const BinaryMatrix& m, Cell a, Cell b);

struct PairReachability {
  std::int64_t count = 0;
  /// Keyed by (a, b) with a < b in row-major order.
  std::map<std::pair<Cell, Cell>, int> per_pair;
};

PairReachability n_value(const BinaryMatrix& m, Execution execution = Execution::Parallel);

/// Sum of n_pair over all unordered pairs of ones, without the per-pair map.
std::int64_t n_count(const BinaryMatrix& m, Execution execution = Execution::Parallel);

/// Greedy on the pair-reachability count N of the contracted matrix.
SolveReport neighborization(const BinaryMatrix& m, Execution execution = Execution::Parallel);

}  // namespace mmc
