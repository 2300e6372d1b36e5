#pragma once

#include <chrono>
#include <string>

#include "mmc/bitgrid.hpp"
#include "mmc/solvers.hpp"

namespace mmc::detail {

using Clock = std::chrono::steady_clock;

/// Report for the contraction currently held by `state`.
SolveReport report_from_state(std::string algorithm, const BinaryMatrix& input,
                              const ContractionState& state, Clock::time_point start);

/// Sweeps `state` to a fixpoint in the given order (descending indices).
void complete_state(ContractionState& state, ScanOrder order);

}  // namespace mmc::detail
