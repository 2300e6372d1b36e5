#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "mmc/matrix.hpp"

namespace mmc {

/// Kernels that have an OpenMP path also keep a plain serial path; both must
/// produce identical results.
enum class Execution { Serial, Parallel };

struct SolveReport {
  std::string algorithm;
  int input_rows = 0;
  int input_cols = 0;
  std::int64_t ones = 0;
  Selection selection;
  BinaryMatrix result;  // trimmed
  std::int64_t density = 0;
  std::chrono::duration<double, std::milli> elapsed{0};
  std::string instance_meta;
  /// False when an exact search stopped on its time budget.
  bool certified = true;
  /// LCL only: density of the better sweep before the maximality backstop.
  std::optional<std::int64_t> pre_backstop_density;
};

/// Header matching csv_row().
std::string csv_header();
/// algorithm,p,q,n,density,elapsed_ms,I,J with I/J semicolon-joined.
std::string csv_row(const SolveReport& report);

/// Valid `sel` such that no further single line or column contraction is
/// valid on the contracted matrix. Throws DomainError if `sel` is invalid.
bool is_maximal(const BinaryMatrix& m, const Selection& sel);

enum class ScanOrder { LinesThenColumns, ColumnsThenLines };

/// Extends a valid selection to a maximal one by repeated descending sweeps.
Selection complete_to_maximal(const BinaryMatrix& m, const Selection& sel,
                              ScanOrder order = ScanOrder::LinesThenColumns);

struct EnumerateOptions {
  /// Refuse above this many free gaps, (p-1)+(q-1).
  int max_free_gaps = 22;
  bool force = false;
  Execution execution = Execution::Parallel;
};

/// Exhaustive search over every subset of line and column gaps. Optimum with
/// ties broken by the lexicographically smallest (I, J).
SolveReport naive_enumerate(const BinaryMatrix& m, const EnumerateOptions& options = {});

struct ExactOptions {
  std::optional<std::chrono::duration<double>> budget;
  Execution execution = Execution::Parallel;
};

/// Depth-first contract/skip search, lines descending then columns
/// descending, pruned on validity and on density upper bounds. Same optimum
/// and tie-break as naive_enumerate. Exponential in the worst case.
SolveReport exact_solve(const BinaryMatrix& m, const ExactOptions& options = {});

}  // namespace mmc
