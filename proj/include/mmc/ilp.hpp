#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmc/matrix.hpp"
#include "mmc/solvers.hpp"

namespace mmc::ilp {

// Time-staged linearized integer program.
//
// The product  A = prod_i ((L_i - I) x_i + I) . M . prod_j ((C_j - I) y_j + I)
// is cut into T = p + q - 1 stages. Stage 1 holds M; transitions 1..p-1
// consume x_{p-1}, ..., x_1 (one line each, largest first), transitions
// p..T-1 consume y_{q-1}, ..., y_1. A line merge of gap k reads, entrywise,
//
//   a'_i = a_i                       i < k
//   a'_k = a_k + r_{k+1}
//   a'_i = a_i - r_i + r_{i+1}       k < i < p
//   a'_p = a_p - r_p
//
// with r_i = a_i * x_k linearized by  r <= a, r <= x, r >= a + x - 1.
// Column merges are the mirror image. Every a is bounded by 1, which is what
// rejects invalid contractions. The objective counts each unordered neighbor
// pair of the last stage once through z = a * a' over the east, south,
// south-east and south-west directions, McCormick-linearized the same way.
//
// The direct nonlinear program over products of all x (resp. y) is not built:
// it needs one linearization per subset of lines and columns.

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Term {
  int var = 0;
  std::int64_t coef = 0;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  std::int64_t rhs = 0;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// All variables are binary.
struct IlpModel {
  int rows = 0;    // p
  int cols = 0;    // q
  int stages = 0;  // T
  std::vector<std::string> variables;
  std::vector<Constraint> constraints;
  std::vector<Term> objective;

  /// Index of a variable by name, or -1.
  int find(std::string_view name) const;
  /// Number of variables whose name starts with `prefix` (e.g. "a_", "r_").
  std::size_t count_prefix(std::string_view prefix) const;

  friend bool operator==(const IlpModel&, const IlpModel&) = default;
};

IlpModel build_model(const BinaryMatrix& m);

/// CPLEX-style LP text. Byte-deterministic.
void write_lp(const IlpModel& model, std::ostream& out);
std::string to_lp(const IlpModel& model);

/// Reads the dialect produced by write_lp. Throws std::runtime_error with a
/// line number on malformed input.
IlpModel read_lp(std::string_view text);

struct Evaluation {
  bool feasible = false;
  std::int64_t objective = 0;
  /// On binary operands, each McCormick triple admits exactly the product.
  bool products_exact = true;
};

/// Evaluates one assignment of the decision variables (x_i, y_j) by
/// propagating the model's own equalities and product linearizations, then
/// checking every constraint and every binary domain.
class Evaluator {
 public:
  /// Throws DomainError if the model's constraints do not determine every
  /// non-decision variable from the decisions.
  explicit Evaluator(const IlpModel& model);

  Evaluation evaluate(const Selection& decisions) const;

 private:
  struct Step {
    enum Kind { Solve, Product } kind;
    int var;
    int constraint;  // Solve
    int lhs, rhs;    // Product operands
  };

  const IlpModel& model_;
  std::vector<int> line_var_;    // x_i -> variable index, position i-1
  std::vector<int> column_var_;  // y_j
  std::vector<Step> plan_;
  std::vector<std::vector<int>> product_constraints_;  // per plan step
};

struct OracleReport {
  bool agrees = true;
  std::int64_t assignments = 0;
  std::int64_t feasible = 0;
  std::int64_t best_objective = -1;
  std::string first_mismatch;
};

struct OracleOptions {
  int max_free_gaps = 12;
  Execution execution = Execution::Parallel;
};

/// For every binary assignment of (x, y): model-feasible iff the contraction
/// is valid, and on feasible assignments the objective equals the density of
/// the trimmed contraction. Throws GuardRefusal past the gap guard.
OracleReport check_formulation(const BinaryMatrix& m, const IlpModel& model,
                               const OracleOptions& options = {});

bool model_oracle_check(const BinaryMatrix& m, const OracleOptions& options = {});

}  // namespace mmc::ilp
