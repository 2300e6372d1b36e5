#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmc/matrix.hpp"

namespace mmc {

/// Simple undirected graph on vertices 1..vertex_count.
class Graph {
 public:
  /// Throws DomainError on self-loops, duplicate edges or endpoints out of range.
  Graph(int vertex_count, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return n_; }
  /// Normalized to (u, v) with u < v, sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool adjacent(int u, int v) const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint8_t> adj_;
};

/// Matrix built from a graph by the clique reduction, with its bookkeeping.
struct ReductionLayout {
  BinaryMatrix matrix;
  /// 1-based first line (column) of each node's block: 6 + 4(i-1) + 1.
  std::vector<int> node_line;
  std::vector<int> node_column;
  std::int64_t d0 = 0;
};

/// Border pattern plus node, non-edge gadgets; size (4|V| + 6)^2.
ReductionLayout from_clique(const Graph& g);

/// The only singly valid contractions of the fresh matrix are the node lines
/// and node columns, and its density equals d0.
bool verify_reduction_gadget(const ReductionLayout& layout);

/// d0 = 11 + 6|V| + (|V|(|V|-1) - 2|E|).
std::int64_t reduction_base_density(const Graph& g);

inline constexpr std::string_view kGeneratorName = "mt19937_64";

/// Each entry independently 1 with probability r, from a seeded mt19937_64
/// stream (53-bit uniform draws, row-major). Throws DomainError on r outside
/// [0, 1] or a non-positive dimension.
BinaryMatrix random_instance(int p, int q, double r, std::uint64_t seed);

/// Well-mixed seed derived from a base seed and a list of coordinates.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts);

class ParseError : public std::runtime_error {
 public:
  enum class Kind { BadHeader, DimensionMismatch, IllegalCharacter, TruncatedRow, TruncatedInput, BadGraph };

  ParseError(Kind kind, int line, const std::string& what);

  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

/// "p q" header, then p lines of exactly q characters from {0,1}.
BinaryMatrix parse_instance(std::string_view text);
std::string serialize_instance(const BinaryMatrix& m);

/// "I: i1,i2,..." and "J: j1,j2,..." lines.
std::string serialize_selection(const Selection& sel);

/// DIMACS edge list: optional "c" comments, "p edge n m", then m "e u v" lines.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

}  // namespace mmc
