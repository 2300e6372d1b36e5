#include "mmc/instances.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <set>
#include <sstream>

#include "mmc/contraction.hpp"

namespace mmc {

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edges) : n_(vertex_count) {
  if (vertex_count < 1) throw DomainError("graph needs at least one vertex");
  adj_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
  for (auto [u, v] : edges) {
    if (u < 1 || v < 1 || u > n_ || v > n_) {
      throw DomainError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range");
    }
    if (u == v) throw DomainError("self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    auto& cell = adj_[static_cast<std::size_t>(u - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v - 1)];
    if (cell) throw DomainError("duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    cell = 1;
    adj_[static_cast<std::size_t>(v - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(u - 1)] = 1;
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
}

bool Graph::adjacent(int u, int v) const {
  if (u < 1 || v < 1 || u > n_ || v > n_) return false;
  return adj_[static_cast<std::size_t>(u - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v - 1)] != 0;
}

std::int64_t reduction_base_density(const Graph& g) {
  const std::int64_t n = g.vertex_count();
  const auto e = static_cast<std::int64_t>(g.edges().size());
  return 11 + 6 * n + (n * (n - 1) - 2 * e);
}

ReductionLayout from_clique(const Graph& g) {
  const int n = g.vertex_count();
  const int size = 4 * n + 6;
  ReductionLayout layout{BinaryMatrix(size, size), {}, {}, reduction_base_density(g)};
  auto put = [&](int line, int column) { layout.matrix.set(line - 1, column - 1, true); };

  for (int k = 1; k <= 6; ++k) {
    put(1, k);
    put(k, 1);
  }
  for (int i = 1; i <= n; ++i) {
    const int l = 6 + 4 * (i - 1) + 1;
    const int c = l;
    layout.node_line.push_back(l);
    layout.node_column.push_back(c);
    // Left border block and its transpose on the top border.
    put(l, 1);
    put(l + 1, 3);
    put(l + 2, 3);
    put(l + 2, 5);
    put(l + 3, 5);
    put(l + 3, 1);
    put(1, c);
    put(3, c + 1);
    put(3, c + 2);
    put(5, c + 2);
    put(5, c + 3);
    put(1, c + 3);
    // Node gadget: two ones that become diagonal neighbors once line l and
    // column c are both contracted.
    put(l, c);
    put(l + 2, c + 2);
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (g.adjacent(i, j)) continue;
      const int li = layout.node_line[static_cast<std::size_t>(i - 1)];
      const int lj = layout.node_line[static_cast<std::size_t>(j - 1)];
      const int ci = layout.node_column[static_cast<std::size_t>(i - 1)];
      const int cj = layout.node_column[static_cast<std::size_t>(j - 1)];
      put(li, cj);
      put(li + 1, cj + 1);
      put(lj, ci);
      put(lj + 1, ci + 1);
    }
  }
  return layout;
}

bool verify_reduction_gadget(const ReductionLayout& layout) {
  const BinaryMatrix& m = layout.matrix;
  const std::set<int> lines(layout.node_line.begin(), layout.node_line.end());
  const std::set<int> columns(layout.node_column.begin(), layout.node_column.end());
  for (int i = 1; i < m.rows(); ++i) {
    if (single_line_valid(m, i) != lines.contains(i)) return false;
  }
  for (int j = 1; j < m.cols(); ++j) {
    if (single_column_valid(m, j) != columns.contains(j)) return false;
  }
  return density(m) == layout.d0;
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
  // splitmix64 finalizer folded over every part.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(base);
  for (std::uint64_t part : parts) h = mix(h ^ mix(part));
  return h;
}

BinaryMatrix random_instance(int p, int q, double r, std::uint64_t seed) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("probability must lie in [0, 1]");
  if (p < 1 || q < 1) throw DomainError("dimensions must be positive");
  std::mt19937_64 engine(seed);
  BinaryMatrix m(p, q);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < q; ++j) {
      // The engine's output sequence is fixed by the standard; the
      // distribution classes are not, so the uniform draw is done by hand.
      const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      if (u < r) m.set(i, j, true);
    }
  }
  return m;
}

ParseError::ParseError(Kind kind, int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

bool parse_int(std::string_view s, int& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

}  // namespace

BinaryMatrix parse_instance(std::string_view text) {
  using Kind = ParseError::Kind;
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(Kind::TruncatedInput, 1, "empty input");

  const std::string_view header = lines[0];
  const std::size_t space = header.find(' ');
  int p = 0;
  int q = 0;
  if (space == std::string_view::npos || !parse_int(header.substr(0, space), p) ||
      !parse_int(header.substr(space + 1), q) || p < 1 || q < 1) {
    throw ParseError(Kind::BadHeader, 1, "expected \"p q\" with positive integers");
  }

  BinaryMatrix m(p, q);
  for (int r = 0; r < p; ++r) {
    const int line_no = r + 2;
    if (static_cast<std::size_t>(r + 1) >= lines.size()) {
      throw ParseError(Kind::TruncatedInput, line_no,
                       "expected " + std::to_string(p) + " matrix lines, got " + std::to_string(r));
    }
    const std::string_view row = lines[static_cast<std::size_t>(r + 1)];
    for (std::size_t c = 0; c < row.size() && c < static_cast<std::size_t>(q); ++c) {
      if (row[c] != '0' && row[c] != '1') {
        throw ParseError(Kind::IllegalCharacter, line_no,
                         "illegal character at column " + std::to_string(c + 1));
      }
      if (row[c] == '1') m.set(r, static_cast<int>(c), true);
    }
    if (row.size() < static_cast<std::size_t>(q)) {
      throw ParseError(Kind::TruncatedRow, line_no,
                       "row has " + std::to_string(row.size()) + " of " + std::to_string(q) + " entries");
    }
    if (row.size() > static_cast<std::size_t>(q)) {
      throw ParseError(Kind::DimensionMismatch, line_no,
                       "row has " + std::to_string(row.size()) + " entries, header says " + std::to_string(q));
    }
  }
  for (std::size_t k = static_cast<std::size_t>(p) + 1; k < lines.size(); ++k) {
    if (!lines[k].empty()) {
      throw ParseError(Kind::DimensionMismatch, static_cast<int>(k) + 1,
                       "more matrix lines than the header's " + std::to_string(p));
    }
  }
  return m;
}

std::string serialize_instance(const BinaryMatrix& m) {
  std::string out = std::to_string(m.rows()) + ' ' + std::to_string(m.cols()) + '\n';
  out.reserve(out.size() + static_cast<std::size_t>(m.rows()) * static_cast<std::size_t>(m.cols() + 1));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) out += m(r, c) ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string serialize_selection(const Selection& sel) {
  auto join = [](const std::vector<int>& idx) {
    std::string s;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0) s += ',';
      s += std::to_string(idx[k]);
    }
    return s;
  };
  return "I: " + join(sel.lines) + "\nJ: " + join(sel.columns) + "\n";
}

Graph parse_graph(std::string_view text) {
  using Kind = ParseError::Kind;
  int n = -1;
  int m = -1;
  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  int line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    const auto w = words(line);
    if (w.empty() || w[0] == "c") continue;
    if (w[0] == "p") {
      if (n >= 0) throw ParseError(Kind::BadGraph, line_no, "second problem line");
      if (w.size() != 4 || w[1] != "edge" || !parse_int(w[2], n) || !parse_int(w[3], m) || n < 1 || m < 0) {
        throw ParseError(Kind::BadHeader, line_no, "expected \"p edge <vertices> <edges>\"");
      }
      continue;
    }
    if (w[0] == "e") {
      if (n < 0) throw ParseError(Kind::BadHeader, line_no, "edge before the problem line");
      int u = 0;
      int v = 0;
      if (w.size() != 3 || !parse_int(w[1], u) || !parse_int(w[2], v)) {
        throw ParseError(Kind::BadGraph, line_no, "expected \"e <u> <v>\"");
      }
      if (u == v) throw ParseError(Kind::BadGraph, line_no, "self-loop on vertex " + std::to_string(u));
      if (u < 1 || v < 1 || u > n || v > n) throw ParseError(Kind::BadGraph, line_no, "vertex out of range");
      const auto key = std::minmax(u, v);
      if (!seen.insert(key).second) throw ParseError(Kind::BadGraph, line_no, "duplicate edge");
      edges.emplace_back(u, v);
      continue;
    }
    throw ParseError(Kind::BadGraph, line_no, "unknown line type");
  }
  if (n < 0) throw ParseError(Kind::BadHeader, line_no + 1, "missing problem line");
  if (static_cast<int>(edges.size()) != m) {
    throw ParseError(Kind::BadGraph, line_no, "header announces " + std::to_string(m) + " edges, found " +
                                                  std::to_string(edges.size()));
  }
  return Graph(n, std::move(edges));
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.vertex_count() << ' ' << g.edges().size() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace mmc
