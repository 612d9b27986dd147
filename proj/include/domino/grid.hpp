#pragma once

// Grid topologies (rectangle, cylinder, torus) and the generic simple graph
// they are built on. Vertices are indexed row-major; edges are sorted by
// (min endpoint, max endpoint). The public coordinate API is 1-based:
// vertex (u_i, v_j) sits in column i and row j.

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "domino/bitvec.hpp"

namespace domino {

class TopologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GraphMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class TopologyKind { Rectangle, Cylinder, Torus };

constexpr std::string_view to_string(TopologyKind k) {
  switch (k) {
    case TopologyKind::Rectangle: return "rectangle";
    case TopologyKind::Cylinder: return "cylinder";
    case TopologyKind::Torus: return "torus";
  }
  return "?";
}

inline TopologyKind parse_topology_kind(std::string_view s) {
  if (s == "rectangle") return TopologyKind::Rectangle;
  if (s == "cylinder") return TopologyKind::Cylinder;
  if (s == "torus") return TopologyKind::Torus;
  throw TopologyError("unknown topology kind '" + std::string(s) + "'");
}

struct Topology {
  TopologyKind kind = TopologyKind::Rectangle;
  int vrows = 0;  // vertex rows
  int vcols = 0;  // vertex columns

  // Columns wrap on cylinders and tori; rows wrap on tori only.
  constexpr bool wraps_columns() const { return kind != TopologyKind::Rectangle; }
  constexpr bool wraps_rows() const { return kind == TopologyKind::Torus; }

  friend constexpr bool operator==(const Topology&, const Topology&) = default;
};

enum class EdgeKind : std::uint8_t { Horizontal, Vertical, Other };

struct Edge {
  int u = 0;  // u < v
  int v = 0;
  EdgeKind kind = EdgeKind::Other;

  constexpr int other(int w) const { return w == u ? v : u; }
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t h, std::uint64_t x) {
  std::uint64_t z = h ^ (x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

// Simple undirected graph with sorted edge indexing and per-vertex
// incidence lists (ascending edge index).
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(int vertex_count, std::vector<std::pair<int, int>> pairs) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [a, b] : pairs) edges.push_back({std::min(a, b), std::max(a, b), EdgeKind::Other});
    Graph g(vertex_count, std::move(edges));
    std::uint64_t h = detail::mix64(0x51ed270b27e3a5c1ull, static_cast<std::uint64_t>(vertex_count));
    for (const auto& e : g.edges_)
      h = detail::mix64(h, (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint64_t>(e.v));
    g.id_ = h;
    return g;
  }

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const int> incident(int v) const { return incidence_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(incidence_[static_cast<std::size_t>(v)].size()); }
  std::uint64_t id() const { return id_; }

  // Edge index joining a and b, or -1.
  int find_edge(int a, int b) const {
    if (a < 0 || b < 0 || a >= vertex_count_ || b >= vertex_count_) return -1;
    for (int e : incident(a))
      if (edges_[static_cast<std::size_t>(e)].other(a) == b) return e;
    return -1;
  }

  VertexSet all_vertices() const {
    VertexSet s;
    for (int v = 0; v < vertex_count_; ++v) s.set(static_cast<std::size_t>(v));
    return s;
  }

  VertexSet endpoints(const EdgeSet& es) const {
    VertexSet s;
    es.for_each([&](int e) {
      s.set(static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].u));
      s.set(static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].v));
    });
    return s;
  }

  bool is_connected() const {
    if (vertex_count_ == 0) return true;
    std::vector<char> seen(static_cast<std::size_t>(vertex_count_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : incident(v)) {
        int w = edge(e).other(v);
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    return reached == vertex_count_;
  }

 protected:
  Graph(int vertex_count, std::vector<Edge> edges) : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ < 0 || static_cast<std::size_t>(vertex_count_) > kMaxVertices)
      throw TopologyError("vertex count " + std::to_string(vertex_count_) + " exceeds limit " +
                          std::to_string(kMaxVertices));
    if (edges_.size() > kMaxEdges)
      throw TopologyError("edge count " + std::to_string(edges_.size()) + " exceeds limit " +
                          std::to_string(kMaxEdges));
    for (const auto& e : edges_) {
      if (e.u == e.v) throw TopologyError("loop at vertex " + std::to_string(e.u));
      if (e.u < 0 || e.v >= vertex_count_) throw TopologyError("edge endpoint out of range");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
        throw TopologyError("parallel edge " + std::to_string(edges_[i].u) + "-" + std::to_string(edges_[i].v));
    incidence_.assign(static_cast<std::size_t>(vertex_count_), {});
    for (int e = 0; e < edge_count(); ++e) {
      incidence_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].u)].push_back(e);
      incidence_[static_cast<std::size_t>(edges_[static_cast<std::size_t>(e)].v)].push_back(e);
    }
  }

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incidence_;
  std::uint64_t id_ = 0;
};

// A square face. `edges` holds {top, bottom, left, right}; {top, bottom} and
// {left, right} are the two opposite pairs.
struct Face {
  std::array<int, 4> edges{};
  int row = 0;  // 1-based row of the top-left corner
  int col = 0;  // 1-based column of the top-left corner
};

class GridGraph : public Graph {
 public:
  const Topology& topology() const { return topo_; }
  int vrows() const { return topo_.vrows; }
  int vcols() const { return topo_.vcols; }

  std::span<const Face> faces() const { return faces_; }
  const Face& face(int f) const { return faces_[static_cast<std::size_t>(f)]; }
  int face_count() const { return static_cast<int>(faces_.size()); }

  // 1-based (column i, row j) -> vertex index (j-1)*vcols + (i-1).
  int vertex(int col, int row) const {
    if (col < 1 || col > topo_.vcols || row < 1 || row > topo_.vrows)
      throw std::out_of_range("vertex (" + std::to_string(col) + "," + std::to_string(row) + ") out of range");
    return (row - 1) * topo_.vcols + (col - 1);
  }
  // Like vertex(), but reduces the coordinate modulo any wrapped dimension.
  int vertex_wrapped(int col, int row) const {
    if (topo_.wraps_columns()) col = wrap(col, topo_.vcols);
    if (topo_.wraps_rows()) row = wrap(row, topo_.vrows);
    return vertex(col, row);
  }
  int col_of(int v) const { return v % topo_.vcols + 1; }
  int row_of(int v) const { return v / topo_.vcols + 1; }

  // Face with top-left corner (u_col, v_row), wrap-aware; -1 if absent.
  int face_at(int col, int row) const {
    if (topo_.wraps_columns()) col = wrap(col, topo_.vcols);
    if (topo_.wraps_rows()) row = wrap(row, topo_.vrows);
    int fcols = topo_.wraps_columns() ? topo_.vcols : topo_.vcols - 1;
    int frows = topo_.wraps_rows() ? topo_.vrows : topo_.vrows - 1;
    if (col < 1 || col > fcols || row < 1 || row > frows) return -1;
    return (row - 1) * fcols + (col - 1);
  }

  // E_i: horizontal edges from column i to column i+1 (1-based, wrap-aware),
  // ordered by row.
  std::span<const int> horiz_class(int i) const {
    if (i < 1 || i > static_cast<int>(horiz_class_.size()))
      throw std::out_of_range("horizontal class " + std::to_string(i) + " out of range");
    return horiz_class_[static_cast<std::size_t>(i - 1)];
  }
  int horiz_class_count() const { return static_cast<int>(horiz_class_.size()); }
  // Column class of a horizontal edge (1-based), 0 for vertical edges.
  int class_of(int e) const { return edge_class_[static_cast<std::size_t>(e)]; }

  EdgeSet horizontal_edges() const {
    EdgeSet s;
    for (int e = 0; e < edge_count(); ++e)
      if (edge(e).kind == EdgeKind::Horizontal) s.set(static_cast<std::size_t>(e));
    return s;
  }

  EdgeSet face_edges(int f) const {
    EdgeSet s;
    for (int e : face(f).edges) s.set(static_cast<std::size_t>(e));
    return s;
  }

  // Vertices of column i from row 1 downward; a cycle iff rows wrap.
  std::vector<int> column_cycle(int i) const {
    if (i < 1 || i > topo_.vcols) throw std::out_of_range("column " + std::to_string(i) + " out of range");
    std::vector<int> out;
    for (int j = 1; j <= topo_.vrows; ++j) out.push_back(vertex(i, j));
    return out;
  }
  // Vertices of row j from column 1 rightward; a cycle iff columns wrap.
  std::vector<int> row_cycle(int j) const {
    if (j < 1 || j > topo_.vrows) throw std::out_of_range("row " + std::to_string(j) + " out of range");
    std::vector<int> out;
    for (int i = 1; i <= topo_.vcols; ++i) out.push_back(vertex(i, j));
    return out;
  }

  friend GridGraph build_grid(const Topology& topo);

 private:
  GridGraph(const Topology& topo, std::vector<Edge> edges) : Graph(topo.vrows * topo.vcols, std::move(edges)), topo_(topo) {}

  static int wrap(int x, int n) { return ((x - 1) % n + n) % n + 1; }

  Topology topo_;
  std::vector<Face> faces_;
  std::vector<std::vector<int>> horiz_class_;
  std::vector<int> edge_class_;
};

inline void validate(const Topology& t) {
  auto check = [](int len, bool wrapped, const char* what) {
    if (wrapped && len < 3)
      throw TopologyError(std::string("wrapped dimension ") + what + " must be >= 3, got " + std::to_string(len));
    if (!wrapped && len < 2)
      throw TopologyError(std::string("dimension ") + what + " must be >= 2, got " + std::to_string(len));
  };
  check(t.vrows, t.wraps_rows(), "vrows");
  check(t.vcols, t.wraps_columns(), "vcols");
  if (static_cast<long long>(t.vrows) * t.vcols > static_cast<long long>(kMaxVertices))
    throw TopologyError("grid has more than " + std::to_string(kMaxVertices) + " vertices");
}

inline GridGraph build_grid(const Topology& topo) {
  validate(topo);
  const int R = topo.vrows, C = topo.vcols;
  auto at = [C](int r0, int c0) { return r0 * C + c0; };

  std::vector<Edge> edges;
  for (int r = 0; r < R; ++r) {
    int hc = topo.wraps_columns() ? C : C - 1;
    for (int c = 0; c < hc; ++c) {
      int a = at(r, c), b = at(r, (c + 1) % C);
      edges.push_back({std::min(a, b), std::max(a, b), EdgeKind::Horizontal});
    }
  }
  int vr = topo.wraps_rows() ? R : R - 1;
  for (int r = 0; r < vr; ++r) {
    for (int c = 0; c < C; ++c) {
      int a = at(r, c), b = at((r + 1) % R, c);
      edges.push_back({std::min(a, b), std::max(a, b), EdgeKind::Vertical});
    }
  }
  if (edges.size() > kMaxEdges)
    throw TopologyError("grid has more than " + std::to_string(kMaxEdges) + " edges");

  GridGraph g(topo, std::move(edges));
  g.id_ = detail::mix64(detail::mix64(detail::mix64(0x6a09e667f3bcc909ull, static_cast<std::uint64_t>(topo.kind)),
                                      static_cast<std::uint64_t>(R)),
                        static_cast<std::uint64_t>(C));

  g.horiz_class_.assign(static_cast<std::size_t>(topo.wraps_columns() ? C : C - 1), {});
  g.edge_class_.assign(static_cast<std::size_t>(g.edge_count()), 0);
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < static_cast<int>(g.horiz_class_.size()); ++c) {
      int e = g.find_edge(at(r, c), at(r, (c + 1) % C));
      g.horiz_class_[static_cast<std::size_t>(c)].push_back(e);
      g.edge_class_[static_cast<std::size_t>(e)] = c + 1;
    }
  }

  int fcols = topo.wraps_columns() ? C : C - 1;
  for (int r = 0; r < vr; ++r) {
    for (int c = 0; c < fcols; ++c) {
      int r1 = (r + 1) % R, c1 = (c + 1) % C;
      Face f;
      f.edges = {g.find_edge(at(r, c), at(r, c1)), g.find_edge(at(r1, c), at(r1, c1)),
                 g.find_edge(at(r, c), at(r1, c)), g.find_edge(at(r, c1), at(r1, c1))};
      f.row = r + 1;
      f.col = c + 1;
      g.faces_.push_back(f);
    }
  }
  return g;
}

// Inner dual of a region with region_rows x region_cols unit squares and the
// given wrap pattern.
inline GridGraph region_to_dual(int region_rows, int region_cols, TopologyKind kind) {
  return build_grid({kind, region_rows, region_cols});
}

// Graphs under the literature's naming: C(a,b) has a+1 vertex rows and b
// vertex columns (columns wrap); T(a,b) has a rows and b columns.
inline GridGraph paper_cylinder(int a, int b) { return build_grid({TopologyKind::Cylinder, a + 1, b}); }
inline GridGraph paper_torus(int a, int b) { return build_grid({TopologyKind::Torus, a, b}); }

inline std::vector<int> column_cycle(const GridGraph& g, int i) { return g.column_cycle(i); }
inline std::vector<int> row_cycle(const GridGraph& g, int j) { return g.row_cycle(j); }

}  // namespace domino
