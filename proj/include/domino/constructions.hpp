#pragma once

// Explicit constructions on odd x even tori T(2n+1, 2m):
//   * the two canonical all-horizontal matchings M1, M2;
//   * ladder reduction, a flip sequence that empties some column class E_i;
//   * the marked-vertex forcing set of size (n+1)m;
//   * deleting a column class, which leaves a cylinder.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "domino/flip_graph.hpp"
#include "domino/grid.hpp"
#include "domino/matching.hpp"

namespace domino {

inline void require_odd_even_torus(const GridGraph& g) {
  const auto& t = g.topology();
  if (t.kind != TopologyKind::Torus) throw TopologyError("expected a torus");
  if (t.vrows % 2 == 0 || t.vcols % 2 != 0)
    throw TopologyError("expected odd vertex rows and even vertex columns, got " + std::to_string(t.vrows) + "x" +
                        std::to_string(t.vcols));
}

// M1 = E_1 ∪ E_3 ∪ ..., M2 = E_2 ∪ E_4 ∪ ...
inline std::pair<Matching, Matching> canonical_matchings(const GridGraph& g) {
  require_odd_even_torus(g);
  EdgeSet m1, m2;
  for (int i = 1; i <= g.vcols(); ++i)
    for (int e : g.horiz_class(i)) (i % 2 == 1 ? m1 : m2).set(static_cast<std::size_t>(e));
  return {Matching(m1, g.id()), Matching(m2, g.id())};
}

struct FlipTrace {
  Matching start;
  std::vector<int> flips;                 // face indices, in order
  std::vector<std::size_t> phase_ends;    // flips.size() after each ladder phase
  std::vector<int> horizontal_counts;     // before the first phase, then after each
  Matching end;
  int empty_class = 0;                    // some i with end ∩ E_i = ∅
};

// Replays the flips from `start`; throws NotAlternatingError on an illegal
// step. Returns the final matching.
inline Matching replay(const GridGraph& g, const Matching& start, std::span<const int> flips) {
  Matching cur = start;
  for (int f : flips) cur = flip(g, cur, f);
  return cur;
}

namespace detail {

inline int empty_class(const GridGraph& g, const EdgeSet& m) {
  for (int i = 1; i <= g.horiz_class_count(); ++i) {
    bool hit = false;
    for (int e : g.horiz_class(i)) hit |= m.test(static_cast<std::size_t>(e));
    if (!hit) return i;
  }
  return 0;
}

// Column offset (+1 / -1) of the horizontal partner of v, 0 if v is matched
// vertically.
inline int partner_side(const GridGraph& g, const EdgeSet& m, int v) {
  for (int e : g.incident(v)) {
    if (!m.test(static_cast<std::size_t>(e))) continue;
    const Edge& ed = g.edge(e);
    if (ed.kind != EdgeKind::Horizontal) return 0;
    int w = ed.other(v);
    return g.col_of(w) == g.col_of(v) % g.vcols() + 1 ? 1 : -1;
  }
  throw std::logic_error("vertex " + std::to_string(v) + " is not covered");
}

}  // namespace detail

// Flips M until some column class E_i is empty. Each phase locates a column
// with at least three horizontally matched vertices, takes two cyclically
// consecutive ones matched to the same side, follows the enclosed segment
// column by column until its interior has no outward horizontal edges (a
// ladder), then flips the ladder's T squares followed by its W squares. Every
// phase lowers the horizontal-edge count by exactly two.
inline FlipTrace ladder_reduce(const GridGraph& g, const Matching& m) {
  require_odd_even_torus(g);
  require_same_graph(g, m);
  if (!verify_perfect(g, m)) throw std::invalid_argument("ladder_reduce needs a perfect matching");
  const int H = g.vrows(), W = g.vcols();
  FlipTrace tr;
  tr.start = m;
  Matching cur = m;
  tr.horizontal_counts.push_back(count_horizontal(g, cur));
  int guard = tr.horizontal_counts.back();

  while ((tr.empty_class = detail::empty_class(g, cur.bits)) == 0) {
    if (guard-- < 0) throw std::logic_error("ladder reduction failed to terminate");

    int col = 0, s = 0, len = 0, dir = 0;
    for (int j = 1; j <= W && dir == 0; ++j) {
      std::vector<int> rows;
      for (int r = 1; r <= H; ++r)
        if (detail::partner_side(g, cur.bits, g.vertex(j, r)) != 0) rows.push_back(r);
      if (rows.size() < 3) continue;
      for (std::size_t k = 0; k < rows.size(); ++k) {
        int r1 = rows[k], r2 = rows[(k + 1) % rows.size()];
        int d1 = detail::partner_side(g, cur.bits, g.vertex(j, r1));
        if (d1 == detail::partner_side(g, cur.bits, g.vertex(j, r2))) {
          col = j;
          s = r1;
          len = ((r2 - r1) % H + H) % H;
          dir = d1;
          break;
        }
      }
    }
    if (dir == 0) throw std::logic_error("no column with three cross edges although every E_i is non-empty");

    // Follow the segment until its inner part has no outward cross edges.
    while (true) {
      int next = col + dir;
      std::vector<int> cross;
      for (int k = 1; k < len; ++k)
        if (detail::partner_side(g, cur.bits, g.vertex_wrapped(next, s + k)) == dir) cross.push_back(k);
      if (cross.empty()) break;
      if (cross.size() < 2) throw std::logic_error("odd number of cross edges on a ladder segment");
      s += cross[0];
      len = cross[1] - cross[0];
      col = next;
    }

    const int left = dir > 0 ? col : col - 1;
    const int t = (len - 1) / 2;
    for (int x = 1; x <= t; ++x) {
      int f = g.face_at(left, s + 2 * x - 1);
      cur = flip(g, cur, f);
      tr.flips.push_back(f);
    }
    for (int x = 0; x <= t; ++x) {
      int f = g.face_at(left, s + 2 * x);
      cur = flip(g, cur, f);
      tr.flips.push_back(f);
    }
    tr.phase_ends.push_back(tr.flips.size());
    tr.horizontal_counts.push_back(count_horizontal(g, cur));
  }
  tr.end = cur;
  return tr;
}

struct MarkedSet {
  std::vector<int> marked_vertices;  // T, ascending
  std::vector<int> induced_edges;    // E_T ⊆ M, ascending
};

// Marked vertices T = X_1 ∪ X_5 ∪ ... ∪ Y_3 ∪ Y_7 ∪ ... (plus Y_{4k+1} when m
// is odd), where X_i / Y_i are the odd / even rows 1..2n of column i.
inline std::vector<int> marked_vertices(const GridGraph& g) {
  require_odd_even_torus(g);
  const int n = (g.vrows() - 1) / 2, m = g.vcols() / 2, k = m / 2;
  std::vector<int> out;
  auto add_slice = [&](int col, int first_row) {
    for (int r = first_row; r <= 2 * n; r += 2) out.push_back(g.vertex(col, r));
  };
  for (int q = 0; q < k; ++q) {
    add_slice(4 * q + 1, 1);
    add_slice(4 * q + 3, 2);
  }
  if (m % 2 == 1) add_slice(4 * k + 1, 2);
  std::sort(out.begin(), out.end());
  return out;
}

// Returns the marked set and S = M \ E_T, a forcing set of size (n+1)m.
inline std::pair<MarkedSet, std::vector<int>> marked_forcing_set(const GridGraph& g, const Matching& m) {
  require_same_graph(g, m);
  MarkedSet ms;
  ms.marked_vertices = marked_vertices(g);
  EdgeSet et;
  for (int v : ms.marked_vertices)
    for (int e : g.incident(v))
      if (m.contains(e)) et.set(static_cast<std::size_t>(e));
  ms.induced_edges = et.indices();
  std::vector<int> s = (m.bits ^ et).indices();
  return {ms, s};
}

// The cylinder left after deleting E_i from a torus, with index maps back to
// the torus. Cylinder vertex (column b, row a) is torus vertex
// (u_{i+a}, v_b): torus columns become cylinder rows.
struct ColumnCut {
  GridGraph cylinder;
  int removed_class = 0;
  std::uint64_t torus_id = 0;
  std::vector<int> vertex_to_torus;
  std::vector<int> edge_to_torus;
  std::vector<int> face_to_torus;

  bool contains_torus_matching(const Matching& tm) const {
    if (tm.graph_id != torus_id) throw GraphMismatch("matching is not on the cut torus");
    EdgeSet image;
    for (int e : edge_to_torus) image.set(static_cast<std::size_t>(e));
    return tm.bits.is_subset_of(image);
  }
  Matching to_cylinder(const Matching& tm) const {
    if (!contains_torus_matching(tm)) throw std::invalid_argument("matching uses a deleted edge");
    EdgeSet out;
    for (int e = 0; e < static_cast<int>(edge_to_torus.size()); ++e)
      if (tm.contains(edge_to_torus[static_cast<std::size_t>(e)])) out.set(static_cast<std::size_t>(e));
    return {out, cylinder.id()};
  }
  Matching to_torus(const Matching& cm) const {
    require_same_graph(cylinder, cm);
    EdgeSet out;
    cm.bits.for_each([&](int e) { out.set(static_cast<std::size_t>(edge_to_torus[static_cast<std::size_t>(e)])); });
    return {out, torus_id};
  }
};

inline ColumnCut torus_minus_column(const GridGraph& g, int i) {
  if (g.topology().kind != TopologyKind::Torus) throw TopologyError("expected a torus");
  if (i < 1 || i > g.vcols()) throw std::out_of_range("column class " + std::to_string(i) + " out of range");
  ColumnCut cut{build_grid({TopologyKind::Cylinder, g.vcols(), g.vrows()}), i, g.id(), {}, {}, {}};
  const GridGraph& c = cut.cylinder;
  cut.vertex_to_torus.resize(static_cast<std::size_t>(c.vertex_count()));
  for (int v = 0; v < c.vertex_count(); ++v)
    cut.vertex_to_torus[static_cast<std::size_t>(v)] = g.vertex_wrapped(i + c.row_of(v), c.col_of(v));
  cut.edge_to_torus.resize(static_cast<std::size_t>(c.edge_count()));
  for (int e = 0; e < c.edge_count(); ++e) {
    const Edge& ed = c.edge(e);
    int te = g.find_edge(cut.vertex_to_torus[static_cast<std::size_t>(ed.u)],
                         cut.vertex_to_torus[static_cast<std::size_t>(ed.v)]);
    if (te < 0) throw std::logic_error("cylinder edge has no torus image");
    cut.edge_to_torus[static_cast<std::size_t>(e)] = te;
  }
  cut.face_to_torus.resize(static_cast<std::size_t>(c.face_count()));
  for (int f = 0; f < c.face_count(); ++f)
    cut.face_to_torus[static_cast<std::size_t>(f)] = g.face_at(i + c.face(f).row, c.face(f).col);
  return cut;
}

}  // namespace domino
