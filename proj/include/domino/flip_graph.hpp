#pragma once

// Flip (resonance) graph over the perfect matchings of a grid graph: two
// matchings are adjacent iff their symmetric difference is the boundary of
// exactly one square face.

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "domino/grid.hpp"
#include "domino/matching.hpp"
#include "domino/parallel.hpp"

namespace domino {

class NotAlternatingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IncompleteStoreError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A face is alternating for a perfect matching iff one opposite pair of its
// boundary lies in the matching.
inline bool is_alternating_face(const GridGraph& g, const EdgeSet& m, int f) {
  const auto& e = g.face(f).edges;
  auto in = [&](int k) { return m.test(static_cast<std::size_t>(e[static_cast<std::size_t>(k)])); };
  return (in(0) && in(1) && !in(2) && !in(3)) || (in(2) && in(3) && !in(0) && !in(1));
}

inline std::vector<int> flippable_faces(const GridGraph& g, const Matching& m) {
  require_same_graph(g, m);
  std::vector<int> out;
  for (int f = 0; f < g.face_count(); ++f)
    if (is_alternating_face(g, m.bits, f)) out.push_back(f);
  return out;
}

inline Matching flip(const GridGraph& g, const Matching& m, int face) {
  require_same_graph(g, m);
  if (face < 0 || face >= g.face_count()) throw std::out_of_range("face index out of range");
  if (!is_alternating_face(g, m.bits, face))
    throw NotAlternatingError("face " + std::to_string(face) + " is not alternating");
  return {m.bits ^ g.face_edges(face), m.graph_id};
}

struct FlipEdge {
  int neighbor;
  int face;
};

class FlipGraph {
 public:
  FlipGraph() = default;
  explicit FlipGraph(std::vector<std::vector<FlipEdge>> adj) : adj_(std::move(adj)) {}

  std::size_t size() const { return adj_.size(); }
  std::span<const FlipEdge> neighbors(std::size_t id) const { return adj_[id]; }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& a : adj_) n += a.size();
    return n / 2;
  }
  // Face label of the edge a-b, if adjacent.
  std::optional<int> face_between(std::size_t a, std::size_t b) const {
    for (const auto& fe : adj_[a])
      if (static_cast<std::size_t>(fe.neighbor) == b) return fe.face;
    return std::nullopt;
  }

 private:
  std::vector<std::vector<FlipEdge>> adj_;
};

// Neighbor discovery by XOR-then-lookup over the square faces.
inline FlipGraph build_flip_graph(const GridGraph& g, const MatchingStore& store, int threads = 1) {
  if (store.graph_id() != g.id()) throw GraphMismatch("store is bound to a different graph");
  std::vector<std::vector<FlipEdge>> adj(store.size());
  parallel_for(store.size(), threads, [&](std::size_t id) {
    const EdgeSet& m = store[id].bits;
    for (int f = 0; f < g.face_count(); ++f) {
      if (!is_alternating_face(g, m, f)) continue;
      auto other = store.find(m ^ g.face_edges(f));
      if (!other)
        throw IncompleteStoreError("flip of matching " + std::to_string(id) + " on face " + std::to_string(f) +
                                   " is missing from the store");
      adj[id].push_back({*other, f});
    }
  });
  return FlipGraph(std::move(adj));
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

struct ComponentReport {
  std::vector<int> component_of;  // per matching id
  std::vector<std::size_t> sizes; // per component id, descending
  std::vector<bool> bipartite;    // per component id
  std::size_t trivial_count = 0;

  std::size_t component_count() const { return sizes.size(); }
  bool all_bipartite() const { return std::all_of(bipartite.begin(), bipartite.end(), [](bool b) { return b; }); }
  std::vector<int> members(int component) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < component_of.size(); ++i)
      if (component_of[i] == component) out.push_back(static_cast<int>(i));
    return out;
  }
};

// Component ids are ordered by descending size, ties by smallest member id.
inline ComponentReport components(const FlipGraph& fg) {
  const std::size_t n = fg.size();
  DisjointSets ds(n);
  for (std::size_t a = 0; a < n; ++a)
    for (const auto& fe : fg.neighbors(a)) ds.unite(a, static_cast<std::size_t>(fe.neighbor));

  std::vector<std::size_t> root_size(n, 0), first_member(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    auto r = ds.find(a);
    if (root_size[r]++ == 0) first_member[r] = a;
  }
  std::vector<std::size_t> roots;
  for (std::size_t a = 0; a < n; ++a)
    if (root_size[a] > 0) roots.push_back(a);
  std::sort(roots.begin(), roots.end(), [&](std::size_t x, std::size_t y) {
    if (root_size[x] != root_size[y]) return root_size[x] > root_size[y];
    return first_member[x] < first_member[y];
  });
  std::vector<int> root_to_comp(n, -1);
  ComponentReport rep;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    root_to_comp[roots[k]] = static_cast<int>(k);
    rep.sizes.push_back(root_size[roots[k]]);
    if (root_size[roots[k]] == 1) ++rep.trivial_count;
  }
  rep.component_of.resize(n);
  for (std::size_t a = 0; a < n; ++a) rep.component_of[a] = root_to_comp[ds.find(a)];

  // 2-coloring per component
  rep.bipartite.assign(roots.size(), true);
  std::vector<signed char> color(n, -1);
  std::queue<std::size_t> q;
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto a = q.front();
      q.pop();
      for (const auto& fe : fg.neighbors(a)) {
        auto b = static_cast<std::size_t>(fe.neighbor);
        if (color[b] < 0) {
          color[b] = static_cast<signed char>(1 - color[a]);
          q.push(b);
        } else if (color[b] == color[a]) {
          rep.bipartite[static_cast<std::size_t>(rep.component_of[a])] = false;
        }
      }
    }
  }
  return rep;
}

inline bool is_bipartite_flip_graph(const FlipGraph& fg) { return components(fg).all_bipartite(); }

// Flip distance by BFS; nullopt if in different components.
inline std::optional<std::size_t> flip_distance(const FlipGraph& fg, std::size_t from, std::size_t to) {
  std::vector<std::size_t> dist(fg.size(), static_cast<std::size_t>(-1));
  std::queue<std::size_t> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    auto a = q.front();
    q.pop();
    if (a == to) return dist[a];
    for (const auto& fe : fg.neighbors(a)) {
      auto b = static_cast<std::size_t>(fe.neighbor);
      if (dist[b] == static_cast<std::size_t>(-1)) {
        dist[b] = dist[a] + 1;
        q.push(b);
      }
    }
  }
  return std::nullopt;
}

// Graph automorphism with its induced actions on edges and faces.
struct Automorphism {
  std::uint64_t graph_id = 0;
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
  std::vector<int> face_map;
};

// Translation (u_i, v_j) -> (u_{i+dx}, v_{j+dy}). Column shifts need wrapped
// columns, row shifts need wrapped rows.
inline Automorphism translation(const GridGraph& g, int dx, int dy) {
  const auto& t = g.topology();
  if (dx != 0 && !t.wraps_columns()) throw TopologyError("column shift on a graph without wrapped columns");
  if (dy != 0 && !t.wraps_rows()) throw TopologyError("row shift on a graph without wrapped rows");
  Automorphism a;
  a.graph_id = g.id();
  a.vertex_map.resize(static_cast<std::size_t>(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v)
    a.vertex_map[static_cast<std::size_t>(v)] = g.vertex_wrapped(g.col_of(v) + dx, g.row_of(v) + dy);
  a.edge_map.resize(static_cast<std::size_t>(g.edge_count()));
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edge(e);
    a.edge_map[static_cast<std::size_t>(e)] =
        g.find_edge(a.vertex_map[static_cast<std::size_t>(ed.u)], a.vertex_map[static_cast<std::size_t>(ed.v)]);
  }
  a.face_map.resize(static_cast<std::size_t>(g.face_count()));
  for (int f = 0; f < g.face_count(); ++f)
    a.face_map[static_cast<std::size_t>(f)] = g.face_at(g.face(f).col + dx, g.face(f).row + dy);
  return a;
}

inline Matching apply_automorphism(const Automorphism& a, const Matching& m) {
  if (m.graph_id != a.graph_id) throw GraphMismatch("automorphism is bound to a different graph");
  EdgeSet out;
  m.bits.for_each([&](int e) { out.set(static_cast<std::size_t>(a.edge_map[static_cast<std::size_t>(e)])); });
  return {out, m.graph_id};
}

// True iff `a` maps component comp1 bijectively onto comp2 and carries every
// flip edge (x, y, f) of comp1 to the flip edge (a(x), a(y), a(f)).
inline bool verify_component_isomorphism(const MatchingStore& store, const FlipGraph& fg, const ComponentReport& rep,
                                         const Automorphism& a, int comp1, int comp2) {
  if (comp1 < 0 || comp2 < 0 || static_cast<std::size_t>(comp1) >= rep.component_count() ||
      static_cast<std::size_t>(comp2) >= rep.component_count())
    return false;
  if (rep.sizes[static_cast<std::size_t>(comp1)] != rep.sizes[static_cast<std::size_t>(comp2)]) return false;
  std::vector<int> image(store.size(), -1);
  std::vector<char> hit(store.size(), 0);
  for (std::size_t x = 0; x < store.size(); ++x) {
    if (rep.component_of[x] != comp1) continue;
    auto y = store.find(apply_automorphism(a, store[x]));
    if (!y || rep.component_of[static_cast<std::size_t>(*y)] != comp2) return false;
    if (hit[static_cast<std::size_t>(*y)]) return false;
    hit[static_cast<std::size_t>(*y)] = 1;
    image[x] = *y;
  }
  for (std::size_t x = 0; x < store.size(); ++x) {
    if (rep.component_of[x] != comp1) continue;
    auto nx = fg.neighbors(x);
    auto ny = fg.neighbors(static_cast<std::size_t>(image[x]));
    if (nx.size() != ny.size()) return false;
    for (const auto& fe : nx) {
      auto lbl = fg.face_between(static_cast<std::size_t>(image[x]),
                                 static_cast<std::size_t>(image[static_cast<std::size_t>(fe.neighbor)]));
      if (!lbl || *lbl != a.face_map[static_cast<std::size_t>(fe.face)]) return false;
    }
  }
  return true;
}

}  // namespace domino
