#pragma once

// Perfect matchings as edge bit vectors, their exhaustive enumeration, and
// the matching store used by the flip-graph and forcing modules.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "domino/bitvec.hpp"
#include "domino/grid.hpp"
#include "domino/parallel.hpp"

namespace domino {

struct Matching {
  EdgeSet bits;
  std::uint64_t graph_id = 0;

  Matching() = default;
  Matching(EdgeSet b, std::uint64_t gid) : bits(b), graph_id(gid) {}

  bool contains(int e) const { return bits.test(static_cast<std::size_t>(e)); }
  int size() const { return static_cast<int>(bits.count()); }
  std::uint64_t fingerprint() const { return bits.fingerprint(); }
  std::vector<int> edges() const { return bits.indices(); }

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.graph_id == b.graph_id && a.bits == b.bits;
  }
};

inline Matching make_matching(const Graph& g, std::span<const int> edges) {
  EdgeSet s;
  for (int e : edges) {
    if (e < 0 || e >= g.edge_count()) throw std::out_of_range("edge index " + std::to_string(e) + " out of range");
    s.set(static_cast<std::size_t>(e));
  }
  return {s, g.id()};
}

inline void require_same_graph(const Graph& g, const Matching& m) {
  if (m.graph_id != g.id()) throw GraphMismatch("matching is bound to a different graph");
}

// Depth-first enumeration of the perfect matchings of g - blocked. Always
// extends the lowest-index uncovered vertex, trying its edges in ascending
// index order. `visit(const EdgeSet&)` returns false to stop early.
// Returns false iff stopped early.
template <typename Visit>
bool for_each_perfect_matching(const Graph& g, const VertexSet& blocked, Visit&& visit) {
  const int n = g.vertex_count();
  struct Frame {
    int vertex;
    std::size_t next;  // position in incidence list
    int edge;          // edge currently taken, -1 if none
  };
  std::vector<Frame> stack;
  stack.reserve(static_cast<std::size_t>(n / 2 + 1));
  VertexSet covered = blocked;
  EdgeSet chosen;

  auto open = [&]() -> bool {
    auto v = covered.find_first_clear(static_cast<std::size_t>(n));
    if (v == VertexSet::npos) return false;
    stack.push_back({static_cast<int>(v), 0, -1});
    return true;
  };

  if (!open()) {
    return visit(chosen);
  }
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.edge >= 0) {
      const Edge& ed = g.edge(f.edge);
      covered.reset(static_cast<std::size_t>(ed.u));
      covered.reset(static_cast<std::size_t>(ed.v));
      chosen.reset(static_cast<std::size_t>(f.edge));
      f.edge = -1;
    }
    auto inc = g.incident(f.vertex);
    bool advanced = false;
    while (f.next < inc.size()) {
      int e = inc[f.next++];
      int w = g.edge(e).other(f.vertex);
      if (covered.test(static_cast<std::size_t>(w))) continue;
      f.edge = e;
      covered.set(static_cast<std::size_t>(f.vertex));
      covered.set(static_cast<std::size_t>(w));
      chosen.set(static_cast<std::size_t>(e));
      advanced = true;
      break;
    }
    if (!advanced) {
      stack.pop_back();
      continue;
    }
    if (!open()) {
      if (!visit(chosen)) return false;
    }
  }
  return true;
}

template <typename Visit>
bool for_each_perfect_matching(const Graph& g, Visit&& visit) {
  return for_each_perfect_matching(g, VertexSet{}, std::forward<Visit>(visit));
}

// Number of perfect matchings of g - blocked, counting stops at `limit`.
inline std::size_t count_perfect_matchings(const Graph& g, const VertexSet& blocked = {},
                                           std::size_t limit = static_cast<std::size_t>(-1)) {
  std::size_t n = 0;
  if (limit == 0) return 0;
  for_each_perfect_matching(g, blocked, [&](const EdgeSet&) { return ++n < limit; });
  return n;
}

inline bool has_perfect_matching(const Graph& g, const VertexSet& blocked = {}) {
  return count_perfect_matchings(g, blocked, 1) == 1;
}

// Dense, duplicate-free, append-only list of matchings of one graph with a
// bit-vector hash index.
class MatchingStore {
 public:
  explicit MatchingStore(std::uint64_t graph_id = 0) : graph_id_(graph_id) {}

  std::uint64_t graph_id() const { return graph_id_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Matching& operator[](std::size_t id) const { return items_[id]; }
  const Matching& at(std::size_t id) const { return items_.at(id); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  // Returns the id of `bits`, inserting it if new.
  int insert(const EdgeSet& bits) {
    auto [it, fresh] = index_.try_emplace(bits, static_cast<int>(items_.size()));
    if (fresh) items_.emplace_back(bits, graph_id_);
    return it->second;
  }

  std::optional<int> find(const EdgeSet& bits) const {
    auto it = index_.find(bits);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> find(const Matching& m) const {
    if (m.graph_id != graph_id_) throw GraphMismatch("matching is bound to a different graph");
    return find(m.bits);
  }

 private:
  std::uint64_t graph_id_;
  std::vector<Matching> items_;
  std::unordered_map<EdgeSet, int, BitVecHash> index_;
};

inline MatchingStore enumerate_perfect_matchings(const Graph& g, std::optional<std::size_t> limit = std::nullopt) {
  MatchingStore store(g.id());
  if (limit && *limit == 0) return store;
  for_each_perfect_matching(g, [&](const EdgeSet& bits) {
    store.insert(bits);
    return !limit || store.size() < *limit;
  });
  return store;
}

// Parallel variant: splits on the edge choices of the first branch vertex and
// concatenates the branches in edge order, which reproduces the sequential
// enumeration order exactly.
inline MatchingStore enumerate_perfect_matchings_parallel(const Graph& g, int threads) {
  if (g.vertex_count() == 0 || threads <= 1) return enumerate_perfect_matchings(g);
  const int v0 = 0;
  auto inc = g.incident(v0);
  std::vector<std::vector<EdgeSet>> parts(inc.size());
  parallel_for(inc.size(), threads, [&](std::size_t k) {
    int e = inc[k];
    VertexSet blocked;
    blocked.set(static_cast<std::size_t>(g.edge(e).u));
    blocked.set(static_cast<std::size_t>(g.edge(e).v));
    for_each_perfect_matching(g, blocked, [&](const EdgeSet& rest) {
      EdgeSet full = rest;
      full.set(static_cast<std::size_t>(e));
      parts[k].push_back(full);
      return true;
    });
  });
  MatchingStore store(g.id());
  for (const auto& part : parts)
    for (const auto& bits : part) store.insert(bits);
  return store;
}

inline bool verify_perfect(const Graph& g, const Matching& m) {
  require_same_graph(g, m);
  std::vector<int> cover(static_cast<std::size_t>(g.vertex_count()), 0);
  bool ok = true;
  m.bits.for_each([&](int e) {
    if (e >= g.edge_count()) {
      ok = false;
      return;
    }
    ++cover[static_cast<std::size_t>(g.edge(e).u)];
    ++cover[static_cast<std::size_t>(g.edge(e).v)];
  });
  if (!ok) return false;
  for (int c : cover)
    if (c != 1) return false;
  return true;
}

inline int count_horizontal(const Graph& g, const Matching& m) {
  require_same_graph(g, m);
  int n = 0;
  m.bits.for_each([&](int e) { n += g.edge(e).kind == EdgeKind::Horizontal; });
  return n;
}

inline bool has_unique_pm(const Graph& g) { return count_perfect_matchings(g, {}, 2) == 1; }

// Edges lying in at least one perfect matching.
inline EdgeSet allowed_edges(const Graph& g) {
  EdgeSet allowed;
  for (int e = 0; e < g.edge_count(); ++e) {
    VertexSet blocked;
    blocked.set(static_cast<std::size_t>(g.edge(e).u));
    blocked.set(static_cast<std::size_t>(g.edge(e).v));
    if (has_perfect_matching(g, blocked)) allowed.set(static_cast<std::size_t>(e));
  }
  return allowed;
}

// Connected, and every edge is allowed.
inline bool is_elementary(const Graph& g) {
  if (!g.is_connected()) return false;
  return static_cast<int>(allowed_edges(g).count()) == g.edge_count();
}

}  // namespace domino
