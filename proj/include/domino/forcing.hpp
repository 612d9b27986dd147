#pragma once

// Forcing numbers and forcing spectra.
//
// S ⊆ M forces M iff G - V(S) has M \ S as its only perfect matching, i.e.
// iff S meets every M-alternating cycle. The exact solver is an iterative
// deepening hitting-set search: find an M-alternating cycle avoiding V(S)
// (a square face first, otherwise the symmetric difference with a second
// perfect matching of G - V(S)), then branch on which of its M-edges joins S.
// Branch k adds the k-th candidate and excludes the earlier ones, so the
// branches partition the search space.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "domino/bitvec.hpp"
#include "domino/flip_graph.hpp"
#include "domino/grid.hpp"
#include "domino/matching.hpp"
#include "domino/parallel.hpp"

namespace domino {

class NotSubsetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ForcingResult {
  int matching_id = -1;
  int forcing_number = 0;
  std::vector<int> witness;  // ascending edge indices, a minimum forcing set
  int lower_bound = 0;       // disjoint alternating-square packing bound
};

using FaceSet = BitVec<2>;

class ForcingSolver {
 public:
  static constexpr std::size_t kDefaultCache = std::size_t{1} << 18;

  explicit ForcingSolver(const GridGraph& g, std::size_t cache_limit = kDefaultCache)
      : ForcingSolver(g, std::vector<Face>(g.faces().begin(), g.faces().end()), cache_limit) {}

  // Any simple graph; `faces` lists 4-cycles (opposite pairs {0,1}, {2,3})
  // tried as cheap alternating cycles before the general search. Correctness
  // does not depend on them.
  ForcingSolver(const Graph& g, std::vector<Face> faces, std::size_t cache_limit = kDefaultCache)
      : g_(&g), faces_(std::move(faces)), cache_limit_(cache_limit) {
    if (faces_.size() > FaceSet::kBits) throw TopologyError("too many faces for the forcing solver");
    face_vertices_.resize(faces_.size());
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      EdgeSet es;
      for (int e : faces_[f].edges) es.set(static_cast<std::size_t>(e));
      face_vertices_[f] = g.endpoints(es);
    }
    face_conflicts_.resize(faces_.size());
    for (std::size_t a = 0; a < faces_.size(); ++a)
      for (std::size_t b = 0; b < faces_.size(); ++b)
        if (a != b && face_vertices_[a].intersects(face_vertices_[b])) face_conflicts_[a].set(b);
  }

  const Graph& graph() const { return *g_; }

  // True iff g - V(s) has exactly one perfect matching. `s` must be a subset
  // of the perfect matching `m`.
  bool is_forcing_set(const EdgeSet& m, const EdgeSet& s) {
    if (!s.is_subset_of(m)) throw NotSubsetError("candidate set is not contained in the matching");
    return alternatives(g_->endpoints(s)).count == 1;
  }

  ForcingResult solve(const Matching& m, int matching_id = -1) {
    require_same_graph(*g_, m);
    m_ = m.bits;
    ForcingResult r;
    r.matching_id = matching_id;
    r.lower_bound = packing_bound(VertexSet{}, /*exact=*/true);
    for (int k = r.lower_bound;; ++k) {
      chosen_.clear();
      if (search(VertexSet{}, EdgeSet{}, EdgeSet{}, k)) {
        r.forcing_number = static_cast<int>(chosen_.size());
        std::sort(chosen_.begin(), chosen_.end());
        r.witness = chosen_;
        return r;
      }
    }
  }

  // Maximum number of pairwise vertex-disjoint M-alternating squares.
  int alternating_square_packing(const Matching& m) {
    require_same_graph(*g_, m);
    m_ = m.bits;
    return packing_bound(VertexSet{}, true);
  }

 private:
  struct Alternatives {
    int count = 0;  // 0, 1, or 2 (capped)
    EdgeSet first, second;
  };

  const Alternatives& alternatives(const VertexSet& blocked) {
    auto it = cache_.find(blocked);
    if (it != cache_.end()) return it->second;
    if (cache_.size() >= cache_limit_) cache_.clear();
    Alternatives a;
    for_each_perfect_matching(*g_, blocked, [&](const EdgeSet& pm) {
      (a.count == 0 ? a.first : a.second) = pm;
      return ++a.count < 2;
    });
    return cache_.emplace(blocked, a).first->second;
  }

  FaceSet alternating_faces(const VertexSet& blocked) const {
    FaceSet out;
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      if (face_vertices_[f].intersects(blocked)) continue;
      const auto& e = faces_[f].edges;
      auto in = [&](int k) { return m_.test(static_cast<std::size_t>(e[static_cast<std::size_t>(k)])); };
      if ((in(0) && in(1) && !in(2) && !in(3)) || (in(2) && in(3) && !in(0) && !in(1))) out.set(f);
    }
    return out;
  }

  int packing_bound(const VertexSet& blocked, bool exact) const {
    FaceSet alt = alternating_faces(blocked);
    if (!exact) {
      int n = 0;
      while (alt.any()) {
        auto f = alt.find_first();
        alt.reset(f);
        alt = alt & ~face_conflicts_[f];
        ++n;
      }
      return n;
    }
    return max_disjoint(alt);
  }

  int max_disjoint(FaceSet cand) const {
    if (cand.none()) return 0;
    // branch on the candidate with most conflicts inside cand
    std::size_t pick = FaceSet::npos, best_deg = 0;
    bool any_conflict = false;
    cand.for_each([&](int f) {
      std::size_t d = (cand & face_conflicts_[static_cast<std::size_t>(f)]).count();
      if (pick == FaceSet::npos || d > best_deg) {
        pick = static_cast<std::size_t>(f);
        best_deg = d;
      }
      any_conflict |= d > 0;
    });
    if (!any_conflict) return static_cast<int>(cand.count());
    FaceSet without = cand;
    without.reset(pick);
    int skip = max_disjoint(without);
    FaceSet with = without & ~face_conflicts_[pick];
    int take = 1 + max_disjoint(with);
    return std::max(skip, take);
  }

  // M-edges of the cheapest alternating cycle to branch on, with excluded
  // edges removed. Returns nullopt iff g - blocked has a unique perfect
  // matching (nothing left to hit).
  std::optional<std::vector<int>> next_cycle(const VertexSet& blocked, const EdgeSet& s, const EdgeSet& excluded,
                                             bool* from_square) {
    std::optional<std::vector<int>> best;
    FaceSet alt = alternating_faces(blocked);
    alt.for_each([&](int f) {
      if (best && best->empty()) return;
      std::vector<int> avail;
      for (int e : faces_[static_cast<std::size_t>(f)].edges)
        if (m_.test(static_cast<std::size_t>(e)) && !excluded.test(static_cast<std::size_t>(e))) avail.push_back(e);
      if (!best || avail.size() < best->size()) best = std::move(avail);
    });
    if (best) {
      *from_square = true;
      return best;
    }
    *from_square = false;
    const Alternatives& alts = alternatives(blocked);
    if (alts.count < 2) return std::nullopt;
    EdgeSet rest = m_ ^ s;
    EdgeSet diff = (alts.first == rest ? alts.second : alts.first) ^ rest;
    // diff is a disjoint union of alternating cycles; pick the one with the
    // fewest available M-edges.
    while (diff.any()) {
      std::vector<int> avail;
      auto e0 = static_cast<int>(diff.find_first());
      int e = e0, v = g_->edge(e0).u;
      do {
        diff.reset(static_cast<std::size_t>(e));
        if (m_.test(static_cast<std::size_t>(e)) && !excluded.test(static_cast<std::size_t>(e))) avail.push_back(e);
        v = g_->edge(e).other(v);
        int next = -1;
        for (int x : g_->incident(v))
          if (diff.test(static_cast<std::size_t>(x))) {
            next = x;
            break;
          }
        e = next;
      } while (e >= 0);
      std::sort(avail.begin(), avail.end());
      if (!best || avail.size() < best->size()) best = std::move(avail);
    }
    return best;
  }

  bool search(VertexSet blocked, EdgeSet s, EdgeSet excluded, int budget) {
    bool from_square = false;
    auto cycle = next_cycle(blocked, s, excluded, &from_square);
    if (!cycle) return true;
    if (budget == 0 || cycle->empty()) return false;
    if (from_square && packing_bound(blocked, false) > budget) return false;
    for (int e : *cycle) {
      VertexSet nb = blocked;
      nb.set(static_cast<std::size_t>(g_->edge(e).u));
      nb.set(static_cast<std::size_t>(g_->edge(e).v));
      EdgeSet ns = s;
      ns.set(static_cast<std::size_t>(e));
      chosen_.push_back(e);
      if (search(nb, ns, excluded, budget - 1)) return true;
      chosen_.pop_back();
      excluded.set(static_cast<std::size_t>(e));
    }
    return false;
  }

  const Graph* g_;
  std::vector<Face> faces_;
  std::size_t cache_limit_;
  std::vector<VertexSet> face_vertices_;
  std::vector<FaceSet> face_conflicts_;
  std::unordered_map<VertexSet, Alternatives, BitVecHash> cache_;
  EdgeSet m_;
  std::vector<int> chosen_;
};

inline bool is_forcing_set(const GridGraph& g, const Matching& m, std::span<const int> s) {
  require_same_graph(g, m);
  EdgeSet es;
  for (int e : s) {
    if (e < 0 || e >= g.edge_count()) throw std::out_of_range("edge index out of range");
    es.set(static_cast<std::size_t>(e));
  }
  ForcingSolver solver(g, 0);
  return solver.is_forcing_set(m.bits, es);
}

inline ForcingResult forcing_number(const GridGraph& g, const Matching& m, int matching_id = -1) {
  ForcingSolver solver(g);
  return solver.solve(m, matching_id);
}

struct SpectrumOptions {
  std::optional<std::size_t> budget_matchings;
  std::optional<double> budget_seconds;
  int threads = 1;
  bool keep_per_matching = false;
};

struct SpectrumReport {
  std::vector<int> spectrum;  // ascending, distinct
  int min_forcing = 0;
  int max_forcing = 0;
  bool continuous = true;
  bool authoritative = true;  // false if a budget cut the sweep short
  std::size_t matchings = 0;  // matchings examined
  std::vector<ForcingResult> per_matching;

  std::vector<int> gaps() const {
    std::vector<int> out;
    for (std::size_t i = 1; i < spectrum.size(); ++i)
      for (int x = spectrum[i - 1] + 1; x < spectrum[i]; ++x) out.push_back(x);
    return out;
  }
};

// Exact spectrum over every perfect matching, enumerated in streaming chunks
// so the matchings themselves are never all held at once.
inline SpectrumReport forcing_spectrum(const GridGraph& g, const SpectrumOptions& opt = {}) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const int threads = std::max(1, opt.threads);
  std::vector<ForcingSolver> solvers;
  for (int t = 0; t < threads; ++t) solvers.emplace_back(g);

  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count() / 2 + 1), 0);
  SpectrumReport rep;
  std::vector<EdgeSet> chunk;
  constexpr std::size_t kChunk = 4096;
  bool cut = false;

  auto flush = [&] {
    if (chunk.empty()) return;
    std::vector<ForcingResult> res(chunk.size());
    std::size_t per = (chunk.size() + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
    parallel_for(static_cast<std::size_t>(threads), threads, [&](std::size_t t) {
      for (std::size_t i = t * per; i < std::min(chunk.size(), (t + 1) * per); ++i)
        res[i] = solvers[t].solve(Matching(chunk[i], g.id()), static_cast<int>(rep.matchings + i));
    });
    for (auto& r : res) {
      seen[static_cast<std::size_t>(r.forcing_number)] = 1;
      if (opt.keep_per_matching) rep.per_matching.push_back(std::move(r));
    }
    rep.matchings += chunk.size();
    chunk.clear();
  };

  for_each_perfect_matching(g, [&](const EdgeSet& pm) {
    if (opt.budget_matchings && rep.matchings + chunk.size() >= *opt.budget_matchings) {
      cut = true;
      return false;
    }
    chunk.push_back(pm);
    if (chunk.size() == kChunk) {
      flush();
      if (opt.budget_seconds && std::chrono::duration<double>(clock::now() - start).count() > *opt.budget_seconds) {
        cut = true;
        return false;
      }
    }
    return true;
  });
  flush();

  if (rep.matchings == 0) {
    if (cut) throw BudgetExceeded("budget allows no matchings");
    throw std::invalid_argument("graph has no perfect matching");
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (seen[k]) rep.spectrum.push_back(static_cast<int>(k));
  rep.min_forcing = rep.spectrum.front();
  rep.max_forcing = rep.spectrum.back();
  rep.continuous = static_cast<int>(rep.spectrum.size()) == rep.max_forcing - rep.min_forcing + 1;
  rep.authoritative = !cut;
  return rep;
}

// Every flip edge joins matchings whose forcing numbers differ by at most 1.
// `results[i]` must describe matching id i.
inline bool flip_lipschitz_check(const FlipGraph& fg, std::span<const ForcingResult> results) {
  if (results.size() != fg.size()) throw std::invalid_argument("forcing results do not cover the flip graph");
  for (std::size_t a = 0; a < fg.size(); ++a)
    for (const auto& fe : fg.neighbors(a)) {
      int d = results[a].forcing_number - results[static_cast<std::size_t>(fe.neighbor)].forcing_number;
      if (d > 1 || d < -1) return false;
    }
  return true;
}

// Forcing results for every matching of a store, indexed by matching id.
inline std::vector<ForcingResult> forcing_numbers(const GridGraph& g, const MatchingStore& store, int threads = 1) {
  std::vector<ForcingResult> out(store.size());
  threads = std::max(1, threads);
  std::size_t per = (store.size() + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
  parallel_for(static_cast<std::size_t>(threads), threads, [&](std::size_t t) {
    ForcingSolver solver(g);
    for (std::size_t i = t * per; i < std::min(store.size(), (t + 1) * per); ++i)
      out[i] = solver.solve(store[i], static_cast<int>(i));
  });
  return out;
}

}  // namespace domino
