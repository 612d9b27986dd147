#pragma once

// Report serialization: JSON (schema v1), CSV, Graphviz DOT, ASCII tilings.
// All output is deterministic for identical inputs.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "domino/constructions.hpp"
#include "domino/flip_graph.hpp"
#include "domino/forcing.hpp"
#include "domino/grid.hpp"
#include "domino/matching.hpp"

namespace domino::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "v1";

inline json to_json(const GridGraph& g) {
  json edges = json::array(), faces = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  for (const auto& f : g.faces()) faces.push_back({f.edges[0], f.edges[1], f.edges[2], f.edges[3]});
  return json{{"schema", kSchema},
              {"kind", std::string(to_string(g.topology().kind))},
              {"vrows", g.vrows()},
              {"vcols", g.vcols()},
              {"edges", std::move(edges)},
              {"faces", std::move(faces)}};
}

inline json to_json(const Matching& m) { return m.edges(); }

inline json matchings_report(const GridGraph& g, const MatchingStore& store, bool include_matchings) {
  json j{{"schema", kSchema},
         {"kind", std::string(to_string(g.topology().kind))},
         {"vrows", g.vrows()},
         {"vcols", g.vcols()},
         {"count", store.size()}};
  if (include_matchings) {
    json all = json::array();
    for (const auto& m : store) all.push_back(to_json(m));
    j["matchings"] = std::move(all);
  }
  return j;
}

inline json to_json(const ComponentReport& r) {
  json bip = json::array();
  for (bool b : r.bipartite) bip.push_back(b);
  return json{{"schema", kSchema},
              {"components", r.component_count()},
              {"sizes", r.sizes},
              {"trivial", r.trivial_count},
              {"bipartite", r.all_bipartite()},
              {"bipartite_per_component", std::move(bip)}};
}

inline json to_json(const SpectrumReport& r) {
  return json{{"schema", kSchema},
              {"spectrum", r.spectrum},
              {"min", r.min_forcing},
              {"max", r.max_forcing},
              {"continuous", r.continuous},
              {"gaps", r.gaps()},
              {"matchings", r.matchings},
              {"authoritative", r.authoritative}};
}

inline json to_json(const FlipTrace& t) {
  return json{{"schema", kSchema}, {"start_matching", t.start.edges()}, {"flips", t.flips}};
}

inline json to_json(const MarkedSet& ms, const std::vector<int>& s) {
  return json{{"schema", kSchema}, {"T", ms.marked_vertices}, {"S", s}};
}

// matching_id,forcing_number,witness  (witness edges separated by spaces)
inline std::string forcing_csv(std::span<const ForcingResult> results) {
  std::ostringstream os;
  os << "matching_id,forcing_number,witness\n";
  for (const auto& r : results) {
    os << r.matching_id << ',' << r.forcing_number << ',';
    for (std::size_t k = 0; k < r.witness.size(); ++k) os << (k ? " " : "") << r.witness[k];
    os << '\n';
  }
  return os.str();
}

inline std::string to_dot(const FlipGraph& fg) {
  std::ostringstream os;
  os << "graph flips {\n";
  for (std::size_t a = 0; a < fg.size(); ++a) os << "  " << a << ";\n";
  for (std::size_t a = 0; a < fg.size(); ++a)
    for (const auto& fe : fg.neighbors(a))
      if (static_cast<std::size_t>(fe.neighbor) > a)
        os << "  " << a << " -- " << fe.neighbor << " [label=\"" << fe.face << "\"];\n";
  os << "}\n";
  return os.str();
}

// One character per cell (vertex of the dual grid): a horizontal domino is
// drawn "<>" (left half, right half), a vertical one "^" over "v". Halves of
// dominoes crossing a wrapped seam appear at the opposite borders.
inline std::string ascii_tiling(const GridGraph& g, const Matching& m) {
  require_same_graph(g, m);
  std::vector<std::string> rows(static_cast<std::size_t>(g.vrows()), std::string(static_cast<std::size_t>(g.vcols()), '.'));
  auto cell = [&](int v) -> char& {
    return rows[static_cast<std::size_t>(g.row_of(v) - 1)][static_cast<std::size_t>(g.col_of(v) - 1)];
  };
  m.bits.for_each([&](int e) {
    const Edge& ed = g.edge(e);
    if (ed.kind == EdgeKind::Horizontal) {
      // u < v; the wrapped seam edge joins column vcols (left) to column 1.
      bool seam = g.col_of(ed.v) - g.col_of(ed.u) != 1;
      cell(seam ? ed.v : ed.u) = '<';
      cell(seam ? ed.u : ed.v) = '>';
    } else {
      bool seam = g.row_of(ed.v) - g.row_of(ed.u) != 1;
      cell(seam ? ed.v : ed.u) = '^';
      cell(seam ? ed.u : ed.v) = 'v';
    }
  });
  std::string out;
  for (const auto& r : rows) out += r + '\n';
  return out;
}

}  // namespace domino::io
