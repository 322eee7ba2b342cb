#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/error.hpp"
#include "rainbow/graph.hpp"

namespace rainbow {

// Per-colour partition of a clique-union class into triangles and pairs.
struct CliqueDecomposition {
  Colour colour = 0;
  std::vector<std::array<Vertex, 3>> triangles;
  std::vector<std::array<Vertex, 2>> pair_edges;
  std::size_t spanned_vertices = 0;
};

struct Violation {
  Colour colour;
  Vertex vertex;
  std::string reason;
};

struct ValidationReport {
  ColourClassKind kind = ColourClassKind::kArbitrary;
  std::vector<Violation> violations;
  // Filled for kCliqueUnion only, one entry per colour.
  std::vector<CliqueDecomposition> decompositions;

  bool ok() const { return violations.empty(); }
};

namespace detail {

// Sorted neighbour lists of one colour class, plus a flag for parallel edges.
struct ColourAdjacency {
  std::vector<Vertex> touched;
  std::vector<std::vector<Vertex>> nbrs;  // indexed by vertex, only touched ones filled
  bool has_parallel = false;
  Vertex parallel_at = kNoVertex;
};

inline void build_colour_adjacency(const ColouredMultigraph& g, Colour c, ColourAdjacency& adj) {
  for (Vertex v : adj.touched) adj.nbrs[v].clear();
  adj.touched.clear();
  adj.has_parallel = false;
  adj.parallel_at = kNoVertex;
  if (adj.nbrs.size() != g.n_vertices()) adj.nbrs.assign(g.n_vertices(), {});
  for (EdgeId id : g.colour_edges(c)) {
    const Edge& e = g.edge(id);
    for (Vertex x : {e.u, e.v}) {
      if (adj.nbrs[x].empty()) adj.touched.push_back(x);
      adj.nbrs[x].push_back(e.other(x));
    }
  }
  std::sort(adj.touched.begin(), adj.touched.end());
  for (Vertex x : adj.touched) {
    auto& n = adj.nbrs[x];
    std::sort(n.begin(), n.end());
    if (std::adjacent_find(n.begin(), n.end()) != n.end() && !adj.has_parallel) {
      adj.has_parallel = true;
      adj.parallel_at = x;
    }
  }
}

inline bool adjacent(const ColourAdjacency& adj, Vertex a, Vertex b) {
  const auto& n = adj.nbrs[a];
  return std::binary_search(n.begin(), n.end(), b);
}

// Components of a colour class that is already known to be a clique union,
// each as an ascending vertex list, ordered by smallest vertex.
inline std::vector<std::vector<Vertex>> clique_components(const ColourAdjacency& adj) {
  std::vector<std::vector<Vertex>> out;
  std::vector<bool> seen(adj.nbrs.size(), false);
  for (Vertex x : adj.touched) {
    if (seen[x]) continue;
    std::vector<Vertex> comp = adj.nbrs[x];
    comp.push_back(x);
    std::sort(comp.begin(), comp.end());
    comp.erase(std::unique(comp.begin(), comp.end()), comp.end());
    for (Vertex y : comp) seen[y] = true;
    out.push_back(std::move(comp));
  }
  return out;
}

// Splits K_r into pairs on ascending ids, with the last three vertices as a
// triangle when r is odd.
inline void split_clique(const std::vector<Vertex>& comp, CliqueDecomposition& out) {
  std::size_t r = comp.size();
  std::size_t pairs_end = (r % 2 == 1) ? r - 3 : r;
  for (std::size_t i = 0; i < pairs_end; i += 2) out.pair_edges.push_back({comp[i], comp[i + 1]});
  if (r % 2 == 1) out.triangles.push_back({comp[r - 3], comp[r - 2], comp[r - 1]});
  out.spanned_vertices += r;
}

// First witness vertex whose neighbourhood is not a clique, if any.
inline std::optional<std::pair<Vertex, std::string>> clique_union_witness(
    const ColourAdjacency& adj) {
  if (adj.has_parallel) return std::make_pair(adj.parallel_at, std::string("parallel edge in colour class"));
  for (Vertex x : adj.touched) {
    const auto& n = adj.nbrs[x];
    for (std::size_t i = 0; i < n.size(); ++i) {
      for (std::size_t j = i + 1; j < n.size(); ++j) {
        if (!adjacent(adj, n[i], n[j])) {
          return std::make_pair(x, "missing edge " + std::to_string(n[i]) + "-" +
                                       std::to_string(n[j]));
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Checks every colour class against `kind` and lists each violating
// (colour, vertex) pair. Never throws on a structural violation.
inline ValidationReport validate(const ColouredMultigraph& g, ColourClassKind kind) {
  ValidationReport report;
  report.kind = kind;
  if (kind == ColourClassKind::kArbitrary) return report;

  if (kind == ColourClassKind::kMatching && g.sides()) {
    const auto& side = *g.sides();
    for (const Edge& e : g.edges()) {
      if (side[e.u] == side[e.v]) {
        report.violations.push_back({e.colour, e.u, "edge inside one side of the bipartition"});
      }
    }
  }

  detail::ColourAdjacency adj;
  std::vector<std::size_t> deg(g.n_vertices(), 0);
  for (Colour c = 0; c < g.n_colours(); ++c) {
    switch (kind) {
      case ColourClassKind::kMatching: {
        std::vector<Vertex> touched;
        for (EdgeId id : g.colour_edges(c)) {
          for (Vertex x : {g.edge(id).u, g.edge(id).v}) {
            if (deg[x]++ == 1) report.violations.push_back({c, x, "degree exceeds 1"});
            touched.push_back(x);
          }
        }
        for (Vertex x : touched) deg[x] = 0;
        break;
      }
      case ColourClassKind::kCliqueUnion: {
        detail::build_colour_adjacency(g, c, adj);
        if (auto w = detail::clique_union_witness(adj)) {
          report.violations.push_back({c, w->first, w->second});
          break;
        }
        CliqueDecomposition dec;
        dec.colour = c;
        for (const auto& comp : detail::clique_components(adj)) detail::split_clique(comp, dec);
        report.decompositions.push_back(std::move(dec));
        break;
      }
      case ColourClassKind::kTwoFactor: {
        detail::build_colour_adjacency(g, c, adj);
        if (adj.has_parallel) {
          report.violations.push_back({c, adj.parallel_at, "parallel edge in colour class"});
        }
        for (Vertex x = 0; x < g.n_vertices(); ++x) {
          if (adj.nbrs[x].size() != 2) {
            report.violations.push_back(
                {c, x, "degree " + std::to_string(adj.nbrs[x].size()) + " instead of 2"});
          }
        }
        break;
      }
      case ColourClassKind::kArbitrary:
        break;
    }
  }
  return report;
}

inline ValidationReport validate(const ColouredMultigraph& g) { return validate(g, g.kind()); }

inline CliqueDecomposition clique_decompose(const ColouredMultigraph& g, Colour colour) {
  detail::ColourAdjacency adj;
  detail::build_colour_adjacency(g, colour, adj);
  if (auto w = detail::clique_union_witness(adj)) {
    throw Error(ErrorCode::kNotCliqueUnion, "colour " + std::to_string(colour) + " at vertex " +
                                                std::to_string(w->first) + ": " + w->second);
  }
  CliqueDecomposition dec;
  dec.colour = colour;
  for (const auto& comp : detail::clique_components(adj)) detail::split_clique(comp, dec);
  return dec;
}

// Number of vertices with non-zero degree in colour c.
inline std::size_t spanned_vertices(const ColouredMultigraph& g, Colour c) {
  std::vector<Vertex> touched;
  for (EdgeId id : g.colour_edges(c)) {
    touched.push_back(g.edge(id).u);
    touched.push_back(g.edge(id).v);
  }
  std::sort(touched.begin(), touched.end());
  return static_cast<std::size_t>(std::unique(touched.begin(), touched.end()) - touched.begin());
}

}  // namespace rainbow
