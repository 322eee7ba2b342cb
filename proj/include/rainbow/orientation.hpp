#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rainbow/error.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/random.hpp"
#include "rainbow/validate.hpp"

namespace rainbow {

struct OrientedReduction {
  // Bipartite, kind Matching, sides 0 = X and 1 = Y. Each edge is stored as
  // (tail in X, head in Y).
  ColouredMultigraph graph;
  // Edge id in the source graph for each kept edge.
  std::vector<EdgeId> origin;

  const std::vector<std::uint8_t>& sides() const { return *graph.sides(); }

  RainbowMatching lift(const RainbowMatching& m) const { return m.lifted(origin); }
};

// Orients every colour cycle in a random direction, puts each vertex in X or
// Y with probability 1/2 and keeps the edges directed from X to Y. Each
// colour then has in- and out-degree at most one on the kept edges, so every
// class is a matching of the bipartite result.
inline OrientedReduction orient_bipartition_reduce(const ColouredMultigraph& g, Seed seed) {
  const ValidationReport vr = validate(g, ColourClassKind::kTwoFactor);
  if (!vr.ok()) {
    throw Error(ErrorCode::kNotTwoFactorized,
                "colour " + std::to_string(vr.violations.front().colour) + ": " + vr.violations.front().reason);
  }
  const std::size_t nv = g.n_vertices();
  Rng rng = make_rng(seed);
  std::vector<std::uint8_t> side(nv);
  for (Vertex v = 0; v < nv; ++v) side[v] = bernoulli(rng, 0.5) ? 1 : 0;

  std::vector<Vertex> tail(g.n_edges(), kNoVertex);
  std::vector<std::array<EdgeId, 2>> at(nv, {kNoEdge, kNoEdge});
  for (Colour c = 0; c < g.n_colours(); ++c) {
    for (EdgeId id : g.colour_edges(c)) {
      for (Vertex x : {g.edge(id).u, g.edge(id).v}) (at[x][0] == kNoEdge ? at[x][0] : at[x][1]) = id;
    }
    for (EdgeId first : g.colour_edges(c)) {
      if (tail[first] != kNoVertex) continue;
      const Edge& e = g.edge(first);
      Vertex from = bernoulli(rng, 0.5) ? e.u : e.v;
      EdgeId cur = first;
      while (tail[cur] == kNoVertex) {
        tail[cur] = from;
        const Vertex to = g.edge(cur).other(from);
        cur = at[to][0] == cur ? at[to][1] : at[to][0];
        from = to;
      }
    }
    for (EdgeId id : g.colour_edges(c)) at[g.edge(id).u] = at[g.edge(id).v] = {kNoEdge, kNoEdge};
  }

  std::vector<Edge> kept;
  std::vector<EdgeId> origin;
  for (EdgeId id = 0; id < g.n_edges(); ++id) {
    const Edge& e = g.edge(id);
    const Vertex t = tail[id], h = e.other(t);
    if (side[t] == 0 && side[h] == 1) {
      kept.push_back({t, h, e.colour});
      origin.push_back(id);
    }
  }
  return {ColouredMultigraph(nv, g.n_colours(), std::move(kept), ColourClassKind::kMatching, std::move(side)),
          std::move(origin)};
}

}  // namespace rainbow
