#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "rainbow/augment.hpp"
#include "rainbow/error.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/greedy.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/random.hpp"
#include "rainbow/report.hpp"
#include "rainbow/validate.hpp"

namespace rainbow {

// 3-uniform hypergraph on vertex elements [0, n_vertices) and colour
// elements [n_vertices, n_vertices + n_colours); one triple per edge.
struct AuxHypergraph {
  struct Triple {
    Vertex x;
    Vertex y;
    Colour c;
    EdgeId edge;  // edge id in the host graph
  };

  std::size_t n_vertices = 0;
  std::size_t n_colours = 0;
  std::vector<Triple> triples;
  // Triples containing each element.
  std::vector<std::vector<std::uint32_t>> incidence;
  std::size_t max_codegree = 0;

  std::size_t n_elements() const { return n_vertices + n_colours; }
  std::size_t colour_element(Colour c) const { return n_vertices + c; }
  std::size_t degree(std::size_t element) const { return incidence[element].size(); }
};

// Triples (x, y, c) for every colour-c edge xy with both ends in `rest`.
// Throws HypothesisViolated if some pair of elements lies in more than two
// triples, which 2-factor colour classes on a simple graph rule out.
inline AuxHypergraph build_aux_hypergraph(const ColouredMultigraph& g, std::span<const Vertex> rest) {
  AuxHypergraph h;
  h.n_vertices = g.n_vertices();
  h.n_colours = g.n_colours();
  h.incidence.resize(h.n_elements());
  const std::vector<bool> keep = vertex_mask(g.n_vertices(), rest);
  for (EdgeId id = 0; id < g.n_edges(); ++id) {
    const Edge& e = g.edge(id);
    if (!keep[e.u] || !keep[e.v]) continue;
    const auto t = static_cast<std::uint32_t>(h.triples.size());
    h.triples.push_back({e.u, e.v, e.colour, id});
    h.incidence[e.u].push_back(t);
    h.incidence[e.v].push_back(t);
    h.incidence[h.colour_element(e.colour)].push_back(t);
  }
  // Vertex-vertex codegree is the pair multiplicity; vertex-colour codegree
  // is the colour degree at the vertex.
  std::vector<std::size_t> count(g.n_colours(), 0);
  for (Vertex x = 0; x < g.n_vertices(); ++x) {
    if (!keep[x]) continue;
    for (std::uint32_t t : h.incidence[x]) {
      const auto& tr = h.triples[t];
      h.max_codegree = std::max(h.max_codegree, ++count[tr.c]);
      const Vertex other = tr.x == x ? tr.y : tr.x;
      h.max_codegree = std::max(h.max_codegree, g.multiplicity(x, other));
    }
    for (std::uint32_t t : h.incidence[x]) count[h.triples[t].c] = 0;
  }
  if (h.max_codegree > 2) {
    throw Error(ErrorCode::kHypothesisViolated,
                "auxiliary hypergraph has co-degree " + std::to_string(h.max_codegree) + " > 2");
  }
  return h;
}

struct NibbleConfig {
  // 0 selects ceil(ln(number of elements)).
  std::size_t rounds = 0;
  double round_fraction = 0.1;
  Seed seed = 0;
};

// Semi-random nibble: each round selects every surviving triple with
// probability round_fraction, keeps the selected triples that beat all
// selected triples they intersect in a random priority order, and deletes
// covered elements. A final greedy sweep in priority order matches what is
// left. Returns pairwise disjoint triple indices in ascending order.
inline std::vector<std::size_t> nibble_match(const AuxHypergraph& h, const NibbleConfig& cfg = {}) {
  if (!(cfg.round_fraction > 0.0 && cfg.round_fraction < 1.0)) {
    throw Error(ErrorCode::kParameterViolation, "round_fraction must lie in (0, 1)");
  }
  const std::size_t nt = h.triples.size();
  std::vector<std::size_t> out;
  if (nt == 0) return out;
  const std::size_t rounds =
      cfg.rounds > 0 ? cfg.rounds
                     : static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(h.n_elements()))));
  Rng rng = make_rng(cfg.seed);
  std::vector<std::uint32_t> order(nt);
  for (std::uint32_t i = 0; i < nt; ++i) order[i] = i;
  shuffle(std::span<std::uint32_t>(order), rng);
  std::vector<std::uint32_t> priority(nt);
  for (std::uint32_t i = 0; i < nt; ++i) priority[order[i]] = i;

  std::vector<bool> covered(h.n_elements(), false);
  auto elements = [&](std::size_t t) {
    const auto& tr = h.triples[t];
    return std::array<std::size_t, 3>{tr.x, tr.y, h.colour_element(tr.c)};
  };
  auto alive = [&](std::size_t t) {
    for (std::size_t e : elements(t)) {
      if (covered[e]) return false;
    }
    return true;
  };

  std::vector<bool> selected(nt, false);
  std::vector<std::uint32_t> chosen;
  for (std::size_t r = 0; r < rounds; ++r) {
    chosen.clear();
    for (std::uint32_t t = 0; t < nt; ++t) {
      if (alive(t) && bernoulli(rng, cfg.round_fraction)) {
        selected[t] = true;
        chosen.push_back(t);
      }
    }
    std::vector<std::uint32_t> winners;
    for (std::uint32_t t : chosen) {
      bool wins = true;
      for (std::size_t e : elements(t)) {
        for (std::uint32_t o : h.incidence[e]) {
          if (o != t && selected[o] && priority[o] < priority[t]) wins = false;
        }
      }
      if (wins) winners.push_back(t);
    }
    for (std::uint32_t t : chosen) selected[t] = false;
    for (std::uint32_t t : winners) {
      out.push_back(t);
      for (std::size_t e : elements(t)) covered[e] = true;
    }
  }
  for (std::uint32_t t : order) {
    if (!alive(t)) continue;
    out.push_back(t);
    for (std::size_t e : elements(t)) covered[e] = true;
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct AlspachConfig {
  Seed seed = 0;
  std::size_t max_resamples = 5;
  NibbleConfig nibble;
  // Runs the alternating-path augmenter on G - S after the nibble.
  bool polish = false;
  AugmentConfig augment;
};

// Full rainbow matching search on a 2-factorized graph. Dense instances
// (n_vertices >= 4d) are solved greedily; otherwise S is drawn at rate
// 1 - 2d/n_vertices, G - S is matched through the auxiliary hypergraph,
// and the missing colours are placed inside S.
inline SolveReport alspach_solve(const ColouredMultigraph& g, const AlspachConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const ValidationReport vr = validate(g, ColourClassKind::kTwoFactor);
  if (!vr.ok()) {
    throw Error(ErrorCode::kNotTwoFactorized,
                "colour " + std::to_string(vr.violations.front().colour) + ": " + vr.violations.front().reason);
  }
  const std::size_t d = g.n_colours();
  const std::size_t nv = g.n_vertices();
  if (nv <= 2 * d) {
    throw Error(ErrorCode::kParameterViolation, "need n_vertices > 2d");
  }
  SolveReport r;
  r.seed = cfg.seed;
  if (nv >= 4 * d) {
    const Seed s = derive_seed(cfg.seed, {0});
    r.seeds_used.push_back(s);
    r.matching = greedy_maximal(g, GreedyOrder::kRareColourFirst, s);
    r.phases.push_back({"greedy", 0, r.matching.size()});
  } else {
    const double p = 1.0 - 2.0 * static_cast<double>(d) / static_cast<double>(nv);
    bool have = false;
    for (std::size_t attempt = 0; attempt <= cfg.max_resamples; ++attempt) {
      const Seed s = derive_seed(cfg.seed, {attempt});
      r.seeds_used.push_back(s);
      const SampleSplit split = draw_sample(nv, p, derive_seed(s, {0}));
      const AuxHypergraph h = build_aux_hypergraph(g, split.rest);
      NibbleConfig nc = cfg.nibble;
      nc.seed = derive_seed(s, {1});
      std::vector<MatchedEdge> pairs;
      for (std::size_t t : nibble_match(h, nc)) pairs.push_back({h.triples[t].edge, h.triples[t].c});
      RainbowMatching weak(std::move(pairs));
      const std::size_t nibble_size = weak.size();
      bool exhausted = false;
      if (cfg.polish) {
        const Restriction rest = restrict_mapped(g, vertex_mask(nv, split.rest));
        std::vector<MatchedEdge> local;
        for (const MatchedEdge& p2 : weak.pairs()) {
          auto it = std::lower_bound(rest.parent_edge.begin(), rest.parent_edge.end(), p2.edge);
          local.push_back({static_cast<EdgeId>(it - rest.parent_edge.begin()), p2.colour});
        }
        AugmentConfig ac = cfg.augment;
        ac.seed = derive_seed(s, {2});
        AugmentResult ar = augment(rest.graph, RainbowMatching(std::move(local)), ac);
        exhausted = ar.budget_exhausted;
        weak = ar.matching.lifted(rest.parent_edge);
      }
      const auto missing = missing_colours(g, weak);
      const Restriction sample = restrict_mapped(g, vertex_mask(nv, split.sample));
      const Completion c = greedy_complete(sample.graph, missing, derive_seed(s, {3}));
      RainbowMatching combined = weak.merged(c.matching.lifted(sample.parent_edge));
      if (!have || combined.size() > r.matching.size()) {
        have = true;
        r.matching = std::move(combined);
        r.budget_exhausted = exhausted;
        r.phases.clear();
        r.phases.push_back({"nibble", 0, nibble_size});
        if (cfg.polish) r.phases.push_back({"augment", nibble_size, weak.size()});
        r.phases.push_back({"complete", weak.size(), r.matching.size()});
      }
      r.resamples_used = attempt;
      if (c.ok()) break;
    }
  }
  finalize(r, g);
  r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return r;
}

}  // namespace rainbow
