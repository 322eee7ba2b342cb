#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/random.hpp"

namespace rainbow {

enum class GreedyOrder { kInput, kRandom, kRareColourFirst };

namespace detail {

// Rare-colour-first greedy over a subset of colours. An edge is alive while
// both endpoints are free and its colour is still wanted; each step takes the
// wanted colour with the fewest alive edges and, within it, the alive edge
// that kills the fewest other alive edges.
class RareColourGreedy {
 public:
  RareColourGreedy(const ColouredMultigraph& g, Seed seed) : g_(g) {
    Rng rng = make_rng(seed);
    rank_.resize(g.n_edges());
    std::vector<EdgeId> order(g.n_edges());
    for (EdgeId i = 0; i < order.size(); ++i) order[i] = i;
    shuffle(std::span<EdgeId>(order), rng);
    for (EdgeId i = 0; i < order.size(); ++i) rank_[order[i]] = i;
    colour_rank_.resize(g.n_colours());
    std::vector<Colour> corder(g.n_colours());
    for (Colour c = 0; c < corder.size(); ++c) corder[c] = c;
    shuffle(std::span<Colour>(corder), rng);
    for (Colour i = 0; i < corder.size(); ++i) colour_rank_[corder[i]] = i;
  }

  // Places as many of `wanted` as possible on vertices not in `blocked`.
  // Returns the placed edges and the first colour that could not be placed.
  std::pair<std::vector<MatchedEdge>, std::optional<Colour>> run(
      std::span<const Colour> wanted, const std::vector<bool>* blocked) {
    const std::size_t nv = g_.n_vertices();
    std::vector<bool> free(nv, true);
    if (blocked) {
      for (Vertex x = 0; x < nv; ++x) free[x] = !(*blocked)[x];
    }
    std::vector<bool> want(g_.n_colours(), false);
    for (Colour c : wanted) want[c] = true;
    alive_.assign(g_.n_edges(), false);
    avail_.assign(g_.n_colours(), 0);
    deg_.assign(nv, 0);
    for (Colour c : wanted) {
      for (EdgeId id : g_.colour_edges(c)) {
        const Edge& e = g_.edge(id);
        if (free[e.u] && free[e.v]) {
          alive_[id] = true;
          ++avail_[c];
          ++deg_[e.u];
          ++deg_[e.v];
        }
      }
    }
    std::vector<Colour> pending(wanted.begin(), wanted.end());
    std::sort(pending.begin(), pending.end());
    pending.erase(std::unique(pending.begin(), pending.end()), pending.end());

    std::vector<MatchedEdge> placed;
    std::optional<Colour> failed;
    while (!pending.empty()) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < pending.size(); ++i) {
        Colour a = pending[i], b = pending[best];
        if (avail_[a] < avail_[b] || (avail_[a] == avail_[b] && colour_rank_[a] < colour_rank_[b])) {
          best = i;
        }
      }
      const Colour c = pending[best];
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
      if (avail_[c] == 0) {
        if (!failed) failed = c;
        continue;
      }
      EdgeId pick = kNoEdge;
      std::size_t pick_cost = std::numeric_limits<std::size_t>::max();
      for (EdgeId id : g_.colour_edges(c)) {
        if (!alive_[id]) continue;
        const Edge& e = g_.edge(id);
        std::size_t cost = deg_[e.u] + deg_[e.v];
        if (cost < pick_cost || (cost == pick_cost && rank_[id] < rank_[pick])) {
          pick = id;
          pick_cost = cost;
        }
      }
      const Edge& e = g_.edge(pick);
      placed.push_back({pick, c});
      for (EdgeId id : g_.colour_edges(c)) kill(id);
      for (Vertex x : {e.u, e.v}) {
        free[x] = false;
        for (EdgeId id : g_.incident(x)) kill(id);
      }
    }
    return {std::move(placed), failed};
  }

 private:
  void kill(EdgeId id) {
    if (!alive_[id]) return;
    alive_[id] = false;
    const Edge& e = g_.edge(id);
    --avail_[e.colour];
    --deg_[e.u];
    --deg_[e.v];
  }

  const ColouredMultigraph& g_;
  std::vector<EdgeId> rank_;
  std::vector<Colour> colour_rank_;
  std::vector<bool> alive_;
  std::vector<std::size_t> avail_;
  std::vector<std::size_t> deg_;
};

inline std::vector<Colour> all_colours(const ColouredMultigraph& g) {
  std::vector<Colour> out(g.n_colours());
  for (Colour c = 0; c < out.size(); ++c) out[c] = c;
  return out;
}

}  // namespace detail

// Maximal rainbow matching: afterwards no edge has both endpoints uncovered
// and a colour outside the matching.
inline RainbowMatching greedy_maximal(const ColouredMultigraph& g,
                                      GreedyOrder order = GreedyOrder::kRareColourFirst,
                                      Seed seed = 0) {
  if (order == GreedyOrder::kRareColourFirst) {
    detail::RareColourGreedy engine(g, seed);
    auto colours = detail::all_colours(g);
    return RainbowMatching(engine.run(colours, nullptr).first);
  }
  std::vector<EdgeId> ids(g.n_edges());
  for (EdgeId i = 0; i < ids.size(); ++i) ids[i] = i;
  if (order == GreedyOrder::kRandom) {
    Rng rng = make_rng(seed);
    shuffle(std::span<EdgeId>(ids), rng);
  }
  std::vector<bool> covered(g.n_vertices(), false), used(g.n_colours(), false);
  std::vector<MatchedEdge> pairs;
  for (EdgeId id : ids) {
    const Edge& e = g.edge(id);
    if (covered[e.u] || covered[e.v] || used[e.colour]) continue;
    covered[e.u] = covered[e.v] = used[e.colour] = true;
    pairs.push_back({id, e.colour});
  }
  return RainbowMatching(std::move(pairs));
}

struct Completion {
  RainbowMatching matching;
  // First colour that found no edge disjoint from the earlier picks.
  std::optional<Colour> failed_colour;

  bool ok() const { return !failed_colour.has_value(); }
};

// Places every colour of `missing` on its own edge, scarcest colour first,
// avoiding `blocked` vertices. Keeps placing after a failure so the partial
// result is as large as the greedy allows.
inline Completion greedy_complete(const ColouredMultigraph& g, std::span<const Colour> missing,
                                  Seed seed = 0, const std::vector<bool>* blocked = nullptr) {
  detail::RareColourGreedy engine(g, seed);
  auto [placed, failed] = engine.run(missing, blocked);
  return {RainbowMatching(std::move(placed)), failed};
}

// Extends `m` to a maximal rainbow matching of g.
inline RainbowMatching greedy_extend(const ColouredMultigraph& g, const RainbowMatching& m,
                                     Seed seed = 0) {
  std::vector<bool> blocked(g.n_vertices(), false);
  for (const MatchedEdge& p : m.pairs()) {
    blocked[g.edge(p.edge).u] = true;
    blocked[g.edge(p.edge).v] = true;
  }
  auto missing = missing_colours(g, m);
  return m.merged(greedy_complete(g, missing, seed, &blocked).matching);
}

}  // namespace rainbow
