#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rainbow/error.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/random.hpp"

namespace rainbow {

struct AugmentConfig {
  // Longest alternating path tried, in edges. Augmenting paths have odd length.
  std::size_t max_depth = 7;
  // Pairs joined by at least this many edges are searched as one colour
  // wildcard and coloured only when the path is applied. 0 disables.
  std::size_t heavy_threshold = 3;
  // Search nodes allowed per depth of one sweep.
  std::size_t node_budget = 200000;
  Seed seed = 0;
};

struct AugmentResult {
  RainbowMatching matching;
  std::size_t improvements = 0;
  // The final, unsuccessful sweep ran out of nodes at some depth.
  bool budget_exhausted = false;
};

namespace detail {

// Searches rainbow alternating paths s - b1 = a1 - b2 = a2 - ... - z between
// uncovered s and z. Non-matching edges need distinct colours taken from the
// missing colours or from matching edges already traversed on the path.
class AlternatingPathSearch {
 public:
  AlternatingPathSearch(const ColouredMultigraph& g, const RainbowMatching& m,
                        const AugmentConfig& cfg)
      : g_(g), cfg_(cfg) {
    mate_edge_.assign(g.n_vertices(), kNoEdge);
    colour_edge_.assign(g.n_colours(), kNoEdge);
    for (const MatchedEdge& p : m.pairs()) {
      const Edge& e = g.edge(p.edge);
      mate_edge_[e.u] = mate_edge_[e.v] = p.edge;
      colour_edge_[p.colour] = p.edge;
    }
    Rng rng = make_rng(cfg.seed);
    std::vector<EdgeId> order(g.n_edges());
    for (EdgeId i = 0; i < order.size(); ++i) order[i] = i;
    shuffle(std::span<EdgeId>(order), rng);
    rank_.resize(g.n_edges());
    for (EdgeId i = 0; i < order.size(); ++i) rank_[order[i]] = i;
    std::vector<Vertex> vorder(g.n_vertices());
    for (Vertex i = 0; i < vorder.size(); ++i) vorder[i] = i;
    shuffle(std::span<Vertex>(vorder), rng);
    vertex_rank_.resize(g.n_vertices());
    for (Vertex i = 0; i < vorder.size(); ++i) vertex_rank_[vorder[i]] = i;

    adj_.resize(g.n_vertices());
    for (Vertex v = 0; v < g.n_vertices(); ++v) {
      auto inc = g.incident(v);
      adj_[v].assign(inc.begin(), inc.end());
      std::sort(adj_[v].begin(), adj_[v].end(), [&](EdgeId a, EdgeId b) {
        Vertex na = g.edge(a).other(v), nb = g.edge(b).other(v);
        return na != nb ? na < nb : rank_[a] < rank_[b];
      });
    }
    on_path_.assign(g.n_vertices(), false);
    used_.assign(g.n_colours(), false);
    released_.assign(g.n_colours(), false);
  }

  std::size_t run() {
    if (cfg_.max_depth < 1) throw Error(ErrorCode::kParameterViolation, "max_depth must be >= 1");
    std::size_t improvements = 0;
    while (true) {
      auto starts = start_vertices();
      bool improved = false;
      exhausted_in_sweep_ = false;
      for (std::size_t depth = 1; depth <= cfg_.max_depth && !improved; depth += 2) {
        nodes_ = 0;
        for (Vertex s : starts) {
          on_path_[s] = true;
          bool found = dfs(s, depth);
          on_path_[s] = false;
          if (found) {
            apply();
            improved = true;
            break;
          }
          if (nodes_ > cfg_.node_budget) break;
        }
        if (nodes_ > cfg_.node_budget) exhausted_in_sweep_ = true;
      }
      if (!improved) break;
      ++improvements;
    }
    return improvements;
  }

  bool exhausted() const { return exhausted_in_sweep_; }

  RainbowMatching matching() const {
    std::vector<MatchedEdge> pairs;
    for (Colour c = 0; c < g_.n_colours(); ++c) {
      if (colour_edge_[c] != kNoEdge) pairs.push_back({colour_edge_[c], c});
    }
    return RainbowMatching(std::move(pairs));
  }

 private:
  struct Step {
    Vertex from;
    Vertex to;
    EdgeId edge;      // kNoEdge while the step is a wildcard
    std::size_t group_begin;
    std::size_t group_end;
  };

  bool colour_open(Colour c) const {
    return !used_[c] && (colour_edge_[c] == kNoEdge || released_[c]);
  }

  // Uncovered vertices with an edge of a missing colour, scarcest colour first.
  std::vector<Vertex> start_vertices() const {
    std::vector<std::pair<std::size_t, Vertex>> keyed;
    for (Vertex v = 0; v < g_.n_vertices(); ++v) {
      if (mate_edge_[v] != kNoEdge) continue;
      std::size_t best = SIZE_MAX;
      for (EdgeId id : g_.incident(v)) {
        Colour c = g_.edge(id).colour;
        if (colour_edge_[c] == kNoEdge) best = std::min(best, g_.colour_edges(c).size());
      }
      if (best != SIZE_MAX) keyed.push_back({best, v});
    }
    std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
      return a.first != b.first ? a.first < b.first : vertex_rank_[a.second] < vertex_rank_[b.second];
    });
    std::vector<Vertex> out;
    for (const auto& [k, v] : keyed) out.push_back(v);
    return out;
  }

  bool dfs(Vertex a, std::size_t remaining) {
    if (++nodes_ > cfg_.node_budget) return false;
    const auto& list = adj_[a];
    for (std::size_t i = 0; i < list.size();) {
      const Vertex b = g_.edge(list[i]).other(a);
      std::size_t j = i;
      while (j < list.size() && g_.edge(list[j]).other(a) == b) ++j;
      const std::size_t begin = i, end = j;
      i = j;
      if (on_path_[b]) continue;
      const bool b_free = mate_edge_[b] == kNoEdge;
      if (!b_free && remaining < 3) continue;
      const bool heavy = cfg_.heavy_threshold > 0 && end - begin >= cfg_.heavy_threshold;
      if (heavy) {
        steps_.push_back({a, b, kNoEdge, begin, end});
        if (extend(b, b_free, remaining)) return true;
        steps_.pop_back();
      } else {
        for (std::size_t k = begin; k < end; ++k) {
          const EdgeId id = list[k];
          const Colour c = g_.edge(id).colour;
          if (!colour_open(c)) continue;
          used_[c] = true;
          steps_.push_back({a, b, id, begin, end});
          if (extend(b, b_free, remaining)) return true;
          steps_.pop_back();
          used_[c] = false;
        }
      }
      if (nodes_ > cfg_.node_budget) return false;
    }
    return false;
  }

  bool extend(Vertex b, bool b_free, std::size_t remaining) {
    if (b_free) return resolve_wildcards();
    const EdgeId me = mate_edge_[b];
    const Vertex b2 = g_.edge(me).other(b);
    const Colour mc = g_.edge(me).colour;
    on_path_[b] = on_path_[b2] = true;
    released_[mc] = true;
    matched_.push_back(me);
    if (dfs(b2, remaining - 2)) return true;
    matched_.pop_back();
    released_[mc] = false;
    on_path_[b] = on_path_[b2] = false;
    return false;
  }

  // Colours the wildcard steps from the colours still open, scarcest step first.
  bool resolve_wildcards() {
    std::vector<std::size_t> wild;
    for (std::size_t s = 0; s < steps_.size(); ++s) {
      if (steps_[s].edge == kNoEdge) wild.push_back(s);
    }
    if (wild.empty()) return true;
    auto options = [&](std::size_t s) {
      std::size_t count = 0;
      const auto& list = adj_[steps_[s].from];
      for (std::size_t k = steps_[s].group_begin; k < steps_[s].group_end; ++k) {
        if (colour_open(g_.edge(list[k]).colour)) ++count;
      }
      return count;
    };
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t s : wild) order.push_back({options(s), s});
    std::sort(order.begin(), order.end());
    std::vector<Colour> taken;
    bool ok = true;
    for (const auto& [cnt, s] : order) {
      const auto& list = adj_[steps_[s].from];
      EdgeId chosen = kNoEdge;
      for (std::size_t k = steps_[s].group_begin; k < steps_[s].group_end; ++k) {
        const Colour c = g_.edge(list[k]).colour;
        if (colour_open(c)) {
          chosen = list[k];
          break;
        }
      }
      if (chosen == kNoEdge) {
        ok = false;
        break;
      }
      steps_[s].edge = chosen;
      used_[g_.edge(chosen).colour] = true;
      taken.push_back(g_.edge(chosen).colour);
    }
    if (ok) return true;
    for (Colour c : taken) used_[c] = false;
    for (std::size_t s : wild) steps_[s].edge = kNoEdge;
    return false;
  }

  void apply() {
    for (EdgeId me : matched_) {
      const Edge& e = g_.edge(me);
      mate_edge_[e.u] = mate_edge_[e.v] = kNoEdge;
      colour_edge_[e.colour] = kNoEdge;
    }
    for (const Step& s : steps_) {
      const Edge& e = g_.edge(s.edge);
      mate_edge_[e.u] = mate_edge_[e.v] = s.edge;
      colour_edge_[e.colour] = s.edge;
    }
    std::fill(on_path_.begin(), on_path_.end(), false);
    std::fill(used_.begin(), used_.end(), false);
    std::fill(released_.begin(), released_.end(), false);
    steps_.clear();
    matched_.clear();
  }

  const ColouredMultigraph& g_;
  AugmentConfig cfg_;
  std::vector<EdgeId> mate_edge_;
  std::vector<EdgeId> colour_edge_;
  std::vector<EdgeId> rank_;
  std::vector<Vertex> vertex_rank_;
  std::vector<std::vector<EdgeId>> adj_;
  std::vector<bool> on_path_;
  std::vector<bool> used_;
  std::vector<bool> released_;
  std::vector<Step> steps_;
  std::vector<EdgeId> matched_;
  std::size_t nodes_ = 0;
  bool exhausted_in_sweep_ = false;
};

}  // namespace detail

// Repeatedly applies rainbow augmenting paths of length <= max_depth
// (iterative deepening 1, 3, 5, ...) until a full sweep finds none.
// Never shrinks the matching; the same (graph, matching, cfg) always gives
// the same result.
inline AugmentResult augment(const ColouredMultigraph& g, const RainbowMatching& m,
                             const AugmentConfig& cfg = {}) {
  detail::AlternatingPathSearch search(g, m, cfg);
  AugmentResult out;
  out.improvements = search.run();
  out.matching = search.matching();
  out.budget_exhausted = search.exhausted();
  return out;
}

}  // namespace rainbow
