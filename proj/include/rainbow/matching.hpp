#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "rainbow/graph.hpp"
#include "rainbow/random.hpp"

namespace rainbow {

struct MatchedEdge {
  EdgeId edge;
  Colour colour;
  friend bool operator==(const MatchedEdge&, const MatchedEdge&) = default;
  friend auto operator<=>(const MatchedEdge&, const MatchedEdge&) = default;
};

// Vertex-disjoint, colour-injective set of edges of a host graph. Pairs are
// kept sorted by edge id so equal matchings compare equal.
class RainbowMatching {
 public:
  RainbowMatching() = default;
  explicit RainbowMatching(std::vector<MatchedEdge> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
  }

  static RainbowMatching from_edges(const ColouredMultigraph& g, std::span<const EdgeId> ids) {
    std::vector<MatchedEdge> pairs;
    pairs.reserve(ids.size());
    for (EdgeId id : ids) pairs.push_back({id, g.edge(id).colour});
    return RainbowMatching(std::move(pairs));
  }

  const std::vector<MatchedEdge>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  void add(MatchedEdge p) { pairs_.insert(std::upper_bound(pairs_.begin(), pairs_.end(), p), p); }

  // Maps edge ids through `parent` (e.g. from a restriction to its host).
  RainbowMatching lifted(std::span<const EdgeId> parent) const {
    std::vector<MatchedEdge> out;
    out.reserve(pairs_.size());
    for (const MatchedEdge& p : pairs_) out.push_back({parent[p.edge], p.colour});
    return RainbowMatching(std::move(out));
  }

  RainbowMatching merged(const RainbowMatching& other) const {
    std::vector<MatchedEdge> out = pairs_;
    out.insert(out.end(), other.pairs_.begin(), other.pairs_.end());
    return RainbowMatching(std::move(out));
  }

  std::vector<Colour> colours() const {
    std::vector<Colour> out;
    for (const MatchedEdge& p : pairs_) out.push_back(p.colour);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  friend bool operator==(const RainbowMatching&, const RainbowMatching&) = default;

 private:
  std::vector<MatchedEdge> pairs_;
};

enum class MatchingFault { kNone, kMissingEdge, kColourMismatch, kSharedVertex, kSharedColour };

struct MatchingCheck {
  bool ok = true;
  MatchingFault fault = MatchingFault::kNone;
  // Indices into the matching's pair list; `second` is unset for edge faults.
  std::size_t first = 0;
  std::optional<std::size_t> second;
  std::string detail;

  explicit operator bool() const { return ok; }
};

namespace detail {

inline MatchingCheck check_matching(const ColouredMultigraph& g, const RainbowMatching& m,
                                    bool require_rainbow) {
  MatchingCheck out;
  const auto& pairs = m.pairs();
  std::vector<std::size_t> owner_v(g.n_vertices(), SIZE_MAX);
  std::vector<std::size_t> owner_c(g.n_colours(), SIZE_MAX);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const MatchedEdge& p = pairs[i];
    if (p.edge >= g.n_edges()) {
      return {false, MatchingFault::kMissingEdge, i, std::nullopt,
              "edge " + std::to_string(p.edge) + " does not exist"};
    }
    const Edge& e = g.edge(p.edge);
    if (e.colour != p.colour) {
      return {false, MatchingFault::kColourMismatch, i, std::nullopt,
              "edge " + std::to_string(p.edge) + " has colour " + std::to_string(e.colour)};
    }
    for (Vertex x : {e.u, e.v}) {
      if (owner_v[x] != SIZE_MAX) {
        return {false, MatchingFault::kSharedVertex, owner_v[x], i,
                "shared vertex " + std::to_string(x)};
      }
      owner_v[x] = i;
    }
    if (require_rainbow) {
      if (owner_c[e.colour] != SIZE_MAX) {
        return {false, MatchingFault::kSharedColour, owner_c[e.colour], i,
                "shared colour " + std::to_string(e.colour)};
      }
      owner_c[e.colour] = i;
    }
  }
  return out;
}

}  // namespace detail

inline MatchingCheck is_rainbow_matching(const ColouredMultigraph& g, const RainbowMatching& m) {
  return detail::check_matching(g, m, true);
}

// Vertex-disjointness and edge existence only.
inline MatchingCheck is_matching(const ColouredMultigraph& g, std::span<const EdgeId> ids) {
  return detail::check_matching(g, RainbowMatching::from_edges(g, ids), false);
}

// Colours of g not used by m, ascending (the set C0).
inline std::vector<Colour> missing_colours(const ColouredMultigraph& g, const RainbowMatching& m) {
  std::vector<bool> used(g.n_colours(), false);
  for (const MatchedEdge& p : m.pairs()) used[p.colour] = true;
  std::vector<Colour> out;
  for (Colour c = 0; c < g.n_colours(); ++c) {
    if (!used[c]) out.push_back(c);
  }
  return out;
}

// Random vertex partition (S, V \ S) with S drawn independently at rate p.
struct SampleSplit {
  std::vector<Vertex> sample;
  std::vector<Vertex> rest;
  double p = 0.0;
  Seed seed = 0;
};

inline SampleSplit draw_sample(std::size_t n_vertices, double p, Seed seed) {
  SampleSplit split;
  split.p = p;
  split.seed = seed;
  Rng rng = make_rng(seed);
  for (Vertex v = 0; v < n_vertices; ++v) {
    (bernoulli(rng, p) ? split.sample : split.rest).push_back(v);
  }
  return split;
}

// Maximum cardinality of an ordinary (not necessarily rainbow) matching.
inline std::size_t max_matching_size(const ColouredMultigraph& g) {
  if (g.n_edges() == 0) return 0;
  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  BoostGraph bg(g.n_vertices());
  for (const Edge& e : g.edges()) {
    if (!boost::edge(e.u, e.v, bg).second) boost::add_edge(e.u, e.v, bg);
  }
  std::vector<boost::graph_traits<BoostGraph>::vertex_descriptor> mate(g.n_vertices());
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  return boost::matching_size(bg, &mate[0]);
}

}  // namespace rainbow
