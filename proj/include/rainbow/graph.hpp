#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rainbow/error.hpp"

namespace rainbow {

using Vertex = std::uint32_t;
using Colour = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr Vertex kNoVertex = ~Vertex{0};
inline constexpr EdgeId kNoEdge = ~EdgeId{0};

struct Edge {
  Vertex u;
  Vertex v;
  Colour colour;

  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool touches(Vertex x) const { return x == u || x == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Structural promise a graph makes about each of its colour classes.
enum class ColourClassKind { kMatching, kCliqueUnion, kTwoFactor, kArbitrary };

inline std::string_view to_string(ColourClassKind kind) {
  switch (kind) {
    case ColourClassKind::kMatching: return "matching";
    case ColourClassKind::kCliqueUnion: return "clique_union";
    case ColourClassKind::kTwoFactor: return "two_factor";
    case ColourClassKind::kArbitrary: return "arbitrary";
  }
  return "arbitrary";
}

inline std::optional<ColourClassKind> parse_kind(std::string_view s) {
  if (s == "matching") return ColourClassKind::kMatching;
  if (s == "clique_union") return ColourClassKind::kCliqueUnion;
  if (s == "two_factor") return ColourClassKind::kTwoFactor;
  if (s == "arbitrary") return ColourClassKind::kArbitrary;
  return std::nullopt;
}

// Edge-coloured multigraph on dense vertex and colour ids. Edges are
// identified by their position in the edge list, so parallel edges (of equal
// or different colours) are distinct objects. Immutable after construction.
class ColouredMultigraph {
 public:
  ColouredMultigraph() = default;

  ColouredMultigraph(std::size_t n_vertices, std::size_t n_colours,
                     std::vector<Edge> edges,
                     ColourClassKind kind = ColourClassKind::kArbitrary,
                     std::optional<std::vector<std::uint8_t>> sides = std::nullopt)
      : n_vertices_(n_vertices),
        n_colours_(n_colours),
        kind_(kind),
        edges_(std::move(edges)),
        sides_(std::move(sides)) {
    for (const Edge& e : edges_) {
      if (e.u >= n_vertices_ || e.v >= n_vertices_) {
        throw Error(ErrorCode::kParameterViolation, "edge endpoint out of range");
      }
      if (e.u == e.v) throw Error(ErrorCode::kParameterViolation, "loops are not allowed");
      if (e.colour >= n_colours_) {
        throw Error(ErrorCode::kParameterViolation, "colour out of range");
      }
    }
    if (sides_ && sides_->size() != n_vertices_) {
      throw Error(ErrorCode::kParameterViolation, "side tag size mismatch");
    }
    rebuild_indices();
  }

  std::size_t n_vertices() const { return n_vertices_; }
  std::size_t n_colours() const { return n_colours_; }
  std::size_t n_edges() const { return edges_.size(); }
  ColourClassKind kind() const { return kind_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }
  const std::optional<std::vector<std::uint8_t>>& sides() const { return sides_; }

  std::span<const EdgeId> incident(Vertex v) const {
    return {incidence_.data() + vertex_offset_[v],
            incidence_.data() + vertex_offset_[v + 1]};
  }
  std::span<const EdgeId> colour_edges(Colour c) const {
    return {by_colour_.data() + colour_offset_[c],
            by_colour_.data() + colour_offset_[c + 1]};
  }
  std::size_t degree(Vertex v) const { return vertex_offset_[v + 1] - vertex_offset_[v]; }

  // Number of edges (any colour) joining u and v.
  std::size_t multiplicity(Vertex u, Vertex v) const {
    auto key = pair_key(u, v);
    auto [lo, hi] = std::equal_range(pair_keys_.begin(), pair_keys_.end(), key);
    return static_cast<std::size_t>(hi - lo);
  }

  std::size_t max_multiplicity() const { return max_multiplicity_; }

  ColouredMultigraph with_kind(ColourClassKind kind) const {
    return ColouredMultigraph(n_vertices_, n_colours_, edges_, kind, sides_);
  }

  friend bool operator==(const ColouredMultigraph& a, const ColouredMultigraph& b) {
    return a.n_vertices_ == b.n_vertices_ && a.n_colours_ == b.n_colours_ &&
           a.kind_ == b.kind_ && a.edges_ == b.edges_ && a.sides_ == b.sides_;
  }

 private:
  std::uint64_t pair_key(Vertex u, Vertex v) const {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  void rebuild_indices() {
    vertex_offset_.assign(n_vertices_ + 1, 0);
    colour_offset_.assign(n_colours_ + 1, 0);
    for (const Edge& e : edges_) {
      ++vertex_offset_[e.u + 1];
      ++vertex_offset_[e.v + 1];
      ++colour_offset_[e.colour + 1];
    }
    std::partial_sum(vertex_offset_.begin(), vertex_offset_.end(), vertex_offset_.begin());
    std::partial_sum(colour_offset_.begin(), colour_offset_.end(), colour_offset_.begin());
    incidence_.resize(2 * edges_.size());
    by_colour_.resize(edges_.size());
    std::vector<std::size_t> vfill(vertex_offset_.begin(), vertex_offset_.end() - 1);
    std::vector<std::size_t> cfill(colour_offset_.begin(), colour_offset_.end() - 1);
    pair_keys_.clear();
    pair_keys_.reserve(edges_.size());
    for (EdgeId id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      incidence_[vfill[e.u]++] = id;
      incidence_[vfill[e.v]++] = id;
      by_colour_[cfill[e.colour]++] = id;
      pair_keys_.push_back(pair_key(e.u, e.v));
    }
    std::sort(pair_keys_.begin(), pair_keys_.end());
    max_multiplicity_ = 0;
    for (std::size_t i = 0; i < pair_keys_.size();) {
      std::size_t j = i;
      while (j < pair_keys_.size() && pair_keys_[j] == pair_keys_[i]) ++j;
      max_multiplicity_ = std::max(max_multiplicity_, j - i);
      i = j;
    }
  }

  std::size_t n_vertices_ = 0;
  std::size_t n_colours_ = 0;
  ColourClassKind kind_ = ColourClassKind::kArbitrary;
  std::vector<Edge> edges_;
  std::optional<std::vector<std::uint8_t>> sides_;

  std::vector<std::size_t> vertex_offset_{0};
  std::vector<EdgeId> incidence_;
  std::vector<std::size_t> colour_offset_{0};
  std::vector<EdgeId> by_colour_;
  std::vector<std::uint64_t> pair_keys_;
  std::size_t max_multiplicity_ = 0;
};

// Induced sub-multigraph together with the parent id of every kept edge.
struct Restriction {
  ColouredMultigraph graph;
  std::vector<EdgeId> parent_edge;
};

inline std::vector<bool> vertex_mask(std::size_t n_vertices, std::span<const Vertex> vertices) {
  std::vector<bool> mask(n_vertices, false);
  for (Vertex v : vertices) {
    if (v >= n_vertices) throw Error(ErrorCode::kParameterViolation, "vertex out of range");
    mask[v] = true;
  }
  return mask;
}

// Keeps vertex ids, colour ids and edge order; drops every edge with an
// endpoint outside the mask. Two-factor classes do not survive restriction.
inline Restriction restrict_mapped(const ColouredMultigraph& g, const std::vector<bool>& keep) {
  std::vector<Edge> edges;
  std::vector<EdgeId> parent;
  for (EdgeId id = 0; id < g.n_edges(); ++id) {
    const Edge& e = g.edge(id);
    if (keep[e.u] && keep[e.v]) {
      edges.push_back(e);
      parent.push_back(id);
    }
  }
  ColourClassKind kind = g.kind() == ColourClassKind::kTwoFactor ? ColourClassKind::kArbitrary
                                                                  : g.kind();
  return {ColouredMultigraph(g.n_vertices(), g.n_colours(), std::move(edges), kind, g.sides()),
          std::move(parent)};
}

inline ColouredMultigraph restrict(const ColouredMultigraph& g, std::span<const Vertex> vertices) {
  return restrict_mapped(g, vertex_mask(g.n_vertices(), vertices)).graph;
}

}  // namespace rainbow
