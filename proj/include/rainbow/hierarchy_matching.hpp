#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/error.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/numeric.hpp"
#include "rainbow/validate.hpp"

namespace rainbow {

// Hypothesis of the expander: clique-union classes, each spanning at least
// 2 * target + 2 * m vertices where m is the largest pair multiplicity.
inline void check_expander_hypothesis(const ColouredMultigraph& g, std::size_t target) {
  const ValidationReport vr = validate(g, ColourClassKind::kCliqueUnion);
  if (!vr.ok()) {
    throw Error(ErrorCode::kHypothesisViolated, "colour " + std::to_string(vr.violations.front().colour) +
                                                    " is not a clique union: " + vr.violations.front().reason);
  }
  const std::size_t need = 2 * target + 2 * g.max_multiplicity();
  for (const CliqueDecomposition& cd : vr.decompositions) {
    if (cd.spanned_vertices < need) {
      throw Error(ErrorCode::kHypothesisViolated,
                  "colour " + std::to_string(cd.colour) + " spans " + std::to_string(cd.spanned_vertices) +
                      " vertices, need " + std::to_string(need));
    }
  }
}

namespace detail {

// Grows a plain matching one edge at a time. Each round builds levels from
// the uncovered vertices U_0: a matching edge joins level i once one of its
// endpoints x has more than m edges into the earlier levels; its other
// endpoint then joins U. Two distinct earlier-level neighbours of x are kept
// as witnesses. The first edge with both ends in U is freed by rematching
// along witnesses and added.
class HierarchyExpander {
 public:
  HierarchyExpander(const ColouredMultigraph& g, std::size_t target)
      : g_(g), target_(target), m_(g.max_multiplicity()), mate_(g.n_vertices(), kNoEdge) {}

  std::vector<EdgeId> run() {
    for (EdgeId id = 0; id < g_.n_edges(); ++id) try_add(id);
    const std::size_t n = std::max<std::size_t>(g_.n_colours(), 1);
    const std::size_t cap = std::max<std::size_t>(n * n * std::max<std::size_t>(m_, 1), 1);
    std::size_t size = matched_edges().size();
    while (size < target_) {
      grow_once(cap);
      for (EdgeId id = 0; id < g_.n_edges(); ++id) try_add(id);
      const std::size_t next = matched_edges().size();
      if (next <= size) throw Error(ErrorCode::kAugmentationStalled, "matching did not grow");
      size = next;
    }
    return matched_edges();
  }

  std::size_t levels_built() const { return levels_built_; }

 private:
  struct Witness {
    Vertex vertex;
    EdgeId edge;
  };

  std::vector<EdgeId> matched_edges() const {
    std::vector<EdgeId> out;
    for (Vertex v = 0; v < g_.n_vertices(); ++v) {
      if (mate_[v] != kNoEdge && g_.edge(mate_[v]).u == v) out.push_back(mate_[v]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void try_add(EdgeId id) {
    const Edge& e = g_.edge(id);
    if (mate_[e.u] == kNoEdge && mate_[e.v] == kNoEdge) mate_[e.u] = mate_[e.v] = id;
  }

  Vertex mate_vertex(Vertex v) const { return g_.edge(orig_mate_[v]).other(v); }

  void grow_once(std::size_t cap) {
    const std::size_t nv = g_.n_vertices();
    orig_mate_ = mate_;
    level_.assign(nv, -1);
    into_u_.assign(nv, 0);
    witness_.assign(nv, {});
    in_hierarchy_.assign(nv, false);
    std::optional<std::array<Vertex, 2>> found;

    auto join = [&](Vertex w, int lvl) {
      level_[w] = lvl;
      for (EdgeId id : g_.incident(w)) {
        const Vertex z = g_.edge(id).other(w);
        if (level_[z] >= 0) {
          if (!found) found = std::array<Vertex, 2>{w, z};
          continue;
        }
        if (orig_mate_[z] == kNoEdge || in_hierarchy_[z]) continue;
        ++into_u_[z];
        auto& wit = witness_[z];
        if (wit.size() < 2 && std::none_of(wit.begin(), wit.end(), [&](const Witness& x) { return x.vertex == w; })) {
          wit.push_back({w, id});
        }
      }
    };

    for (Vertex v = 0; v < nv; ++v) {
      if (mate_[v] == kNoEdge) join(v, 0);
    }
    int lvl = 0;
    while (!found) {
      ++lvl;
      if (++levels_built_ > cap) throw Error(ErrorCode::kAugmentationStalled, "level cap reached");
      std::vector<Vertex> heads;
      for (Vertex x = 0; x < nv; ++x) {
        if (orig_mate_[x] == kNoEdge || in_hierarchy_[x]) continue;
        const Vertex y = mate_vertex(x);
        if (y < x) continue;  // each edge once, from its lower endpoint
        const bool x_ok = into_u_[x] > m_, y_ok = into_u_[y] > m_;
        if (!x_ok && !y_ok) continue;
        heads.push_back(x_ok && (!y_ok || into_u_[x] >= into_u_[y]) ? x : y);
      }
      if (heads.empty()) throw Error(ErrorCode::kAugmentationStalled, "no matching edge qualifies for the next level");
      for (Vertex x : heads) in_hierarchy_[x] = in_hierarchy_[mate_vertex(x)] = true;
      for (Vertex x : heads) join(mate_vertex(x), lvl);
    }
    free_pair((*found)[0], (*found)[1]);
    const Vertex a = (*found)[0], b = (*found)[1];
    EdgeId link = kNoEdge;
    for (EdgeId id : g_.incident(a)) {
      if (g_.edge(id).other(a) == b) {
        link = id;
        break;
      }
    }
    mate_[a] = mate_[b] = link;
  }

  void unmatch(Vertex v) {
    if (mate_[v] == kNoEdge) return;
    const Edge& e = g_.edge(mate_[v]);
    mate_[e.u] = mate_[e.v] = kNoEdge;
  }

  void rematch(Vertex head, const Witness& w) {
    unmatch(head);
    unmatch(w.vertex);
    mate_[head] = mate_[w.vertex] = w.edge;
  }

  const Witness& pick(Vertex head, Vertex avoid) const {
    const auto& wit = witness_[head];
    return wit[0].vertex != avoid ? wit[0] : wit[1];
  }

  // Leaves u and v uncovered, touching only vertices of lower levels.
  void free_pair(Vertex u, Vertex v) {
    if (level_[u] < level_[v]) std::swap(u, v);
    if (level_[u] == 0) return;
    const Vertex hu = mate_vertex(u);
    const Witness wu = pick(hu, v);
    if (level_[v] < level_[u]) {
      free_pair(v, wu.vertex);
      rematch(hu, wu);
      return;
    }
    const Vertex hv = mate_vertex(v);
    const Witness wv = pick(hv, wu.vertex);
    free_pair(wu.vertex, wv.vertex);
    rematch(hu, wu);
    rematch(hv, wv);
  }

  const ColouredMultigraph& g_;
  std::size_t target_;
  std::size_t m_;
  std::vector<EdgeId> mate_;
  std::vector<EdgeId> orig_mate_;
  std::vector<int> level_;
  std::vector<std::size_t> into_u_;
  std::vector<std::vector<Witness>> witness_;
  std::vector<bool> in_hierarchy_;
  std::size_t levels_built_ = 0;
};

}  // namespace detail

// Plain (not necessarily rainbow) matching of size >= target, by default
// n_colours. Returns edge ids in ascending order.
inline std::vector<EdgeId> hierarchy_matching(const ColouredMultigraph& g,
                                              std::optional<std::size_t> target = std::nullopt) {
  const std::size_t t = target.value_or(g.n_colours());
  check_expander_hypothesis(g, t);
  return detail::HierarchyExpander(g, t).run();
}

// Cuts a colour class down to the pair edges and triangles of its clique
// decomposition. Returns the kept edge ids of g.
inline std::vector<EdgeId> pairs_and_triangles(const ColouredMultigraph& g) {
  std::vector<EdgeId> keep;
  std::vector<std::uint32_t> clique_of(g.n_vertices(), 0);
  for (Colour c = 0; c < g.n_colours(); ++c) {
    const CliqueDecomposition cd = clique_decompose(g, c);
    std::uint32_t next = 1;
    for (const auto& t : cd.triangles) {
      for (Vertex x : t) clique_of[x] = next;
      ++next;
    }
    for (const auto& pr : cd.pair_edges) {
      for (Vertex x : pr) clique_of[x] = next;
      ++next;
    }
    for (EdgeId id : g.colour_edges(c)) {
      const Edge& e = g.edge(id);
      if (clique_of[e.u] != 0 && clique_of[e.u] == clique_of[e.v]) keep.push_back(id);
    }
    for (const auto& t : cd.triangles) {
      for (Vertex x : t) clique_of[x] = 0;
    }
    for (const auto& pr : cd.pair_edges) {
      for (Vertex x : pr) clique_of[x] = 0;
    }
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

// A rainbow matching M and the part N of it that stays in play. Vertices of
// M - N are removed and only colours outside M or on N remain.
struct MatchingContext {
  RainbowMatching matching;
  std::vector<EdgeId> keep;
};

struct DisjointMatchings {
  std::vector<std::vector<EdgeId>> matchings;
  // Smallest size a round may target before the extraction stops.
  std::size_t floor = 0;
  std::string stop_reason;
};

// Repeatedly extracts a plain matching with the expander, deletes its edges
// (a triangle that lost an edge keeps its lower-id remaining edge) and drops
// colours used more than sqrt(n) times by it. Each round targets
// min(active colours, (min spanned - 2m) / 2) and the extraction stops once
// that falls below |C_0| + |N| - ceil(n^{3/4}).
inline DisjointMatchings edge_disjoint_matchings(const ColouredMultigraph& g, std::size_t count_target,
                                                 const std::optional<MatchingContext>& context = std::nullopt) {
  const std::size_t n = g.n_colours();
  std::vector<bool> colour_on(n, true);
  std::vector<bool> vertex_on(g.n_vertices(), true);
  std::size_t base = n;
  if (context) {
    std::vector<bool> kept(g.n_edges(), false);
    for (EdgeId id : context->keep) kept[id] = true;
    for (const MatchedEdge& p : context->matching.pairs()) {
      if (kept[p.edge]) continue;
      colour_on[p.colour] = false;
      vertex_on[g.edge(p.edge).u] = vertex_on[g.edge(p.edge).v] = false;
    }
    base = static_cast<std::size_t>(std::count(colour_on.begin(), colour_on.end(), true));
  }
  DisjointMatchings out;
  const auto slack = ceil_pow(static_cast<double>(n), 0.75);
  out.floor = base > slack ? base - slack : 0;

  std::vector<bool> edge_on(g.n_edges(), false);
  {
    std::vector<EdgeId> initial;
    for (EdgeId id = 0; id < g.n_edges(); ++id) {
      const Edge& e = g.edge(id);
      if (colour_on[e.colour] && vertex_on[e.u] && vertex_on[e.v]) initial.push_back(id);
    }
    std::vector<Edge> edges;
    for (EdgeId id : initial) edges.push_back(g.edge(id));
    const ColouredMultigraph start(g.n_vertices(), n, std::move(edges), ColourClassKind::kCliqueUnion);
    for (EdgeId local : pairs_and_triangles(start)) edge_on[initial[local]] = true;
  }

  const auto sqrt_n = std::sqrt(static_cast<double>(n));
  while (out.matchings.size() < count_target) {
    // Working graph on the active colours, renumbered densely.
    std::vector<Colour> dense(n, 0);
    std::size_t active = 0;
    for (Colour c = 0; c < n; ++c) {
      if (colour_on[c]) dense[c] = static_cast<Colour>(active++);
    }
    if (active == 0) {
      out.stop_reason = "no colours left";
      break;
    }
    std::vector<EdgeId> origin;
    std::vector<Edge> edges;
    for (EdgeId id = 0; id < g.n_edges(); ++id) {
      if (!edge_on[id] || !colour_on[g.edge(id).colour]) continue;
      const Edge& e = g.edge(id);
      origin.push_back(id);
      edges.push_back({e.u, e.v, dense[e.colour]});
    }
    const ColouredMultigraph work(g.n_vertices(), active, std::move(edges), ColourClassKind::kCliqueUnion);
    std::size_t spanned_min = SIZE_MAX;
    for (Colour c = 0; c < active; ++c) spanned_min = std::min(spanned_min, spanned_vertices(work, c));
    const std::size_t m = work.max_multiplicity();
    const std::size_t target = spanned_min >= 2 * m ? std::min(active, (spanned_min - 2 * m) / 2) : 0;
    if (target < out.floor || target == 0) {
      if (out.matchings.empty()) {
        throw Error(ErrorCode::kHypothesisViolated,
                    "first round targets " + std::to_string(target) + " edges, below the floor " +
                        std::to_string(out.floor));
      }
      out.stop_reason = "round target " + std::to_string(target) + " below floor";
      break;
    }
    std::vector<EdgeId> found;
    for (EdgeId local : hierarchy_matching(work, target)) found.push_back(origin[local]);
    std::sort(found.begin(), found.end());

    std::vector<std::size_t> uses(n, 0);
    for (EdgeId id : found) {
      const Edge& e = g.edge(id);
      ++uses[e.colour];
      edge_on[id] = false;
      // A triangle a-b-x of this colour loses ab; keep the lower of ax, bx.
      std::vector<EdgeId> at_a, at_b;
      for (EdgeId o : g.colour_edges(e.colour)) {
        if (!edge_on[o]) continue;
        const Edge& f = g.edge(o);
        if (f.touches(e.u)) at_a.push_back(o);
        if (f.touches(e.v)) at_b.push_back(o);
      }
      for (EdgeId x : at_a) {
        for (EdgeId y : at_b) {
          if (g.edge(x).other(e.u) == g.edge(y).other(e.v)) edge_on[std::max(x, y)] = false;
        }
      }
    }
    for (Colour c = 0; c < n; ++c) {
      if (static_cast<double>(uses[c]) > sqrt_n) colour_on[c] = false;
    }
    out.matchings.push_back(std::move(found));
  }
  if (out.stop_reason.empty()) out.stop_reason = "count target reached";
  return out;
}

}  // namespace rainbow
