#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/greedy.hpp"
#include "rainbow/matching.hpp"

namespace rainbow {

struct ExactResult {
  std::size_t size = 0;
  RainbowMatching matching;
  // True iff the search tree was exhausted within the time limit.
  bool optimal = false;
  std::uint64_t nodes = 0;
};

namespace detail {

class RainbowBranchAndBound {
 public:
  RainbowBranchAndBound(const ColouredMultigraph& g, std::chrono::milliseconds limit)
      : g_(g),
        deadline_(std::chrono::steady_clock::now() + limit),
        vfree_(g.n_vertices(), true),
        state_(g.n_colours(), kActive),
        alive_count_(g.n_colours(), 0),
        parent_(g.n_vertices()),
        comp_size_(g.n_vertices()) {}

  ExactResult solve() {
    best_ = greedy_maximal(g_, GreedyOrder::kRareColourFirst, 0).pairs();
    search();
    ExactResult out;
    out.matching = RainbowMatching(best_);
    out.size = best_.size();
    out.optimal = !aborted_;
    out.nodes = nodes_;
    return out;
  }

 private:
  enum : std::uint8_t { kActive, kUsed, kSkipped };

  bool alive(const Edge& e) const {
    return state_[e.colour] == kActive && vfree_[e.u] && vfree_[e.v];
  }

  Vertex find(Vertex x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  // Upper bound on how many more edges fit: limited both by colours that
  // still have an alive edge and by sum of floor(|component| / 2) over the
  // components of the alive-edge graph.
  std::size_t remaining_bound(Colour& branch_colour) {
    std::fill(alive_count_.begin(), alive_count_.end(), 0);
    for (Vertex v = 0; v < g_.n_vertices(); ++v) {
      parent_[v] = v;
      comp_size_[v] = 0;
    }
    for (const Edge& e : g_.edges()) {
      if (!alive(e)) continue;
      ++alive_count_[e.colour];
      Vertex a = find(e.u), b = find(e.v);
      if (a != b) parent_[a] = b;
    }
    std::size_t colours = 0;
    branch_colour = kNoColour;
    for (Colour c = 0; c < g_.n_colours(); ++c) {
      if (alive_count_[c] == 0) continue;
      ++colours;
      if (branch_colour == kNoColour || alive_count_[c] < alive_count_[branch_colour]) branch_colour = c;
    }
    if (colours == 0) return 0;
    std::vector<bool> touched(g_.n_vertices(), false);
    for (const Edge& e : g_.edges()) {
      if (!alive(e)) continue;
      touched[e.u] = touched[e.v] = true;
    }
    for (Vertex v = 0; v < g_.n_vertices(); ++v) {
      if (touched[v]) ++comp_size_[find(v)];
    }
    std::size_t pairs = 0;
    for (Vertex v = 0; v < g_.n_vertices(); ++v) pairs += comp_size_[v] / 2;
    return std::min(colours, pairs);
  }

  void search() {
    if (aborted_) return;
    if ((++nodes_ & 255) == 0 && std::chrono::steady_clock::now() > deadline_) {
      aborted_ = true;
      return;
    }
    if (current_.size() > best_.size()) best_ = current_;
    Colour c;
    const std::size_t bound = current_.size() + remaining_bound(c);
    if (bound <= best_.size()) return;

    std::vector<EdgeId> branch;
    for (EdgeId id : g_.colour_edges(c)) {
      const Edge& e = g_.edge(id);
      if (!alive(e)) continue;
      bool duplicate = std::any_of(branch.begin(), branch.end(), [&](EdgeId o) {
        const Edge& f = g_.edge(o);
        return std::min(f.u, f.v) == std::min(e.u, e.v) && std::max(f.u, f.v) == std::max(e.u, e.v);
      });
      if (!duplicate) branch.push_back(id);
    }
    for (EdgeId id : branch) {
      const Edge& e = g_.edge(id);
      vfree_[e.u] = vfree_[e.v] = false;
      state_[c] = kUsed;
      current_.push_back({id, c});
      search();
      current_.pop_back();
      state_[c] = kActive;
      vfree_[e.u] = vfree_[e.v] = true;
      if (aborted_) return;
    }
    state_[c] = kSkipped;
    search();
    state_[c] = kActive;
  }

  static constexpr Colour kNoColour = ~Colour{0};

  const ColouredMultigraph& g_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<bool> vfree_;
  std::vector<std::uint8_t> state_;
  std::vector<std::size_t> alive_count_;
  std::vector<Vertex> parent_;
  std::vector<std::size_t> comp_size_;
  std::vector<MatchedEdge> current_;
  std::vector<MatchedEdge> best_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace detail

// Maximum rainbow matching by branch and bound. Branches on the colour with
// the fewest alive edges: one child per alive edge, plus one child that
// drops the colour. Certified optimal only when the tree is exhausted.
inline ExactResult exact_max_rainbow(const ColouredMultigraph& g,
                                     std::chrono::milliseconds time_limit = std::chrono::seconds(60)) {
  return detail::RainbowBranchAndBound(g, time_limit).solve();
}

}  // namespace rainbow
