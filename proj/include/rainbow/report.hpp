#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/io.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/random.hpp"

namespace rainbow {

struct Phase {
  std::string name;
  std::size_t size_before = 0;
  std::size_t size_after = 0;
};

struct SolveReport {
  RainbowMatching matching;
  // n_colours minus the number of distinct colours in the matching.
  std::size_t defect = 0;
  std::vector<Colour> missing_colours;
  std::vector<Phase> phases;
  std::chrono::milliseconds elapsed{0};
  Seed seed = 0;
  std::vector<Seed> seeds_used;
  std::optional<bool> optimal;
  std::size_t resamples_used = 0;
  bool budget_exhausted = false;

  bool full() const { return defect == 0; }
};

// Fills defect and missing colours from the matching.
inline void finalize(SolveReport& r, const ColouredMultigraph& g) {
  r.missing_colours = missing_colours(g, r.matching);
  r.defect = r.missing_colours.size();
}

// With `timing` off the elapsed time is written as 0, which keeps reports a
// pure function of their inputs.
inline Json solve_report_to_json(const ColouredMultigraph& g, const SolveReport& r, bool timing) {
  Json j;
  j["size"] = r.matching.size();
  j["defect"] = r.defect;
  j["missing_colors"] = r.missing_colours;
  Json rows = Json::array();
  for (const MatchedEdge& p : r.matching.pairs()) {
    const Edge& e = g.edge(p.edge);
    rows.push_back(Json::array({e.u, e.v, p.colour}));
  }
  j["matching"] = std::move(rows);
  Json phases = Json::array();
  for (const Phase& ph : r.phases) {
    phases.push_back({{"name", ph.name}, {"before", ph.size_before}, {"after", ph.size_after}});
  }
  j["phases"] = std::move(phases);
  j["seed"] = r.seed;
  j["seeds_used"] = r.seeds_used;
  j["elapsed_ms"] = timing ? r.elapsed.count() : 0;
  j["optimal"] = r.optimal ? Json(*r.optimal) : Json(nullptr);
  j["resamples_used"] = r.resamples_used;
  j["budget_exhausted"] = r.budget_exhausted;
  return j;
}

inline std::string solve_report_to_csv(const SolveReport& r, bool timing) {
  std::string out = "size,defect,seed,resamples_used,elapsed_ms,optimal\n";
  out += std::to_string(r.matching.size()) + "," + std::to_string(r.defect) + "," +
         std::to_string(r.seed) + "," + std::to_string(r.resamples_used) + "," +
         std::to_string(timing ? r.elapsed.count() : 0) + "," +
         (r.optimal ? (*r.optimal ? "true" : "false") : "") + "\n";
  return out;
}

}  // namespace rainbow
