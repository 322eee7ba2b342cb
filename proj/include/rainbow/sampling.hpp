#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string_view>
#include <vector>

#include "rainbow/augment.hpp"
#include "rainbow/error.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/greedy.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/random.hpp"
#include "rainbow/report.hpp"

namespace rainbow {

enum class WeakSolver { kGreedy, kAugment };

inline std::string_view to_string(WeakSolver w) { return w == WeakSolver::kGreedy ? "greedy" : "augment"; }

struct SamplingConfig {
  // Rate at which each vertex joins the reserved sample S; in (0, 1).
  double p = 0.25;
  WeakSolver weak_solver = WeakSolver::kAugment;
  // Extra draws of S after a failed completion; attempts = 1 + max_resamples.
  std::size_t max_resamples = 5;
  Seed seed = 0;
  AugmentConfig augment;
};

// One draw of S together with what each phase produced on it.
struct SamplingAttempt {
  SampleSplit split;
  // Weak phase on G - S, lifted to edge ids of G.
  RainbowMatching weak;
  // Colours the weak phase left out.
  std::vector<Colour> weak_missing;
  // Completion phase inside G[S], lifted to edge ids of G.
  Completion completion;
  RainbowMatching combined;
  std::size_t weak_greedy_size = 0;
  bool budget_exhausted = false;
};

inline SamplingAttempt sampling_attempt(const ColouredMultigraph& g, const SamplingConfig& cfg,
                                        Seed attempt_seed) {
  SamplingAttempt a;
  a.split = draw_sample(g.n_vertices(), cfg.p, derive_seed(attempt_seed, {0}));
  const Restriction rest = restrict_mapped(g, vertex_mask(g.n_vertices(), a.split.rest));
  RainbowMatching weak = greedy_maximal(rest.graph, GreedyOrder::kRareColourFirst,
                                        derive_seed(attempt_seed, {1}));
  a.weak_greedy_size = weak.size();
  if (cfg.weak_solver == WeakSolver::kAugment) {
    AugmentConfig ac = cfg.augment;
    ac.seed = derive_seed(attempt_seed, {2});
    AugmentResult ar = augment(rest.graph, weak, ac);
    weak = std::move(ar.matching);
    a.budget_exhausted = ar.budget_exhausted;
  }
  a.weak = weak.lifted(rest.parent_edge);
  a.weak_missing = missing_colours(g, a.weak);
  const Restriction sample = restrict_mapped(g, vertex_mask(g.n_vertices(), a.split.sample));
  Completion c = greedy_complete(sample.graph, a.weak_missing, derive_seed(attempt_seed, {3}));
  a.completion = {c.matching.lifted(sample.parent_edge), c.failed_colour};
  a.combined = a.weak.merged(a.completion.matching);
  return a;
}

// Reserves a random vertex sample S, solves the rest weakly, then places the
// missing colours inside S. Redraws S when the completion gets stuck and
// keeps the largest matching seen.
inline SolveReport sampling_solve(const ColouredMultigraph& g, const SamplingConfig& cfg) {
  if (!(cfg.p > 0.0 && cfg.p < 1.0)) {
    throw Error(ErrorCode::kParameterViolation, "sampling rate p must lie in (0, 1)");
  }
  const auto start = std::chrono::steady_clock::now();
  SolveReport r;
  r.seed = cfg.seed;
  bool have = false;
  for (std::size_t attempt = 0; attempt <= cfg.max_resamples; ++attempt) {
    const Seed s = derive_seed(cfg.seed, {attempt});
    r.seeds_used.push_back(s);
    SamplingAttempt a = sampling_attempt(g, cfg, s);
    if (!have || a.combined.size() > r.matching.size()) {
      have = true;
      r.matching = a.combined;
      r.budget_exhausted = a.budget_exhausted;
      r.phases.clear();
      r.phases.push_back({"weak_greedy", 0, a.weak_greedy_size});
      if (cfg.weak_solver == WeakSolver::kAugment) {
        r.phases.push_back({"augment", a.weak_greedy_size, a.weak.size()});
      }
      r.phases.push_back({"complete", a.weak.size(), a.combined.size()});
    }
    r.resamples_used = attempt;
    if (a.completion.ok()) break;
  }
  finalize(r, g);
  r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return r;
}

// Sampling rates of the existence arguments, by regime.
enum class SamplingRegime { kCliqueUnion, kBipartiteMatching, kGeneralMatching, kBoundedMultiplicity };

inline double analytic_sampling_rate(SamplingRegime regime, std::size_t n) {
  const double x = static_cast<double>(std::max<std::size_t>(n, 2));
  switch (regime) {
    case SamplingRegime::kCliqueUnion:
    case SamplingRegime::kBipartiteMatching: return 2.0 * std::pow(x, -0.25);
    case SamplingRegime::kGeneralMatching: return 7.0 * std::pow(x, -1.0 / 16.0);
    case SamplingRegime::kBoundedMultiplicity: return 100.0 * std::pow(std::log(x), -0.25);
  }
  return 0.5;
}

// Analytic rates exceed 1/2 for all but astronomically large n; capped there.
inline constexpr double kMaxSamplingRate = 0.5;

inline SamplingRegime regime_for(const ColouredMultigraph& g) {
  if (g.kind() == ColourClassKind::kMatching) {
    return g.sides() ? SamplingRegime::kBipartiteMatching : SamplingRegime::kGeneralMatching;
  }
  return SamplingRegime::kCliqueUnion;
}

inline double auto_sampling_rate(const ColouredMultigraph& g) {
  return std::min(analytic_sampling_rate(regime_for(g), g.n_colours()), kMaxSamplingRate);
}

}  // namespace rainbow
