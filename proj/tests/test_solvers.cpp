#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "rainbow/augment.hpp"
#include "rainbow/error.hpp"
#include "rainbow/exact.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/numeric.hpp"
#include "rainbow/greedy.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/sampling.hpp"

using namespace rainbow;

namespace {

std::vector<ColouredMultigraph> corpus() {
  std::vector<ColouredMultigraph> out;
  out.push_back(gen_latin(5, LatinMode::kCayley, 0));
  out.push_back(gen_latin(6, LatinMode::kCayley, 0));
  out.push_back(gen_latin(7, LatinMode::kRandom, 3));
  out.push_back(gen_ab(12, 0, true, 1));
  out.push_back(gen_ab(12, 2, false, 2));
  out.push_back(gen_grinblat(10, 30, 10, 3));
  out.push_back(gen_grinblat(12, 28, 2, 4));
  out.push_back(gen_triangle_lb(6));
  out.push_back(gen_two_k4());
  out.push_back(gen_multiplicity_lb(9, 2, 5, true));
  out.push_back(gen_two_factorized(4, TwoFactorMode::kCirculant, 2, 6));
  out.push_back(gen_two_factorized(5, TwoFactorMode::kSymmetricLatin, 0, 7));
  return out;
}

ColouredMultigraph matching_instance(std::size_t nv, const std::vector<std::vector<std::pair<Vertex, Vertex>>>& classes) {
  std::vector<Edge> edges;
  for (Colour c = 0; c < classes.size(); ++c) {
    for (auto [u, v] : classes[c]) edges.push_back({u, v, c});
  }
  return ColouredMultigraph(nv, classes.size(), std::move(edges), ColourClassKind::kMatching);
}

// All perfect matchings of {0..n-1}, n even.
void perfect_matchings(std::vector<Vertex>& rest, std::vector<std::pair<Vertex, Vertex>>& cur,
                       std::vector<std::vector<std::pair<Vertex, Vertex>>>& out) {
  if (rest.empty()) {
    out.push_back(cur);
    return;
  }
  const Vertex a = rest[0];
  for (std::size_t i = 1; i < rest.size(); ++i) {
    const Vertex b = rest[i];
    std::vector<Vertex> next;
    for (std::size_t j = 1; j < rest.size(); ++j) {
      if (j != i) next.push_back(rest[j]);
    }
    cur.push_back({a, b});
    perfect_matchings(next, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST(Greedy, EdgelessAndSingleTriangle) {
  ColouredMultigraph empty(4, 3, {});
  EXPECT_TRUE(greedy_maximal(empty).empty());
  ColouredMultigraph tri(3, 1, {{0, 1, 0}, {1, 2, 0}, {0, 2, 0}}, ColourClassKind::kCliqueUnion);
  EXPECT_EQ(greedy_maximal(tri).size(), 1u);
}

TEST(Greedy, EveryOrderGivesMaximalRainbowMatchings) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    ColouredMultigraph g = oracle::random_small(rng, 14, 9, 4);
    for (GreedyOrder order : {GreedyOrder::kInput, GreedyOrder::kRandom, GreedyOrder::kRareColourFirst}) {
      RainbowMatching m = greedy_maximal(g, order, trial);
      ASSERT_TRUE(is_rainbow_matching(g, m));
      EXPECT_TRUE(oracle::is_maximal_rainbow(g, m));
    }
  }
}

TEST(Greedy, WeakBoundOnCliqueUnionCorpus) {
  for (std::size_t n : {9, 16, 25, 36, 50}) {
    for (Seed s = 0; s < 10; ++s) {
      ColouredMultigraph g = gen_grinblat(n, 3 * n, n, s);
      const std::size_t bound = n - static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
      for (GreedyOrder order : {GreedyOrder::kInput, GreedyOrder::kRandom, GreedyOrder::kRareColourFirst}) {
        EXPECT_GE(greedy_maximal(g, order, s).size(), bound) << "n=" << n << " seed=" << s;
      }
    }
  }
}

TEST(Greedy, RareColourFirstIsSeedDeterministic) {
  ColouredMultigraph g = gen_grinblat(30, 90, 30, 8);
  EXPECT_EQ(greedy_maximal(g, GreedyOrder::kRareColourFirst, 5), greedy_maximal(g, GreedyOrder::kRareColourFirst, 5));
}

TEST(Complete, EmptyAndSingleColour) {
  ColouredMultigraph g(4, 2, {{0, 1, 1}});
  std::vector<Colour> none;
  Completion c0 = greedy_complete(g, none);
  EXPECT_TRUE(c0.ok());
  EXPECT_TRUE(c0.matching.empty());
  std::vector<Colour> one{1};
  Completion c1 = greedy_complete(g, one);
  EXPECT_TRUE(c1.ok());
  EXPECT_EQ(c1.matching.size(), 1u);
  std::vector<Colour> zero{0};
  Completion c2 = greedy_complete(g, zero);
  EXPECT_FALSE(c2.ok());
  ASSERT_TRUE(c2.failed_colour.has_value());
  EXPECT_EQ(*c2.failed_colour, 0u);
}

// Two matching colours with 2k + 1 = 5 edges each: up to relabelling the
// first colour is fixed, the second ranges over every 5-edge matching of a
// 12-vertex pool.
TEST(Complete, MatchingClassesTwoColoursExhaustive) {
  const std::vector<std::pair<Vertex, Vertex>> first{{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}};
  std::vector<Vertex> pool(12);
  for (Vertex v = 0; v < 12; ++v) pool[v] = v;
  std::vector<std::pair<Vertex, Vertex>> cur;
  std::vector<std::vector<std::pair<Vertex, Vertex>>> all;
  perfect_matchings(pool, cur, all);
  std::set<std::vector<std::pair<Vertex, Vertex>>> layouts;
  for (const auto& pm : all) {
    for (std::size_t drop = 0; drop < pm.size(); ++drop) {
      auto second = pm;
      second.erase(second.begin() + static_cast<std::ptrdiff_t>(drop));
      std::sort(second.begin(), second.end());
      layouts.insert(second);
    }
  }
  ASSERT_EQ(layouts.size(), 62370u);
  std::vector<Colour> missing{0, 1};
  for (const auto& second : layouts) {
    ColouredMultigraph g = matching_instance(12, {first, second});
    Completion c = greedy_complete(g, missing, 0);
    ASSERT_TRUE(c.ok());
    ASSERT_EQ(c.matching.size(), 2u);
    ASSERT_TRUE(is_rainbow_matching(g, c.matching));
  }
}

TEST(Complete, MatchingClassesThreeColoursRandomized) {
  std::mt19937_64 rng(77);
  std::vector<Colour> missing{0, 1, 2};
  for (int trial = 0; trial < 20000; ++trial) {
    const std::size_t nv = 14 + rng() % 6;
    std::vector<std::vector<std::pair<Vertex, Vertex>>> classes(3);
    for (auto& cls : classes) {
      std::vector<Vertex> perm(nv);
      for (Vertex v = 0; v < nv; ++v) perm[v] = v;
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t i = 0; i < 7; ++i) cls.push_back({perm[2 * i], perm[2 * i + 1]});
    }
    ColouredMultigraph g = matching_instance(nv, classes);
    Completion c = greedy_complete(g, missing, trial);
    ASSERT_TRUE(c.ok());
    ASSERT_TRUE(is_rainbow_matching(g, c.matching));
  }
}

TEST(Complete, CliqueUnionClassesWithFourKPlusOneEdges) {
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t k = 1 + rng() % 4;
    const std::size_t nv = 40;
    std::vector<Edge> edges;
    std::vector<Colour> missing;
    for (Colour c = 0; c < k; ++c) {
      missing.push_back(c);
      std::vector<Vertex> perm(nv);
      for (Vertex v = 0; v < nv; ++v) perm[v] = v;
      std::shuffle(perm.begin(), perm.end(), rng);
      std::size_t used = 0, count = 0;
      while (count < 4 * k + 1) {
        if (rng() % 2 == 0 && used + 3 <= nv) {
          Vertex x = perm[used], y = perm[used + 1], z = perm[used + 2];
          edges.push_back({x, y, c});
          edges.push_back({y, z, c});
          edges.push_back({x, z, c});
          used += 3;
          count += 3;
        } else {
          edges.push_back({perm[used], perm[used + 1], c});
          used += 2;
          count += 1;
        }
      }
    }
    ColouredMultigraph g(nv, k, edges, ColourClassKind::kCliqueUnion);
    Completion c = greedy_complete(g, missing, trial);
    ASSERT_TRUE(c.ok()) << "trial " << trial;
  }
}

TEST(Complete, RespectsBlockedVertices) {
  ColouredMultigraph g(4, 1, {{0, 1, 0}, {2, 3, 0}});
  std::vector<bool> blocked{true, false, false, false};
  std::vector<Colour> missing{0};
  Completion c = greedy_complete(g, missing, 0, &blocked);
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c.matching.pairs()[0].edge, 1u);
}

TEST(Augment, FullMatchingUnchanged) {
  ColouredMultigraph g = gen_latin(5, LatinMode::kCayley, 0);
  ExactResult ex = exact_max_rainbow(g);
  ASSERT_EQ(ex.size, 5u);
  EXPECT_EQ(augment(g, ex.matching).matching, ex.matching);
}

TEST(Augment, LengthThreeSwitch) {
  // x=0, a=1, b=2, y=3; ab in M with colour 1, xa colour 2, by colour 3.
  ColouredMultigraph g(4, 4, {{1, 2, 1}, {0, 1, 2}, {2, 3, 3}});
  RainbowMatching m({{0, 1}});
  AugmentResult r = augment(g, m);
  EXPECT_EQ(r.matching, RainbowMatching({{1, 2}, {2, 3}}));
  EXPECT_EQ(r.improvements, 1u);
}

TEST(Augment, OddCayleySevenReachesNMinusOne) {
  ColouredMultigraph g = gen_latin(7, LatinMode::kCayley, 0);
  for (Seed s = 0; s < 10; ++s) {
    RainbowMatching start = greedy_maximal(g, GreedyOrder::kRandom, s);
    AugmentConfig cfg;
    cfg.seed = s;
    AugmentResult r = augment(g, start, cfg);
    ASSERT_TRUE(is_rainbow_matching(g, r.matching));
    EXPECT_GE(r.matching.size(), 6u) << "seed " << s;
  }
}

TEST(Augment, MonotoneAndIdempotentAcrossCorpus) {
  for (const ColouredMultigraph& g : corpus()) {
    for (Seed s = 0; s < 3; ++s) {
      RainbowMatching start = greedy_maximal(g, GreedyOrder::kRandom, s);
      AugmentConfig cfg;
      cfg.seed = s;
      AugmentResult once = augment(g, start, cfg);
      ASSERT_TRUE(is_rainbow_matching(g, once.matching));
      EXPECT_GE(once.matching.size(), start.size());
      AugmentResult twice = augment(g, once.matching, cfg);
      EXPECT_EQ(twice.matching, once.matching);
      EXPECT_EQ(twice.improvements, 0u);
    }
  }
}

TEST(Augment, HeavyWildcardsResolveToDistinctColours) {
  // Pairs repeated in several colours; wildcard steps must end up rainbow.
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Edge> edges;
    const std::size_t nv = 10, nc = 6;
    for (int i = 0; i < 25; ++i) {
      Vertex u = static_cast<Vertex>(rng() % nv), v = static_cast<Vertex>(rng() % nv);
      if (u == v) continue;
      const std::size_t copies = 1 + rng() % 4;
      for (std::size_t k = 0; k < copies; ++k) edges.push_back({u, v, static_cast<Colour>(rng() % nc)});
    }
    ColouredMultigraph g(nv, nc, edges);
    AugmentConfig cfg;
    cfg.heavy_threshold = 2;
    cfg.seed = trial;
    RainbowMatching start = greedy_maximal(g, GreedyOrder::kRandom, trial);
    AugmentResult r = augment(g, start, cfg);
    ASSERT_TRUE(is_rainbow_matching(g, r.matching));
    EXPECT_GE(r.matching.size(), start.size());
  }
}

TEST(Exact, AgreesWithSubsetEnumeration) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    ColouredMultigraph g = oracle::random_small(rng, 12, 8, 4);
    ExactResult ex = exact_max_rainbow(g);
    ASSERT_TRUE(ex.optimal);
    ASSERT_TRUE(is_rainbow_matching(g, ex.matching));
    EXPECT_EQ(ex.size, ex.matching.size());
    EXPECT_EQ(ex.size, oracle::subset_max_rainbow(g));
  }
}

TEST(Exact, KnownValues) {
  EXPECT_EQ(exact_max_rainbow(gen_two_k4()).size, 2u);
  EXPECT_EQ(exact_max_rainbow(gen_latin(5, LatinMode::kCayley, 0)).size, 5u);
  ExactResult tri = exact_max_rainbow(gen_triangle_lb(4));
  EXPECT_TRUE(tri.optimal);
  EXPECT_EQ(tri.size, 3u);
}

TEST(Exact, DominatesHeuristicsOnCorpus) {
  for (const ColouredMultigraph& g : corpus()) {
    ExactResult ex = exact_max_rainbow(g, std::chrono::seconds(20));
    ASSERT_TRUE(ex.optimal);
    for (Seed s = 0; s < 3; ++s) {
      EXPECT_GE(ex.size, greedy_maximal(g, GreedyOrder::kRandom, s).size());
      AugmentConfig cfg;
      cfg.seed = s;
      EXPECT_GE(ex.size, augment(g, greedy_maximal(g, GreedyOrder::kRareColourFirst, s), cfg).matching.size());
      if (g.kind() != ColourClassKind::kTwoFactor) {
        SamplingConfig sc;
        sc.p = 0.3;
        sc.seed = s;
        EXPECT_GE(ex.size, sampling_solve(g, sc).matching.size());
      }
    }
  }
}

TEST(Exact, ZeroTimeLimitIsNotCertified) {
  ExactResult ex = exact_max_rainbow(gen_latin(7, LatinMode::kRandom, 1), std::chrono::milliseconds(0));
  EXPECT_TRUE(is_rainbow_matching(gen_latin(7, LatinMode::kRandom, 1), ex.matching));
  if (ex.nodes > 256) {
    EXPECT_FALSE(ex.optimal);
  }
}

TEST(Sampling, RejectsBadRate) {
  ColouredMultigraph g = gen_ab(4, 0, true, 0);
  for (double p : {0.0, 1.0, -0.5, 2.0}) {
    SamplingConfig cfg;
    cfg.p = p;
    try {
      sampling_solve(g, cfg);
      FAIL() << p;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParameterViolation);
    }
  }
}

TEST(Sampling, AttemptInvariants) {
  for (Seed s = 0; s < 40; ++s) {
    ColouredMultigraph g = s % 2 ? gen_ab(30, 10, s % 4 == 1, s) : gen_grinblat(20, 70, 20, s);
    SamplingConfig cfg;
    cfg.p = 0.35;
    cfg.weak_solver = s % 3 == 0 ? WeakSolver::kGreedy : WeakSolver::kAugment;
    SamplingAttempt a = sampling_attempt(g, cfg, derive_seed(s, {0}));
    std::vector<bool> in_sample(g.n_vertices(), false);
    for (Vertex v : a.split.sample) in_sample[v] = true;
    std::size_t rest_count = 0;
    for (Vertex v : a.split.rest) {
      EXPECT_FALSE(in_sample[v]);
      ++rest_count;
    }
    EXPECT_EQ(rest_count + a.split.sample.size(), g.n_vertices());
    for (const MatchedEdge& p : a.weak.pairs()) {
      EXPECT_FALSE(in_sample[g.edge(p.edge).u]);
      EXPECT_FALSE(in_sample[g.edge(p.edge).v]);
    }
    std::vector<Colour> completed;
    for (const MatchedEdge& p : a.completion.matching.pairs()) {
      EXPECT_TRUE(in_sample[g.edge(p.edge).u]);
      EXPECT_TRUE(in_sample[g.edge(p.edge).v]);
      completed.push_back(p.colour);
    }
    std::sort(completed.begin(), completed.end());
    for (Colour c : completed) {
      EXPECT_TRUE(std::binary_search(a.weak_missing.begin(), a.weak_missing.end(), c));
    }
    if (a.completion.ok()) {
      EXPECT_EQ(completed, a.weak_missing);
    }
    if (a.weak_missing.empty()) {
      EXPECT_TRUE(a.completion.matching.empty());
    }
    ASSERT_TRUE(is_rainbow_matching(g, a.combined));
  }
}

TEST(Sampling, ReportConsistency) {
  for (Seed s = 0; s < 20; ++s) {
    ColouredMultigraph g = gen_ab(40, 30, true, s);
    SamplingConfig cfg;
    cfg.p = 0.5;
    cfg.seed = s;
    SolveReport r = sampling_solve(g, cfg);
    ASSERT_TRUE(is_rainbow_matching(g, r.matching));
    EXPECT_EQ(r.defect, g.n_colours() - r.matching.colours().size());
    EXPECT_EQ(r.missing_colours, missing_colours(g, r.matching));
    if (r.defect == 0) {
      EXPECT_EQ(r.matching.size(), g.n_colours());
    }
    EXPECT_EQ(r.seeds_used.size(), r.resamples_used + 1);
    EXPECT_LE(r.resamples_used, cfg.max_resamples);
    EXPECT_EQ(sampling_solve(g, cfg).matching, r.matching);
  }
}

TEST(Sampling, ProofHypothesisInstancesAreSolvedFully) {
  const std::size_t n = 64;
  const auto extra = ceil_pow(64.0, 0.75, 7.0);
  for (Seed s = 0; s < 5; ++s) {
    ColouredMultigraph g = gen_ab(n, extra, true, s);
    SamplingConfig cfg;
    cfg.p = std::min(0.5, 2 * std::pow(64.0, -0.25));
    cfg.seed = s;
    EXPECT_EQ(sampling_solve(g, cfg).defect, 0u);
  }
  const std::size_t v = 300 + ceil_pow(100.0, 0.75, 40.0);
  ColouredMultigraph grin = gen_grinblat(100, v, 100, 1);
  SamplingConfig cfg;
  cfg.p = std::min(0.5, 2 * std::pow(100.0, -0.25));
  EXPECT_EQ(sampling_solve(grin, cfg).defect, 0u);
}

TEST(Sampling, AutoRateIsCapped) {
  EXPECT_DOUBLE_EQ(auto_sampling_rate(gen_ab(16, 0, true, 0)), 0.5);
  EXPECT_DOUBLE_EQ(analytic_sampling_rate(SamplingRegime::kBipartiteMatching, 10000), 0.2);
  EXPECT_LT(auto_sampling_rate(gen_ab(10000 / 100, 0, true, 0)), 1.0);
  EXPECT_EQ(regime_for(gen_ab(4, 0, false, 0)), SamplingRegime::kGeneralMatching);
  EXPECT_EQ(regime_for(gen_grinblat(4, 8, 4, 0)), SamplingRegime::kCliqueUnion);
}
