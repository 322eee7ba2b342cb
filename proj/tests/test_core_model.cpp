#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rainbow/error.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/io.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/numeric.hpp"
#include "rainbow/random.hpp"
#include "rainbow/validate.hpp"

using namespace rainbow;

namespace {

// Vertices a=0, b=1, c=2, d=3.
constexpr Vertex a = 0, b = 1, c = 2, d = 3;

ColouredMultigraph one_colour(std::size_t nv, std::vector<std::pair<Vertex, Vertex>> pairs) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 0});
  return ColouredMultigraph(nv, 1, std::move(edges));
}

ColouredMultigraph complete(std::size_t r) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < r; ++u) {
    for (Vertex v = u + 1; v < r; ++v) pairs.push_back({u, v});
  }
  return one_colour(r, pairs);
}

}  // namespace

TEST(Graph, RejectsLoopsAndOutOfRange) {
  EXPECT_THROW(ColouredMultigraph(2, 1, {{0, 0, 0}}), Error);
  EXPECT_THROW(ColouredMultigraph(2, 1, {{0, 2, 0}}), Error);
  EXPECT_THROW(ColouredMultigraph(2, 1, {{0, 1, 1}}), Error);
  EXPECT_THROW(ColouredMultigraph(2, 1, {{0, 1, 0}}, ColourClassKind::kMatching, std::vector<std::uint8_t>{0}), Error);
}

TEST(Graph, ParallelEdgesAreDistinctAndCounted) {
  ColouredMultigraph g(3, 2, {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}, {1, 2, 1}});
  EXPECT_EQ(g.n_edges(), 4u);
  EXPECT_EQ(g.multiplicity(0, 1), 3u);
  EXPECT_EQ(g.multiplicity(1, 0), 3u);
  EXPECT_EQ(g.multiplicity(0, 2), 0u);
  EXPECT_EQ(g.max_multiplicity(), 3u);
  EXPECT_EQ(g.degree(1), 4u);
  EXPECT_EQ(g.colour_edges(0).size(), 2u);
  EXPECT_EQ(g.colour_edges(1).size(), 2u);
}

TEST(Graph, IndicesAreRepresentationIndependent) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    ColouredMultigraph g = oracle::random_small(rng, 20, 8, 4);
    std::vector<Edge> perm = g.edges();
    std::shuffle(perm.begin(), perm.end(), rng);
    ColouredMultigraph h(g.n_vertices(), g.n_colours(), perm);
    for (Vertex u = 0; u < g.n_vertices(); ++u) {
      EXPECT_EQ(g.degree(u), h.degree(u));
      for (Vertex v = 0; v < g.n_vertices(); ++v) EXPECT_EQ(g.multiplicity(u, v), h.multiplicity(u, v));
    }
    for (Colour c = 0; c < g.n_colours(); ++c) EXPECT_EQ(g.colour_edges(c).size(), h.colour_edges(c).size());
    EXPECT_EQ(g.max_multiplicity(), h.max_multiplicity());
    // Rebuilding from the same list is idempotent.
    EXPECT_EQ(ColouredMultigraph(g.n_vertices(), g.n_colours(), g.edges()), g);
  }
}

TEST(Restrict, IdentityEmptyAndTriangle) {
  ColouredMultigraph tri = one_colour(3, {{a, b}, {b, c}, {a, c}});
  std::vector<Vertex> all{0, 1, 2};
  EXPECT_EQ(restrict(tri, all), tri);
  ColouredMultigraph ab = restrict(tri, std::vector<Vertex>{a, b});
  ASSERT_EQ(ab.n_edges(), 1u);
  EXPECT_EQ(ab.edge(0), (Edge{a, b, 0}));
  ColouredMultigraph none = restrict(tri, std::vector<Vertex>{});
  EXPECT_EQ(none.n_edges(), 0u);
  EXPECT_EQ(none.n_colours(), tri.n_colours());
}

TEST(Restrict, ComposesAsIntersection) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    ColouredMultigraph g = oracle::random_small(rng, 20, 8, 3);
    std::vector<Vertex> A, B, AB;
    for (Vertex v = 0; v < g.n_vertices(); ++v) {
      bool in_a = rng() & 1, in_b = rng() & 1;
      if (in_a) A.push_back(v);
      if (in_b) B.push_back(v);
      if (in_a && in_b) AB.push_back(v);
    }
    EXPECT_EQ(restrict(restrict(g, A), B), restrict(g, AB));
  }
}

TEST(Restrict, ParentMapPointsAtSameEdges) {
  std::mt19937_64 rng(8);
  ColouredMultigraph g = oracle::random_small(rng, 20, 8, 3);
  std::vector<bool> keep(g.n_vertices());
  for (Vertex v = 0; v < g.n_vertices(); ++v) keep[v] = v % 2 == 0;
  Restriction r = restrict_mapped(g, keep);
  ASSERT_EQ(r.parent_edge.size(), r.graph.n_edges());
  for (EdgeId i = 0; i < r.graph.n_edges(); ++i) EXPECT_EQ(r.graph.edge(i), g.edge(r.parent_edge[i]));
}

TEST(Validate, TriangleIsOneClique) {
  ColouredMultigraph tri = one_colour(3, {{a, b}, {b, c}, {c, a}});
  ValidationReport r = validate(tri, ColourClassKind::kCliqueUnion);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.decompositions.size(), 1u);
  EXPECT_EQ(r.decompositions[0].triangles.size(), 1u);
  EXPECT_TRUE(r.decompositions[0].pair_edges.empty());
  EXPECT_EQ(r.decompositions[0].spanned_vertices, 3u);
}

TEST(Validate, PathIsNotCliqueUnionWithWitness) {
  ColouredMultigraph path = one_colour(3, {{a, b}, {b, c}});
  ValidationReport r = validate(path, ColourClassKind::kCliqueUnion);
  ASSERT_FALSE(r.ok());
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].colour, 0u);
  EXPECT_EQ(r.violations[0].vertex, b);
  EXPECT_NE(r.violations[0].reason.find("0-2"), std::string::npos) << r.violations[0].reason;
}

TEST(Validate, DisjointEdgesAreAMatching) {
  ColouredMultigraph g = one_colour(4, {{a, b}, {c, d}});
  EXPECT_TRUE(validate(g, ColourClassKind::kMatching).ok());
  ColouredMultigraph bad = one_colour(3, {{a, b}, {b, c}});
  ValidationReport r = validate(bad, ColourClassKind::kMatching);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].vertex, b);
}

TEST(Validate, MatchingSideTagChecked) {
  ColouredMultigraph ok(4, 1, {{0, 2, 0}, {1, 3, 0}}, ColourClassKind::kMatching, std::vector<std::uint8_t>{0, 0, 1, 1});
  EXPECT_TRUE(validate(ok).ok());
  ColouredMultigraph bad(4, 1, {{0, 1, 0}}, ColourClassKind::kMatching, std::vector<std::uint8_t>{0, 0, 1, 1});
  EXPECT_FALSE(validate(bad).ok());
}

TEST(Validate, MatchingImpliesCliqueUnion) {
  std::mt19937_64 rng(21);
  int matchings = 0;
  for (int trial = 0; trial < 300; ++trial) {
    ColouredMultigraph g = oracle::random_small(rng, 6, 8, 3);
    if (!validate(g, ColourClassKind::kMatching).ok()) continue;
    ++matchings;
    EXPECT_TRUE(validate(g, ColourClassKind::kCliqueUnion).ok());
  }
  EXPECT_GT(matchings, 10);
}

TEST(Validate, TwoFactorNeedsEveryVertexDegreeTwo) {
  ColouredMultigraph c5 = one_colour(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  EXPECT_TRUE(validate(c5, ColourClassKind::kTwoFactor).ok());
  ColouredMultigraph c4 = one_colour(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  ValidationReport r = validate(c4, ColourClassKind::kTwoFactor);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].vertex, 4u);
}

TEST(Validate, ArbitraryAlwaysPasses) {
  ColouredMultigraph path = one_colour(3, {{a, b}, {b, c}});
  EXPECT_TRUE(validate(path, ColourClassKind::kArbitrary).ok());
}

TEST(CliqueDecompose, K4SplitsIntoTwoPairs) {
  CliqueDecomposition cd = clique_decompose(complete(4), 0);
  EXPECT_TRUE(cd.triangles.empty());
  EXPECT_EQ(cd.pair_edges.size(), 2u);
  EXPECT_EQ(cd.spanned_vertices, 4u);
}

TEST(CliqueDecompose, K5SplitsIntoPairAndTriangle) {
  CliqueDecomposition cd = clique_decompose(complete(5), 0);
  EXPECT_EQ(cd.triangles.size(), 1u);
  EXPECT_EQ(cd.pair_edges.size(), 1u);
  EXPECT_EQ(cd.spanned_vertices, 5u);
}

TEST(CliqueDecompose, SingleEdge) {
  CliqueDecomposition cd = clique_decompose(one_colour(2, {{0, 1}}), 0);
  EXPECT_TRUE(cd.triangles.empty());
  EXPECT_EQ(cd.pair_edges.size(), 1u);
  EXPECT_EQ(cd.spanned_vertices, 2u);
}

TEST(CliqueDecompose, CoversEachCliqueExactlyForAllSizes) {
  for (std::size_t r = 2; r <= 9; ++r) {
    CliqueDecomposition cd = clique_decompose(complete(r), 0);
    std::vector<int> hits(r, 0);
    for (const auto& t : cd.triangles) {
      for (Vertex x : t) ++hits[x];
    }
    for (const auto& p : cd.pair_edges) {
      for (Vertex x : p) ++hits[x];
    }
    EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; })) << "r=" << r;
    EXPECT_LE(cd.triangles.size(), 1u);
    EXPECT_EQ(cd.spanned_vertices, 3 * cd.triangles.size() + 2 * cd.pair_edges.size());
    EXPECT_EQ(cd.spanned_vertices, r);
  }
}

TEST(CliqueDecompose, RejectsNonCliqueUnion) {
  try {
    clique_decompose(one_colour(3, {{a, b}, {b, c}}), 0);
    FAIL() << "expected NotCliqueUnion";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotCliqueUnion);
  }
}

TEST(CliqueDecompose, SpannedEqualsNonIsolatedCount) {
  // Two colours: K3 + K2 + K4 in colour 0, a lone edge in colour 1.
  std::vector<Edge> edges{{0, 1, 0}, {1, 2, 0}, {0, 2, 0}, {3, 4, 0}, {5, 6, 0}, {5, 7, 0}, {5, 8, 0},
                          {6, 7, 0}, {6, 8, 0}, {7, 8, 0}, {9, 10, 1}};
  ColouredMultigraph g(12, 2, edges, ColourClassKind::kCliqueUnion);
  for (Colour col = 0; col < 2; ++col) {
    std::size_t touched = 0;
    for (Vertex v = 0; v < g.n_vertices(); ++v) {
      touched += std::any_of(g.colour_edges(col).begin(), g.colour_edges(col).end(),
                             [&](EdgeId id) { return g.edge(id).touches(v); });
    }
    EXPECT_EQ(clique_decompose(g, col).spanned_vertices, touched);
  }
}

TEST(RainbowMatchingCheck, Examples) {
  ColouredMultigraph g(4, 3, {{a, b, 1}, {c, d, 2}, {b, c, 2}, {c, d, 1}});
  EXPECT_TRUE(is_rainbow_matching(g, RainbowMatching({{0, 1}, {1, 2}})));

  MatchingCheck shared_vertex = is_rainbow_matching(g, RainbowMatching({{0, 1}, {2, 2}}));
  EXPECT_FALSE(shared_vertex);
  EXPECT_EQ(shared_vertex.fault, MatchingFault::kSharedVertex);
  EXPECT_NE(shared_vertex.detail.find("1"), std::string::npos);

  MatchingCheck shared_colour = is_rainbow_matching(g, RainbowMatching({{0, 1}, {3, 1}}));
  EXPECT_FALSE(shared_colour);
  EXPECT_EQ(shared_colour.fault, MatchingFault::kSharedColour);

  EXPECT_EQ(is_rainbow_matching(g, RainbowMatching({{9, 0}})).fault, MatchingFault::kMissingEdge);
  EXPECT_EQ(is_rainbow_matching(g, RainbowMatching({{0, 2}})).fault, MatchingFault::kColourMismatch);
}

TEST(RainbowMatchingCheck, AgreesWithSubsetOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    ColouredMultigraph g = oracle::random_small(rng, 8, 6, 3);
    for (std::uint32_t mask = 0; mask < (1U << g.n_edges()); ++mask) {
      std::vector<EdgeId> ids;
      for (EdgeId i = 0; i < g.n_edges(); ++i) {
        if (mask >> i & 1U) ids.push_back(i);
      }
      const bool ours = static_cast<bool>(is_rainbow_matching(g, RainbowMatching::from_edges(g, ids)));
      ASSERT_EQ(ours, oracle::subset_is_matching(g, mask, true));
      ASSERT_EQ(static_cast<bool>(is_matching(g, ids)), oracle::subset_is_matching(g, mask, false));
    }
  }
}

TEST(SampleSplitTest, PartitionsVerticesAndIsSeeded) {
  for (double p : {0.0, 0.3, 0.5, 1.0}) {
    SampleSplit s = draw_sample(100, p, 42);
    std::vector<Vertex> all = s.sample;
    all.insert(all.end(), s.rest.begin(), s.rest.end());
    std::sort(all.begin(), all.end());
    ASSERT_EQ(all.size(), 100u);
    for (Vertex v = 0; v < 100; ++v) EXPECT_EQ(all[v], v);
    EXPECT_EQ(draw_sample(100, p, 42).sample, s.sample);
  }
  EXPECT_TRUE(draw_sample(50, 0.0, 1).sample.empty());
  EXPECT_TRUE(draw_sample(50, 1.0, 1).rest.empty());
  EXPECT_NE(draw_sample(200, 0.5, 1).sample, draw_sample(200, 0.5, 2).sample);
}

TEST(MaxMatching, AgreesWithSubsetOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    ColouredMultigraph g = oracle::random_small(rng, 10, 8, 3);
    EXPECT_EQ(max_matching_size(g), oracle::subset_max_matching(g));
  }
}

TEST(Io, RoundTripIsByteIdentical) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    ColouredMultigraph g = oracle::random_small(rng, 15, 8, 4);
    const std::string text = instance_to_string(g);
    const ColouredMultigraph back = instance_from_string(text);
    EXPECT_EQ(back, g);
    EXPECT_EQ(instance_to_string(back), text);
  }
  ColouredMultigraph sided(4, 1, {{0, 2, 0}}, ColourClassKind::kMatching, std::vector<std::uint8_t>{0, 0, 1, 1});
  EXPECT_EQ(instance_from_string(instance_to_string(sided)), sided);
}

TEST(Io, DocumentShape) {
  ColouredMultigraph g(3, 2, {{0, 1, 0}, {1, 2, 1}}, ColourClassKind::kMatching);
  EXPECT_EQ(instance_to_string(g),
            "{\"n_vertices\":3,\"n_colors\":2,\"kind\":\"matching\",\"edges\":[[0,1,0],[1,2,1]]}\n");
  // Whitespace does not matter on input.
  EXPECT_EQ(instance_from_string("{ \"n_vertices\": 3, \"n_colors\": 2, \"kind\": \"matching\",\n"
                                 "  \"edges\": [ [0, 1, 0], [1, 2, 1] ] }"),
            g);
}

TEST(Io, MalformedInputsRaiseParseErrors) {
  for (const char* text : {"{", "{\"n_vertices\":2}", "{\"n_vertices\":2,\"n_colors\":1,\"kind\":\"odd\",\"edges\":[]}",
                           "{\"n_vertices\":2,\"n_colors\":1,\"kind\":\"matching\",\"edges\":[[0,1]]}"}) {
    try {
      instance_from_string(text);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse) << text;
    }
  }
  try {
    load_instance("/nonexistent/instance.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(RandomHelpers, DerivedSeedsAreStableAndDistinct) {
  EXPECT_EQ(derive_seed(7, {1, 2}), derive_seed(7, {1, 2}));
  EXPECT_NE(derive_seed(7, {1, 2}), derive_seed(7, {2, 1}));
  EXPECT_NE(derive_seed(7, {1}), derive_seed(8, {1}));
  Rng rng = make_rng(1);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_LT(uniform_below(rng, 7), 7u);
    const double u = uniform01(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Numeric, SnappedCeilingOnExactPowers) {
  EXPECT_EQ(ceil_pow(32.0, 0.8), 16u);
  EXPECT_EQ(ceil_pow(16.0, 0.75), 8u);
  EXPECT_EQ(ceil_pow(16.0, 0.25), 2u);
  EXPECT_EQ(ceil_pow(10.0, 0.5), 4u);
  EXPECT_EQ(ceil_pow(81.0, 0.75, 7.0), 189u);
  EXPECT_EQ(ceil_snapped(2.0000001), 3u);
}
