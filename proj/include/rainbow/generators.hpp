#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rainbow/error.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/random.hpp"

namespace rainbow {

enum class Family {
  kLatinCayley,
  kLatinRandom,
  kABBipartite,
  kABGeneral,
  kGrinblat,
  kTriangleLB,
  kTwoK4,
  kMultiplicityLB,
  kCirculantTwoFactor,
  kSymmetricLatinTwoFactor,
};

inline constexpr std::pair<Family, std::string_view> kFamilyNames[] = {
    {Family::kLatinCayley, "latin_cayley"},
    {Family::kLatinRandom, "latin_random"},
    {Family::kABBipartite, "ab_bipartite"},
    {Family::kABGeneral, "ab_general"},
    {Family::kGrinblat, "grinblat"},
    {Family::kTriangleLB, "triangle_lb"},
    {Family::kTwoK4, "two_k4"},
    {Family::kMultiplicityLB, "multiplicity_lb"},
    {Family::kCirculantTwoFactor, "circulant_two_factor"},
    {Family::kSymmetricLatinTwoFactor, "symmetric_latin_two_factor"},
};

inline std::string_view to_string(Family f) {
  for (const auto& [family, name] : kFamilyNames) {
    if (family == f) return name;
  }
  return "unknown";
}

inline std::optional<Family> parse_family(std::string_view s) {
  for (const auto& [family, name] : kFamilyNames) {
    if (name == s) return family;
  }
  return std::nullopt;
}

struct GeneratorSpec {
  Family family = Family::kTwoK4;
  std::size_t n = 0;
  std::size_t v = 0;      // spanned vertices per colour (grinblat)
  std::size_t extra = 0;  // surplus edges per colour, or surplus vertices for circulants
  std::size_t m = 1;      // multiplicity cap (grinblat)
  std::size_t d = 0;      // half-degree for 2-factorized families, block parameter otherwise
  Seed seed = 0;
  bool relaxed = false;   // multiplicity_lb: waive the size lower bound on n
};

enum class LatinMode { kCayley, kRandom };
enum class TwoFactorMode { kCirculant, kSymmetricLatin };

namespace detail {

inline std::vector<Vertex> random_permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  shuffle(std::span<Vertex>(perm), rng);
  return perm;
}

// Row-cycle switch of symbols a and b starting in `row`. Preserves the Latin
// property; keeps the inverse indices in sync.
inline void symbol_cycle_switch(std::vector<std::vector<Colour>>& sq,
                                std::vector<std::vector<std::size_t>>& col_of,
                                std::vector<std::vector<std::size_t>>& row_of, Colour a,
                                Colour b, std::size_t row) {
  std::vector<std::pair<std::size_t, std::size_t>> a_cells, b_cells;
  std::size_t r = row;
  do {
    std::size_t c = col_of[r][a];
    a_cells.push_back({r, c});
    std::size_t r2 = row_of[c][b];
    b_cells.push_back({r2, c});
    r = r2;
  } while (r != row);
  for (auto [r1, c1] : a_cells) sq[r1][c1] = b;
  for (auto [r1, c1] : b_cells) sq[r1][c1] = a;
  for (auto [r1, c1] : a_cells) {
    col_of[r1][b] = c1;
    row_of[c1][b] = r1;
  }
  for (auto [r1, c1] : b_cells) {
    col_of[r1][a] = c1;
    row_of[c1][a] = r1;
  }
}

}  // namespace detail

// Latin square of order n as a proper n-colouring of K_{n,n}: rows are
// vertices 0..n-1, columns n..2n-1, and cell (i, j) is the edge (i, n+j).
inline ColouredMultigraph gen_latin(std::size_t n, LatinMode mode, Seed seed) {
  if (n < 1) throw Error(ErrorCode::kParameterViolation, "latin square needs n >= 1");
  std::vector<std::vector<Colour>> sq(n, std::vector<Colour>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sq[i][j] = static_cast<Colour>((i + j) % n);
  }
  if (mode == LatinMode::kRandom && n >= 2) {
    std::vector<std::vector<std::size_t>> col_of(n, std::vector<std::size_t>(n));
    std::vector<std::vector<std::size_t>> row_of(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        col_of[i][sq[i][j]] = j;
        row_of[j][sq[i][j]] = i;
      }
    }
    Rng rng = make_rng(seed);
    const std::size_t steps = 10 * n * n * n;
    for (std::size_t s = 0; s < steps; ++s) {
      auto a = static_cast<Colour>(uniform_below(rng, n));
      auto b = static_cast<Colour>(uniform_below(rng, n - 1));
      if (b >= a) ++b;
      detail::symbol_cycle_switch(sq, col_of, row_of, a, b, uniform_below(rng, n));
    }
  }
  std::vector<Edge> edges;
  edges.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(n + j), sq[i][j]});
    }
  }
  std::vector<std::uint8_t> sides(2 * n, 0);
  std::fill(sides.begin() + static_cast<std::ptrdiff_t>(n), sides.end(), 1);
  return ColouredMultigraph(2 * n, n, std::move(edges), ColourClassKind::kMatching, std::move(sides));
}

inline std::size_t ab_pool_size(std::size_t n, std::size_t extra) {
  return 2 * (n + extra) + (n + 1) / 2;
}

// n colours, each a uniformly random matching of exactly n + extra edges.
inline ColouredMultigraph gen_ab(std::size_t n, std::size_t extra, bool bipartite, Seed seed) {
  if (n < 1) throw Error(ErrorCode::kParameterViolation, "need n >= 1");
  const std::size_t k = n + extra;
  const std::size_t pool = ab_pool_size(n, extra);
  const std::size_t half = pool / 2;
  if (bipartite ? (k > half || k > pool - half) : (2 * k > pool)) {
    throw Error(ErrorCode::kPoolTooSmall, "pool of " + std::to_string(pool) +
                                              " vertices cannot host " + std::to_string(k) + " edges");
  }
  Rng rng = make_rng(seed);
  std::vector<Edge> edges;
  edges.reserve(n * k);
  std::vector<Vertex> left(half), right(pool - half), all(pool);
  std::iota(left.begin(), left.end(), Vertex{0});
  std::iota(right.begin(), right.end(), static_cast<Vertex>(half));
  std::iota(all.begin(), all.end(), Vertex{0});
  for (Colour c = 0; c < n; ++c) {
    if (bipartite) {
      shuffle(std::span<Vertex>(left), rng);
      shuffle(std::span<Vertex>(right), rng);
      for (std::size_t i = 0; i < k; ++i) edges.push_back({left[i], right[i], c});
    } else {
      shuffle(std::span<Vertex>(all), rng);
      for (std::size_t i = 0; i < k; ++i) edges.push_back({all[2 * i], all[2 * i + 1], c});
    }
  }
  std::optional<std::vector<std::uint8_t>> sides;
  if (bipartite) {
    sides.emplace(pool, 0);
    std::fill(sides->begin() + static_cast<std::ptrdiff_t>(half), sides->end(), 1);
  }
  return ColouredMultigraph(pool, n, std::move(edges), ColourClassKind::kMatching, std::move(sides));
}

// Smallest pool that keeps random clique placement under the multiplicity cap
// feasible: at least v + ceil(n/2) vertices and room for 4x the edge budget.
inline std::size_t grinblat_pool_size(std::size_t n, std::size_t v, std::size_t m) {
  std::size_t pool = v + (n + 1) / 2;
  const double need = 4.0 * static_cast<double>(n) * static_cast<double>(v);
  while (static_cast<double>(m) * static_cast<double>(pool) * static_cast<double>(pool - 1) / 2.0 < need) {
    ++pool;
  }
  return pool;
}

// (n, v, m)-multigraph: every colour is a random disjoint union of K2/K3
// spanning at least v vertices, pair multiplicity capped at m.
inline ColouredMultigraph gen_grinblat(std::size_t n, std::size_t v, std::size_t m, Seed seed) {
  if (n < 1 || v < 2 || m < 1) {
    throw Error(ErrorCode::kParameterViolation, "grinblat needs n >= 1, v >= 2, m >= 1");
  }
  const std::size_t pool = grinblat_pool_size(n, v, m);
  Rng rng = make_rng(seed);
  std::vector<std::uint32_t> mult(pool * pool, 0);
  std::vector<Edge> edges;
  std::size_t rejections = 0;
  const std::size_t max_rejections = 1000 * n;
  std::vector<Vertex> unused(pool);

  for (Colour c = 0; c < n; ++c) {
    const double triangle_rate = uniform01(rng);
    std::vector<std::size_t> sizes;
    std::size_t spanned = 0;
    while (spanned < v) {
      const std::size_t rem = v - spanned;
      std::size_t s;
      if (rem == 1) {
        auto it = std::find(sizes.rbegin(), sizes.rend(), std::size_t{2});
        if (it != sizes.rend()) {
          *it = 3;
          ++spanned;
          continue;
        }
        s = 2;
      } else if (rem == 2) {
        s = 2;
      } else {
        s = bernoulli(rng, triangle_rate) ? 3 : 2;
      }
      sizes.push_back(s);
      spanned += s;
    }
    if (spanned > pool) throw Error(ErrorCode::kPoolTooSmall, "colour budget exceeds pool");

    std::iota(unused.begin(), unused.end(), Vertex{0});
    std::size_t live = pool;
    for (std::size_t s : sizes) {
      while (true) {
        if (live < s) throw Error(ErrorCode::kGenerationStuck, "ran out of vertices");
        for (std::size_t i = 0; i < s; ++i) {
          std::size_t j = static_cast<std::size_t>(uniform_below(rng, live - i));
          std::swap(unused[j], unused[live - 1 - i]);
        }
        const Vertex* pick = unused.data() + (live - s);
        bool ok = true;
        for (std::size_t a = 0; a < s && ok; ++a) {
          for (std::size_t b = a + 1; b < s; ++b) {
            if (mult[pick[a] * pool + pick[b]] >= m) {
              ok = false;
              break;
            }
          }
        }
        if (!ok) {
          if (++rejections > max_rejections) {
            throw Error(ErrorCode::kGenerationStuck,
                        "exceeded " + std::to_string(max_rejections) + " placement rejections");
          }
          continue;
        }
        std::vector<Vertex> clique(pick, pick + s);
        std::sort(clique.begin(), clique.end());
        for (std::size_t a = 0; a < s; ++a) {
          for (std::size_t b = a + 1; b < s; ++b) {
            ++mult[clique[a] * pool + clique[b]];
            ++mult[clique[b] * pool + clique[a]];
            edges.push_back({clique[a], clique[b], c});
          }
        }
        live -= s;
        break;
      }
    }
  }
  return ColouredMultigraph(pool, n, std::move(edges), ColourClassKind::kCliqueUnion);
}

// n-1 disjoint triangles, each present in all n colours.
inline ColouredMultigraph gen_triangle_lb(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kParameterViolation, "triangle lower bound needs n >= 2");
  std::vector<Edge> edges;
  for (Colour c = 0; c < n; ++c) {
    for (Vertex t = 0; t + 1 < n; ++t) {
      Vertex a = 3 * t;
      edges.push_back({a, a + 1, c});
      edges.push_back({a, a + 2, c});
      edges.push_back({a + 1, a + 2, c});
    }
  }
  return ColouredMultigraph(3 * (n - 1), n, std::move(edges), ColourClassKind::kCliqueUnion);
}

// Two disjoint K4s, each properly 3-edge-coloured.
inline ColouredMultigraph gen_two_k4() {
  std::vector<Edge> edges;
  for (Vertex base : {Vertex{0}, Vertex{4}}) {
    edges.push_back({base + 0, base + 1, 0});
    edges.push_back({base + 2, base + 3, 0});
    edges.push_back({base + 0, base + 2, 1});
    edges.push_back({base + 1, base + 3, 1});
    edges.push_back({base + 0, base + 3, 2});
    edges.push_back({base + 1, base + 2, 2});
  }
  return ColouredMultigraph(8, 3, std::move(edges), ColourClassKind::kMatching);
}

// (n-1)/d disjoint copies of a (2d+1)-vertex block H. In H each colour is a
// random spanning union of d-1 edges and one triangle; the copies repeat H.
inline ColouredMultigraph gen_multiplicity_lb(std::size_t n, std::size_t d, Seed seed,
                                              bool relaxed = false) {
  if (d < 2 || n < 2 || (n - 1) % d != 0) {
    throw Error(ErrorCode::kParameterViolation, "multiplicity lower bound needs d >= 2 and d | n-1");
  }
  if (!relaxed) {
    const double bound = 10.0 * std::pow(static_cast<double>(d), 3) * std::log(static_cast<double>(d));
    if (static_cast<double>(n) <= bound) {
      throw Error(ErrorCode::kParameterViolation,
                  "n must exceed 10 d^3 log d = " + std::to_string(bound));
    }
  }
  const std::size_t blocks = (n - 1) / d;
  const std::size_t block = 2 * d + 1;
  Rng rng = make_rng(seed);
  std::vector<std::vector<Edge>> block_edges(n);
  for (Colour c = 0; c < n; ++c) {
    auto perm = detail::random_permutation(block, rng);
    std::sort(perm.begin(), perm.begin() + 3);
    block_edges[c].push_back({perm[0], perm[1], c});
    block_edges[c].push_back({perm[0], perm[2], c});
    block_edges[c].push_back({perm[1], perm[2], c});
    for (std::size_t i = 3; i + 1 < block; i += 2) {
      block_edges[c].push_back({std::min(perm[i], perm[i + 1]), std::max(perm[i], perm[i + 1]), c});
    }
  }
  std::vector<Edge> edges;
  for (Colour c = 0; c < n; ++c) {
    for (std::size_t b = 0; b < blocks; ++b) {
      const auto offset = static_cast<Vertex>(b * block);
      for (const Edge& e : block_edges[c]) edges.push_back({e.u + offset, e.v + offset, c});
    }
  }
  return ColouredMultigraph(blocks * block, n, std::move(edges), ColourClassKind::kCliqueUnion);
}

namespace detail {

// Symmetric Latin square of even order n with constant diagonal; returns the
// off-diagonal symbol of (i, j) mapped to 0..n-2.
inline std::vector<std::vector<Colour>> symmetric_unipotent_square(std::size_t n) {
  std::vector<std::vector<Colour>> sym(n, std::vector<Colour>(n, 0));
  const bool power_of_two = (n & (n - 1)) == 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (power_of_two) {
        sym[i][j] = static_cast<Colour>((i ^ j) - 1);  // Cayley table of (Z_2)^k
      } else {
        const std::size_t q = n - 1;  // round-robin square on Z_q plus a point at infinity
        if (i == q) sym[i][j] = static_cast<Colour>((2 * j) % q);
        else if (j == q) sym[i][j] = static_cast<Colour>((2 * i) % q);
        else sym[i][j] = static_cast<Colour>((i + j) % q);
      }
    }
  }
  return sym;
}

}  // namespace detail

// 2d-regular graph whose d colour classes are 2-factors. Vertex labels are
// permuted by the seed.
inline ColouredMultigraph gen_two_factorized(std::size_t d, TwoFactorMode mode,
                                             std::size_t extra_vertices, Seed seed) {
  if (d < 1) throw Error(ErrorCode::kParameterViolation, "need d >= 1");
  std::vector<Edge> edges;
  std::size_t n_vertices = 0;
  if (mode == TwoFactorMode::kCirculant) {
    n_vertices = 2 * d + 1 + extra_vertices;
    for (std::size_t i = 1; i <= d; ++i) {
      if (2 * i == n_vertices) throw Error(ErrorCode::kParameterViolation, "offset equals n/2");
      for (std::size_t j = 0; j < n_vertices; ++j) {
        edges.push_back({static_cast<Vertex>(j), static_cast<Vertex>((j + i) % n_vertices),
                         static_cast<Colour>(i - 1)});
      }
    }
  } else {
    const std::size_t n = d + 1;
    if (n % 2 != 0 || extra_vertices != 0) {
      throw Error(ErrorCode::kParameterViolation,
                  "symmetric latin mode needs d odd (even order n = d+1) and no extra vertices");
    }
    auto sym = detail::symmetric_unipotent_square(n);
    n_vertices = 2 * n;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (Vertex s = 0; s < 2; ++s) {
          for (Vertex t = 0; t < 2; ++t) {
            edges.push_back({static_cast<Vertex>(2 * i) + s, static_cast<Vertex>(2 * j) + t, sym[i][j]});
          }
        }
      }
    }
  }
  Rng rng = make_rng(seed);
  auto perm = detail::random_permutation(n_vertices, rng);
  for (Edge& e : edges) {
    e.u = perm[e.u];
    e.v = perm[e.v];
  }
  return ColouredMultigraph(n_vertices, d, std::move(edges), ColourClassKind::kTwoFactor);
}

inline ColouredMultigraph generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::kLatinCayley: return gen_latin(spec.n, LatinMode::kCayley, spec.seed);
    case Family::kLatinRandom: return gen_latin(spec.n, LatinMode::kRandom, spec.seed);
    case Family::kABBipartite: return gen_ab(spec.n, spec.extra, true, spec.seed);
    case Family::kABGeneral: return gen_ab(spec.n, spec.extra, false, spec.seed);
    case Family::kGrinblat: return gen_grinblat(spec.n, spec.v, spec.m, spec.seed);
    case Family::kTriangleLB: return gen_triangle_lb(spec.n);
    case Family::kTwoK4: return gen_two_k4();
    case Family::kMultiplicityLB: return gen_multiplicity_lb(spec.n, spec.d, spec.seed, spec.relaxed);
    case Family::kCirculantTwoFactor:
      return gen_two_factorized(spec.d, TwoFactorMode::kCirculant, spec.extra, spec.seed);
    case Family::kSymmetricLatinTwoFactor:
      return gen_two_factorized(spec.d, TwoFactorMode::kSymmetricLatin, spec.extra, spec.seed);
  }
  throw Error(ErrorCode::kParameterViolation, "unknown family");
}

}  // namespace rainbow
