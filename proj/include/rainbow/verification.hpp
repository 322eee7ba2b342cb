#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "rainbow/alspach.hpp"
#include "rainbow/error.hpp"
#include "rainbow/exact.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/greedy.hpp"
#include "rainbow/io.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/numeric.hpp"
#include "rainbow/random.hpp"
#include "rainbow/sampling.hpp"

namespace rainbow {

enum class TheoremId {
  kGrinblatWeak,
  kGrinblatStrong,
  kABBipartiteStrong,
  kABGeneralStrong,
  kGrinblatMultiplicity,
  kAlspachStrong,
  kTriangleLB,
  kMultiplicityLB,
  kTwoK4LB,
};

inline constexpr std::pair<TheoremId, std::string_view> kTheoremNames[] = {
    {TheoremId::kGrinblatWeak, "grinblat_weak"},
    {TheoremId::kGrinblatStrong, "grinblat_strong"},
    {TheoremId::kABBipartiteStrong, "ab_bipartite_strong"},
    {TheoremId::kABGeneralStrong, "ab_general_strong"},
    {TheoremId::kGrinblatMultiplicity, "grinblat_multiplicity"},
    {TheoremId::kAlspachStrong, "alspach_strong"},
    {TheoremId::kTriangleLB, "triangle_lb"},
    {TheoremId::kMultiplicityLB, "multiplicity_lb"},
    {TheoremId::kTwoK4LB, "two_k4_lb"},
};

inline std::string_view to_string(TheoremId t) {
  for (const auto& [id, name] : kTheoremNames) {
    if (id == t) return name;
  }
  return "unknown";
}

inline std::optional<TheoremId> parse_theorem(std::string_view s) {
  for (const auto& [id, name] : kTheoremNames) {
    if (name == s) return id;
  }
  return std::nullopt;
}

struct CheckCell {
  std::size_t n = 0;
  std::size_t trial = 0;
  bool pass = false;
  // The oracle did not certify optimality; never counted as a pass.
  bool inconclusive = false;
  // Distance to the asserted bound; >= 0 on the passing side for size bounds,
  // -defect for full-matching checks, n - optimum for lower bounds.
  std::int64_t margin = 0;
  Seed instance_seed = 0;
  Seed solver_seed = 0;
  std::size_t resamples_used = 0;
};

struct TheoremCheck {
  TheoremId theorem = TheoremId::kGrinblatWeak;
  std::vector<std::size_t> n_values;
  std::size_t trials = 0;
  Seed seed = 0;
  std::string assertion;
  // Set when desk-scale parameters cannot reach the asymptotic regime.
  std::string regime_note;
  std::vector<CheckCell> cells;

  std::size_t passed() const {
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const CheckCell& c) { return c.pass; }));
  }
  std::size_t inconclusive() const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [](const CheckCell& c) { return c.inconclusive; }));
  }
  double pass_rate() const { return cells.empty() ? 1.0 : static_cast<double>(passed()) / static_cast<double>(cells.size()); }
  bool all_passed() const { return passed() == cells.size(); }
  std::size_t passed_for(std::size_t n) const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [&](const CheckCell& c) { return c.n == n && c.pass; }));
  }
};


// Surplus terms used by the strong checks.
inline std::size_t grinblat_strong_surplus(std::size_t n) {
  return ceil_pow(static_cast<double>(n), 0.75, 40.0);
}
inline std::size_t ab_bipartite_surplus(std::size_t n) {
  return ceil_pow(static_cast<double>(n), 0.75, 7.0);
}
inline std::size_t ab_general_surplus(std::size_t n) { return ceil_pow(static_cast<double>(n), 0.95); }
inline std::size_t multiplicity_surplus(std::size_t n) { return ceil_pow(static_cast<double>(n), 0.9); }
inline std::size_t multiplicity_cap(std::size_t n) { return (n + 9) / 10; }
// Extra vertices beyond 2d + 1, giving 2d + ceil(d^0.8) vertices in total.
inline std::size_t alspach_extra_vertices(std::size_t d) { return ceil_pow(static_cast<double>(d), 0.8) - 1; }

inline std::vector<std::size_t> default_n_values(TheoremId t) {
  switch (t) {
    case TheoremId::kGrinblatWeak: return {25, 100, 400};
    case TheoremId::kAlspachStrong: return {10, 20, 40};
    case TheoremId::kTriangleLB: return {3, 4, 5, 6, 7, 8, 9, 10};
    case TheoremId::kMultiplicityLB: return {21, 31, 41};
    case TheoremId::kTwoK4LB: return {3};
    default: return {25, 64, 100, 256};
  }
}

inline constexpr std::size_t kStrongResamples = 5;
inline constexpr std::chrono::seconds kTrialTimeLimit{60};

// Sampling pipeline for matching and clique-union families, nibble pipeline
// for 2-factorized graphs.
inline SolveReport strong_pipeline(const ColouredMultigraph& g, Seed solver_seed, std::optional<double> p = std::nullopt) {
  if (g.kind() == ColourClassKind::kTwoFactor) {
    AlspachConfig cfg;
    cfg.seed = solver_seed;
    cfg.max_resamples = kStrongResamples;
    return alspach_solve(g, cfg);
  }
  SamplingConfig cfg;
  cfg.p = p.value_or(auto_sampling_rate(g));
  cfg.seed = solver_seed;
  cfg.max_resamples = kStrongResamples;
  return sampling_solve(g, cfg);
}

namespace detail {

inline CheckCell full_matching_cell(const ColouredMultigraph& g, Seed solver_seed, std::optional<double> p) {
  const SolveReport r = strong_pipeline(g, solver_seed, p);
  CheckCell cell;
  cell.pass = r.defect == 0;
  cell.margin = -static_cast<std::int64_t>(r.defect);
  cell.resamples_used = r.resamples_used;
  return cell;
}

inline CheckCell lower_bound_cell(const ColouredMultigraph& g, std::size_t n) {
  const ExactResult ex = exact_max_rainbow(g, kTrialTimeLimit);
  CheckCell cell;
  cell.inconclusive = !ex.optimal;
  cell.pass = ex.optimal && ex.size + 1 == n;
  cell.margin = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(ex.size);
  return cell;
}

inline std::size_t smallest_divisor_at_least_two(std::size_t x) {
  for (std::size_t d = 2; d <= x; ++d) {
    if (x % d == 0) return d;
  }
  return x;
}

inline CheckCell run_cell(TheoremId t, std::size_t n, Seed is, Seed ss) {
  const double x = static_cast<double>(n);
  CheckCell cell;
  switch (t) {
    case TheoremId::kGrinblatWeak: {
      const auto g = gen_grinblat(n, 3 * n, n, is);
      const auto m = greedy_maximal(g, GreedyOrder::kRareColourFirst, ss);
      const auto bound = n - static_cast<std::size_t>(std::floor(std::sqrt(x)));
      cell.margin = static_cast<std::int64_t>(m.size()) - static_cast<std::int64_t>(bound);
      cell.pass = cell.margin >= 0;
      break;
    }
    case TheoremId::kGrinblatStrong:
      cell = full_matching_cell(gen_grinblat(n, 3 * n + grinblat_strong_surplus(n), n, is), ss,
                                std::min(kMaxSamplingRate, analytic_sampling_rate(SamplingRegime::kCliqueUnion, n)));
      break;
    case TheoremId::kABBipartiteStrong:
      cell = full_matching_cell(gen_ab(n, ab_bipartite_surplus(n), true, is), ss,
                                std::min(kMaxSamplingRate, analytic_sampling_rate(SamplingRegime::kBipartiteMatching, n)));
      break;
    case TheoremId::kABGeneralStrong:
      cell = full_matching_cell(gen_ab(n, ab_general_surplus(n), false, is), ss,
                                std::min(kMaxSamplingRate, analytic_sampling_rate(SamplingRegime::kGeneralMatching, n)));
      break;
    case TheoremId::kGrinblatMultiplicity: {
      const std::size_t m = multiplicity_cap(n);
      cell = full_matching_cell(gen_grinblat(n, 2 * n + 2 * m + multiplicity_surplus(n), m, is), ss,
                                std::min(kMaxSamplingRate, analytic_sampling_rate(SamplingRegime::kBoundedMultiplicity, n)));
      break;
    }
    case TheoremId::kAlspachStrong:
      cell = full_matching_cell(gen_two_factorized(n, TwoFactorMode::kCirculant, alspach_extra_vertices(n), is), ss,
                                std::nullopt);
      break;
    case TheoremId::kTriangleLB:
      cell = lower_bound_cell(gen_triangle_lb(n), n);
      break;
    case TheoremId::kTwoK4LB:
      cell = lower_bound_cell(gen_two_k4(), 3);
      break;
    case TheoremId::kMultiplicityLB: {
      const std::size_t d = smallest_divisor_at_least_two(n - 1);
      const auto g = gen_multiplicity_lb(n, d, is, true);
      const std::size_t mm = max_matching_size(g);
      cell.margin = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(mm);
      cell.pass = mm < n;
      break;
    }
  }
  cell.n = n;
  cell.instance_seed = is;
  cell.solver_seed = ss;
  return cell;
}

inline std::string assertion_text(TheoremId t) {
  switch (t) {
    case TheoremId::kGrinblatWeak: return "greedy maximal rainbow matching on (n, 3n) clique unions has size >= n - floor(sqrt n)";
    case TheoremId::kGrinblatStrong: return "full rainbow matching on (n, 3n + ceil(40 n^0.75)) clique unions within 5 resamples";
    case TheoremId::kABBipartiteStrong: return "full rainbow matching on bipartite matchings of size n + ceil(7 n^0.75) within 5 resamples";
    case TheoremId::kABGeneralStrong: return "full rainbow matching on matchings of size n + ceil(n^0.95) within 5 resamples";
    case TheoremId::kGrinblatMultiplicity: return "full rainbow matching on (n, 2n + 2m + ceil(n^0.9), m) clique unions, m = ceil(n/10), within 5 resamples";
    case TheoremId::kAlspachStrong: return "full rainbow matching on circulant 2-factorizations with 2d + ceil(d^0.8) vertices within 5 resamples";
    case TheoremId::kTriangleLB: return "certified maximum rainbow matching of n-1 disjoint triangles in n colours is n - 1";
    case TheoremId::kMultiplicityLB: return "maximum matching of the block construction is below n";
    case TheoremId::kTwoK4LB: return "certified maximum rainbow matching of two properly 3-coloured K4 is 2";
  }
  return "";
}

inline std::string regime_text(TheoremId t) {
  switch (t) {
    case TheoremId::kGrinblatMultiplicity:
      return "surplus n/(log n)^0.25 is indistinguishable from a constant at desk scale; run at fixed surplus ceil(n^0.9)";
    case TheoremId::kABGeneralStrong:
      return "error term 20 n^(15/16) exceeds n at desk scale; run at surplus ceil(n^0.95)";
    case TheoremId::kMultiplicityLB:
      return "size condition n > 10 d^3 log d waived; d is the smallest divisor of n - 1";
    default: return "";
  }
}

// Runs job(i) for i in [0, count) on up to `jobs` threads.
inline void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& job) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) job(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

inline std::size_t default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// Seeds of cell (n, trial): instance from derive(seed, n, trial, 0), solver
// from derive(seed, n, trial, 1), so any cell replays on its own.
inline TheoremCheck check(TheoremId t, std::vector<std::size_t> n_values, std::size_t trials, Seed seed,
                          std::size_t jobs = 1) {
  TheoremCheck out;
  out.theorem = t;
  out.n_values = std::move(n_values);
  out.trials = trials;
  out.seed = seed;
  out.assertion = detail::assertion_text(t);
  out.regime_note = detail::regime_text(t);
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t n : out.n_values) {
    for (std::size_t k = 0; k < trials; ++k) index.push_back({n, k});
  }
  out.cells.resize(index.size());
  detail::parallel_for(index.size(), jobs, [&](std::size_t i) {
    const auto [n, k] = index[i];
    out.cells[i] = detail::run_cell(t, n, derive_seed(seed, {n, k, 0}), derive_seed(seed, {n, k, 1}));
    out.cells[i].trial = k;
  });
  std::stable_sort(out.cells.begin(), out.cells.end(), [](const CheckCell& a, const CheckCell& b) {
    return a.n != b.n ? a.n < b.n : a.trial < b.trial;
  });
  return out;
}

inline Json check_to_json(const TheoremCheck& c) {
  Json j;
  j["theorem"] = std::string(to_string(c.theorem));
  j["assertion"] = c.assertion;
  j["regime_note"] = c.regime_note.empty() ? Json(nullptr) : Json(c.regime_note);
  j["n_values"] = c.n_values;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  Json cells = Json::array();
  for (const CheckCell& cell : c.cells) {
    cells.push_back({{"n", cell.n},
                     {"trial", cell.trial},
                     {"pass", cell.pass},
                     {"margin", cell.margin},
                     {"instance_seed", cell.instance_seed},
                     {"solver_seed", cell.solver_seed},
                     {"inconclusive", cell.inconclusive},
                     {"resamples_used", cell.resamples_used}});
  }
  j["cells"] = std::move(cells);
  j["summary"] = {{"pass_rate", c.pass_rate()},
                  {"passed", c.passed()},
                  {"failed", c.cells.size() - c.passed()},
                  {"inconclusive", c.inconclusive()}};
  return j;
}

inline std::string check_to_csv(const TheoremCheck& c) {
  std::string out = "theorem,n,trial,pass,inconclusive,margin,instance_seed,solver_seed,resamples_used\n";
  for (const CheckCell& cell : c.cells) {
    out += std::string(to_string(c.theorem)) + "," + std::to_string(cell.n) + "," + std::to_string(cell.trial) + "," +
           (cell.pass ? "true" : "false") + "," + (cell.inconclusive ? "true" : "false") + "," +
           std::to_string(cell.margin) + "," + std::to_string(cell.instance_seed) + "," +
           std::to_string(cell.solver_seed) + "," + std::to_string(cell.resamples_used) + "\n";
  }
  return out;
}

// Families with a surplus knob: extra edges per colour for the matching
// families, extra spanned vertices over 3n for grinblat, extra vertices for
// the circulant family. two_k4 admits only surplus 0.
struct SweepRow {
  std::size_t surplus = 0;
  std::size_t successes = 0;
  std::size_t trials = 0;
  double fraction() const { return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials); }
};

struct SweepTable {
  Family family = Family::kABBipartite;
  std::size_t n = 0;
  Seed seed = 0;
  std::vector<SweepRow> rows;
};

inline ColouredMultigraph surplus_instance(Family f, std::size_t n, std::size_t surplus, Seed s) {
  switch (f) {
    case Family::kABBipartite: return gen_ab(n, surplus, true, s);
    case Family::kABGeneral: return gen_ab(n, surplus, false, s);
    case Family::kGrinblat: return gen_grinblat(n, 3 * n + surplus, n, s);
    case Family::kCirculantTwoFactor: return gen_two_factorized(n, TwoFactorMode::kCirculant, surplus, s);
    case Family::kTwoK4:
      if (surplus != 0) throw Error(ErrorCode::kParameterViolation, "two_k4 admits only surplus 0");
      return gen_two_k4();
    default: throw Error(ErrorCode::kParameterViolation, std::string(to_string(f)) + " has no surplus parameter");
  }
}

// Raw success fractions of the strong pipeline per surplus value.
inline SweepTable sweep_surplus(Family f, std::size_t n, const std::vector<std::size_t>& surplus_values,
                                std::size_t trials, Seed seed, std::size_t jobs = 1) {
  SweepTable table;
  table.family = f;
  table.n = n;
  table.seed = seed;
  table.rows.resize(surplus_values.size());
  std::vector<std::uint8_t> ok(surplus_values.size() * trials, 0);
  detail::parallel_for(ok.size(), jobs, [&](std::size_t i) {
    const std::size_t si = i / trials, k = i % trials;
    const auto g = surplus_instance(f, n, surplus_values[si], derive_seed(seed, {si, k, 0}));
    ok[i] = strong_pipeline(g, derive_seed(seed, {si, k, 1})).defect == 0;
  });
  for (std::size_t si = 0; si < surplus_values.size(); ++si) {
    table.rows[si].surplus = surplus_values[si];
    table.rows[si].trials = trials;
    for (std::size_t k = 0; k < trials; ++k) table.rows[si].successes += ok[si * trials + k];
  }
  return table;
}

inline Json sweep_to_json(const SweepTable& t) {
  Json j;
  j["family"] = std::string(to_string(t.family));
  j["n"] = t.n;
  j["seed"] = t.seed;
  Json rows = Json::array();
  for (const SweepRow& r : t.rows) {
    rows.push_back({{"surplus", r.surplus}, {"successes", r.successes}, {"trials", r.trials}, {"fraction", r.fraction()}});
  }
  j["rows"] = std::move(rows);
  return j;
}

inline std::string sweep_to_csv(const SweepTable& t) {
  std::string out = "family,n,surplus,successes,trials,fraction\n";
  for (const SweepRow& r : t.rows) {
    std::ostringstream frac;
    frac << r.fraction();
    out += std::string(to_string(t.family)) + "," + std::to_string(t.n) + "," + std::to_string(r.surplus) + "," +
           std::to_string(r.successes) + "," + std::to_string(r.trials) + "," + frac.str() + "\n";
  }
  return out;
}

}  // namespace rainbow
