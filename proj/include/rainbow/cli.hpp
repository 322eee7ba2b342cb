#pragma once

#include <chrono>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rainbow/alspach.hpp"
#include "rainbow/augment.hpp"
#include "rainbow/error.hpp"
#include "rainbow/exact.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/greedy.hpp"
#include "rainbow/hierarchy_matching.hpp"
#include "rainbow/io.hpp"
#include "rainbow/manifest.hpp"
#include "rainbow/report.hpp"
#include "rainbow/sampling.hpp"
#include "rainbow/verification.hpp"

namespace rainbow {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

// "<int>s" or "<int>ms".
inline std::chrono::milliseconds parse_duration(const std::string& text) {
  static const std::regex re("^([0-9]+)(s|ms)$");
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw Error(ErrorCode::kParse, "duration must look like <int>s or <int>ms, got '" + text + "'");
  }
  const long long value = std::stoll(m[1].str());
  return m[2].str() == "s" ? std::chrono::milliseconds(value * 1000) : std::chrono::milliseconds(value);
}

inline std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  static const std::regex number("^[0-9]+$");
  static const std::regex range("^([0-9]+)\\.\\.([0-9]+)$");
  while (std::getline(ss, item, ',')) {
    std::smatch m;
    if (std::regex_match(item, m, range)) {
      const std::size_t lo = std::stoull(m[1].str()), hi = std::stoull(m[2].str());
      for (std::size_t x = lo; x <= hi; ++x) out.push_back(x);
    } else if (std::regex_match(item, number)) {
      out.push_back(std::stoull(item));
    } else {
      throw Error(ErrorCode::kParse, "bad list item '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::kParse, "empty list");
  return out;
}

namespace detail {

struct OutputOptions {
  std::string out;
  std::string format = "json";
  bool timing = false;
};

inline void add_output_options(CLI::App* sub, OutputOptions& o) {
  sub->add_option("--out,-o", o.out, "Output path (default: stdout)");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--timing", o.timing, "Record wall-clock time and timestamp (output is no longer reproducible)");
}

inline void emit(const std::string& bytes, const OutputOptions& o, std::ostream& out) {
  if (o.out.empty()) {
    out << bytes;
  } else {
    write_file(o.out, bytes);
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline std::string joined(const std::vector<std::string>& args) {
  std::string s = "rainbow";
  for (const std::string& a : args) s += " " + a;
  return s;
}

}  // namespace detail

// Entry point shared by the binary and the tests. Returns the process exit
// code: 0 success, 1 failing check cell, 2 usage or IO error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rainbow matching generators, solvers and checks", "rainbow"};
  app.require_subcommand(1);

  Seed seed = 0;
  detail::OutputOptions output;

  // generate
  auto* gen = app.add_subcommand("generate", "Write a generated instance");
  std::string family_name;
  GeneratorSpec spec;
  std::string gen_out;
  gen->add_option("--family", family_name, "Instance family")->required();
  gen->add_option("--n", spec.n, "Number of colours");
  gen->add_option("--v", spec.v, "Spanned vertices per colour (grinblat)");
  gen->add_option("--m", spec.m, "Multiplicity cap (grinblat)");
  gen->add_option("--d", spec.d, "Half-degree or block parameter");
  gen->add_option("--extra", spec.extra, "Surplus edges or vertices");
  gen->add_flag("--relaxed", spec.relaxed, "Waive the size condition of multiplicity_lb");
  gen->add_option("--seed", seed, "64-bit seed")->envname("RAINBOW_SEED");
  gen->add_option("-o,--out", gen_out, "Output path (default: stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  std::string solver = "sampling";
  std::string p_text = "auto";
  std::size_t depth = AugmentConfig{}.max_depth;
  std::size_t resamples = kStrongResamples;
  std::string time_limit = "60s";
  std::string instance_path;
  solve->add_option("--solver", solver, "Solver")
      ->check(CLI::IsMember({"greedy", "augment", "sampling", "alspach", "lemma41", "exact"}));
  solve->add_option("--p", p_text, "Sampling rate in (0,1) or auto");
  solve->add_option("--depth", depth, "Longest alternating path");
  solve->add_option("--resamples", resamples, "Extra sample draws after a failed completion");
  solve->add_option("--seed", seed, "64-bit seed")->envname("RAINBOW_SEED");
  solve->add_option("--time-limit", time_limit, "Exact solver limit, <int>s or <int>ms");
  solve->add_option("instance", instance_path, "Instance file")->required();
  detail::add_output_options(solve, output);

  // verify
  auto* verify = app.add_subcommand("verify", "Run a theorem check");
  std::string theorem_name;
  std::string n_text;
  std::size_t trials = 1;
  std::size_t jobs = default_jobs();
  verify->add_option("--theorem", theorem_name, "Theorem id")->required();
  verify->add_option("--n", n_text, "Comma separated n values or lo..hi ranges (default: desk table)");
  verify->add_option("--trials", trials, "Trials per n");
  verify->add_option("--seed", seed, "64-bit seed")->envname("RAINBOW_SEED");
  verify->add_option("--jobs", jobs, "Worker threads");
  detail::add_output_options(verify, output);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Success fraction of the strong pipeline per surplus");
  std::string sweep_family;
  std::size_t sweep_n = 0;
  std::string surplus_text;
  sweep->add_option("--family", sweep_family, "ab_bipartite, ab_general, grinblat, circulant_two_factor or two_k4")
      ->required();
  sweep->add_option("--n", sweep_n, "Number of colours (d for circulant_two_factor)")->required();
  sweep->add_option("--surplus", surplus_text, "Comma separated surplus values")->required();
  sweep->add_option("--trials", trials, "Trials per surplus value");
  sweep->add_option("--seed", seed, "64-bit seed")->envname("RAINBOW_SEED");
  sweep->add_option("--jobs", jobs, "Worker threads");
  detail::add_output_options(sweep, output);

  std::vector<const char*> argv{"rainbow"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  RunManifest manifest;
  manifest.command_line = detail::joined(args);
  manifest.global_seed = seed;
  if (output.timing) manifest.timestamp = utc_now();

  try {
    if (gen->parsed()) {
      const auto fam = parse_family(family_name);
      if (!fam) throw Error(ErrorCode::kParse, "unknown family '" + family_name + "'");
      spec.family = *fam;
      spec.seed = seed;
      const ColouredMultigraph g = generate(spec);
      const std::string bytes = instance_to_string(g);
      if (gen_out.empty()) {
        out << bytes;
      } else {
        write_file(gen_out, bytes);
        Json meta;
        meta["family"] = family_name;
        meta["n_vertices"] = g.n_vertices();
        meta["n_colors"] = g.n_colours();
        meta["n_edges"] = g.n_edges();
        meta["max_multiplicity"] = g.max_multiplicity();
        meta["seed"] = seed;
        out << meta.dump() << "\n";
      }
      return kExitOk;
    }

    if (solve->parsed()) {
      const std::string bytes = read_file(instance_path);
      manifest.input_digest = digest_hex(bytes);
      const ColouredMultigraph g = instance_from_string(bytes);
      const auto start = std::chrono::steady_clock::now();
      AugmentConfig ac;
      ac.max_depth = depth;
      Json j;
      if (solver == "lemma41") {
        const auto ids = hierarchy_matching(g);
        j["size"] = ids.size();
        j["defect"] = nullptr;
        j["missing_colors"] = Json::array();
        Json rows = Json::array();
        for (EdgeId id : ids) rows.push_back(Json::array({g.edge(id).u, g.edge(id).v, g.edge(id).colour}));
        j["matching"] = std::move(rows);
        j["phases"] = Json::array({{{"name", "expand"}, {"before", 0}, {"after", ids.size()}}});
        j["seed"] = seed;
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        j["elapsed_ms"] = output.timing ? ms.count() : 0;
        j["optimal"] = nullptr;
        j["rainbow"] = false;
        if (output.format == "csv") {
          detail::emit("size\n" + std::to_string(ids.size()) + "\n", output, out);
          return kExitOk;
        }
      } else {
        SolveReport r;
        if (solver == "greedy") {
          r.seed = seed;
          r.seeds_used = {seed};
          r.matching = greedy_maximal(g, GreedyOrder::kRareColourFirst, seed);
          r.phases.push_back({"greedy", 0, r.matching.size()});
          finalize(r, g);
        } else if (solver == "augment") {
          r.seed = seed;
          const Seed s0 = derive_seed(seed, {0}), s1 = derive_seed(seed, {1});
          r.seeds_used = {s0, s1};
          const RainbowMatching start_m = greedy_maximal(g, GreedyOrder::kRareColourFirst, s0);
          ac.seed = s1;
          AugmentResult ar = augment(g, start_m, ac);
          r.matching = ar.matching;
          r.budget_exhausted = ar.budget_exhausted;
          r.phases.push_back({"greedy", 0, start_m.size()});
          r.phases.push_back({"augment", start_m.size(), r.matching.size()});
          finalize(r, g);
        } else if (solver == "sampling") {
          SamplingConfig cfg;
          cfg.p = p_text == "auto" ? auto_sampling_rate(g) : std::stod(p_text);
          cfg.max_resamples = resamples;
          cfg.seed = seed;
          cfg.augment = ac;
          r = sampling_solve(g, cfg);
        } else if (solver == "alspach") {
          AlspachConfig cfg;
          cfg.seed = seed;
          cfg.max_resamples = resamples;
          r = alspach_solve(g, cfg);
        } else {
          const ExactResult ex = exact_max_rainbow(g, parse_duration(time_limit));
          r.seed = seed;
          r.matching = ex.matching;
          r.optimal = ex.optimal;
          r.phases.push_back({"branch_and_bound", 0, ex.size});
          finalize(r, g);
        }
        r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        if (output.format == "csv") {
          detail::emit(solve_report_to_csv(r, output.timing), output, out);
          return kExitOk;
        }
        j = solve_report_to_json(g, r, output.timing);
      }
      j["manifest"] = manifest_to_json(manifest);
      detail::emit(detail::dump(j), output, out);
      return kExitOk;
    }

    if (verify->parsed()) {
      const auto theorem = parse_theorem(theorem_name);
      if (!theorem) throw Error(ErrorCode::kParse, "unknown theorem '" + theorem_name + "'");
      const auto ns = n_text.empty() ? default_n_values(*theorem) : parse_size_list(n_text);
      const TheoremCheck c = check(*theorem, ns, trials, seed, jobs);
      if (output.format == "csv") {
        detail::emit(check_to_csv(c), output, out);
      } else {
        Json j = check_to_json(c);
        j["manifest"] = manifest_to_json(manifest);
        detail::emit(detail::dump(j), output, out);
      }
      return c.all_passed() ? kExitOk : kExitCheckFailed;
    }

    if (sweep->parsed()) {
      const auto fam = parse_family(sweep_family);
      if (!fam) throw Error(ErrorCode::kParse, "unknown family '" + sweep_family + "'");
      const SweepTable t = sweep_surplus(*fam, sweep_n, parse_size_list(surplus_text), trials, seed, jobs);
      if (output.format == "csv") {
        detail::emit(sweep_to_csv(t), output, out);
      } else {
        Json j = sweep_to_json(t);
        j["manifest"] = manifest_to_json(manifest);
        detail::emit(detail::dump(j), output, out);
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: bad number: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: number out of range: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, out, err);
}

}  // namespace rainbow
